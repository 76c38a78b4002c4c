//! Complex propagation exponents of the probe quadratures and the
//! low-frequency observables derived from them: zero-frequency absorption,
//! group velocity, and the characteristic spectral widths.

use std::f64::consts::LN_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::find_root_bracketed;
use crate::params::ValidatedParams;

/// Relative bisection tolerance on width roots.
const WIDTH_REL_TOL: f64 = 1.0e-9;
/// Widest bracket tried for width roots, units of gamma.
const WIDTH_BRACKET_CAP: f64 = 1.0e3;

/// Two-level denominator D(omega) = (gamma - i omega)(gamma0 - i omega) + Omega^2.
pub fn denominator(omega: f64, v: &ValidatedParams) -> Complex64 {
    let p = &v.params;
    Complex64::new(p.gamma, -omega) * Complex64::new(p.gamma0, -omega)
        + p.omega_rabi * p.omega_rabi
}

/// Resonant-probe propagation exponent
/// alpha(omega) = -i omega transit + C gamma (gamma0 - i omega)/D(omega).
pub fn alpha_eit(omega: f64, v: &ValidatedParams) -> Complex64 {
    let p = &v.params;
    Complex64::new(0.0, -omega * p.transit)
        + v.cooperativity * p.gamma * Complex64::new(p.gamma0, -omega) / denominator(omega, v)
}

/// Far-detuned propagation exponent
/// alpha'(omega) = -i omega transit + C Gamma_R/(Gamma_R + gamma0 - i omega).
pub fn alpha_raman(omega: f64, v: &ValidatedParams) -> Result<Complex64> {
    let gr = v.gamma_r_required()?;
    let p = &v.params;
    Ok(Complex64::new(0.0, -omega * p.transit)
        + v.cooperativity * gr / Complex64::new(gr + p.gamma0, -omega))
}

/// Propagation exponent of the full three-level response at one-photon
/// detuning `delta1`, used to check that `alpha_raman` is its adiabatic
/// limit. The two-photon resonance sits at the light-shifted frequency
/// omega ~ -Omega^2 delta1/(gamma^2 + delta1^2), not at zero.
pub fn alpha_detuned_lambda(omega: f64, v: &ValidatedParams) -> Complex64 {
    let p = &v.params;
    let detuned =
        (Complex64::new(p.gamma, p.delta1 - omega)) * Complex64::new(p.gamma0, -omega)
            + p.omega_rabi * p.omega_rabi;
    Complex64::new(0.0, -omega * p.transit)
        + v.cooperativity * p.gamma * Complex64::new(p.gamma0, -omega) / detuned
}

/// Zero-frequency absorption A = C gamma gamma0/(gamma gamma0 + Omega^2),
/// equal to Re alpha(0).
pub fn absorption_zero_freq(v: &ValidatedParams) -> f64 {
    let p = &v.params;
    let gg0 = p.gamma * p.gamma0;
    v.cooperativity * gg0 / (gg0 + p.omega_rabi * p.omega_rabi)
}

/// Group-velocity fraction v_g/c = 1/[1 + g2n (Omega^2 - gamma gamma0)/(Omega^2 + gamma gamma0)^2].
pub fn group_velocity(v: &ValidatedParams) -> f64 {
    let p = &v.params;
    let om2 = p.omega_rabi * p.omega_rabi;
    let gg0 = p.gamma * p.gamma0;
    1.0 / (1.0 + p.g2n * (om2 - gg0) / ((om2 + gg0) * (om2 + gg0)))
}

/// Excess propagation delay L/v_g - L/c implied by `group_velocity`.
pub fn group_delay_excess(v: &ValidatedParams) -> f64 {
    v.transit() * (1.0 / group_velocity(v) - 1.0)
}

/// Excess delay measured directly as -d Im alpha/d omega at omega = 0 minus
/// the vacuum transit, by Richardson-extrapolated central differences.
pub fn group_delay_dispersion(v: &ValidatedParams) -> f64 {
    let h = 1.0e-6;
    let im = |w: f64| alpha_eit(w, v).im;
    let d1 = (im(h) - im(-h)) / (2.0 * h);
    let d2 = (im(h / 2.0) - im(-h / 2.0)) / h;
    -(4.0 * d2 - d1) / 3.0 - v.transit()
}

/// A spectral width reported both ways: the printed closed form and the
/// numeric half-absorption root. The closed form is NaN where its argument
/// turns negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidthEstimate {
    pub closed_form: f64,
    pub numeric: f64,
}

// Doubles `hi` from `hi0` until `f` changes sign against `f(0)`, then
// bisects. Returns None when no sign change appears below the cap.
fn expanding_root<F: Fn(f64) -> f64>(f: F, hi0: f64, cap: f64) -> Option<f64> {
    let f0 = f(0.0);
    let mut lo = 0.0;
    let mut hi = hi0;
    while hi <= cap {
        if f(hi).signum() != f0.signum() {
            return find_root_bracketed(&f, lo, hi, WIDTH_REL_TOL).ok();
        }
        lo = hi;
        hi *= 2.0;
    }
    None
}

/// Transparency window width: closed form
/// Gamma_E sqrt[(ln2/2C)(1 - C gamma0/Gamma_E)] and the omega > 0 root where
/// the transmission e^{-2 Re alpha} falls to half its omega = 0 value.
pub fn transparency_width_eit(v: &ValidatedParams) -> Result<WidthEstimate> {
    let c = v.cooperativity;
    let gamma0 = v.gamma0();
    let closed_form =
        v.gamma_e * (LN_2 / (2.0 * c) * (1.0 - c * gamma0 / v.gamma_e)).sqrt();

    let peak = alpha_eit(0.0, v).re;
    let edge = |w: f64| 2.0 * (alpha_eit(w, v).re - peak) - LN_2;
    match expanding_root(edge, 1.0e-6, WIDTH_BRACKET_CAP) {
        Some(numeric) => Ok(WidthEstimate {
            closed_form,
            numeric,
        }),
        None => Err(Error::NoWindow {
            c_gamma0: c * gamma0,
            gamma_e: v.gamma_e,
        }),
    }
}

/// Raman central absorption width: closed form
/// sqrt(2/ln2) sqrt[C Gamma_R (Gamma_R + gamma0)] and the omega > 0 root
/// where the transmission e^{-2 Re alpha'} rises back to one half.
pub fn absorption_width_raman(v: &ValidatedParams) -> Result<WidthEstimate> {
    let gr = v.gamma_r_required()?;
    let c = v.cooperativity;
    let closed_form = (2.0 / LN_2).sqrt() * (c * gr * (gr + v.gamma0())).sqrt();

    // Absorption is deepest at center and fades outward, so the same
    // expanding search applies with the absolute half criterion.
    let edge = |w: f64| -> f64 {
        let a = alpha_raman(w, v).expect("detuning checked above");
        2.0 * a.re - LN_2
    };
    match expanding_root(edge, 1.0e-6, WIDTH_BRACKET_CAP) {
        Some(numeric) => Ok(WidthEstimate {
            closed_form,
            numeric,
        }),
        None => Err(Error::NoBracket {
            lo: 0.0,
            hi: WIDTH_BRACKET_CAP,
        }),
    }
}

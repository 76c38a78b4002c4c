//! Collective spin-noise spectra, their decomposition into field,
//! spontaneous-emission, and decoherence contributions, ground-state
//! variances, and squeezing-transfer efficiencies.
//!
//! Everything rests on the frequency-space solution of the linearized
//! propagation equations: the spin at depth z responds to the local field,
//! which itself accumulates the noise radiated upstream. Averaging over the
//! cloud reduces every double spatial integral to closed-form functions of
//! the propagation exponent alpha.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::cavity;
use crate::error::{Error, Result};
use crate::numerics::{spectral_integral, TARGET_REL_TOL};
use crate::params::{RegimeFlags, Scheme, ValidatedParams};
use crate::transfer::{alpha_eit, alpha_raman, denominator};

/// Sum-rule tolerance for coherent input (quadrature-limited).
pub const SUM_RULE_TOL: f64 = 1.0e-3;

/// Salvage tolerance is two decades looser than the target.
fn accept_tol(target: f64) -> f64 {
    target * 100.0
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);

// (1 - e^{-a})/a with its removable singularity handled by series.
fn g1(a: Complex64) -> Complex64 {
    if a.norm() < 1.0e-4 {
        let a2 = a * a;
        return ONE - a / 2.0 + a2 / 6.0 - a2 * a / 24.0 + a2 * a2 / 120.0;
    }
    (ONE - (-a).exp()) / a
}

fn g1_real(x: f64) -> f64 {
    if x.abs() < 1.0e-4 {
        return 1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0 + x * x * x * x / 120.0;
    }
    (1.0 - (-x).exp()) / x
}

// (1/L^2) \int_0^L dz \int_0^z du e^{-a(z-u)/L} = (1 - g1(a))/a.
fn i1(a: Complex64) -> Complex64 {
    if a.norm() < 1.0e-3 {
        let a2 = a * a;
        return Complex64::new(0.5, 0.0) - a / 6.0 + a2 / 24.0 - a2 * a / 120.0
            + a2 * a2 / 720.0;
    }
    (ONE - g1(a)) / a
}

// (1/L^3) \int_0^L dz \int_0^z du |e^{-a(z-u)/L}|^2-type average:
// [1 - 2 Re g1(a) + g1(2 Re a)]/|a|^2, again with a series branch.
fn i2(a: Complex64) -> f64 {
    let n2 = a.norm_sqr();
    if n2 < 2.5e-5 {
        let x = a.re;
        let a2 = a * a;
        return 1.0 / 3.0 - x / 4.0 + a2.re / 15.0 + n2 / 20.0 - (a2 * a).re / 72.0
            - n2 * x / 36.0;
    }
    (1.0 - 2.0 * g1(a).re + g1_real(2.0 * a.re)) / n2
}

// Cloud average <|1 - lam K(z)|^2> of the noise kernel, where lam L = coef
// and K collects the field re-radiated between the source slice and the
// observation slice.
fn kernel_avg(coef: Complex64, alpha: Complex64) -> f64 {
    1.0 - 2.0 * (coef * i1(alpha)).re + coef.norm_sqr() * i2(alpha)
}

/// Frequency-space coefficients of the coupled probe-dipole-spin system at
/// one frequency. Lengths are measured in units of the cloud length, so the
/// spatial pole `s0` equals `alpha(omega)` numerically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceCoefficients {
    pub omega: f64,
    /// Two-level denominator D(omega).
    pub d: Complex64,
    /// Field-to-spin response B1 = -(g Omega/2)/D.
    pub b1: Complex64,
    /// Dipole-noise response B2 = -Omega/D.
    pub b2_coeff: Complex64,
    /// Spin-noise response B3 = (gamma - i omega)/D.
    pub b3_coeff: Complex64,
    /// Spatial decay rate of the probe fluctuation; s0 L = alpha(omega).
    pub s0: Complex64,
    /// Kernel zero of the dipole-noise path: the free-field pole, which is
    /// -i omega/c in the convention where s0 L = alpha.
    pub b2_zero: Complex64,
    /// Kernel zero of the spin-noise path, displaced from the free-field
    /// pole by the medium response C gamma/(gamma - i omega).
    pub b3_zero: Complex64,
}

/// Computes the resonant-system coefficients at `omega`. The spatial rates
/// are re-derived from the frequency-space equations so that `s0` matches
/// the propagation exponent exactly.
pub fn laplace_coefficients(omega: f64, v: &ValidatedParams) -> LaplaceCoefficients {
    let p = &v.params;
    let c = v.cooperativity;
    let g = (p.g2n / p.n_atoms).sqrt();
    let d = denominator(omega, v);
    let gmiw = Complex64::new(p.gamma, -omega);
    // Free-field kernel zero under the sign convention that makes s0 the
    // decay rate of the forward-propagating fluctuation, s0 L = alpha.
    let vacuum_pole = Complex64::new(0.0, -omega * p.transit);
    LaplaceCoefficients {
        omega,
        d,
        b1: -(g * p.omega_rabi / 2.0) / d,
        b2_coeff: -p.omega_rabi / d,
        b3_coeff: gmiw / d,
        s0: alpha_eit(omega, v),
        b2_zero: vacuum_pole,
        b3_zero: vacuum_pole + c * p.gamma / gmiw,
    }
}

// Kernel coefficients lam_i L = s0 L - b_i L for the two noise paths.
fn eit_kernel_coefs(omega: f64, v: &ValidatedParams) -> (Complex64, Complex64) {
    let p = &v.params;
    let c = v.cooperativity;
    let d = denominator(omega, v);
    let gmiw = Complex64::new(p.gamma, -omega);
    let lam2 = c * p.gamma * Complex64::new(p.gamma0, -omega) / d;
    let lam3 = -c * p.gamma * p.omega_rabi * p.omega_rabi / (d * gmiw);
    (lam2, lam3)
}

/// Squeezing-transfer integrand B_f for resonant coupling:
/// C Gamma_E gamma^2/|D|^2 * |1 - e^{-alpha}|^2/|alpha|^2.
pub fn b_f_eit(omega: f64, v: &ValidatedParams) -> f64 {
    let p = &v.params;
    let d2 = denominator(omega, v).norm_sqr();
    let al = alpha_eit(omega, v);
    v.cooperativity * v.gamma_e * p.gamma * p.gamma / d2 * g1(al).norm_sqr()
}

/// Squeezing-transfer integrand for far-detuned coupling:
/// C Gamma_R/[(Gamma_R+gamma0)^2 + omega^2] * |1 - e^{-alpha'}|^2/|alpha'|^2.
pub fn b_f_raman(omega: f64, v: &ValidatedParams) -> Result<f64> {
    let gr = v.gamma_r_required()?;
    let dp = Complex64::new(gr + v.gamma0(), -omega);
    let al = alpha_raman(omega, v)?;
    Ok(v.cooperativity * gr / dp.norm_sqr() * g1(al).norm_sqr())
}

/// The spontaneous-emission (b_coh) and ground-state-decoherence (b_spin)
/// spectral weights at one frequency.
pub fn noise_contributions(omega: f64, v: &ValidatedParams) -> Result<(f64, f64)> {
    match v.scheme {
        Scheme::SinglePassEit => {
            let p = &v.params;
            let d2 = denominator(omega, v).norm_sqr();
            let al = alpha_eit(omega, v);
            let (lam2, lam3) = eit_kernel_coefs(omega, v);
            let om2 = p.omega_rabi * p.omega_rabi;
            let gmiw2 = p.gamma * p.gamma + omega * omega;
            // Diffusion constants gamma/2 (dipole) and gamma0/2 (spin) enter
            // as the prefactors 2 gamma Omega^2 and 2 gamma0 |gamma-iw|^2.
            let b_coh = 2.0 * p.gamma * om2 / d2 * kernel_avg(lam2, al);
            let b_spin = 2.0 * p.gamma0 * gmiw2 / d2 * kernel_avg(lam3, al);
            Ok((b_coh, b_spin))
        }
        Scheme::SinglePassRaman => {
            let gr = v.gamma_r_required()?;
            let g0 = v.gamma0();
            let dp = Complex64::new(gr + g0, -omega);
            let al = alpha_raman(omega, v)?;
            // One decaying coherence carries both optical pumping and
            // decoherence noise; the shared kernel splits 2(Gamma_R+gamma0)
            // into its two sources.
            let lam = v.cooperativity * gr / dp;
            let k = kernel_avg(lam, al);
            Ok((2.0 * gr / dp.norm_sqr() * k, 2.0 * g0 / dp.norm_sqr() * k))
        }
        _ => Err(Error::SchemeMismatch {
            operation: "noise_contributions",
            scheme: v.scheme,
        }),
    }
}

/// All three spectral weights at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinSpectrumBreakdown {
    pub omega: f64,
    pub b_f: f64,
    pub b_coh: f64,
    pub b_spin: f64,
}

pub fn spectrum_breakdown(omega: f64, v: &ValidatedParams) -> Result<SpinSpectrumBreakdown> {
    let b_f = match v.scheme {
        Scheme::SinglePassEit => b_f_eit(omega, v),
        Scheme::SinglePassRaman => b_f_raman(omega, v)?,
        _ => {
            return Err(Error::SchemeMismatch {
                operation: "spectrum_breakdown",
                scheme: v.scheme,
            })
        }
    };
    let (b_coh, b_spin) = noise_contributions(omega, v)?;
    Ok(SpinSpectrumBreakdown {
        omega,
        b_f,
        b_coh,
        b_spin,
    })
}

/// Spin-noise spectrum in units of the coherent-state variance N/4:
/// b_f S_in + b_coh + b_spin.
pub fn spin_spectrum_normalized(omega: f64, s_in: f64, v: &ValidatedParams) -> Result<f64> {
    let b = spectrum_breakdown(omega, v)?;
    Ok(b.b_f * s_in + b.b_coh + b.b_spin)
}

/// Absolute spin-noise spectrum S(omega) = (N/4)[b_f S_in + b_coh + b_spin]
/// of the squeezed collective spin component.
pub fn spin_spectrum(omega: f64, s_in: f64, v: &ValidatedParams) -> Result<f64> {
    Ok(v.n_atoms() / 4.0 * spin_spectrum_normalized(omega, s_in, v)?)
}

/// Frequencies of known spectral structure, used to seed the quadrature.
pub fn integration_seeds(v: &ValidatedParams) -> Vec<f64> {
    let c = v.cooperativity;
    let mut scales = vec![v.gamma()];
    if v.scheme.is_raman() {
        if let Some(gr) = v.gamma_r {
            let line = gr + v.gamma0();
            let width = (c * gr * line).sqrt();
            scales.extend([0.1 * width, width, 3.0 * width, line, c * gr]);
        }
    } else {
        let window = v.gamma_e / c.sqrt().max(1.0);
        scales.extend([
            0.1 * window,
            window,
            3.0 * window,
            v.gamma_e / c.max(1.0),
            v.omega_rabi(),
            2.0 * v.omega_rabi(),
        ]);
    }
    let mut seeds = Vec::with_capacity(2 * scales.len());
    for s in scales {
        if s.is_finite() && s > 0.0 {
            seeds.push(-s);
            seeds.push(s);
        }
    }
    seeds
}

/// Ground-state variance of the squeezed spin component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinVariance {
    /// Delta J^2 in absolute units.
    pub absolute: f64,
    /// Delta J^2/(N/4).
    pub normalized: f64,
}

pub fn spin_variance(s_in: f64, v: &ValidatedParams) -> Result<SpinVariance> {
    spin_variance_with_tol(s_in, v, TARGET_REL_TOL)
}

pub fn spin_variance_with_tol(s_in: f64, v: &ValidatedParams, tol: f64) -> Result<SpinVariance> {
    let seeds = integration_seeds(v);
    let normalized = spectral_integral(
        |w| spin_spectrum_normalized(w, s_in, v).unwrap_or(f64::NAN),
        tol,
        accept_tol(tol),
        &seeds,
    )?;
    Ok(SpinVariance {
        absolute: v.n_atoms() / 4.0 * normalized,
        normalized,
    })
}

/// Exact transfer efficiency eta = \int B_f d omega/2 pi (single pass).
pub fn efficiency_exact(v: &ValidatedParams) -> Result<f64> {
    efficiency_exact_with_tol(v, TARGET_REL_TOL)
}

pub fn efficiency_exact_with_tol(v: &ValidatedParams, tol: f64) -> Result<f64> {
    let seeds = integration_seeds(v);
    match v.scheme {
        Scheme::SinglePassEit => {
            spectral_integral(|w| b_f_eit(w, v), tol, accept_tol(tol), &seeds)
        }
        Scheme::SinglePassRaman => {
            v.gamma_r_required()?;
            spectral_integral(
                |w| b_f_raman(w, v).unwrap_or(f64::NAN),
                tol,
                accept_tol(tol),
                &seeds,
            )
        }
        _ => Err(Error::SchemeMismatch {
            operation: "efficiency_exact",
            scheme: v.scheme,
        }),
    }
}

/// Closed-form large-C efficiency: 1 - sqrt(2/pi)/sqrt(C) - C gamma0/Gamma_E
/// for resonant coupling, 1 - sqrt(2/pi)/sqrt(C) sqrt(1 + gamma0/Gamma_R)
/// for far-detuned coupling.
pub fn efficiency_asymptotic(v: &ValidatedParams) -> Result<f64> {
    let c = v.cooperativity;
    let lead = (2.0 / PI).sqrt() / c.sqrt();
    match v.scheme {
        Scheme::SinglePassEit => Ok(1.0 - lead - c * v.gamma0() / v.gamma_e),
        Scheme::SinglePassRaman => {
            let gr = v.gamma_r_required()?;
            Ok(1.0 - lead * (1.0 + v.gamma0() / gr).sqrt())
        }
        _ => Err(Error::SchemeMismatch {
            operation: "efficiency_asymptotic",
            scheme: v.scheme,
        }),
    }
}

/// Exact and asymptotic efficiencies side by side, for any scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyReport {
    pub eta_exact: f64,
    pub eta_asymptotic: f64,
    pub scheme: Scheme,
    pub flags: RegimeFlags,
}

pub fn efficiency_report(v: &ValidatedParams) -> Result<EfficiencyReport> {
    efficiency_report_with_tol(v, TARGET_REL_TOL)
}

pub fn efficiency_report_with_tol(v: &ValidatedParams, tol: f64) -> Result<EfficiencyReport> {
    let (eta_exact, eta_asymptotic) = if v.scheme.is_cavity() {
        (
            cavity::efficiency_cavity(v)?,
            cavity::efficiency_cavity_approx(v)?,
        )
    } else {
        (efficiency_exact_with_tol(v, tol)?, efficiency_asymptotic(v)?)
    };
    Ok(EfficiencyReport {
        eta_exact,
        eta_asymptotic,
        scheme: v.scheme,
        flags: v.flags,
    })
}

/// Integrates b_f + b_coh + b_spin over frequency; for coherent input this
/// must be 1 (the atoms stay in a coherent spin state).
pub fn verify_sum_rule(v: &ValidatedParams) -> Result<f64> {
    verify_sum_rule_with_tol(v, TARGET_REL_TOL)
}

pub fn verify_sum_rule_with_tol(v: &ValidatedParams, tol: f64) -> Result<f64> {
    let seeds = integration_seeds(v);
    let integral = spectral_integral(
        |w| spin_spectrum_normalized(w, 1.0, v).unwrap_or(f64::NAN),
        tol,
        accept_tol(tol),
        &seeds,
    )?;
    let deviation = (integral - 1.0).abs();
    if deviation > SUM_RULE_TOL {
        return Err(Error::SumRuleViolation {
            integral,
            deviation,
            tol: SUM_RULE_TOL,
        });
    }
    Ok(integral)
}

//! Outgoing probe-field quadrature noise spectra after single-pass
//! propagation. The medium attenuates the squeezing of the input toward shot
//! noise: S_out = 1 - (1 - S_in) e^{-2 Re alpha}.

use crate::error::{Error, Result};
use crate::params::{Scheme, ValidatedParams};
use crate::transfer::{alpha_eit, alpha_raman};

/// One row of a field-spectrum dataset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpectrumPoint {
    /// Frequency in units of gamma.
    pub omega: f64,
    /// Output amplitude-quadrature noise, linear units (shot noise = 1).
    pub s_out: f64,
}

fn check_single_pass(v: &ValidatedParams, operation: &'static str) -> Result<()> {
    if v.scheme.is_cavity() {
        return Err(Error::SchemeMismatch {
            operation,
            scheme: v.scheme,
        });
    }
    Ok(())
}

fn check_s_in(s_in: f64) -> Result<()> {
    if s_in <= 0.0 || s_in.is_nan() {
        return Err(Error::NonPositiveParameter {
            name: "s_in",
            requirement: "> 0",
            value: s_in,
        });
    }
    Ok(())
}

fn attenuate(s_in: f64, two_re_alpha: f64) -> f64 {
    1.0 - (1.0 - s_in) * (-two_re_alpha).exp()
}

/// Output amplitude spectrum for resonant propagation,
/// S_out(omega) = 1 - (1 - s_in) e^{-2 Re alpha(omega)}.
pub fn s_out_eit(omega: f64, s_in: f64, v: &ValidatedParams) -> Result<f64> {
    check_single_pass(v, "s_out_eit")?;
    check_s_in(s_in)?;
    Ok(attenuate(s_in, 2.0 * alpha_eit(omega, v).re))
}

/// Output amplitude spectrum for far-detuned propagation,
/// S_out(omega) = 1 - (1 - s_in) e^{-2 Re alpha'(omega)}.
pub fn s_out_raman(omega: f64, s_in: f64, v: &ValidatedParams) -> Result<f64> {
    check_single_pass(v, "s_out_raman")?;
    check_s_in(s_in)?;
    Ok(attenuate(s_in, 2.0 * alpha_raman(omega, v)?.re))
}

/// Output spectrum of whichever quadrature couples to the medium, selected by
/// the validated scheme.
pub fn s_out(omega: f64, s_in: f64, v: &ValidatedParams) -> Result<f64> {
    match v.scheme {
        Scheme::SinglePassEit => s_out_eit(omega, s_in, v),
        Scheme::SinglePassRaman => s_out_raman(omega, s_in, v),
        _ => Err(Error::SchemeMismatch {
            operation: "s_out",
            scheme: v.scheme,
        }),
    }
}

/// Output spectrum of the conjugate (phase) quadrature for a
/// minimum-uncertainty input: the same attenuation law applied to the
/// companion input 1/s_in.
pub fn conjugate_quadrature_spectrum(omega: f64, s_in: f64, v: &ValidatedParams) -> Result<f64> {
    check_s_in(s_in)?;
    s_out(omega, 1.0 / s_in, v)
}

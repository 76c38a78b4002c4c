//! Cavity-configuration quantities for comparison with single pass:
//! effective ground-state linewidths, the intracavity transfer coefficient
//! of the input field, output-field frequency limits, and cavity transfer
//! efficiencies. Only the input-field channel is modeled; the atomic noise
//! entering the cavity output is outside the scope of this comparison.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::ValidatedParams;

fn check_cavity(v: &ValidatedParams, operation: &'static str) -> Result<f64> {
    if !v.scheme.is_cavity() {
        return Err(Error::SchemeMismatch {
            operation,
            scheme: v.scheme,
        });
    }
    v.cavity_t_required()
}

/// Effective ground-state linewidth seen by the collective spin:
/// gamma0 + Gamma_E/(1+2C) on resonance, gamma0 + (1+2C) Gamma_R detuned.
pub fn effective_linewidth(v: &ValidatedParams) -> Result<f64> {
    check_cavity(v, "effective_linewidth")?;
    let c = v.cooperativity;
    if v.scheme.is_raman() {
        let gr = v.gamma_r_required()?;
        Ok(v.gamma0() + (1.0 + 2.0 * c) * gr)
    } else {
        Ok(v.gamma0() + v.gamma_e / (1.0 + 2.0 * c))
    }
}

/// Coefficient of X^in in the intracavity field quadrature.
pub fn intracavity_input_coefficient(omega: f64, v: &ValidatedParams) -> Result<Complex64> {
    let t = check_cavity(v, "intracavity_input_coefficient")?;
    let c = v.cooperativity;
    let lw = effective_linewidth(v)?;
    let lw_pole = Complex64::new(lw, -omega);
    if v.scheme.is_raman() {
        let gr = v.gamma_r_required()?;
        Ok(2.0 / t.sqrt() * Complex64::new(gr, -omega) / lw_pole)
    } else {
        let resonant = Complex64::new(1.0, 0.0) + 2.0 * c * lw / lw_pole;
        Ok(2.0 / t.sqrt() / (1.0 + 2.0 * c) * resonant)
    }
}

/// Coefficient of X^in in the output field, X^out = sqrt(T) X - X^in.
/// Tends to +1 where the output follows the input and -1 where the cavity
/// reflects it.
pub fn output_field_coefficient(omega: f64, v: &ValidatedParams) -> Result<Complex64> {
    let t = check_cavity(v, "output_field_coefficient")?;
    Ok(t.sqrt() * intracavity_input_coefficient(omega, v)? - 1.0)
}

/// Cavity transfer efficiency: resonant scheme
/// [2C/(1+2C)] [Gamma_E/(1+2C)]/[gamma0 + Gamma_E/(1+2C)]; detuned scheme
/// 2 C~/(1+2 C~) with the reduced cooperativity C~ = C Gamma_R/(Gamma_R+gamma0).
pub fn efficiency_cavity(v: &ValidatedParams) -> Result<f64> {
    check_cavity(v, "efficiency_cavity")?;
    let c = v.cooperativity;
    if v.scheme.is_raman() {
        let gr = v.gamma_r_required()?;
        let reduced = c * gr / (gr + v.gamma0());
        Ok(2.0 * reduced / (1.0 + 2.0 * reduced))
    } else {
        let pump = v.gamma_e / (1.0 + 2.0 * c);
        Ok(2.0 * c / (1.0 + 2.0 * c) * pump / (v.gamma0() + pump))
    }
}

/// Leading large-C form of the cavity efficiency: resonant
/// 1 - 1/(1+2C) - (1+2C) gamma0/Gamma_E, detuned 1 - 1/(2 C~).
pub fn efficiency_cavity_approx(v: &ValidatedParams) -> Result<f64> {
    check_cavity(v, "efficiency_cavity_approx")?;
    let c = v.cooperativity;
    if v.scheme.is_raman() {
        let gr = v.gamma_r_required()?;
        let reduced = c * gr / (gr + v.gamma0());
        Ok(1.0 - 1.0 / (2.0 * reduced))
    } else {
        Ok(1.0 - 1.0 / (1.0 + 2.0 * c) - (1.0 + 2.0 * c) * v.gamma0() / v.gamma_e)
    }
}

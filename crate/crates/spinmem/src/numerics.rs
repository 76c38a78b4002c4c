//! Numerical workhorses: adaptive quadrature over the whole frequency axis,
//! bracketed root finding, a 1-d maximizer, and an independent grid-based
//! oracle for the atomic noise spectrum.

use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{Scheme, ValidatedParams};

/// Default relative tolerance requested from the adaptive quadrature.
pub const TARGET_REL_TOL: f64 = 1.0e-8;
/// Relative accuracy still accepted when the panel budget runs out.
pub const ACCEPT_REL_TOL: f64 = 1.0e-6;

const MAX_PANELS: usize = 10_000;

/// Converged quadrature value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

// 15-point Kronrod extension of 7-point Gauss, positive abscissae. The
// literals carry the full published precision; parsing truncates to f64.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error).is_eq()
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = WGK[7] * fc;
    let mut resg = WG [3] * fc;
    for (j, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate().take(7) {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        resk += wk * pair;
        if j % 2 == 1 {
            resg += WG[j / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: resk * half,
        error: ((resk - resg) * half).abs(),
    }
}

/// Integrates `f` over the whole real axis to the requested relative
/// tolerance, returning the spectral normalization `\int f d omega / 2 pi`.
///
/// The axis is compactified by `omega = tan(theta)`; all quadrature nodes are
/// interior, so `f` is never evaluated at infinity, but it must decay fast
/// enough (faster than `1/omega`) for the transformed integrand to stay
/// bounded. `seeds` lists frequencies of known structure (linewidths,
/// resonances) used as initial panel boundaries.
pub fn integrate_infinite<F: Fn(f64) -> f64>(
    f: F,
    rel_tol: f64,
    seeds: &[f64],
) -> Result<QuadratureResult> {
    let g = |theta: f64| -> f64 {
        let c = theta.cos();
        let value = f(theta.tan()) / (c * c);
        if value.is_finite() {
            value
        } else {
            // The endpoints map to +-infinity where an integrable spectrum
            // vanishes; a non-finite sample there integrates to nothing.
            0.0
        }
    };

    let mut cuts = vec![-FRAC_PI_2, 0.0, FRAC_PI_2];
    for &s in seeds {
        if s.is_finite() {
            cuts.push(s.atan());
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1.0e-12);

    let mut heap = BinaryHeap::new();
    let mut total_value = 0.0;
    let mut total_error = 0.0;
    let mut evaluations = 0;
    for pair in cuts.windows(2) {
        let panel = gauss_kronrod_15(&g, pair[0], pair[1]);
        evaluations += 15;
        total_value += panel.value;
        total_error += panel.error;
        heap.push(panel);
    }

    let norm = 1.0 / (2.0 * PI);
    loop {
        if total_error <= rel_tol * total_value.abs() {
            return Ok(QuadratureResult {
                value: total_value * norm,
                error_estimate: total_error * norm,
                evaluations,
            });
        }
        if heap.len() >= MAX_PANELS {
            break;
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // The panel is too narrow to bisect in f64; refinement stalls.
            heap.push(worst);
            break;
        }
        let left = gauss_kronrod_15(&g, worst.a, mid);
        let right = gauss_kronrod_15(&g, mid, worst.b);
        evaluations += 30;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    Err(Error::QuadratureFailure {
        estimate: total_value * norm,
        error: total_error * norm,
        tol: rel_tol,
        panels: heap.len(),
    })
}

/// Spectral integral `\int f(omega) d omega / 2 pi` with the two-level
/// tolerance policy: try `target_tol`; if the panel budget runs out, accept
/// the estimate anyway when it already meets `accept_tol`.
pub fn spectral_integral<F: Fn(f64) -> f64>(
    f: F,
    target_tol: f64,
    accept_tol: f64,
    seeds: &[f64],
) -> Result<f64> {
    match integrate_infinite(f, target_tol, seeds) {
        Ok(q) => Ok(q.value),
        Err(Error::QuadratureFailure { estimate, error, .. })
            if estimate.is_finite() && error <= accept_tol * estimate.abs() =>
        {
            Ok(estimate)
        }
        Err(e) => Err(e),
    }
}

/// Bisection on a bracketing interval, to a relative width tolerance.
pub fn find_root_bracketed<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let fa = f(a);
    if fa == 0.0 {
        return Ok(a);
    }
    let fb = f(b);
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::NoBracket { lo, hi });
    }
    let mut sign_a = fa.signum();
    let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if (b - a).abs() <= rel_tol * scale || !(mid > a.min(b) && mid < a.max(b)) {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == sign_a {
            a = mid;
            sign_a = fm.signum();
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Golden-section search for the maximum of a unimodal function.
/// Returns the argmax and the value there. A degenerate interval `lo == hi`
/// is answered directly.
pub fn golden_section_max<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
) -> Result<(f64, f64)> {
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::BoundsError {
            lo,
            hi,
            reason: "maximizer needs a finite interval with lo <= hi",
        });
    }
    if lo == hi {
        return Ok((lo, f(lo)));
    }
    let invphi = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - invphi * (b - a);
    let mut d = a + invphi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    for _ in 0..300 {
        if (b - a).abs() <= rel_tol * scale {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)))
}

/// Normalized atomic noise spectrum computed by explicit spatial propagation
/// on a grid, with an internal slice-doubling convergence check.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSpectrum {
    /// Spectrum values, in units of the coherent-state variance N/4.
    pub values: Vec<f64>,
    /// Largest relative change between the half- and full-resolution runs.
    pub max_rel_change: f64,
    /// True when the doubling check exceeded 0.5 percent anywhere.
    pub convergence_warning: bool,
}

// (1 - e^{-x})/x, stable for small |x|.
fn em1_over(x: Complex64) -> Complex64 {
    if x.norm() < 1.0e-6 {
        return Complex64::new(1.0, 0.0) - x / 2.0 + x * x / 6.0 - x * x * x / 24.0;
    }
    (Complex64::new(1.0, 0.0) - (-x).exp()) / x
}

// (1 - em1_over(x))/x, stable for small |x|.
fn i1_over(x: Complex64) -> Complex64 {
    if x.norm() < 1.0e-6 {
        return Complex64::new(0.5, 0.0) - x / 6.0 + x * x / 24.0 - x * x * x / 120.0;
    }
    (Complex64::new(1.0, 0.0) - em1_over(x)) / x
}

struct OracleSource {
    diffusion: f64,
    direct: Complex64,
    feed: Complex64,
}

struct OracleSlice {
    kappa: Complex64,
    field_in: Complex64,
    sources: Vec<OracleSource>,
}

// Per-frequency propagation coefficients in the fake normalization N = 1,
// L = 1, c = 1/transit, where g^2 N keeps its physical value C gamma/transit.
// These are computed from scratch here, independent of the closed-form
// kernels, so the two routes share no code.
fn oracle_slice(w: f64, v: &ValidatedParams, gamma_r: Option<f64>) -> OracleSlice {
    let p = &v.params;
    let tau = p.transit;
    let c = v.cooperativity;
    let iw = Complex64::new(0.0, w);
    let vacuum = -iw * tau;
    if let Some(gr) = gamma_r {
        let gt = (c * gr / tau).sqrt();
        let dd = Complex64::new(gr + p.gamma0, -w);
        OracleSlice {
            kappa: vacuum + c * gr / dd,
            field_in: (gt / 2.0) / dd,
            sources: vec![OracleSource {
                diffusion: (gr + p.gamma0) / 2.0,
                direct: 1.0 / dd,
                feed: -(2.0 * gt * tau) / dd,
            }],
        }
    } else {
        let g = (c * p.gamma / tau).sqrt();
        let om = p.omega_rabi;
        let dd = (Complex64::new(p.gamma, -w)) * (Complex64::new(p.gamma0, -w)) + om * om;
        OracleSlice {
            kappa: vacuum + c * p.gamma * Complex64::new(p.gamma0, -w) / dd,
            field_in: -(g * om / 2.0) / dd,
            sources: vec![
                OracleSource {
                    diffusion: p.gamma / 2.0,
                    direct: -om / dd,
                    feed: -(2.0 * g * tau) * Complex64::new(p.gamma0, -w) / dd,
                },
                OracleSource {
                    diffusion: p.gamma0 / 2.0,
                    direct: Complex64::new(p.gamma, -w) / dd,
                    feed: -(2.0 * g * tau) * om / dd,
                },
            ],
        }
    }
}

fn oracle_value(slice: &OracleSlice, s_in: f64, tau: f64, m: usize) -> f64 {
    let dz = 1.0 / m as f64;
    let kdz = slice.kappa * dz;
    let edz = (-kdz).exp();
    let decay_gain = em1_over(kdz);

    // Suffix sums T_j = sum_{p=0}^{m-2-j} edz^p, accumulated back to front.
    let mut suffix = vec![Complex64::new(0.0, 0.0); m];
    for j in (0..m.saturating_sub(1)).rev() {
        suffix[j] = Complex64::new(1.0, 0.0) + edz * suffix[j + 1];
    }

    // Exact input-field coefficient: the slice sum collapses analytically.
    let cin = slice.field_in * em1_over(slice.kappa);
    let mut s = cin.norm_sqr() * tau * s_in;

    for source in &slice.sources {
        let variance = source.diffusion / dz;
        for &t in suffix.iter().take(m) {
            // Noise born in one slice reaches the spin directly and again
            // through the field it radiates into every downstream slice.
            let field_path = source.feed * (dz * i1_over(kdz) + dz * decay_gain * decay_gain * t);
            let coeff = dz * (source.direct + slice.field_in * field_path);
            s += coeff.norm_sqr() * variance;
        }
    }
    4.0 * s
}

/// Computes the normalized spin noise spectrum on `omega_grid` by direct
/// numerical propagation through `slices` spatial slices, then repeats at
/// twice the resolution and reports the larger-resolution values together
/// with the observed relative drift.
pub fn grid_oracle_spin_spectrum(
    omega_grid: &[f64],
    s_in: f64,
    v: &ValidatedParams,
    slices: usize,
) -> Result<OracleSpectrum> {
    if v.scheme.is_cavity() {
        return Err(Error::SchemeMismatch {
            operation: "grid_oracle_spin_spectrum",
            scheme: v.scheme,
        });
    }
    if s_in <= 0.0 || s_in.is_nan() {
        return Err(Error::NonPositiveParameter {
            name: "s_in",
            requirement: "> 0",
            value: s_in,
        });
    }
    if slices < 2 {
        return Err(Error::InvalidGrid(format!(
            "oracle needs at least 2 spatial slices, got {slices}"
        )));
    }
    let gamma_r = if v.scheme == Scheme::SinglePassRaman {
        Some(v.gamma_r_required()?)
    } else {
        None
    };
    let tau = v.transit();

    let mut coarse = Vec::with_capacity(omega_grid.len());
    let mut fine = Vec::with_capacity(omega_grid.len());
    for &w in omega_grid {
        let slice = oracle_slice(w, v, gamma_r);
        coarse.push(oracle_value(&slice, s_in, tau, slices));
        fine.push(oracle_value(&slice, s_in, tau, 2 * slices));
    }

    let mut max_rel_change: f64 = 0.0;
    for (lo, hi) in coarse.iter().zip(fine.iter()) {
        let scale = hi.abs().max(f64::MIN_POSITIVE);
        max_rel_change = max_rel_change.max((hi - lo).abs() / scale);
    }
    Ok(OracleSpectrum {
        values: fine,
        max_rel_change,
        convergence_warning: max_rel_change > 5.0e-3,
    })
}

use thiserror::Error;

use crate::params::Scheme;

/// Errors produced by the library and surfaced by the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter `{name}` must be {requirement}, got {value}")]
    NonPositiveParameter {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    #[error("cavity scheme requires the output mirror transmission `cavity_T` in (0, 1]")]
    MissingCavityTransmission,

    #[error("Raman pumping rate requested but the one-photon detuning `delta1` is zero")]
    MissingDetuning,

    #[error(
        "no transparency window: half-absorption condition has no root \
         (C*gamma0 = {c_gamma0} vs Gamma_E = {gamma_e})"
    )]
    NoWindow { c_gamma0: f64, gamma_e: f64 },

    #[error(
        "sum rule violated: integral of B_f + B_coh + B_spin is {integral}, \
         off by {deviation:+e} with tolerance {tol:e}"
    )]
    SumRuleViolation {
        integral: f64,
        deviation: f64,
        tol: f64,
    },

    #[error(
        "quadrature stalled at {panels} panels: estimate {estimate}, \
         error estimate {error:e} above relative tolerance {tol:e}"
    )]
    QuadratureFailure {
        estimate: f64,
        error: f64,
        tol: f64,
        panels: usize,
    },

    #[error("root is not bracketed: g({lo}) and g({hi}) have the same sign")]
    NoBracket { lo: f64, hi: f64 },

    #[error("unknown figure `{0}`, expected one of fig1..fig5")]
    UnknownFigure(String),

    #[error("invalid optimization bounds [{lo}, {hi}]: {reason}")]
    BoundsError {
        lo: f64,
        hi: f64,
        reason: &'static str,
    },

    #[error("operation `{operation}` does not apply to scheme `{scheme}`")]
    SchemeMismatch {
        operation: &'static str,
        scheme: Scheme,
    },

    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),

    #[error("config parse error at line {line}: {message}")]
    ConfigParse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

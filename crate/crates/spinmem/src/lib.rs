//! Squeezing transfer from a traveling probe field to the collective spin of
//! an atomic ensemble.
//!
//! The model is a three-level Lambda medium driven by a classical control
//! field and probed by broadband squeezed vacuum on the adjacent transition.
//! Two coupling schemes are covered, each in a single-pass and a cavity
//! variant:
//!
//! * resonant coupling, where electromagnetically induced transparency opens
//!   a narrow window in which the probe propagates without absorption while
//!   its fluctuations are written onto the ground-state coherence;
//! * far-detuned Raman coupling, where an absorption line of width set by
//!   the optical pumping rate plays the same role.
//!
//! The crate computes, in units of the optical linewidth `gamma`:
//!
//! * complex propagation exponents and transfer functions of the medium
//!   ([`transfer`]), including group delay and the transparency or
//!   absorption widths;
//! * outgoing quadrature noise spectra of the probe ([`field`]);
//! * the spin-noise spectrum of the ensemble, split into the contributions
//!   fed by the incoming field and by the two atomic noise sources
//!   ([`atomic`]), together with transfer efficiencies and their
//!   large-cooperativity asymptotics;
//! * the intracavity versions of both schemes ([`cavity`]);
//! * an independent propagation-grid oracle and the adaptive quadrature,
//!   root finding, and scalar optimization underneath ([`numerics`]).
//!
//! The [`cli`] module drives all of it from a command line: spectra, sweeps,
//! reference figure datasets, and a pumping optimizer, serialized as CSV
//! with a parseable metadata header or as JSON.

pub mod atomic;
pub mod cavity;
pub mod cli;
pub mod error;
pub mod field;
pub mod numerics;
pub mod params;
pub mod transfer;

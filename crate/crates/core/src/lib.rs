//! Boolean functions as Bell inequalities.
//!
//! Modules:
//!
//! * [`boolfn`]: truth tables, the `b_n` numbering, Möbius transform, degree.
//! * [`spectral`]: Walsh-Hadamard spectra, nonlinearity, autocorrelation, uncertainty.
//! * [`bell`]: Bell-inequality coefficients, maximal quantum violation, Mermin functions.
//! * [`equivalence`]: the symmetry group of Bell inequalities and orbit classification.
//! * [`polya`]: exact cycle-index counting for the Jevons group.
//! * [`viz`]: square-grid pictures of the whole function space.

pub mod bell;
pub mod boolfn;
pub mod equivalence;
mod error;
pub mod polya;
pub mod spectral;
pub mod viz;

pub use error::{Error, Result};

/// Largest arity for which a function index `B_n(f)` fits in a `u64`.
pub const MAX_INDEX_ARITY: usize = 6;

/// Largest arity accepted by exhaustive sweeps over all of `F_n`.
pub const MAX_SWEEP_ARITY: usize = 4;

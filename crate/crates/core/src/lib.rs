//! Certified lower bounds for extreme values of trigonometric series with
//! nonnegative Fourier coefficients, via the resonance method.
//!
//! The crate is organized around a small set of building blocks:
//!
//! * [`kernels`] — the Fejér kernel, the Gaussian, and their Fourier
//!   transforms as pure scalar functions.
//! * [`series`] — finite trigonometric series `F(x) = Σ f(n) e(λ_n x)`,
//!   their smoothed companions, and the convolution defect term.
//! * [`resonator`] — subset-sum resonators, the closed forms for the
//!   resonance integrals `J1`/`J2`, the per-frequency lemma check, and
//!   certified lower-bound reports.
//! * [`lattice`] — divisor/two-squares sieves, the error terms of the
//!   divisor and circle problems, and the truncated oscillatory series
//!   with frequencies `2√n`.
//! * [`kronecker`] — simultaneous approximation: the Bohr–Jessen kernel
//!   product, exact minimal lattice combinations `δ(L, N)`, Chen's bound,
//!   and a certified solver.
//! * [`extremes`] — Lipschitz-certified grid scans, level-set measures,
//!   and the end-to-end theorem verifiers.
//!
//! Everything is plain `f64` double precision. All bounds reported as
//! "certified" replace asymptotic error terms by explicitly computed
//! brackets, so every inequality in a report is machine-checkable.

pub mod error;
pub mod extremes;
pub mod kernels;
pub mod kronecker;
pub mod lattice;
pub mod resonator;
pub mod series;

pub use error::Error;
pub use extremes::{LevelSetEstimate, ScanResult, Theorem1Report, Theorem2Report};
pub use kronecker::KroneckerInstance;
pub use lattice::LatticeTables;
pub use resonator::{ResonanceReport, Resonator, ResonatorConfig, TheoremMode};
pub use series::{ComplexTrigSeries, SmoothedSeries, TrigSeries};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

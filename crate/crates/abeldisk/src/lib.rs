//! Recovery of real functions on `[-π, π]` from their Fourier coefficients.
//!
//! The coefficients `a_1..a_K` of a zero-average, definite-parity real
//! function double as the Taylor coefficients of the complex power series
//! `w(z) = Σ a_k z^k` on the open unit disk. Whenever the coefficients do
//! not diverge exponentially fast, that series converges to an analytic
//! function inside the disk, and the boundary function is recovered almost
//! everywhere as the radial limit `ρ → 1` of its real part (cosine series)
//! or imaginary part (sine series) — even when the trigonometric series
//! itself diverges on the circle.
//!
//! The crate is organized as a pipeline:
//!
//! - [`functions`] — catalog and sample-table function sources, parity
//!   splitting and zero-average normalization;
//! - [`quadrature`] — composite Gauss–Legendre integration with dyadic
//!   refinement toward declared singular points (improper integrals);
//! - [`coeffs`] — Fourier coefficient computation and the coefficient
//!   sequence interchange type;
//! - [`growth`] — classification of coefficient sequences against the
//!   ratio-bound and sub-exponential growth conditions;
//! - [`disk`] — power series evaluation inside the disk and radial-limit
//!   reconstruction with polynomial extrapolation in `1 − ρ`;
//! - [`kernels`] — the closed-form delta kernel (simple pole on the
//!   circle), its Poisson real part, and the completeness/uniqueness
//!   harnesses;
//! - [`verify`] — the end-to-end verification battery used by the CLI
//!   `verify` subcommand and the acceptance test suite.
//!
//! # Example
//!
//! Recover the square wave from its sine coefficients. The Fourier series
//! itself converges slowly near the jumps; the radial limit is accurate
//! away from them:
//!
//! ```
//! use abeldisk::{Catalog, LadderConfig, PeriodicFunction, QuadratureConfig, SeriesKind};
//!
//! let f = PeriodicFunction::catalog(Catalog::SquareWave);
//! let seq = abeldisk::fourier_coefficients(&f, SeriesKind::Sine, 256, &QuadratureConfig::default())?;
//! let grid = abeldisk::disk::uniform_grid(64);
//! let rec = abeldisk::reconstruct(&seq, &grid, &LadderConfig::default())?;
//! let stats = abeldisk::compare_to_oracle(&rec, &f, 0.3)?;
//! assert!(stats.max_abs < 0.05);
//! # Ok::<(), abeldisk::Error>(())
//! ```

pub mod coeffs;
pub mod disk;
pub mod error;
pub mod functions;
pub mod growth;
pub mod kernels;
pub mod quadrature;
pub mod verify;

pub use coeffs::{fourier_coefficients, verify_zero_average, CoefficientSequence, Generator, Provenance, SeriesKind};
pub use disk::{
    compare_to_oracle, conjugate_reconstruct, evaluate_series, reconstruct, DiskPoint, ErrorStats,
    InnerAnalyticEvaluation, LadderConfig, ReconstructionResult,
};
pub use error::{Error, Result};
pub use functions::{split_parity, Catalog, Parity, ParityPair, PeriodicFunction, SampleTable};
pub use growth::{
    bounded_check, damping_profile, log_linear_threshold, ratio_bound_check, subexponential_check,
    GrowthReport, ThresholdResult, Verdict,
};
pub use kernels::{
    delta_kernel, delta_taylor_sequence, dirichlet_partial_sum, evaluate_kernel,
    kernel_series_consistency, reproducing_test, uniqueness_harness, ExtendedInnerAnalytic,
    UniquenessReport,
};
pub use quadrature::QuadratureConfig;

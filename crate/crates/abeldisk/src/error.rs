//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Evaluation was requested exactly at a declared singular point.
    #[error("singular-point evaluation at theta = {0}")]
    SingularPoint(f64),

    /// An argument left its allowed domain (angle outside `[-π, π]`,
    /// `ρ ≥ 1`, non-positive tolerance, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Dyadic refinement toward a singular point did not settle: successive
    /// refinement levels still differ by more than the tolerance at the
    /// maximum depth, signaling a non-integrable singularity.
    #[error(
        "improper integral did not converge: refinement correction {last_correction:.3e} \
         exceeds tolerance {tol:.3e} at depth {depth}"
    )]
    ImproperIntegral {
        last_correction: f64,
        tol: f64,
        depth: usize,
    },

    /// The integrand produced a non-finite sample, typically an undeclared
    /// (or non-integrable) singularity.
    #[error("non-finite integrand sample near theta = {0}")]
    NonFiniteSample(f64),

    /// The requested series tail bound cannot be met with the available
    /// terms; carries the bound that was achieved.
    #[error("truncation error above tolerance: achieved tail bound {achieved:.3e}, requested {requested:.3e}")]
    Truncation { achieved: f64, requested: f64 },

    /// Reconstruction was refused because the coefficient sequence did not
    /// pass the sub-exponential growth check.
    #[error(
        "growth gate refused: estimated exponential rate {rate:.6} exceeds tolerance {tol}; \
         the series may diverge too fast for radial-limit recovery (override to proceed)"
    )]
    GrowthGate { rate: f64, tol: f64 },

    #[error("parity error: {0}")]
    Parity(String),

    /// `compare_to_oracle` was left with no grid points after exclusion.
    #[error("exclusion too aggressive: no grid points remain outside the excluded neighborhoods")]
    EmptyComparison,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

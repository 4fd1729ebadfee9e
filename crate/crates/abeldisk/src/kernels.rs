//! Closed-form extended inner analytic functions for singular objects —
//! the delta kernel — plus the completeness and uniqueness harnesses.
//!
//! The delta kernel at boundary angle θ₁ is
//! `w_δ(z) = 1/(2π) − (1/π) · z/(z − z₁)` with `z₁ = e^{iθ₁}`: analytic on
//! the whole open disk with a simple pole exactly on the circle. Its real
//! part is the Poisson kernel, so radial limits concentrate at θ₁ while
//! every circle integral stays 1. The Taylor coefficients of the
//! non-constant part at θ₁ = 0 are the constant sequence `a_k = 1/π` — a
//! sequence no integrable function can produce, yet still admissible for
//! the disk construction.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coeffs::{CoefficientSequence, Generator, Provenance, SeriesKind};
use crate::disk::{self, DiskPoint, InnerAnalyticEvaluation, LadderConfig};
use crate::error::{Error, Result};
use crate::functions::{Parity, PeriodicFunction};
use crate::quadrature::{self, QuadratureConfig};

/// The delta kernel `w_δ`: an inner analytic function with a simple pole
/// at `e^{iθ₁}` on the unit circle, plus an additive constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedInnerAnalytic {
    theta1: f64,
    additive_constant: f64,
}

/// Builds the delta kernel concentrated at boundary angle `theta1`.
pub fn delta_kernel(theta1: f64) -> Result<ExtendedInnerAnalytic> {
    if !theta1.is_finite() || !(-PI..=PI).contains(&theta1) {
        return Err(Error::Domain(format!("theta1 = {theta1} outside [-pi, pi]")));
    }
    Ok(ExtendedInnerAnalytic { theta1, additive_constant: 1.0 / (2.0 * PI) })
}

impl ExtendedInnerAnalytic {
    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn additive_constant(&self) -> f64 {
        self.additive_constant
    }

    fn pole(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta1)
    }

    /// `|z − z₁|²` written as `(1−ρ)² + 4ρ sin²(Δ/2)`: `1−ρ` subtracts
    /// exactly for ρ ≥ 1/2, so the form stays accurate arbitrarily close
    /// to the pole, where the naive `1 − 2ρcosΔ + ρ²` cancels.
    fn pole_distance_sq(rho: f64, delta: f64) -> f64 {
        let one_minus_rho = 1.0 - rho;
        let s = (delta / 2.0).sin();
        one_minus_rho * one_minus_rho + 4.0 * rho * s * s
    }

    /// Closed-form value at a disk point; no truncation is involved.
    pub fn eval(&self, p: DiskPoint) -> InnerAnalyticEvaluation {
        let rho = p.rho();
        let delta = p.theta() - self.theta1;
        let d_sq = Self::pole_distance_sq(rho, delta);
        // z/(z−z₁) = ρ(ρ − e^{-iΔ})/|z−z₁|², and ρ − cosΔ = 2sin²(Δ/2) − (1−ρ)
        let s = (delta / 2.0).sin();
        let re_num = rho * (2.0 * s * s - (1.0 - rho));
        let im_num = rho * delta.sin();
        InnerAnalyticEvaluation {
            real_part: self.additive_constant - re_num / (PI * d_sq),
            imag_part: im_num / (PI * d_sq),
            terms_used: 0,
            tail_bound: 0.0,
        }
    }

    /// The real part in closed Poisson form,
    /// `(1/2π)(1 − ρ²)/(1 − 2ρcos(θ−θ₁) + ρ²)`.
    pub fn poisson_real(&self, rho: f64, theta: f64) -> f64 {
        let d_sq = Self::pole_distance_sq(rho, theta - self.theta1);
        (1.0 - rho) * (1.0 + rho) / d_sq / (2.0 * PI)
    }

    /// Truncated Taylor evaluation `c + (1/π) Σ_{k≤K} (z/z₁)^k`.
    fn taylor_eval(&self, k_terms: usize, p: DiskPoint) -> Complex64 {
        let z = Complex64::from_polar(p.rho(), p.theta());
        let ratio = z / self.pole();
        let mut acc = Complex64::new(0.0, 0.0);
        for _ in 0..k_terms {
            acc = (acc + 1.0) * ratio;
        }
        Complex64::new(self.additive_constant, 0.0) + acc / PI
    }
}

/// Closed-form evaluation of the kernel (the Poisson kernel is its real
/// part). `tail_bound` is 0: nothing is truncated.
pub fn evaluate_kernel(w: &ExtendedInnerAnalytic, p: DiskPoint) -> InnerAnalyticEvaluation {
    w.eval(p)
}

/// The Taylor coefficient sequence of the kernel's non-constant part at
/// θ₁ = 0: the constant sequence `a_k = 1/π`.
pub fn delta_taylor_sequence(k_max: usize) -> CoefficientSequence {
    CoefficientSequence::synthetic(SeriesKind::Cosine, Generator::DeltaTaylor, k_max)
        .expect("constant sequence is always valid")
        .with_provenance(Provenance::KernelExpansion)
}

/// |closed form − truncated Taylor series| at a disk point. The result is
/// bounded by the geometric tail `ρ^{K+1}/(π(1−ρ))`; the bound is tight in
/// the pole direction.
pub fn kernel_series_consistency(w: &ExtendedInnerAnalytic, k_terms: usize, p: DiskPoint) -> f64 {
    let closed = w.eval(p);
    let series = w.taylor_eval(k_terms, p);
    (Complex64::new(closed.real_part, closed.imag_part) - series).norm()
}

/// Abel-regularized action of the completeness relation:
/// `∫ g(θ) · Re[w_δ(ρ e^{iθ})] dθ`, which approaches `g(θ₁)` as `ρ → 1`.
pub fn reproducing_test(
    g: &PeriodicFunction,
    theta1: f64,
    rho: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let kernel = delta_kernel(theta1)?;
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::Domain(format!("open disk only: rho = {rho}")));
    }
    let breaks = g.breakpoints();
    // the kernel peak at θ₁ needs the same geometric panel refinement as a
    // singularity, even though the integrand is finite
    let mut refine = g.singular_points().to_vec();
    refine.push(theta1);
    let freq = g.osc_hint() + 1.0;
    let integrand = move |theta: f64| g.eval_raw(theta) * kernel.poisson_real(rho, theta);
    quadrature::integrate(&integrand, -PI, PI, &breaks, &refine, freq, cfg)
}

/// Dirichlet partial sum of the completeness relation,
/// `1/(2π) + (1/π) Σ_{k≤K} cos(k(θ−θ₁))`. Exposed for demonstration only:
/// the full series diverges pointwise and nothing here asserts convergence.
pub fn dirichlet_partial_sum(theta: f64, theta1: f64, k_terms: usize) -> f64 {
    let d = theta - theta1;
    let mut acc = 1.0 / (2.0 * PI);
    for k in 1..=k_terms {
        acc += (k as f64 * d).cos() / PI;
    }
    acc
}

/// Outcome of the uniqueness harness on a pair of functions.
#[derive(Debug, Clone, serde::Serialize)]
pub struct UniquenessReport {
    pub kind: SeriesKind,
    /// `max_k |a_k(f1) − a_k(f2)|`.
    pub max_coeff_gap: f64,
    pub coefficients_match: bool,
    /// Max |g| of the difference reconstructed from the gap sequence,
    /// present only when the coefficients matched.
    pub max_reconstructed_abs: Option<f64>,
}

/// Compares the coefficient sequences of two same-parity zero-average
/// functions to index `k_max`. If they agree within tolerance, the
/// difference sequence is reconstructed and its magnitude reported: two
/// functions sharing all coefficients differ at most by a zero-measure
/// function, so the reconstructed difference must vanish.
pub fn uniqueness_harness(
    f1: &PeriodicFunction,
    f2: &PeriodicFunction,
    k_max: usize,
    cfg: &QuadratureConfig,
) -> Result<UniquenessReport> {
    let parity = match (f1.parity(), f2.parity()) {
        (Parity::Even, Parity::Even) => Parity::Even,
        (Parity::Odd, Parity::Odd) => Parity::Odd,
        (p1, p2) => {
            return Err(Error::Parity(format!(
                "uniqueness harness needs two definite-parity functions of the same parity, got {p1:?} and {p2:?}"
            )))
        }
    };
    let kind = if parity == Parity::Even { SeriesKind::Cosine } else { SeriesKind::Sine };
    let s1 = crate::coeffs::fourier_coefficients(f1, kind, k_max, cfg)?;
    let s2 = crate::coeffs::fourier_coefficients(f2, kind, k_max, cfg)?;
    let gaps: Vec<f64> = s1
        .values()
        .iter()
        .zip(s2.values())
        .map(|(a, b)| a - b)
        .collect();
    let max_gap = gaps.iter().fold(0.0f64, |m, g| m.max(g.abs()));
    let matches = max_gap <= cfg.tol;
    let max_reconstructed = if matches {
        let diff = CoefficientSequence::truncated(kind, gaps, Provenance::ComputedFromFunction)?;
        let grid = disk::uniform_grid(65);
        let r = disk::reconstruct(&diff, &grid, &LadderConfig::default())?;
        Some(r.values.iter().fold(0.0f64, |m, v| m.max(v.abs())))
    } else {
        None
    };
    Ok(UniquenessReport {
        kind,
        max_coeff_gap: max_gap,
        coefficients_match: matches,
        max_reconstructed_abs: max_reconstructed,
    })
}

//! Power-series evaluation inside the open unit disk and radial-limit
//! reconstruction.
//!
//! `w(z) = Σ a_k z^k` is evaluated by a complex Horner recurrence with the
//! truncation point chosen from a geometric tail bound: the trailing
//! coefficients are covered by an envelope `M·k^p` (constant for bounded
//! sequences, a fitted power law for growing or decaying ones) so that
//! `|Σ_{k>n} a_k z^k| ≤ M (n+1)^p ρ^{n+1} / (1 − q)` with
//! `q = ρ (1 + 1/(n+1))^{max(p,0)}`. Reconstruction walks the radial
//! ladder `ρ_j = 1 − 2^{-j}` and extrapolates to `ρ = 1` by Neville
//! polynomial extrapolation in `h = 1 − ρ`; the residual between the last
//! two extrapolation orders is the per-point convergence diagnostic.

use std::borrow::Cow;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::coeffs::{CoefficientSequence, Continuation, Generator};
use crate::error::{Error, Result};
use crate::functions::PeriodicFunction;
use crate::growth::{GrowthReport, Verdict, RATE_TOL};

/// Hard cap on generated series terms.
const MAX_TERMS: usize = 4_000_000;
/// Default tail tolerance for single-point evaluation.
const EVAL_TAIL_TOL: f64 = 1e-12;

/// A point of the open unit disk, `z = ρ e^{iθ}` with `ρ < 1` strictly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    rho: f64,
    theta: f64,
}

impl DiskPoint {
    pub fn new(rho: f64, theta: f64) -> Result<DiskPoint> {
        if !(0.0..1.0).contains(&rho) {
            return Err(Error::Domain(format!("open disk only: rho = {rho} must be in [0, 1)")));
        }
        if !theta.is_finite() || !(-PI..=PI).contains(&theta) {
            return Err(Error::Domain(format!("theta = {theta} outside [-pi, pi]")));
        }
        Ok(DiskPoint { rho, theta })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Value of the inner analytic function at one disk point, with the
/// truncation diagnostics behind it.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct InnerAnalyticEvaluation {
    pub real_part: f64,
    pub imag_part: f64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

/// Radial-ladder and extrapolation settings for reconstruction.
#[derive(Debug, Clone)]
pub struct LadderConfig {
    /// Ladder depth `J`: rungs `ρ_j = 1 − 2^{-j}`, `j = 1..=J`.
    pub depth: usize,
    /// Maximum polynomial extrapolation order.
    pub order: usize,
    /// A rung is used only if its series tail bound reaches this.
    pub rung_tail_tol: f64,
    /// Successive extrapolants closer than this mark a point converged.
    pub convergence_tol: f64,
    /// Refuse sequences that fail the sub-exponential check.
    pub enforce_growth_gate: bool,
}

impl Default for LadderConfig {
    fn default() -> Self {
        LadderConfig {
            depth: 10,
            order: 4,
            rung_tail_tol: 1e-8,
            convergence_tol: 1e-7,
            enforce_growth_gate: true,
        }
    }
}

impl LadderConfig {
    fn validate(&self) -> Result<()> {
        if self.depth == 0 || self.depth > 48 {
            return Err(Error::InvalidInput("ladder depth must be in 1..=48".into()));
        }
        if self.order == 0 {
            return Err(Error::InvalidInput("extrapolation order must be >= 1".into()));
        }
        let tols_ok = self.rung_tail_tol > 0.0 && self.convergence_tol > 0.0;
        if !tols_ok {
            return Err(Error::InvalidInput("tolerances must be > 0".into()));
        }
        Ok(())
    }
}

/// Extrapolated boundary values on a θ-grid with per-point diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct ReconstructionResult {
    pub theta_grid: Vec<f64>,
    /// Extrapolated `ρ → 1` values (NaN where no ladder rung was usable).
    pub values: Vec<f64>,
    /// Difference between the last two extrapolation orders.
    pub residuals: Vec<f64>,
    pub converged: Vec<bool>,
    /// The ladder rungs that were actually used (strictly increasing, < 1).
    pub ladder: Vec<f64>,
    pub oracle_error: Option<Vec<f64>>,
}

/// Error statistics of a reconstruction against a function oracle.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ErrorStats {
    pub max_abs: f64,
    pub mean_abs: f64,
    /// Number of grid points compared after exclusion.
    pub count: usize,
}

/// Which part of `w(z)` carries the target function.
#[derive(Debug, Clone, Copy)]
enum Part {
    Real,
    Imag,
}

/// One usable ladder rung: its radius and the materialized coefficients.
type Rung<'a> = (f64, Cow<'a, [f64]>);

fn part_of(kind: crate::coeffs::SeriesKind, conjugate: bool) -> Part {
    use crate::coeffs::SeriesKind::*;
    match (kind, conjugate) {
        (Cosine, false) | (Sine, true) => Part::Real,
        (Sine, false) | (Cosine, true) => Part::Imag,
    }
}

/// Power envelope `|a_k| ≤ c·k^e` describing the unseen tail.
#[derive(Debug, Clone, Copy)]
struct Envelope {
    c: f64,
    e: f64,
    /// Geometric sequences get an exact ratio instead of a power law.
    geometric_ratio: Option<f64>,
}

fn fit_envelope(seq: &CoefficientSequence) -> Envelope {
    match seq.continuation() {
        Continuation::Finite => Envelope { c: 0.0, e: 0.0, geometric_ratio: None },
        Continuation::Extend(g) => match *g {
            Generator::Constant(c) => Envelope { c: c.abs(), e: 0.0, geometric_ratio: None },
            Generator::DeltaTaylor => Envelope { c: 1.0 / PI, e: 0.0, geometric_ratio: None },
            Generator::Power(p) => Envelope { c: 1.0, e: p, geometric_ratio: None },
            Generator::InvPower(p) => Envelope { c: 1.0, e: -p, geometric_ratio: None },
            Generator::Geometric(r) => Envelope { c: r.abs(), e: 0.0, geometric_ratio: Some(r.abs()) },
        },
        Continuation::Estimated => {
            let values = seq.values();
            let k_max = values.len();
            let zero_tol = seq.zero_threshold();
            let from = k_max / 2;
            let pts: Vec<(f64, f64)> = (from.max(1)..=k_max)
                .filter(|&k| values[k - 1].abs() > zero_tol)
                .map(|k| ((k as f64).ln(), values[k - 1].abs().ln()))
                .collect();
            let max_trailing = (from.max(1)..=k_max)
                .map(|k| values[k - 1].abs())
                .fold(0.0f64, f64::max);
            if pts.len() < 4 {
                return Envelope { c: max_trailing, e: 0.0, geometric_ratio: None };
            }
            // least-squares slope of ln|a_k| against ln k
            let n = pts.len() as f64;
            let sx: f64 = pts.iter().map(|p| p.0).sum();
            let sy: f64 = pts.iter().map(|p| p.1).sum();
            let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
            let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
            let denom = n * sxx - sx * sx;
            let e = if denom.abs() < 1e-30 { 0.0 } else { (n * sxy - sx * sy) / denom };
            if !e.is_finite() || e.abs() < 0.25 {
                return Envelope { c: max_trailing, e: 0.0, geometric_ratio: None };
            }
            // scale so the envelope dominates every trailing sample
            let c = pts
                .iter()
                .map(|&(lk, la)| (la - e * lk).exp())
                .fold(0.0f64, f64::max);
            Envelope { c, e, geometric_ratio: None }
        }
    }
}

impl Envelope {
    /// Bound on `|Σ_{k>n} a_k z^k|` at radius ρ, or infinity when the
    /// envelope cannot dominate the geometric growth.
    fn tail_bound(&self, n: usize, rho: f64) -> f64 {
        if self.c == 0.0 {
            return 0.0;
        }
        if rho == 0.0 {
            return 0.0;
        }
        if let Some(r) = self.geometric_ratio {
            let q = r * rho;
            if q >= 1.0 {
                return f64::INFINITY;
            }
            return q.powi(n as i32 + 1) / (1.0 - q);
        }
        let n1 = (n + 1) as f64;
        let q = rho * (1.0 + 1.0 / n1).powf(self.e.max(0.0));
        if q >= 1.0 {
            return f64::INFINITY;
        }
        self.c * n1.powf(self.e) * rho.powf(n1) / (1.0 - q)
    }
}

/// Plans the truncation point: smallest usable `n` with tail ≤ `tol`.
/// Returns `(n, achieved_bound)`; the bound may exceed `tol` when the
/// available terms run out.
fn plan_terms(seq: &CoefficientSequence, rho: f64, tol: f64) -> (usize, f64) {
    let env = fit_envelope(seq);
    let k_max = seq.k_max();
    if rho == 0.0 {
        return (0, 0.0);
    }
    let cap = match seq.continuation() {
        Continuation::Extend(_) => MAX_TERMS,
        _ => k_max,
    };
    if matches!(seq.continuation(), Continuation::Finite) {
        return (k_max, 0.0);
    }
    // exponential search, then refine to the smallest passing n
    let mut n = 8usize.min(cap);
    while env.tail_bound(n, rho) > tol && n < cap {
        n = (n * 2).min(cap);
    }
    let achieved = env.tail_bound(n, rho);
    if achieved > tol {
        return (n, achieved);
    }
    let mut lo = n / 2;
    let mut hi = n;
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if env.tail_bound(mid, rho) <= tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (hi, env.tail_bound(hi, rho))
}

/// Coefficients `a_1..a_n`, materialized past the stored prefix if needed.
fn terms_upto(seq: &CoefficientSequence, n: usize) -> Cow<'_, [f64]> {
    if n <= seq.k_max() {
        Cow::Borrowed(&seq.values()[..n])
    } else {
        Cow::Owned((1..=n).map(|k| seq.term(k)).collect())
    }
}

/// Horner evaluation of `Σ_{k=1..n} a_k z^k`.
fn horner(terms: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &a in terms.iter().rev() {
        acc = acc * z + a;
    }
    acc * z
}

fn eval_with_terms(terms: &[f64], rho: f64, theta: f64) -> Complex64 {
    horner(terms, Complex64::from_polar(rho, theta))
}

/// Evaluates `w(z)` at a disk point with the default `1e-12` tail target.
pub fn evaluate_series(seq: &CoefficientSequence, p: DiskPoint) -> Result<InnerAnalyticEvaluation> {
    evaluate_series_with_tol(seq, p, EVAL_TAIL_TOL)
}

/// Evaluates `w(z)` with an explicit tail tolerance. Errors when the tail
/// bound cannot be met with the available terms, carrying the bound that
/// was achieved.
pub fn evaluate_series_with_tol(
    seq: &CoefficientSequence,
    p: DiskPoint,
    tail_tol: f64,
) -> Result<InnerAnalyticEvaluation> {
    if tail_tol <= 0.0 || tail_tol.is_nan() {
        return Err(Error::InvalidInput("tail tolerance must be > 0".into()));
    }
    let (n, achieved) = plan_terms(seq, p.rho, tail_tol);
    if achieved > tail_tol {
        return Err(Error::Truncation { achieved, requested: tail_tol });
    }
    let terms = terms_upto(seq, n);
    let w = eval_with_terms(&terms, p.rho, p.theta);
    Ok(InnerAnalyticEvaluation {
        real_part: w.re,
        imag_part: w.im,
        terms_used: n,
        tail_bound: achieved,
    })
}

/// Neville polynomial extrapolation to `h = 0` through `(h_i, y_i)`.
fn neville_at_zero(h: &[f64], y: &[f64]) -> f64 {
    let n = h.len();
    let mut tableau = y.to_vec();
    for level in 1..n {
        for i in 0..n - level {
            let (hi, hj) = (h[i], h[i + level]);
            tableau[i] = ((0.0 - hj) * tableau[i] - (0.0 - hi) * tableau[i + 1]) / (hi - hj);
        }
    }
    tableau[0]
}

fn default_window(k_max: usize) -> usize {
    (k_max / 4).clamp(8, 256)
}

/// Sub-exponential gate in front of reconstruction. Short generator-backed
/// prefixes are extended before judging; prefixes too short to analyze are
/// let through (a finite sum converges everywhere).
fn growth_gate(seq: &CoefficientSequence) -> Result<()> {
    let analyzed: Cow<'_, CoefficientSequence> = if seq.k_max() < 64 {
        if let Continuation::Extend(g) = seq.continuation() {
            match CoefficientSequence::synthetic(seq.kind(), *g, 64) {
                Ok(s) => Cow::Owned(s),
                Err(_) => {
                    // extension overflowed f64: diverges violently
                    let k = seq.k_max();
                    let rate = if k >= 2 && seq.values()[k - 2] != 0.0 {
                        (seq.values()[k - 1] / seq.values()[k - 2]).abs().ln()
                    } else {
                        f64::INFINITY
                    };
                    return Err(Error::GrowthGate { rate, tol: RATE_TOL });
                }
            }
        } else {
            Cow::Borrowed(seq)
        }
    } else {
        Cow::Borrowed(seq)
    };
    if analyzed.k_max() < 16 {
        return Ok(());
    }
    let report = GrowthReport::analyze(&analyzed, default_window(analyzed.k_max()))?;
    if report.subexp_condition != Verdict::Pass {
        return Err(Error::GrowthGate {
            rate: report.exp_rate_estimate.unwrap_or(f64::INFINITY),
            tol: RATE_TOL,
        });
    }
    Ok(())
}

fn reconstruct_part(
    seq: &CoefficientSequence,
    theta_grid: &[f64],
    cfg: &LadderConfig,
    part: Part,
) -> Result<ReconstructionResult> {
    cfg.validate()?;
    if theta_grid.is_empty() {
        return Err(Error::InvalidInput("empty theta grid".into()));
    }
    for &t in theta_grid {
        if !t.is_finite() || !(-PI..=PI).contains(&t) {
            return Err(Error::Domain(format!("grid angle {t} outside [-pi, pi]")));
        }
    }
    if cfg.enforce_growth_gate {
        growth_gate(seq)?;
    }

    // Usable rungs: tail bound must reach rung_tail_tol; the bound grows
    // with rho, so the first failing rung ends the ladder.
    let eval_tol = EVAL_TAIL_TOL.min(cfg.rung_tail_tol);
    let mut rungs: Vec<Rung<'_>> = Vec::new();
    for j in 1..=cfg.depth {
        let rho = 1.0 - 0.5f64.powi(j as i32);
        let (n, achieved) = plan_terms(seq, rho, eval_tol);
        if achieved > cfg.rung_tail_tol {
            break;
        }
        rungs.push((rho, terms_upto(seq, n)));
    }
    let ladder: Vec<f64> = rungs.iter().map(|r| r.0).collect();

    let n_grid = theta_grid.len();
    let mut values = vec![f64::NAN; n_grid];
    let mut residuals = vec![f64::INFINITY; n_grid];
    let mut converged = vec![false; n_grid];

    if rungs.len() >= 2 {
        let m = cfg.order.min(rungs.len() - 1);
        let take = m + 1;
        let hs: Vec<f64> = rungs[rungs.len() - take..].iter().map(|r| 1.0 - r.0).collect();
        for (i, &theta) in theta_grid.iter().enumerate() {
            let ys: Vec<f64> = rungs[rungs.len() - take..]
                .iter()
                .map(|(rho, terms)| {
                    let w = eval_with_terms(terms, *rho, theta);
                    match part {
                        Part::Real => w.re,
                        Part::Imag => w.im,
                    }
                })
                .collect();
            let p_m = neville_at_zero(&hs, &ys);
            let p_prev = neville_at_zero(&hs[1..], &ys[1..]);
            values[i] = p_m;
            residuals[i] = (p_m - p_prev).abs();
            converged[i] = residuals[i] < cfg.convergence_tol && p_m.is_finite();
        }
    }

    Ok(ReconstructionResult {
        theta_grid: theta_grid.to_vec(),
        values,
        residuals,
        converged,
        ladder,
        oracle_error: None,
    })
}

/// Recovers the boundary function as the extrapolated `ρ → 1` limit of the
/// parity-appropriate part of `w(z)`: real for cosine sequences, imaginary
/// for sine.
pub fn reconstruct(
    seq: &CoefficientSequence,
    theta_grid: &[f64],
    cfg: &LadderConfig,
) -> Result<ReconstructionResult> {
    reconstruct_part(seq, theta_grid, cfg, part_of(seq.kind(), false))
}

/// Like [`reconstruct`] but takes the other part of `w(z)`, yielding the
/// conjugate function that shares the same coefficients.
pub fn conjugate_reconstruct(
    seq: &CoefficientSequence,
    theta_grid: &[f64],
    cfg: &LadderConfig,
) -> Result<ReconstructionResult> {
    reconstruct_part(seq, theta_grid, cfg, part_of(seq.kind(), true))
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % (2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Max and mean absolute error of a reconstruction against the originating
/// function, over grid points farther than `exclusion_radius` from every
/// jump and singular point.
pub fn compare_to_oracle(
    r: &ReconstructionResult,
    f: &PeriodicFunction,
    exclusion_radius: f64,
) -> Result<ErrorStats> {
    if exclusion_radius < 0.0 || exclusion_radius.is_nan() {
        return Err(Error::Domain("exclusion radius must be >= 0".into()));
    }
    let excluded = f.discontinuities();
    let mut max_abs = 0.0f64;
    let mut sum = 0.0f64;
    let mut count = 0usize;
    for (i, &theta) in r.theta_grid.iter().enumerate() {
        if excluded.iter().any(|&s| circular_distance(theta, s) <= exclusion_radius) {
            continue;
        }
        let err = (r.values[i] - f.eval(theta)?).abs();
        max_abs = max_abs.max(err);
        sum += err;
        count += 1;
    }
    if count == 0 {
        return Err(Error::EmptyComparison);
    }
    Ok(ErrorStats { max_abs, mean_abs: sum / count as f64, count })
}

/// Closed uniform grid on `[-π, π]` with `n ≥ 2` points.
pub fn uniform_grid(n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n).map(|i| -PI + 2.0 * PI * i as f64 / (n - 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{Generator, Provenance, SeriesKind};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn pt(rho: f64, theta: f64) -> DiskPoint {
        DiskPoint::new(rho, theta).unwrap()
    }

    #[test]
    fn disk_point_domain() {
        assert!(DiskPoint::new(1.0, 0.0).is_err());
        assert!(DiskPoint::new(-0.1, 0.0).is_err());
        assert!(DiskPoint::new(0.5, 4.0).is_err());
        assert!(DiskPoint::new(0.0, PI).is_ok());
    }

    #[test]
    fn single_term_series() {
        let seq = CoefficientSequence::polynomial(SeriesKind::Cosine, vec![1.0]).unwrap();
        let ev = evaluate_series(&seq, pt(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(ev.real_part, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(ev.imag_part, 0.0, epsilon = 1e-15);
        assert_eq!(ev.tail_bound, 0.0);
    }

    #[test]
    fn geometric_closed_form() {
        // a_k = 1/π at θ = 0: Σ ρ^k/π = ρ/(π(1−ρ)); at ρ = 1/2 that is 1/π
        let seq = CoefficientSequence::synthetic(SeriesKind::Cosine, Generator::DeltaTaylor, 64).unwrap();
        let ev = evaluate_series(&seq, pt(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(ev.real_part, 1.0 / PI, epsilon = 1e-12);
    }

    #[test]
    fn square_wave_abel_spot_value() {
        // Abel sum oracle: Σ_{k odd} (4/πk) ρ^k sin kθ = (2/π) atan(2ρ sinθ/(1−ρ²))
        let values: Vec<f64> = (1..=400).map(crate::coeffs::square_wave_oracle).collect();
        let seq = CoefficientSequence::polynomial(SeriesKind::Sine, values).unwrap();
        let (rho, theta) = (0.9, PI / 2.0);
        let ev = evaluate_series(&seq, pt(rho, theta)).unwrap();
        let oracle = (2.0 / PI) * (2.0 * rho * theta.sin() / (1.0 - rho * rho)).atan();
        assert_abs_diff_eq!(ev.imag_part, oracle, epsilon = 1e-10);
        assert_abs_diff_eq!(oracle, 0.93300, epsilon = 5e-5);
    }

    #[test]
    fn truncation_error_is_reported() {
        let vals: Vec<f64> = (1..=64).map(|k| 1.0 / k as f64).collect();
        let seq =
            CoefficientSequence::truncated(SeriesKind::Cosine, vals, Provenance::Synthetic).unwrap();
        let err = evaluate_series(&seq, pt(0.999, 0.0)).unwrap_err();
        match err {
            Error::Truncation { achieved, .. } => assert!(achieved > 1e-12),
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn terms_capped_by_prefix_without_generator() {
        let vals: Vec<f64> = (1..=64).map(|k| 1.0 / (k * k) as f64).collect();
        let seq =
            CoefficientSequence::truncated(SeriesKind::Cosine, vals, Provenance::Synthetic).unwrap();
        let ev = evaluate_series(&seq, pt(0.5, 1.0)).unwrap();
        assert!(ev.terms_used <= 64);
    }

    #[test]
    fn reconstruct_single_cosine_is_exact() {
        let seq = CoefficientSequence::polynomial(SeriesKind::Cosine, vec![1.0]).unwrap();
        let grid = uniform_grid(33);
        let r = reconstruct(&seq, &grid, &LadderConfig::default()).unwrap();
        for (i, &theta) in grid.iter().enumerate() {
            assert!(r.converged[i]);
            assert_abs_diff_eq!(r.values[i], theta.cos(), epsilon = 1e-12);
        }
        // ladder strictly increasing, all < 1
        assert!(r.ladder.windows(2).all(|w| w[0] < w[1]));
        assert!(r.ladder.iter().all(|&rho| rho < 1.0));
    }

    #[test]
    fn reconstruct_log_kernel_at_pi() {
        // Σ (−1)^k/k = −ln 2
        let seq = CoefficientSequence::synthetic(SeriesKind::Cosine, Generator::InvPower(1.0), 64).unwrap();
        let r = reconstruct(&seq, &[PI], &LadderConfig::default()).unwrap();
        assert!(r.converged[0]);
        assert_abs_diff_eq!(r.values[0], -(2.0f64.ln()), epsilon = 1e-8);
    }

    #[test]
    fn conjugate_leibniz_value() {
        // conjugate of the a_k = 1/k cosine series at π/2: Σ sin(kπ/2)/k = π/4
        let seq = CoefficientSequence::synthetic(SeriesKind::Cosine, Generator::InvPower(1.0), 64).unwrap();
        let r = conjugate_reconstruct(&seq, &[PI / 2.0], &LadderConfig::default()).unwrap();
        assert_abs_diff_eq!(r.values[0], PI / 4.0, epsilon = 1e-6);
    }

    #[test]
    fn conjugate_of_unit_sequences() {
        let grid = uniform_grid(17);
        let cosine = CoefficientSequence::polynomial(SeriesKind::Cosine, vec![1.0]).unwrap();
        let r = conjugate_reconstruct(&cosine, &grid, &LadderConfig::default()).unwrap();
        for (i, &theta) in grid.iter().enumerate() {
            assert_abs_diff_eq!(r.values[i], theta.sin(), epsilon = 1e-12);
        }
        let sine = CoefficientSequence::polynomial(SeriesKind::Sine, vec![1.0]).unwrap();
        let r = conjugate_reconstruct(&sine, &grid, &LadderConfig::default()).unwrap();
        for (i, &theta) in grid.iter().enumerate() {
            assert_abs_diff_eq!(r.values[i], theta.cos(), epsilon = 1e-12);
        }
    }

    #[test]
    fn output_parity_matches_kind() {
        let m = 16;
        let mut grid = Vec::new();
        for j in 1..=m {
            grid.push(j as f64 * PI / (m as f64 + 1.0));
        }
        let both: Vec<f64> = grid.iter().map(|&t| -t).chain(grid.iter().copied()).collect();

        let sine = CoefficientSequence::synthetic(SeriesKind::Sine, Generator::InvPower(2.0), 32).unwrap();
        let r = reconstruct(&sine, &both, &LadderConfig::default()).unwrap();
        for j in 0..m {
            assert_abs_diff_eq!(r.values[j], -r.values[j + m], epsilon = 1e-13);
        }
        let cosine = CoefficientSequence::synthetic(SeriesKind::Cosine, Generator::InvPower(2.0), 32).unwrap();
        let r = reconstruct(&cosine, &both, &LadderConfig::default()).unwrap();
        for j in 0..m {
            assert_abs_diff_eq!(r.values[j], r.values[j + m], epsilon = 1e-13);
        }
    }

    #[test]
    fn growth_gate_refuses_geometric_two() {
        let seq = CoefficientSequence::synthetic(SeriesKind::Cosine, Generator::Geometric(2.0), 64).unwrap();
        let err = reconstruct(&seq, &[0.5], &LadderConfig::default()).unwrap_err();
        match err {
            Error::GrowthGate { rate, .. } => assert_abs_diff_eq!(rate, 2.0f64.ln(), epsilon = 1e-12),
            other => panic!("expected gate refusal, got {other:?}"),
        }
        // explicit override: proceeds, but nothing converges
        let cfg = LadderConfig { enforce_growth_gate: false, ..LadderConfig::default() };
        let r = reconstruct(&seq, &[0.5], &cfg).unwrap();
        assert!(!r.converged[0]);
    }

    #[test]
    fn abel_consistency_with_absolutely_convergent_series() {
        // Σ |a_k| < ∞: reconstruction agrees with the direct partial-sum limit
        let seq = CoefficientSequence::synthetic(SeriesKind::Cosine, Generator::Geometric(0.5), 64).unwrap();
        let grid = uniform_grid(21);
        let r = reconstruct(&seq, &grid, &LadderConfig::default()).unwrap();
        for (i, &theta) in grid.iter().enumerate() {
            let direct: f64 = (1..=200).map(|k| 0.5f64.powi(k) * (k as f64 * theta).cos()).sum();
            assert_abs_diff_eq!(r.values[i], direct, epsilon = 1e-8);
        }
    }

    #[test]
    fn ladder_values_approach_extrapolant_monotonically() {
        for gen in [None, Some(Generator::Geometric(1.0 / std::f64::consts::E))] {
            let seq = match gen {
                None => CoefficientSequence::polynomial(SeriesKind::Cosine, vec![1.0]).unwrap(),
                Some(g) => CoefficientSequence::synthetic(SeriesKind::Cosine, g, 64).unwrap(),
            };
            let theta = 0.3;
            let cfg = LadderConfig::default();
            let r = reconstruct(&seq, &[theta], &cfg).unwrap();
            let target = r.values[0];
            let mut prev = f64::INFINITY;
            for &rho in &r.ladder {
                let ev = evaluate_series(&seq, pt(rho, theta)).unwrap();
                let gap = (ev.real_part - target).abs();
                assert!(gap <= prev + 1e-15, "rho = {rho}: {gap} > {prev}");
                prev = gap;
            }
        }
    }

    #[test]
    fn compare_to_oracle_on_cosine() {
        let seq = CoefficientSequence::polynomial(SeriesKind::Cosine, vec![1.0]).unwrap();
        let grid = uniform_grid(64);
        let r = reconstruct(&seq, &grid, &LadderConfig::default()).unwrap();
        let f = PeriodicFunction::catalog(crate::functions::Catalog::Cosine(1));
        let stats = compare_to_oracle(&r, &f, 0.0).unwrap();
        assert!(stats.max_abs < 1e-10, "max err {}", stats.max_abs);
        assert_eq!(stats.count, 64);
        // a smooth oracle has nothing to exclude, so any radius keeps all points
        assert_eq!(compare_to_oracle(&r, &f, 10.0).unwrap().count, 64);

        // every point of the circle is within 2 of a square-wave jump
        let sq = PeriodicFunction::catalog(crate::functions::Catalog::SquareWave);
        let err = compare_to_oracle(&r, &sq, 2.0);
        assert!(matches!(err, Err(Error::EmptyComparison)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn horner_matches_naive_summation(
            values in prop::collection::vec(-1.0f64..1.0, 1..512),
            rho in 0.0f64..0.99,
            theta in -PI..PI,
        ) {
            let w = horner(&values, Complex64::from_polar(rho, theta));
            let mut re = 0.0f64;
            let mut im = 0.0f64;
            for (i, &a) in values.iter().enumerate() {
                let k = (i + 1) as f64;
                re += a * rho.powi(i as i32 + 1) * (k * theta).cos();
                im += a * rho.powi(i as i32 + 1) * (k * theta).sin();
            }
            prop_assert!((w.re - re).abs() <= 1e-12 * (1.0 + re.abs()));
            prop_assert!((w.im - im).abs() <= 1e-12 * (1.0 + im.abs()));
        }

        #[test]
        fn neville_recovers_polynomials(
            c0 in -2.0f64..2.0,
            c1 in -2.0f64..2.0,
            c2 in -2.0f64..2.0,
        ) {
            let hs = [0.5, 0.25, 0.125, 0.0625];
            let ys: Vec<f64> = hs.iter().map(|&h| c0 + c1 * h + c2 * h * h).collect();
            let p = neville_at_zero(&hs, &ys);
            prop_assert!((p - c0).abs() < 1e-10);
        }
    }
}

//! Adaptive composite Gauss–Legendre quadrature.
//!
//! The integration domain is cut at every declared breakpoint so that each
//! panel sees a smooth integrand, and panel counts scale with the integrand
//! frequency so that one period of `cos(kθ)` never spans more than one
//! panel. Toward each refinement target (a declared singular point, or the
//! peak of a sharply concentrated kernel) panel widths shrink geometrically
//! with ratio 1/2; the ladder stops when the level-to-level correction
//! drops below the tolerance, and reports a non-convergent improper
//! integral if it has not settled at the maximum depth. Gauss nodes are
//! interior to their panel, so the integrand is never sampled exactly at a
//! panel boundary — in particular never at a singular point.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::functions::PeriodicFunction;

/// Tuning for the quadrature engine.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct QuadratureConfig {
    /// Minimum number of panels across a full period `2π`.
    pub base_panels: usize,
    /// Maximum number of dyadic refinement levels toward a singular point.
    pub refine_depth: usize,
    /// Absolute tolerance for the refinement ladder.
    pub tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { base_panels: 16, refine_depth: 40, tol: 1e-10 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.base_panels < 8 {
            return Err(Error::InvalidInput("base panel count must be >= 8".into()));
        }
        if self.tol <= 0.0 || self.tol.is_nan() {
            return Err(Error::InvalidInput("quadrature tolerance must be > 0".into()));
        }
        Ok(())
    }
}

const GL_ORDER: usize = 16;

struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Legendre P_n and its derivative by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn gauss_legendre(n: usize) -> GaussLegendre {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev initial guess, then Newton.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..64 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    GaussLegendre { nodes, weights }
}

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GL_ORDER))
}

/// One Gauss–Legendre panel on `[a, b]`.
fn gl_panel(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let r = rule();
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = 0.0;
    for (&x, &w) in r.nodes.iter().zip(&r.weights) {
        acc += w * f(c + h * x);
    }
    acc * h
}

/// Composite rule on `[a, b]` with panels sized so neither a period of the
/// oscillation nor the base panel width is exceeded.
fn gl_oscillatory(f: &dyn Fn(f64) -> f64, a: f64, b: f64, freq: f64, cfg: &QuadratureConfig) -> f64 {
    let width = b - a;
    let per_period = (freq.max(0.0) * width / (2.0 * PI)).ceil();
    let per_base = (cfg.base_panels as f64 * width / (2.0 * PI)).ceil();
    let n = per_period.max(per_base).max(1.0) as usize;
    let h = width / n as f64;
    let mut acc = 0.0;
    for i in 0..n {
        acc += gl_panel(f, a + i as f64 * h, a + (i + 1) as f64 * h);
    }
    acc
}

/// Dyadic ladder on `[s, e]` refining toward `s` (`toward_left = true`)
/// or toward `e`. Returns the integral estimate.
///
/// Convergence is judged by a one-panel h-refinement diagnostic on the
/// current sliver (single panel against its two single-panel halves):
/// comparing the accumulated oscillatory pieces directly can alias to
/// exactly zero whenever both levels happen to share panel boundaries.
fn dyadic(
    f: &dyn Fn(f64) -> f64,
    s: f64,
    e: f64,
    toward_left: bool,
    freq: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let width = e - s;
    // sliver(d): the 2^-d fraction of the segment adjacent to the target
    let sliver = |d: usize| -> (f64, f64) {
        let w = width * 0.5f64.powi(d as i32);
        if toward_left {
            (s, s + w)
        } else {
            (e - w, e)
        }
    };
    let mut acc = 0.0;
    let mut tail = gl_oscillatory(f, sliver(0).0, sliver(0).1, freq, cfg);
    if cfg.refine_depth == 0 {
        return Ok(tail);
    }
    let mut small_streak = 0;
    let mut diag = f64::INFINITY;
    for d in 0..cfg.refine_depth {
        let (pa, pb) = sliver(d);
        let (ia, ib) = sliver(d + 1);
        // outer half of the current sliver
        let (oa, ob) = if toward_left { (ib, pb) } else { (pa, ia) };
        let outer = gl_oscillatory(f, oa, ob, freq, cfg);
        let inner = gl_oscillatory(f, ia, ib, freq, cfg);
        acc += outer;
        tail = inner;
        if !acc.is_finite() || !tail.is_finite() {
            return Err(Error::NonFiniteSample(0.5 * (ia + ib)));
        }
        diag = (gl_panel(f, pa, pb) - gl_panel(f, oa, ob) - gl_panel(f, ia, ib)).abs();
        if diag < 0.125 * cfg.tol {
            small_streak += 1;
        } else {
            small_streak = 0;
        }
        if d >= 3 && small_streak >= 2 {
            return Ok(acc + tail);
        }
    }
    if diag >= cfg.tol {
        return Err(Error::ImproperIntegral {
            last_correction: diag,
            tol: cfg.tol,
            depth: cfg.refine_depth,
        });
    }
    Ok(acc + tail)
}

/// Integrates `f` over `[a, b]`.
///
/// `breakpoints` become panel boundaries; panels shrink geometrically
/// toward every point of `refine_toward` (which are also cut points);
/// `freq` is the dominant angular frequency of the integrand.
pub fn integrate(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    refine_toward: &[f64],
    freq: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    cfg.validate()?;
    if a >= b || a.is_nan() || b.is_nan() {
        return Err(Error::Domain(format!("empty integration range [{a}, {b}]")));
    }
    let mut cuts: Vec<f64> = vec![a, b];
    cuts.extend(breakpoints.iter().copied().filter(|x| *x > a && *x < b));
    cuts.extend(refine_toward.iter().copied().filter(|x| *x > a && *x < b));
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup_by(|x, y| (*x - *y).abs() <= 1e-14);

    let is_refined = |x: f64| refine_toward.iter().any(|&r| (r - x).abs() <= 1e-14);

    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (u, v) = (w[0], w[1]);
        let (rl, rr) = (is_refined(u), is_refined(v));
        let piece = match (rl, rr) {
            (false, false) => gl_oscillatory(f, u, v, freq, cfg),
            (true, false) => dyadic(f, u, v, true, freq, cfg)?,
            (false, true) => dyadic(f, u, v, false, freq, cfg)?,
            (true, true) => {
                let m = 0.5 * (u + v);
                dyadic(f, u, m, true, freq, cfg)? + dyadic(f, m, v, false, freq, cfg)?
            }
        };
        if !piece.is_finite() {
            return Err(Error::NonFiniteSample(0.5 * (u + v)));
        }
        total += piece;
    }
    Ok(total)
}

/// Integrates `f(θ)·weight(θ)` over `[-π, π]`, pulling breakpoints,
/// singular points and the oscillation hint from the function itself.
pub fn integrate_function(
    f: &PeriodicFunction,
    weight: &dyn Fn(f64) -> f64,
    weight_freq: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let breaks = f.breakpoints();
    let refine = f.singular_points().to_vec();
    let freq = weight_freq + f.osc_hint();
    let integrand = move |theta: f64| f.eval_raw(theta) * weight(theta);
    integrate(&integrand, -PI, PI, &breaks, &refine, freq, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn nodes_and_weights_are_sane() {
        let r = gauss_legendre(16);
        let sum: f64 = r.weights.iter().sum();
        assert_abs_diff_eq!(sum, 2.0, epsilon = 1e-14);
        // nodes symmetric and inside (-1, 1)
        assert!(r.nodes.iter().all(|x| x.abs() < 1.0));
        let mut sorted = r.nodes.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for i in 0..8 {
            assert_abs_diff_eq!(sorted[i], -sorted[15 - i], epsilon = 1e-14);
        }
    }

    #[test]
    fn polynomial_exactness() {
        // GL-16 integrates degree <= 31 exactly on a single panel.
        let cfg = QuadratureConfig::default();
        let f = |x: f64| x.powi(10) - 3.0 * x.powi(7) + x;
        let exact = 2.0 / 11.0; // odd terms vanish on [-1, 1]
        let got = integrate(&f, -1.0, 1.0, &[], &[], 0.0, &cfg).unwrap();
        assert_abs_diff_eq!(got, exact, epsilon = 1e-14);
    }

    #[test]
    fn oscillatory_orthogonality() {
        let cfg = QuadratureConfig::default();
        for k in [1u32, 7, 40, 64] {
            let f = move |x: f64| (k as f64 * x).cos();
            let got = integrate(&f, -PI, PI, &[], &[], k as f64, &cfg).unwrap();
            assert_abs_diff_eq!(got, 0.0, epsilon = 1e-12);
        }
        let f = |x: f64| (5.0 * x).sin() * (5.0 * x).sin();
        let got = integrate(&f, -PI, PI, &[], &[], 10.0, &cfg).unwrap();
        assert_abs_diff_eq!(got, PI, epsilon = 1e-12);
    }

    #[test]
    fn log_singularity_at_endpoint() {
        let cfg = QuadratureConfig::default();
        let got = integrate(&|x: f64| x.ln(), 0.0, 1.0, &[], &[0.0], 0.0, &cfg).unwrap();
        assert_abs_diff_eq!(got, -1.0, epsilon = cfg.tol);
    }

    #[test]
    fn interior_log_singularity() {
        // ∫ -ln(2|sin(θ/2)|) dθ = 0 over the full period.
        let cfg = QuadratureConfig::default();
        let f = |x: f64| -(2.0 * (x / 2.0).sin().abs()).ln();
        let got = integrate(&f, -PI, PI, &[], &[0.0], 1.0, &cfg).unwrap();
        assert_abs_diff_eq!(got, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn inverse_sqrt_singularity() {
        // the x^{-1/2} slivers shed mass like 2^{-d/2}, so this class
        // needs a deeper ladder than the default to reach a tight tolerance
        let cfg = QuadratureConfig { refine_depth: 64, tol: 1e-8, ..QuadratureConfig::default() };
        let got = integrate(&|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &[], &[0.0], 0.0, &cfg).unwrap();
        assert_abs_diff_eq!(got, 2.0, epsilon = 1e-8);
    }

    #[test]
    fn hard_singularity_is_reported() {
        let cfg = QuadratureConfig::default();
        let err = integrate(&|x: f64| 1.0 / x, 0.0, 1.0, &[], &[0.0], 0.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::ImproperIntegral { .. }), "got {err:?}");
    }

    #[test]
    fn config_validation() {
        let cfg = QuadratureConfig { base_panels: 4, ..QuadratureConfig::default() };
        assert!(cfg.validate().is_err());
        let cfg = QuadratureConfig { tol: 0.0, ..QuadratureConfig::default() };
        assert!(cfg.validate().is_err());
    }
}

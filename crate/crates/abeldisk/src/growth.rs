//! Growth classification of coefficient sequences.
//!
//! Two conditions decide whether a sequence admits an inner analytic
//! function on the open unit disk:
//!
//! - the ratio bound — `|a_{k+1}/a_k|` stays below a function tending to 1;
//! - the sub-exponential condition — `|a_k| e^{-Ck} → 0` for every `C > 0`,
//!   equivalently `limsup ln|a_k|/k ≤ 0`.
//!
//! Asymptotic conditions are undecidable from a finite prefix, so every
//! verdict means "on the trailing evidence window" and the report always
//! carries that window. The sub-exponential verdict governs downstream
//! reconstruction gating.

use serde::Serialize;

use crate::coeffs::CoefficientSequence;
use crate::error::{Error, Result};

/// Tolerance on the exponential-rate estimate `λ`.
pub const RATE_TOL: f64 = 0.02;
/// A ratio estimate persistently above `1 + RATIO_MARGIN` fails.
pub const RATIO_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// Classification of a sequence against both growth conditions, with the
/// numeric evidence behind the verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    pub ratio_condition: Verdict,
    pub subexp_condition: Verdict,
    /// `max ln|a_k|/k` over the window (None if every entry is zero there).
    pub exp_rate_estimate: Option<f64>,
    /// `max |a_{k+1}/a_k|` over the window (None if too few valid ratios).
    pub ratio_limsup_estimate: Option<f64>,
    /// `max_k |a_k|` over the whole prefix.
    pub max_abs_coeff: f64,
    /// Inclusive index range `[start, end]` of the evidence window.
    pub evidence_window: (usize, usize),
}

impl GrowthReport {
    /// Runs both checks over the trailing `window` indices.
    pub fn analyze(seq: &CoefficientSequence, window: usize) -> Result<GrowthReport> {
        let k_max = seq.k_max();
        if window < 8 {
            return Err(Error::InvalidInput("evidence window must be >= 8".into()));
        }
        if k_max < 2 * window {
            return Err(Error::InvalidInput(format!(
                "sequence too short: K = {k_max} but the window needs K >= {}",
                2 * window
            )));
        }
        let values = seq.values();
        let max_abs = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let start = k_max - window + 1;

        // all-zero sequence: trivially representable, pass by convention
        if max_abs == 0.0 {
            return Ok(GrowthReport {
                ratio_condition: Verdict::Pass,
                subexp_condition: Verdict::Pass,
                exp_rate_estimate: None,
                ratio_limsup_estimate: None,
                max_abs_coeff: 0.0,
                evidence_window: (start, k_max),
            });
        }

        // An entry counts as zero when it is negligible next to its
        // neighbors — quadrature noise sitting on an exact zero. The rule
        // is local so that steeply growing or decaying sequences keep all
        // their entries, and it is exactly scale invariant.
        let is_zero = |k: usize| {
            let v = values[k - 1].abs();
            if v == 0.0 {
                return true;
            }
            let mut near = 0.0f64;
            if k >= 2 {
                near = near.max(values[k - 2].abs());
            }
            if k < k_max {
                near = near.max(values[k].abs());
            }
            v <= 1e-9 * near
        };

        // λ = max ln|a_k|/k over the window, zero entries skipped
        let mut rate: Option<f64> = None;
        for k in start..=k_max {
            if !is_zero(k) {
                let r = values[k - 1].abs().ln() / k as f64;
                rate = Some(rate.map_or(r, |m: f64| m.max(r)));
            }
        }
        let subexp = match rate {
            None => Verdict::Pass,
            Some(l) if l <= RATE_TOL => Verdict::Pass,
            Some(_) => Verdict::Fail,
        };

        // ratios |a_{k+1}/a_k| with k and k+1 inside the window
        let mut ratios = Vec::with_capacity(window);
        for k in start..k_max {
            if !is_zero(k) {
                let num = if is_zero(k + 1) { 0.0 } else { values[k].abs() };
                ratios.push(num / values[k - 1].abs());
            }
        }
        let (ratio_verdict, ratio_est) = if ratios.len() < window / 2 {
            (Verdict::Inconclusive, None)
        } else {
            let est = ratios.iter().fold(0.0f64, |m, r| m.max(*r));
            let above = ratios.iter().filter(|r| **r >= 1.0 + RATIO_MARGIN).count();
            let verdict = if est <= 1.0 + RATE_TOL {
                Verdict::Pass
            } else if above >= window / 2 {
                Verdict::Fail
            } else {
                Verdict::Inconclusive
            };
            (verdict, Some(est))
        };

        // A passing ratio bound rules out exponential growth on the window,
        // so a positive rate estimate there reflects overall scale rather
        // than growth: downgrade a would-be fail to inconclusive.
        let subexp = if ratio_verdict == Verdict::Pass && subexp == Verdict::Fail {
            Verdict::Inconclusive
        } else {
            subexp
        };

        Ok(GrowthReport {
            ratio_condition: ratio_verdict,
            subexp_condition: subexp,
            exp_rate_estimate: rate,
            ratio_limsup_estimate: ratio_est,
            max_abs_coeff: max_abs,
            evidence_window: (start, k_max),
        })
    }
}

/// Ratio-bound check alone; see [`GrowthReport::analyze`].
pub fn ratio_bound_check(seq: &CoefficientSequence, window: usize) -> Result<Verdict> {
    Ok(GrowthReport::analyze(seq, window)?.ratio_condition)
}

/// Sub-exponential check alone; see [`GrowthReport::analyze`].
pub fn subexponential_check(seq: &CoefficientSequence, window: usize) -> Result<Verdict> {
    Ok(GrowthReport::analyze(seq, window)?.subexp_condition)
}

/// `|a_k| k^p e^{-Ck}` for `k = 1..=K`: the damped profile that must decay
/// for any sequence passing the sub-exponential check.
pub fn damping_profile(seq: &CoefficientSequence, p: f64, c: f64) -> Vec<f64> {
    seq.values()
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let k = (i + 1) as f64;
            a.abs() * k.powf(p) * (-c * k).exp()
        })
        .collect()
}

/// `max_k |a_k|`: for coefficients of an integrable function this is
/// bounded by `(1/π) ∫ |f| dθ`.
pub fn bounded_check(seq: &CoefficientSequence) -> f64 {
    seq.values().iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Threshold index past which `A·k > ln k`.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdResult {
    pub a: f64,
    /// Smallest integer `k_m ≥ 1` with `A·k > ln k` for all `k ≥ k_m`.
    pub k_m: u64,
    /// Larger root of `A·x = ln x` when one exists (`A ≤ 1/e`).
    pub x2: Option<f64>,
}

/// Analyzes `h(x) = A·x − ln x`: the function has a single minimum at
/// `x₀ = 1/A` with value `1 + ln A`. For `A > 1/e` it is positive
/// everywhere and `k_m = 1`; otherwise the larger root `x₂` is located by
/// bracketed bisection right of `x₀` and `k_m` follows by integer scan.
pub fn log_linear_threshold(a: f64) -> Result<ThresholdResult> {
    if a <= 0.0 || !a.is_finite() {
        return Err(Error::Domain(format!("threshold slope must be positive, got {a}")));
    }
    let h = |x: f64| a * x - x.ln();
    let x0 = 1.0 / a;
    let h_min = 1.0 + a.ln();

    let x2 = if h_min > 1e-12 {
        None
    } else if h_min.abs() <= 1e-12 {
        // double root exactly at the minimum
        Some(x0)
    } else {
        // h is monotone increasing right of x0, so a bracket is guaranteed
        let mut hi = x0 * 10.0f64.max(2.0 / a);
        let mut guard = 0;
        while h(hi) <= 0.0 {
            hi *= 2.0;
            guard += 1;
            if guard > 200 {
                return Err(Error::Domain("failed to bracket the larger root".into()));
            }
        }
        let mut lo = x0;
        while hi - lo > 1e-12 * hi.max(1.0) {
            let mid = 0.5 * (lo + hi);
            if h(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    };

    // smallest integer k_m with h(k) > 0 for every k >= k_m
    let mut k_m = match x2 {
        None => 1u64,
        Some(x) if x < 1.0 => 1,
        Some(x) => x.floor() as u64 + 1,
    };
    while k_m > 1 && h((k_m - 1) as f64) > 0.0 {
        k_m -= 1;
    }

    // confirm by scan up to a cap
    let cap = (2 * k_m).clamp(1024, 10_000_000);
    for k in k_m..=cap {
        if h(k as f64) <= 0.0 {
            return Err(Error::Domain(format!(
                "threshold scan failed at k = {k} for A = {a}"
            )));
        }
    }
    if k_m > 1 && h((k_m - 1) as f64) > 0.0 {
        return Err(Error::Domain("threshold k_m is not minimal".into()));
    }
    Ok(ThresholdResult { a, k_m, x2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{Generator, SeriesKind};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn seq(gen: Generator, k: usize) -> CoefficientSequence {
        CoefficientSequence::synthetic(SeriesKind::Cosine, gen, k).unwrap()
    }

    #[test]
    fn ratio_examples() {
        // 1/k: ratios k/(k+1) < 1
        assert_eq!(ratio_bound_check(&seq(Generator::InvPower(1.0), 64), 16).unwrap(), Verdict::Pass);
        // 2^k: constant ratio 2
        assert_eq!(ratio_bound_check(&seq(Generator::Geometric(2.0), 64), 16).unwrap(), Verdict::Fail);
        // k!: the ratio k+1 grows without bound
        let fact: Vec<f64> = (1..=64u32)
            .scan(1.0f64, |acc, k| {
                *acc *= k as f64;
                Some(*acc)
            })
            .collect();
        let factorial = CoefficientSequence::polynomial(SeriesKind::Cosine, fact).unwrap();
        assert_eq!(ratio_bound_check(&factorial, 16).unwrap(), Verdict::Fail);
    }

    #[test]
    fn subexponential_examples() {
        // the delta sequence a_k = 1/π satisfies the condition
        assert_eq!(
            subexponential_check(&seq(Generator::DeltaTaylor, 64), 16).unwrap(),
            Verdict::Pass
        );
        // polynomial growth is sub-exponential, but only a long window sees it
        assert_eq!(
            subexponential_check(&seq(Generator::Power(3.0), 4096), 256).unwrap(),
            Verdict::Pass
        );
        // 2^k has rate ln 2
        let r = GrowthReport::analyze(&seq(Generator::Geometric(2.0), 64), 16).unwrap();
        assert_eq!(r.subexp_condition, Verdict::Fail);
        assert_abs_diff_eq!(r.exp_rate_estimate.unwrap(), 2.0f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn ratio_pass_shields_subexp_fail() {
        // e^10/k: overall scale inflates the per-index rate estimate on a
        // short window, but the passing ratio bound rules out exponential
        // growth, so the verdict degrades to inconclusive instead of fail
        let vals: Vec<f64> = (1..=64).map(|k| 10f64.exp() / k as f64).collect();
        let s = CoefficientSequence::polynomial(SeriesKind::Cosine, vals).unwrap();
        let r = GrowthReport::analyze(&s, 16).unwrap();
        assert_eq!(r.ratio_condition, Verdict::Pass);
        assert!(r.exp_rate_estimate.unwrap() > RATE_TOL);
        assert_eq!(r.subexp_condition, Verdict::Inconclusive);
    }

    #[test]
    fn rate_estimate_agrees_with_verdict() {
        // pass <=> the rate estimate on the window is within tolerance
        let cases: Vec<CoefficientSequence> = vec![
            seq(Generator::InvPower(1.0), 64),
            seq(Generator::Constant(2.0), 64),
            seq(Generator::Geometric(2.0), 64),
            seq(Generator::Geometric(0.5), 64),
            seq(Generator::Power(2.0), 64),
        ];
        for s in &cases {
            let r = GrowthReport::analyze(s, 16).unwrap();
            let within = r.exp_rate_estimate.is_none_or(|l| l <= RATE_TOL);
            assert_eq!(r.subexp_condition == Verdict::Pass, within, "{r:?}");
        }
    }

    #[test]
    fn all_zero_sequence_passes() {
        let z = CoefficientSequence::polynomial(SeriesKind::Sine, vec![0.0; 32]).unwrap();
        let r = GrowthReport::analyze(&z, 8).unwrap();
        assert_eq!(r.ratio_condition, Verdict::Pass);
        assert_eq!(r.subexp_condition, Verdict::Pass);
        assert_eq!(r.max_abs_coeff, 0.0);
    }

    #[test]
    fn window_preconditions() {
        let s = seq(Generator::Constant(1.0), 16);
        assert!(GrowthReport::analyze(&s, 4).is_err());
        assert!(GrowthReport::analyze(&s, 16).is_err());
        assert!(GrowthReport::analyze(&s, 8).is_ok());
    }

    #[test]
    fn alternating_zeros_are_skipped() {
        // square-wave-like: zeros at even k; ratios with zero denominators
        // are skipped, the rest are 0 -> pass
        let vals: Vec<f64> = (1..=64).map(|k| if k % 2 == 1 { 4.0 / (k as f64) } else { 0.0 }).collect();
        let s = CoefficientSequence::polynomial(SeriesKind::Sine, vals).unwrap();
        let r = GrowthReport::analyze(&s, 16).unwrap();
        assert_eq!(r.ratio_condition, Verdict::Pass);
        assert_eq!(r.subexp_condition, Verdict::Pass);
    }

    #[test]
    fn damping_profile_values() {
        // (1/π) e^{-1} at k = 1, p = 2, C = 1 — direct arithmetic
        let s = seq(Generator::DeltaTaylor, 8);
        let prof = damping_profile(&s, 2.0, 1.0);
        assert_abs_diff_eq!(prof[0], (-1.0f64).exp() / std::f64::consts::PI, epsilon = 1e-15);

        // k^3 with p = 2, C = 0.5: value at k = 40 below value at k = 20
        let s = seq(Generator::Power(3.0), 64);
        let prof = damping_profile(&s, 2.0, 0.5);
        assert!(prof[39] < prof[19]);

        // 2^k with p = 1, C = 0.1: net rate ln 2 - 0.1 > 0, monotone increase
        let s = seq(Generator::Geometric(2.0), 64);
        let prof = damping_profile(&s, 1.0, 0.1);
        assert!(prof.windows(2).skip(32).all(|w| w[1] > w[0]));
    }

    #[test]
    fn bounded_check_examples() {
        let saw: Vec<f64> = (1..=64).map(crate::coeffs::sawtooth_oracle).collect();
        let s = CoefficientSequence::polynomial(SeriesKind::Sine, saw).unwrap();
        assert_abs_diff_eq!(bounded_check(&s), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            bounded_check(&seq(Generator::DeltaTaylor, 16)),
            1.0 / std::f64::consts::PI,
            epsilon = 1e-15
        );
        let alt: Vec<f64> = (1..=16).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let s = CoefficientSequence::polynomial(SeriesKind::Cosine, alt).unwrap();
        assert_abs_diff_eq!(bounded_check(&s), 1.0, epsilon = 0.0);
    }

    #[test]
    fn threshold_examples() {
        // A = 2 > 1/e: positive everywhere
        let r = log_linear_threshold(2.0).unwrap();
        assert_eq!(r.k_m, 1);
        assert!(r.x2.is_none());

        // A = 1/e: double root at x = e, not an integer
        let r = log_linear_threshold(1.0 / std::f64::consts::E).unwrap();
        assert_eq!(r.k_m, 1);

        // A = 0.1: larger root near 35.77, k_m = 36
        let r = log_linear_threshold(0.1).unwrap();
        assert_eq!(r.k_m, 36);
        let x2 = r.x2.unwrap();
        assert!((35.0..36.0).contains(&x2));
        assert_abs_diff_eq!(0.1 * x2 - x2.ln(), 0.0, epsilon = 1e-9);

        assert!(log_linear_threshold(0.0).is_err());
        assert!(log_linear_threshold(-1.0).is_err());
    }

    #[test]
    fn threshold_matches_integer_scan() {
        for &a in &[0.01, 0.05, 0.1, 1.0 / std::f64::consts::E, 0.5, 1.0, 2.0] {
            let r = log_linear_threshold(a).unwrap();
            // brute-force oracle: largest k with h(k) <= 0, plus one
            let mut oracle = 1u64;
            for k in 1..=100_000u64 {
                if a * k as f64 - (k as f64).ln() <= 0.0 {
                    oracle = k + 1;
                }
            }
            assert_eq!(r.k_m, oracle, "A = {a}");
        }
    }

    proptest! {
        #[test]
        fn threshold_monotone_in_a(a1 in 0.01f64..2.0, a2 in 0.01f64..2.0) {
            let (lo, hi) = if a1 < a2 { (a1, a2) } else { (a2, a1) };
            let k_lo = log_linear_threshold(lo).unwrap().k_m;
            let k_hi = log_linear_threshold(hi).unwrap().k_m;
            prop_assert!(k_hi <= k_lo);
        }

        #[test]
        fn classification_is_scale_invariant(
            log_c in -10.0f64..10.0,
            sign in prop::bool::ANY,
            which in 0usize..4,
        ) {
            // long sequences keep the per-index scale shift ln|c|/k within
            // the rate tolerance
            let c = if sign { -log_c.exp() } else { log_c.exp() };
            let base = match which {
                0 => seq(Generator::InvPower(1.0), 1024),
                1 => seq(Generator::Constant(0.5), 1024),
                2 => seq(Generator::Geometric(1.5), 1024),
                _ => seq(Generator::Geometric(0.8), 1024),
            };
            let scaled = CoefficientSequence::polynomial(
                base.kind(),
                base.values().iter().map(|v| c * v).collect(),
            ).unwrap();
            let r1 = GrowthReport::analyze(&base, 128).unwrap();
            let r2 = GrowthReport::analyze(&scaled, 128).unwrap();
            prop_assert_eq!(r1.ratio_condition, r2.ratio_condition);
            prop_assert_eq!(r1.subexp_condition, r2.subexp_condition);
        }
    }
}

//! End-to-end verification battery.
//!
//! Each criterion exercises one pillar of the pipeline at pinned
//! tolerances and reports deterministic detail lines (no timings, no
//! paths), so that repeated runs produce byte-identical output. The CLI
//! `verify` subcommand prints these results; the acceptance test suite
//! asserts on them.

use std::f64::consts::PI;

use serde::Serialize;

use crate::coeffs::{
    fourier_coefficients, log_kernel_oracle, sawtooth_oracle, square_wave_oracle,
    CoefficientSequence, Generator, SeriesKind,
};
use crate::disk::{self, compare_to_oracle, reconstruct, DiskPoint, LadderConfig};
use crate::error::Result;
use crate::functions::{Catalog, Parity, PeriodicFunction, SampleTable};
use crate::growth::{self, GrowthReport, Verdict};
use crate::kernels::{self, delta_kernel};
use crate::quadrature::QuadratureConfig;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

struct Checks {
    passed: bool,
    details: Vec<String>,
}

impl Checks {
    fn new() -> Checks {
        Checks { passed: true, details: Vec::new() }
    }

    fn assert(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        self.details.push(format!("{} {}", if ok { "ok  " } else { "FAIL" }, line));
    }

    fn finish(self, name: &'static str) -> CriterionResult {
        CriterionResult { name, passed: self.passed, details: self.details }
    }
}

fn run(name: &'static str, body: impl FnOnce(&mut Checks) -> Result<()>) -> CriterionResult {
    let mut c = Checks::new();
    if let Err(e) = body(&mut c) {
        c.assert(false, format!("aborted: {e}"));
    }
    c.finish(name)
}

fn max_dev(values: &[f64], oracle: impl Fn(usize) -> f64) -> f64 {
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| (v - oracle(i + 1)).abs())
        .fold(0.0, f64::max)
}

/// Sawtooth and square-wave coefficients against the analytic oracles to
/// 1e-10 for k ≤ 64; log-kernel coefficients to 1e-8 across the θ = 0
/// singularity.
pub fn coefficient_accuracy() -> CriterionResult {
    run("coefficient-accuracy", |c| {
        let cfg = QuadratureConfig::default();

        let saw = fourier_coefficients(
            &PeriodicFunction::catalog(Catalog::Sawtooth),
            SeriesKind::Sine,
            64,
            &cfg,
        )?;
        let dev = max_dev(saw.values(), sawtooth_oracle);
        c.assert(dev <= 1e-10, format!("sawtooth sine k<=64: max deviation {dev:.3e} <= 1e-10"));

        let sq = fourier_coefficients(
            &PeriodicFunction::catalog(Catalog::SquareWave),
            SeriesKind::Sine,
            64,
            &cfg,
        )?;
        let dev = max_dev(sq.values(), square_wave_oracle);
        c.assert(dev <= 1e-10, format!("square wave sine k<=64: max deviation {dev:.3e} <= 1e-10"));

        let log = fourier_coefficients(
            &PeriodicFunction::catalog(Catalog::LogKernel),
            SeriesKind::Cosine,
            64,
            &cfg,
        )?;
        let dev = max_dev(log.values(), log_kernel_oracle);
        c.assert(dev <= 1e-8, format!("log kernel cosine k<=64: max deviation {dev:.3e} <= 1e-8"));
        Ok(())
    })
}

/// Sub-exponential classification: bounded/polynomial/decaying sequences
/// pass, exponential ones fail, and every sequence computed from an
/// integrable catalog function passes.
pub fn growth_classification() -> CriterionResult {
    run("growth-classification", |c| {
        let cfg = QuadratureConfig::default();
        let window64 = 16;

        let pass_cases: Vec<(&str, CoefficientSequence, usize)> = vec![
            ("a_k = 1/pi", CoefficientSequence::synthetic(SeriesKind::Cosine, Generator::DeltaTaylor, 64)?, window64),
            ("a_k = k^3", CoefficientSequence::synthetic(SeriesKind::Cosine, Generator::Power(3.0), 4096)?, 256),
            ("a_k = 1/k", CoefficientSequence::synthetic(SeriesKind::Cosine, Generator::InvPower(1.0), 64)?, window64),
        ];
        for (label, seq, window) in &pass_cases {
            let v = growth::subexponential_check(seq, *window)?;
            c.assert(v == Verdict::Pass, format!("{label}: sub-exponential verdict {v:?}"));
        }

        let factorial: Vec<f64> = (1..=64u32)
            .scan(1.0f64, |acc, k| {
                *acc *= k as f64;
                Some(*acc)
            })
            .collect();
        let fail_cases: Vec<(&str, CoefficientSequence)> = vec![
            ("a_k = 2^k", CoefficientSequence::synthetic(SeriesKind::Cosine, Generator::Geometric(2.0), 64)?),
            ("a_k = k!", CoefficientSequence::polynomial(SeriesKind::Cosine, factorial)?),
            ("a_k = e^{0.1k}", CoefficientSequence::synthetic(SeriesKind::Cosine, Generator::Geometric(0.1f64.exp()), 64)?),
        ];
        for (label, seq) in &fail_cases {
            let v = growth::subexponential_check(seq, window64)?;
            c.assert(v == Verdict::Fail, format!("{label}: sub-exponential verdict {v:?}"));
        }

        // integrable catalog functions all pass through the full pipeline
        for (id, kind) in [
            ("squarewave", SeriesKind::Sine),
            ("sawtooth", SeriesKind::Sine),
            ("cos:1", SeriesKind::Cosine),
            ("logkernel", SeriesKind::Cosine),
        ] {
            let f = PeriodicFunction::from_catalog_id(id)?;
            let seq = fourier_coefficients(&f, kind, 64, &cfg)?;
            let r = GrowthReport::analyze(&seq, window64)?;
            c.assert(
                r.subexp_condition == Verdict::Pass,
                format!("coefficients of {id}: sub-exponential verdict {:?}", r.subexp_condition),
            );
        }
        Ok(())
    })
}

/// `log_linear_threshold` against a brute-force integer scan up to 10^6.
pub fn threshold_scan() -> CriterionResult {
    run("log-linear-threshold", |c| {
        for a in [0.01, 0.05, 0.1, 1.0 / std::f64::consts::E, 0.5, 2.0] {
            let r = growth::log_linear_threshold(a)?;
            let mut oracle = 1u64;
            for k in 1..=1_000_000u64 {
                if a * k as f64 - (k as f64).ln() <= 0.0 {
                    oracle = k + 1;
                }
            }
            c.assert(r.k_m == oracle, format!("A = {a:.6}: k_m = {} (scan says {oracle})", r.k_m));
        }
        let r = growth::log_linear_threshold(0.1)?;
        c.assert(r.k_m == 36, format!("A = 0.1: k_m = {} (expected 36)", r.k_m));
        Ok(())
    })
}

/// Convergent-series reconstruction: cos θ through the full pipeline and
/// the log kernel from its exact coefficient sequence, both to 1e-6
/// outside exclusion radius 0.2 on a 256-point grid.
pub fn reconstruction_convergent() -> CriterionResult {
    run("reconstruction-convergent", |c| {
        let cfg = QuadratureConfig::default();
        let ladder = LadderConfig::default();
        let grid = disk::uniform_grid(256);

        let cos = PeriodicFunction::catalog(Catalog::Cosine(1));
        let seq = fourier_coefficients(&cos, SeriesKind::Cosine, 64, &cfg)?;
        let r = reconstruct(&seq, &grid, &ladder)?;
        let stats = compare_to_oracle(&r, &cos, 0.2)?;
        c.assert(stats.max_abs < 1e-6, format!("cos pipeline: max error {:.3e} < 1e-6", stats.max_abs));

        let logk = PeriodicFunction::catalog(Catalog::LogKernel);
        let seq = CoefficientSequence::synthetic(SeriesKind::Cosine, Generator::InvPower(1.0), 64)?;
        let r = reconstruct(&seq, &grid, &ladder)?;
        let stats = compare_to_oracle(&r, &logk, 0.2)?;
        c.assert(
            stats.max_abs < 1e-6,
            format!("log kernel (a_k = 1/k): max error {:.3e} < 1e-6 outside 0.2", stats.max_abs),
        );
        Ok(())
    })
}

/// Jump-case reconstruction: the square wave through the full pipeline to
/// 1e-3 outside 0.2 of its jumps, and the Abel spot value at ρ = 0.9,
/// θ = π/2 against the arctan closed form to 1e-10 before extrapolation.
pub fn reconstruction_jump() -> CriterionResult {
    run("reconstruction-jump", |c| {
        let cfg = QuadratureConfig::default();
        let sq = PeriodicFunction::catalog(Catalog::SquareWave);
        let seq = fourier_coefficients(&sq, SeriesKind::Sine, 2048, &cfg)?;
        let grid = disk::uniform_grid(256);
        let r = reconstruct(&seq, &grid, &LadderConfig::default())?;
        let stats = compare_to_oracle(&r, &sq, 0.2)?;
        c.assert(
            stats.max_abs < 1e-3,
            format!("square wave pipeline: max error {:.3e} < 1e-3 outside 0.2", stats.max_abs),
        );

        let exact: Vec<f64> = (1..=400).map(square_wave_oracle).collect();
        let exact = CoefficientSequence::polynomial(SeriesKind::Sine, exact)?;
        let (rho, theta) = (0.9, PI / 2.0);
        let ev = disk::evaluate_series(&exact, DiskPoint::new(rho, theta)?)?;
        let oracle = (2.0 / PI) * (2.0 * rho * theta.sin() / (1.0 - rho * rho)).atan();
        let dev = (ev.imag_part - oracle).abs();
        c.assert(dev <= 1e-10, format!("Abel spot value at rho 0.9, theta pi/2: deviation {dev:.3e} <= 1e-10"));
        Ok(())
    })
}

/// Delta kernel: Poisson normalization, exact peak values, and truncated
/// series against the closed form within the geometric tail bound.
pub fn delta_kernel_checks() -> CriterionResult {
    run("delta-kernel", |c| {
        let cfg = QuadratureConfig::default();
        let one = PeriodicFunction::catalog(Catalog::Constant(1.0));
        for rho in [0.5, 0.9, 0.99, 0.999] {
            let total = kernels::reproducing_test(&one, 0.3, rho, &cfg)?;
            let dev = (total - 1.0).abs();
            c.assert(dev <= 1e-8, format!("normalization at rho = {rho}: |integral - 1| = {dev:.3e} <= 1e-8"));
        }

        for theta1 in [0.0, 1.0, -2.5] {
            let w = delta_kernel(theta1)?;
            for rho in [0.5, 0.9, 0.99, 0.999] {
                let ev = w.eval(DiskPoint::new(rho, theta1)?);
                let expect = (1.0 + rho) / (1.0 - rho) / (2.0 * PI);
                let dev = (ev.real_part - expect).abs();
                c.assert(
                    dev <= 1e-12,
                    format!("peak at theta1 = {theta1}, rho = {rho}: deviation {dev:.3e} <= 1e-12"),
                );
            }
        }

        for (theta1, k_terms, rho, theta) in [
            (0.0, 40usize, 0.5, 0.0),
            (PI / 2.0, 200, 0.9, 0.0),
            (0.3, 512, 0.95, 1.0),
            (-1.0, 512, 0.95, -1.0),
        ] {
            let w = delta_kernel(theta1)?;
            let diff = kernels::kernel_series_consistency(&w, k_terms, DiskPoint::new(rho, theta)?);
            let bound = rho.powi(k_terms as i32 + 1) / (PI * (1.0 - rho));
            // the bound is tight in the pole direction; allow rounding slack
            let ok = diff <= bound * (1.0 + 1e-9) + 1e-15;
            c.assert(
                ok,
                format!("series K = {k_terms} at rho = {rho}: |closed - series| = {diff:.3e} <= tail {bound:.3e}"),
            );
        }
        Ok(())
    })
}

/// Abel-regularized reproducing property: `∫ g · Re[w_δ] dθ` within
/// `2·(1−ρ)·2` of `g(θ₁)` for trigonometric polynomials of degree ≤ 2.
pub fn reproducing_property() -> CriterionResult {
    run("reproducing-property", |c| {
        let cfg = QuadratureConfig::default();
        let rho = 0.999;
        let allowance = 2.0 * (1.0 - rho) * 2.0;
        for id in ["cos:1", "sin:1", "cos:2"] {
            let g = PeriodicFunction::from_catalog_id(id)?;
            for theta1 in [0.0, PI / 4.0, PI / 2.0] {
                let got = kernels::reproducing_test(&g, theta1, rho, &cfg)?;
                let expect = g.eval(theta1)?;
                let dev = (got - expect).abs();
                c.assert(
                    dev <= allowance,
                    format!("{id} at theta1 = {theta1:.4}: |{got:.6} - g(theta1)| = {dev:.3e} <= {allowance:.1e}"),
                );
            }
        }
        Ok(())
    })
}

/// Uniqueness harness: a single-point value change is invisible to the
/// coefficients, and the reconstructed difference vanishes.
pub fn uniqueness() -> CriterionResult {
    run("uniqueness", |c| {
        let cfg = QuadratureConfig::default();
        let table = SampleTable::new(
            vec![-PI, -0.01, 0.01, 1.0, PI],
            vec![-1.0, -1.0, 1.0, 1.0, 1.0],
        )?;
        let f1 = PeriodicFunction::from_table(table).with_parity(Parity::Odd);
        let f2 = f1.clone().with_point_value(1.0, 5.0);
        let rep = kernels::uniqueness_harness(&f1, &f2, 64, &cfg)?;
        c.assert(
            rep.max_coeff_gap < 1e-10,
            format!("single-point change: max coefficient gap {:.3e} < 1e-10", rep.max_coeff_gap),
        );
        let rec = rep.max_reconstructed_abs.unwrap_or(f64::INFINITY);
        c.assert(rec < 1e-8, format!("reconstructed difference: max |g| = {rec:.3e} < 1e-8"));
        Ok(())
    })
}

/// Runs the whole battery in order.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        coefficient_accuracy(),
        growth_classification(),
        threshold_scan(),
        reconstruction_convergent(),
        reconstruction_jump(),
        delta_kernel_checks(),
        reproducing_property(),
        uniqueness(),
    ]
}

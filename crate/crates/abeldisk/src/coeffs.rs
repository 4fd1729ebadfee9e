//! Fourier coefficients and the coefficient-sequence interchange type.
//!
//! `fourier_coefficients` computes `a_k = (1/π) ∫ f(θ) trig(kθ) dθ` for
//! `k = 1..K` by the adaptive quadrature engine; the constant coefficient
//! is forced to zero by the zero-average preprocessing and is not stored.
//! A [`CoefficientSequence`] serializes to the JSON shape
//! `{"kind": "cosine"|"sine", "values": [...], "provenance": "..."}`,
//! which is the interchange format between CLI subcommands.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::PeriodicFunction;
use crate::quadrature::{integrate_function, QuadratureConfig};

/// Which trigonometric series the coefficients belong to. Cosine sequences
/// pair with even functions, sine with odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Cosine,
    Sine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ComputedFromFunction,
    Synthetic,
    KernelExpansion,
}

/// Closed-form term generators for synthetic sequences. A sequence backed
/// by a generator can extend itself past its stored prefix on demand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    /// `a_k = c`
    Constant(f64),
    /// `a_k = k^p`
    Power(f64),
    /// `a_k = k^{-p}`
    InvPower(f64),
    /// `a_k = r^k`
    Geometric(f64),
    /// `a_k = 1/π`, the Taylor coefficients of the delta kernel at θ₁ = 0.
    DeltaTaylor,
}

impl Generator {
    pub fn term(&self, k: usize) -> f64 {
        let kf = k as f64;
        match *self {
            Generator::Constant(c) => c,
            Generator::Power(p) => kf.powf(p),
            Generator::InvPower(p) => kf.powf(-p),
            Generator::Geometric(r) => r.powi(k as i32),
            Generator::DeltaTaylor => 1.0 / PI,
        }
    }
}

/// How the sequence continues past its stored prefix.
#[derive(Debug, Clone, PartialEq)]
pub enum Continuation {
    /// The stored values are the whole series; every later term is zero.
    Finite,
    /// The stored prefix truncates an unknown series; tails are estimated
    /// from the trailing values.
    Estimated,
    /// Terms past the prefix come from the generator.
    Extend(Generator),
}

/// A finite prefix `a_1..a_K` of one definite-parity coefficient sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence {
    kind: SeriesKind,
    values: Vec<f64>,
    provenance: Provenance,
    continuation: Continuation,
}

#[derive(Serialize, Deserialize)]
struct SequenceRepr {
    kind: SeriesKind,
    values: Vec<f64>,
    provenance: Provenance,
}

impl Serialize for CoefficientSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SequenceRepr { kind: self.kind, values: self.values.clone(), provenance: self.provenance }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoefficientSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SequenceRepr::deserialize(d)?;
        CoefficientSequence::truncated(repr.kind, repr.values, repr.provenance)
            .map_err(serde::de::Error::custom)
    }
}

impl CoefficientSequence {
    fn validated(
        kind: SeriesKind,
        values: Vec<f64>,
        provenance: Provenance,
        continuation: Continuation,
    ) -> Result<CoefficientSequence> {
        if values.is_empty() {
            return Err(Error::InvalidInput("coefficient sequence needs K >= 1 entries".into()));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidInput("coefficient values must be finite".into()));
        }
        Ok(CoefficientSequence { kind, values, provenance, continuation })
    }

    /// A complete (polynomial) series: terms past the stored values are zero.
    pub fn polynomial(kind: SeriesKind, values: Vec<f64>) -> Result<CoefficientSequence> {
        Self::validated(kind, values, Provenance::Synthetic, Continuation::Finite)
    }

    /// A truncated prefix of an unknown series (quadrature output, files).
    pub fn truncated(
        kind: SeriesKind,
        values: Vec<f64>,
        provenance: Provenance,
    ) -> Result<CoefficientSequence> {
        Self::validated(kind, values, provenance, Continuation::Estimated)
    }

    /// A generator-backed synthetic sequence with `k_max` stored terms.
    pub fn synthetic(kind: SeriesKind, gen: Generator, k_max: usize) -> Result<CoefficientSequence> {
        let values: Vec<f64> = (1..=k_max.max(1)).map(|k| gen.term(k)).collect();
        Self::validated(kind, values, Provenance::Synthetic, Continuation::Extend(gen))
    }

    pub(crate) fn with_provenance(mut self, p: Provenance) -> CoefficientSequence {
        self.provenance = p;
        self
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn continuation(&self) -> &Continuation {
        &self.continuation
    }

    /// The stored values `a_1..a_K`; `values()[k-1]` is `a_k`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn k_max(&self) -> usize {
        self.values.len()
    }

    /// `a_k` for any `k >= 1`, consulting the continuation past the prefix.
    pub fn term(&self, k: usize) -> f64 {
        debug_assert!(k >= 1);
        if k <= self.values.len() {
            self.values[k - 1]
        } else {
            match &self.continuation {
                Continuation::Finite => 0.0,
                Continuation::Estimated => 0.0,
                Continuation::Extend(g) => g.term(k),
            }
        }
    }

    /// Entries at or below `1e-9 · max|a_k|` are treated as zeros by the
    /// growth checks (quadrature noise on exact zeros).
    pub(crate) fn zero_threshold(&self) -> f64 {
        let max = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        1e-9 * max
    }
}

/// Computes `a_k = (1/π) ∫ f(θ) cos(kθ) dθ` (or the sine analogue) for
/// `k = 1..=k_max`. Panels refine geometrically toward every declared
/// singular point, realizing the improper integrals as one-sided limits.
pub fn fourier_coefficients(
    f: &PeriodicFunction,
    kind: SeriesKind,
    k_max: usize,
    cfg: &QuadratureConfig,
) -> Result<CoefficientSequence> {
    if k_max < 1 {
        return Err(Error::InvalidInput("k_max must be >= 1".into()));
    }
    let mut values = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let kf = k as f64;
        let integral = match kind {
            SeriesKind::Cosine => integrate_function(f, &|t| (kf * t).cos(), kf, cfg)?,
            SeriesKind::Sine => integrate_function(f, &|t| (kf * t).sin(), kf, cfg)?,
        };
        values.push(integral / PI);
    }
    CoefficientSequence::validated(
        kind,
        values,
        Provenance::ComputedFromFunction,
        Continuation::Estimated,
    )
}

/// Returns `(1/π) ∫ f dθ`. After zero-average normalization callers assert
/// the result is below tolerance.
pub fn verify_zero_average(f: &PeriodicFunction, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(integrate_function(f, &|_| 1.0, 0.0, cfg)? / PI)
}

/// `F = (1/π) ∫ |f| dθ`, the uniform bound satisfied by every Fourier
/// coefficient of an integrable function.
pub fn absolute_integral_bound(f: &PeriodicFunction, cfg: &QuadratureConfig) -> Result<f64> {
    let breaks = f.breakpoints();
    let refine = f.singular_points().to_vec();
    // |f| has kinks at the zero crossings of f; the bound is an inequality
    // with slack, so the base panel resolution is enough.
    let freq = f.osc_hint() + 2.0;
    let integrand = move |theta: f64| f.eval_raw(theta).abs();
    Ok(crate::quadrature::integrate(&integrand, -PI, PI, &breaks, &refine, freq, cfg)? / PI)
}

/// Analytic sine coefficients of the sawtooth, `b_k = 2(-1)^{k+1}/k`.
pub fn sawtooth_oracle(k: usize) -> f64 {
    2.0 * if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64
}

/// Analytic sine coefficients of the square wave,
/// `b_k = (2/(πk))(1 − cos kπ)`: `4/(πk)` for odd `k`, zero for even.
pub fn square_wave_oracle(k: usize) -> f64 {
    if k % 2 == 1 {
        4.0 / (PI * k as f64)
    } else {
        0.0
    }
}

/// Analytic cosine coefficients of `−ln(2|sin(θ/2)|)`, `a_k = 1/k`.
pub fn log_kernel_oracle(k: usize) -> f64 {
    1.0 / k as f64
}

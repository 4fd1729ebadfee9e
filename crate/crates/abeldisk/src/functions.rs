//! Function sources on `[-π, π]`: the built-in catalog, sample tables,
//! parity decomposition and zero-average normalization.
//!
//! Every function entering the pipeline is described by a
//! [`PeriodicFunction`]: a closed-form catalog entry or a piecewise-linear
//! sample table, together with its declared singular points and parity.
//! [`split_parity`] turns an arbitrary function into the even/odd pair plus
//! the removed average, so that everything downstream works on zero-average
//! definite-parity functions.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::{self, QuadratureConfig};

/// Declared parity of a function on `[-π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    None,
}

/// Closed-form catalog entries.
///
/// The catalog is the primary input path; arbitrary functions enter through
/// sample tables instead of an expression parser. Values at jump points are
/// the midpoint of the two one-sided limits; they are immaterial for every
/// integral quantity and tests never assert there.
#[derive(Debug, Clone, PartialEq)]
pub enum Catalog {
    /// `sign(θ)`: −1 on `(-π, 0)`, +1 on `(0, π)`, 0 at the jump.
    SquareWave,
    /// `f(θ) = θ`.
    Sawtooth,
    /// `cos(kθ)`, `k ≥ 1`.
    Cosine(u32),
    /// `sin(kθ)`, `k ≥ 1`.
    Sine(u32),
    /// `−ln(2|sin(θ/2)|)`: unbounded at `θ = 0` but absolutely integrable;
    /// its cosine coefficients are `1/k`.
    LogKernel,
    /// Constant `c`.
    Constant(f64),
    /// `c0 + c1·θ + c2·θ²`.
    Poly { c0: f64, c1: f64, c2: f64 },
}

impl Catalog {
    /// Parses a catalog id of the form used by the CLI and JSON configs:
    /// `squarewave`, `sawtooth`, `cos:K`, `sin:K`, `logkernel`, `const:C`,
    /// `poly:c0,c1,c2`.
    pub fn parse(id: &str) -> Result<Catalog> {
        let bad = |msg: String| Error::InvalidInput(msg);
        let (head, arg) = match id.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (id, None),
        };
        let no_arg = |c: Catalog| -> Result<Catalog> {
            if arg.is_some() {
                Err(bad(format!("catalog id `{head}` takes no parameter")))
            } else {
                Ok(c)
            }
        };
        match head {
            "squarewave" => no_arg(Catalog::SquareWave),
            "sawtooth" => no_arg(Catalog::Sawtooth),
            "logkernel" => no_arg(Catalog::LogKernel),
            "cos" | "sin" => {
                let k: u32 = arg
                    .unwrap_or("1")
                    .parse()
                    .map_err(|_| bad(format!("bad harmonic index in `{id}`")))?;
                if k == 0 {
                    return Err(bad("harmonic index must be >= 1".into()));
                }
                Ok(if head == "cos" { Catalog::Cosine(k) } else { Catalog::Sine(k) })
            }
            "const" => {
                let c: f64 = arg
                    .ok_or_else(|| bad("`const` needs a value, e.g. const:1".into()))?
                    .parse()
                    .map_err(|_| bad(format!("bad constant in `{id}`")))?;
                Ok(Catalog::Constant(c))
            }
            "poly" => {
                let parts: Vec<&str> = arg
                    .ok_or_else(|| bad("`poly` needs coefficients, e.g. poly:0,1,1".into()))?
                    .split(',')
                    .collect();
                if parts.len() != 3 {
                    return Err(bad("`poly` takes exactly three coefficients c0,c1,c2".into()));
                }
                let c: Vec<f64> = parts
                    .iter()
                    .map(|s| s.parse().map_err(|_| bad(format!("bad coefficient in `{id}`"))))
                    .collect::<Result<_>>()?;
                Ok(Catalog::Poly { c0: c[0], c1: c[1], c2: c[2] })
            }
            _ => Err(bad(format!("unknown catalog id `{id}`"))),
        }
    }

    fn eval(&self, theta: f64) -> f64 {
        match *self {
            Catalog::SquareWave => {
                if theta > 0.0 {
                    1.0
                } else if theta < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
            Catalog::Sawtooth => theta,
            Catalog::Cosine(k) => (k as f64 * theta).cos(),
            Catalog::Sine(k) => (k as f64 * theta).sin(),
            Catalog::LogKernel => -(2.0 * (theta / 2.0).sin().abs()).ln(),
            Catalog::Constant(c) => c,
            Catalog::Poly { c0, c1, c2 } => c0 + theta * (c1 + theta * c2),
        }
    }

    fn parity(&self) -> Parity {
        match *self {
            Catalog::SquareWave | Catalog::Sawtooth | Catalog::Sine(_) => Parity::Odd,
            Catalog::Cosine(_) | Catalog::LogKernel | Catalog::Constant(_) => Parity::Even,
            Catalog::Poly { c0, c1, c2 } => {
                if c1 == 0.0 {
                    Parity::Even
                } else if c0 == 0.0 && c2 == 0.0 {
                    Parity::Odd
                } else {
                    Parity::None
                }
            }
        }
    }

    fn singular_points(&self) -> Vec<f64> {
        match self {
            Catalog::LogKernel => vec![0.0],
            _ => Vec::new(),
        }
    }

    /// Interior points where the closed form is not smooth.
    fn breakpoints(&self) -> Vec<f64> {
        match self {
            Catalog::SquareWave => vec![0.0],
            _ => Vec::new(),
        }
    }

    /// Jump discontinuities, including the periodic seam at ±π when the two
    /// one-sided boundary values differ.
    fn jumps(&self) -> Vec<f64> {
        let mut j = self.breakpoints();
        let seam = match *self {
            Catalog::SquareWave | Catalog::Sawtooth => true,
            Catalog::Poly { c1, .. } => c1 != 0.0,
            _ => false,
        };
        if seam {
            j.push(-PI);
            j.push(PI);
        }
        j
    }

    /// Dominant angular frequency, used to size quadrature panels.
    fn osc_hint(&self) -> f64 {
        match *self {
            Catalog::Cosine(k) | Catalog::Sine(k) => k as f64,
            Catalog::LogKernel => 1.0,
            _ => 0.0,
        }
    }
}

/// Uniform-in-spirit sample table: strictly increasing nodes `θ_i` covering
/// `[-π, π]`, evaluated by piecewise-linear interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleTable {
    thetas: Vec<f64>,
    values: Vec<f64>,
}

impl SampleTable {
    pub fn new(thetas: Vec<f64>, values: Vec<f64>) -> Result<SampleTable> {
        if thetas.len() != values.len() {
            return Err(Error::InvalidInput("table theta/value lengths differ".into()));
        }
        if thetas.len() < 2 {
            return Err(Error::InvalidInput("table needs at least two nodes".into()));
        }
        if !thetas.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput("table nodes must be strictly increasing".into()));
        }
        if (thetas[0] + PI).abs() > 1e-9 || (thetas[thetas.len() - 1] - PI).abs() > 1e-9 {
            return Err(Error::InvalidInput("table must cover [-pi, pi]".into()));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidInput("table values must be finite".into()));
        }
        Ok(SampleTable { thetas, values })
    }

    pub fn nodes(&self) -> (&[f64], &[f64]) {
        (&self.thetas, &self.values)
    }

    fn eval(&self, theta: f64) -> f64 {
        let n = self.thetas.len();
        if theta <= self.thetas[0] {
            return self.values[0];
        }
        if theta >= self.thetas[n - 1] {
            return self.values[n - 1];
        }
        // index of the first node strictly right of theta
        let hi = self.thetas.partition_point(|&t| t <= theta);
        let (t0, t1) = (self.thetas[hi - 1], self.thetas[hi]);
        let (v0, v1) = (self.values[hi - 1], self.values[hi]);
        let w = (theta - t0) / (t1 - t0);
        v0 + w * (v1 - v0)
    }
}

#[derive(Debug, Clone)]
enum Source {
    Catalog(Catalog),
    Table(SampleTable),
    /// `(f(θ) + f(−θ))/2 − mean`: the zero-average even part of `base`.
    EvenResidual { base: Box<PeriodicFunction>, mean: f64 },
    /// `(f(θ) − f(−θ))/2`: the odd part of `base`.
    OddResidual { base: Box<PeriodicFunction> },
    /// `base` with the value at the single point `at` replaced — a
    /// zero-measure change that leaves every integral untouched.
    PointTweak { base: Box<PeriodicFunction>, at: f64, value: f64 },
}

/// A real function on `[-π, π]` with its declared singular points and
/// parity. Immutable after construction; evaluation is pure.
#[derive(Debug, Clone)]
pub struct PeriodicFunction {
    source: Source,
    singular_points: Vec<f64>,
    parity: Parity,
}

fn sorted_dedup(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.dedup_by(|a, b| (*a - *b).abs() <= 1e-13);
    v
}

impl PeriodicFunction {
    pub fn catalog(entry: Catalog) -> PeriodicFunction {
        let singular_points = entry.singular_points();
        let parity = entry.parity();
        PeriodicFunction { source: Source::Catalog(entry), singular_points, parity }
    }

    /// Parses a catalog id string; see [`Catalog::parse`].
    pub fn from_catalog_id(id: &str) -> Result<PeriodicFunction> {
        Ok(PeriodicFunction::catalog(Catalog::parse(id)?))
    }

    pub fn from_table(table: SampleTable) -> PeriodicFunction {
        PeriodicFunction {
            source: Source::Table(table),
            singular_points: Vec::new(),
            parity: Parity::None,
        }
    }

    /// Declares additional singular points (angles where the function is
    /// unbounded). Points must lie in `[-π, π]`.
    pub fn with_singular_points(mut self, points: &[f64]) -> Result<PeriodicFunction> {
        for &p in points {
            if !(-PI..=PI).contains(&p) {
                return Err(Error::Domain(format!("singular point {p} outside [-pi, pi]")));
            }
        }
        let mut all = self.singular_points;
        all.extend_from_slice(points);
        let all = sorted_dedup(all);
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("singular points must be pairwise distinct".into()));
        }
        self.singular_points = all;
        Ok(self)
    }

    pub fn with_parity(mut self, parity: Parity) -> PeriodicFunction {
        self.parity = parity;
        self
    }

    /// Overrides the value at a single point. The change has measure zero:
    /// quadrature panels are split there and Gauss nodes are interior, so
    /// no integral ever samples it. The declared parity is kept — it is an
    /// almost-everywhere property.
    pub fn with_point_value(self, at: f64, value: f64) -> PeriodicFunction {
        let parity = self.parity;
        PeriodicFunction {
            singular_points: self.singular_points.clone(),
            source: Source::PointTweak { base: Box::new(self), at, value },
            parity,
        }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn singular_points(&self) -> &[f64] {
        &self.singular_points
    }

    /// Evaluates the function. Errors exactly at a declared singular point
    /// and outside `[-π, π]`.
    pub fn eval(&self, theta: f64) -> Result<f64> {
        if !theta.is_finite() || !(-PI..=PI).contains(&theta) {
            return Err(Error::Domain(format!("theta = {theta} outside [-pi, pi]")));
        }
        if self.singular_points.contains(&theta) {
            return Err(Error::SingularPoint(theta));
        }
        Ok(self.eval_inner(theta))
    }

    fn eval_inner(&self, theta: f64) -> f64 {
        match &self.source {
            Source::Catalog(c) => c.eval(theta),
            Source::Table(t) => t.eval(theta),
            Source::EvenResidual { base, mean } => {
                0.5 * (base.eval_inner(theta) + base.eval_inner(-theta)) - mean
            }
            Source::OddResidual { base } => {
                0.5 * (base.eval_inner(theta) - base.eval_inner(-theta))
            }
            Source::PointTweak { base, at, value } => {
                if theta == *at {
                    *value
                } else {
                    base.eval_inner(theta)
                }
            }
        }
    }

    /// Total evaluation used by the quadrature engine: NaN instead of an
    /// error, so singular hits surface as non-finite samples.
    pub(crate) fn eval_raw(&self, theta: f64) -> f64 {
        if self.singular_points.contains(&theta) {
            return f64::NAN;
        }
        self.eval_inner(theta)
    }

    /// Interior points where the function is not smooth; quadrature panels
    /// are aligned to these.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b = match &self.source {
            Source::Catalog(c) => c.breakpoints(),
            Source::Table(t) => t.thetas[1..t.thetas.len() - 1].to_vec(),
            Source::EvenResidual { base, .. } | Source::OddResidual { base } => {
                let mut v = base.breakpoints();
                let mirrored: Vec<f64> = v.iter().map(|x| -x).collect();
                v.extend(mirrored);
                v.extend(base.singular_points.iter().map(|x| -x));
                v
            }
            Source::PointTweak { base, at, .. } => {
                let mut v = base.breakpoints();
                v.push(*at);
                v
            }
        };
        b.retain(|x| x.abs() < PI);
        sorted_dedup(b)
    }

    /// Jump discontinuities and singular points, the set excluded by
    /// oracle comparisons (radial limits converge to the jump midpoint at
    /// jumps and need not converge at singularities).
    pub fn discontinuities(&self) -> Vec<f64> {
        let mut d = match &self.source {
            Source::Catalog(c) => c.jumps(),
            Source::Table(_) => Vec::new(),
            Source::EvenResidual { base, .. } | Source::OddResidual { base } => {
                let mut v = base.discontinuities();
                let mirrored: Vec<f64> = v.iter().map(|x| -x).collect();
                v.extend(mirrored);
                v
            }
            Source::PointTweak { base, .. } => base.discontinuities(),
        };
        d.extend_from_slice(&self.singular_points);
        sorted_dedup(d)
    }

    /// Dominant angular frequency of the source, used to size quadrature
    /// panels for oscillatory integrands.
    pub fn osc_hint(&self) -> f64 {
        match &self.source {
            Source::Catalog(c) => c.osc_hint(),
            Source::Table(_) => 0.0,
            Source::EvenResidual { base, .. }
            | Source::OddResidual { base }
            | Source::PointTweak { base, .. } => base.osc_hint(),
        }
    }
}

/// The outcome of [`split_parity`]: `f(θ) = even(θ) + odd(θ) + mean` with
/// `even` zero-average and genuinely even, `odd` genuinely odd.
#[derive(Debug, Clone)]
pub struct ParityPair {
    pub even: PeriodicFunction,
    pub odd: PeriodicFunction,
    /// The removed average `(1/2π) ∫ f dθ`.
    pub mean: f64,
}

/// Splits `f` into its even part minus the average, its odd part, and the
/// average itself. The mean is computed with the same quadrature engine as
/// the Fourier coefficients.
pub fn split_parity(f: &PeriodicFunction, cfg: &QuadratureConfig) -> Result<ParityPair> {
    let integral = quadrature::integrate_function(f, &|_| 1.0, 0.0, cfg)?;
    let mean = integral / (2.0 * PI);
    let base = Box::new(f.clone());
    let singular = sorted_dedup(
        f.singular_points
            .iter()
            .copied()
            .chain(f.singular_points.iter().map(|x| -x))
            .collect(),
    );
    let even = PeriodicFunction {
        source: Source::EvenResidual { base: base.clone(), mean },
        singular_points: singular.clone(),
        parity: Parity::Even,
    };
    let odd = PeriodicFunction {
        source: Source::OddResidual { base },
        singular_points: singular,
        parity: Parity::Odd,
    };
    Ok(ParityPair { even, odd, mean })
}

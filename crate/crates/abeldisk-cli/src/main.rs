//! Batch pipeline CLI: decompose functions, compute and classify Fourier
//! coefficients, reconstruct boundary functions from inside the unit disk,
//! evaluate the delta kernel, and run the verification battery.
//!
//! Outputs are deterministic: identical configs produce byte-identical
//! files. Exit codes: 0 success, 2 growth-gate refusal, 1 any other error.

mod io;

use std::f64::consts::PI;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use abeldisk::{
    compare_to_oracle, conjugate_reconstruct, fourier_coefficients, reconstruct, split_parity,
    CoefficientSequence, DiskPoint, Error as LibError, GrowthReport, LadderConfig,
    PeriodicFunction, QuadratureConfig, SeriesKind,
};

use io::{csv_table, fmt_f, load_function, load_sequence, parse_kind, to_json_pretty, wants_csv, write_output};

#[derive(Parser)]
#[command(
    name = "abeldisk",
    about = "Recover real functions on [-pi, pi] from Fourier coefficients via the unit disk",
    version
)]
struct Cli {
    /// JSON file supplying defaults for any flag of the subcommand
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Split a function into even/odd parts and the removed mean
    Decompose(DecomposeArgs),
    /// Compute Fourier coefficients a_1..a_K
    Coeffs(CoeffsArgs),
    /// Classify a coefficient sequence against the growth conditions
    Classify(ClassifyArgs),
    /// Smallest k_m with A*k > ln k for all k >= k_m
    Threshold(ThresholdArgs),
    /// Radial-limit reconstruction of the boundary function
    Reconstruct(ReconstructArgs),
    /// Reconstruction of the conjugate function (other part of w)
    Conjugate(ReconstructArgs),
    /// Sample the delta kernel on a circle of radius rho
    Kernel(KernelArgs),
    /// Run the verification battery
    Verify(VerifyArgs),
}

/// Defaults shared between flags and `--config` files: every field is
/// optional here; the merge picks flag, then config, then built-in.
#[derive(Deserialize, Default)]
#[serde(default)]
struct FileConfig {
    r#fn: Option<String>,
    table: Option<PathBuf>,
    seq: Option<String>,
    kind: Option<String>,
    k: Option<usize>,
    grid: Option<usize>,
    ladder_depth: Option<usize>,
    tol: Option<f64>,
    exclude_radius: Option<f64>,
    out: Option<PathBuf>,
    force: Option<bool>,
    window: Option<usize>,
    theta: Option<f64>,
    theta1: Option<f64>,
    rho: Option<f64>,
    a: Option<f64>,
    ladder_out: Option<PathBuf>,
}

impl FileConfig {
    fn load(path: Option<&PathBuf>) -> Result<FileConfig> {
        match path {
            None => Ok(FileConfig::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading {}", p.display()))?;
                Ok(serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?)
            }
        }
    }
}

fn pick<T: Clone>(flag: &Option<T>, cfg: &Option<T>) -> Option<T> {
    flag.clone().or_else(|| cfg.clone())
}

#[derive(Args)]
struct DecomposeArgs {
    /// Catalog id, e.g. squarewave | sawtooth | cos:2 | logkernel | const:1 | poly:0,1,1
    #[arg(long = "fn")]
    fn_id: Option<String>,
    /// Sample table JSON {"theta": [...], "values": [...]}
    #[arg(long)]
    table: Option<PathBuf>,
    /// Output grid size (>= 16)
    #[arg(long)]
    grid: Option<usize>,
    /// Quadrature tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Output path (.csv or .json); stdout JSON when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CoeffsArgs {
    #[arg(long = "fn")]
    fn_id: Option<String>,
    #[arg(long)]
    table: Option<PathBuf>,
    /// cosine | sine (defaults to the declared parity of the function)
    #[arg(long)]
    kind: Option<String>,
    /// Number of coefficients a_1..a_K
    #[arg(long = "K")]
    k: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// const:c | power:p | inv-power:p | geometric:r | delta-taylor | file:<path>
    #[arg(long)]
    seq: Option<String>,
    #[arg(long)]
    kind: Option<String>,
    #[arg(long = "K")]
    k: Option<usize>,
    /// Trailing evidence window (default K/4, clamped to [8, 256])
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdArgs {
    /// The slope A > 0 of h(x) = A*x - ln x
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReconstructArgs {
    #[arg(long)]
    seq: Option<String>,
    #[arg(long)]
    kind: Option<String>,
    #[arg(long = "K")]
    k: Option<usize>,
    /// Grid size over [-pi, pi] (>= 16)
    #[arg(long)]
    grid: Option<usize>,
    /// Single evaluation angle instead of a grid
    #[arg(long)]
    theta: Option<f64>,
    /// Radial ladder depth J (rungs rho_j = 1 - 2^-j)
    #[arg(long)]
    ladder_depth: Option<usize>,
    /// Extrapolation convergence tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Skip the sub-exponential growth gate
    #[arg(long)]
    force: bool,
    /// Oracle function for error statistics (printed to stdout as JSON)
    #[arg(long = "fn")]
    fn_id: Option<String>,
    #[arg(long)]
    table: Option<PathBuf>,
    /// Exclusion radius around jumps/singularities for the oracle stats
    #[arg(long)]
    exclude_radius: Option<f64>,
    /// CSV of (rho, value) ladder rungs; single-theta runs only
    #[arg(long)]
    ladder_out: Option<PathBuf>,
    /// Output path (.csv or .json); stdout CSV when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KernelArgs {
    /// Boundary angle of the kernel's pole
    #[arg(long)]
    theta1: Option<f64>,
    /// Radius of the sampled circle, in [0, 1)
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            if matches!(e.downcast_ref::<LibError>(), Some(LibError::GrowthGate { .. })) {
                eprintln!("refused: {e}");
                2
            } else {
                eprintln!("error: {e}");
                1
            }
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    let cfg = FileConfig::load(cli.config.as_ref())?;
    match cli.cmd {
        Cmd::Decompose(a) => cmd_decompose(a, &cfg)?,
        Cmd::Coeffs(a) => cmd_coeffs(a, &cfg)?,
        Cmd::Classify(a) => cmd_classify(a, &cfg)?,
        Cmd::Threshold(a) => cmd_threshold(a, &cfg)?,
        Cmd::Reconstruct(a) => cmd_reconstruct(a, &cfg, false)?,
        Cmd::Conjugate(a) => cmd_reconstruct(a, &cfg, true)?,
        Cmd::Kernel(a) => cmd_kernel(a, &cfg)?,
        Cmd::Verify(a) => return cmd_verify(a, &cfg),
    }
    Ok(0)
}

fn validated_grid(n: usize) -> Result<usize> {
    if n < 16 {
        bail!("grid size must be >= 16, got {n}");
    }
    Ok(n)
}

fn quad_config(tol: Option<f64>) -> Result<QuadratureConfig> {
    let mut q = QuadratureConfig::default();
    if let Some(t) = tol {
        q.tol = t;
    }
    q.validate()?;
    Ok(q)
}

#[derive(Serialize)]
struct DecomposeOut {
    mean: f64,
    theta: Vec<f64>,
    even: Vec<f64>,
    odd: Vec<f64>,
}

fn cmd_decompose(a: DecomposeArgs, cfg: &FileConfig) -> Result<()> {
    let f = load_function(pick(&a.fn_id, &cfg.r#fn).as_deref(), pick(&a.table, &cfg.table).as_ref())?;
    let grid_n = validated_grid(pick(&a.grid, &cfg.grid).unwrap_or(256))?;
    let quad = quad_config(pick(&a.tol, &cfg.tol))?;
    let out = pick(&a.out, &cfg.out);

    let pair = split_parity(&f, &quad)?;
    let theta = abeldisk::disk::uniform_grid(grid_n);
    let eval = |g: &PeriodicFunction, t: f64| g.eval(t).unwrap_or(f64::NAN);
    let even: Vec<f64> = theta.iter().map(|&t| eval(&pair.even, t)).collect();
    let odd: Vec<f64> = theta.iter().map(|&t| eval(&pair.odd, t)).collect();

    let content = if wants_csv(out.as_deref(), false) {
        csv_table(
            "theta,even,odd,mean",
            theta.iter().zip(&even).zip(&odd).map(|((t, e), o)| {
                format!("{},{},{},{}", fmt_f(*t), fmt_f(*e), fmt_f(*o), fmt_f(pair.mean))
            }),
        )
    } else {
        to_json_pretty(&DecomposeOut { mean: pair.mean, theta, even, odd })?
    };
    write_output(out.as_deref(), &content)
}

fn cmd_coeffs(a: CoeffsArgs, cfg: &FileConfig) -> Result<()> {
    let f = load_function(pick(&a.fn_id, &cfg.r#fn).as_deref(), pick(&a.table, &cfg.table).as_ref())?;
    let kind = match pick(&a.kind, &cfg.kind) {
        Some(s) => parse_kind(&s)?,
        None => match f.parity() {
            abeldisk::Parity::Even => SeriesKind::Cosine,
            abeldisk::Parity::Odd => SeriesKind::Sine,
            abeldisk::Parity::None => bail!("--kind is required for functions without declared parity"),
        },
    };
    let k_max = pick(&a.k, &cfg.k).unwrap_or(64);
    let quad = quad_config(pick(&a.tol, &cfg.tol))?;
    let out = pick(&a.out, &cfg.out);

    let seq = fourier_coefficients(&f, kind, k_max, &quad)?;
    let content = if wants_csv(out.as_deref(), false) {
        csv_table(
            "k,value",
            seq.values().iter().enumerate().map(|(i, v)| format!("{},{}", i + 1, fmt_f(*v))),
        )
    } else {
        to_json_pretty(&seq)?
    };
    write_output(out.as_deref(), &content)
}

fn resolve_sequence(
    seq: &Option<String>,
    kind: &Option<String>,
    k: &Option<usize>,
    cfg: &FileConfig,
) -> Result<CoefficientSequence> {
    let spec = pick(seq, &cfg.seq).ok_or_else(|| anyhow::anyhow!("--seq is required"))?;
    let kind = match pick(kind, &cfg.kind) {
        Some(s) => parse_kind(&s)?,
        None => SeriesKind::Cosine,
    };
    let k_max = pick(k, &cfg.k).unwrap_or(64);
    load_sequence(&spec, kind, k_max)
}

fn cmd_classify(a: ClassifyArgs, cfg: &FileConfig) -> Result<()> {
    let seq = resolve_sequence(&a.seq, &a.kind, &a.k, cfg)?;
    let window = pick(&a.window, &cfg.window).unwrap_or((seq.k_max() / 4).clamp(8, 256));
    let report = GrowthReport::analyze(&seq, window)?;
    let out = pick(&a.out, &cfg.out);
    write_output(out.as_deref(), &to_json_pretty(&report)?)
}

fn cmd_threshold(a: ThresholdArgs, cfg: &FileConfig) -> Result<()> {
    let slope = pick(&a.a, &cfg.a).ok_or_else(|| anyhow::anyhow!("--a is required"))?;
    let result = abeldisk::log_linear_threshold(slope)?;
    let out = pick(&a.out, &cfg.out);
    write_output(out.as_deref(), &to_json_pretty(&result)?)
}

fn cmd_reconstruct(a: ReconstructArgs, cfg: &FileConfig, conjugate: bool) -> Result<()> {
    let seq = resolve_sequence(&a.seq, &a.kind, &a.k, cfg)?;
    let theta = pick(&a.theta, &cfg.theta);
    let grid = match theta {
        Some(t) => {
            if !(-PI..=PI).contains(&t) {
                bail!("--theta must lie in [-pi, pi]");
            }
            vec![t]
        }
        None => abeldisk::disk::uniform_grid(validated_grid(pick(&a.grid, &cfg.grid).unwrap_or(256))?),
    };
    let mut ladder = LadderConfig::default();
    if let Some(depth) = pick(&a.ladder_depth, &cfg.ladder_depth) {
        ladder.depth = depth;
    }
    if let Some(tol) = pick(&a.tol, &cfg.tol) {
        ladder.convergence_tol = tol;
    }
    ladder.enforce_growth_gate = !(a.force || cfg.force.unwrap_or(false));

    let r = if conjugate {
        conjugate_reconstruct(&seq, &grid, &ladder)?
    } else {
        reconstruct(&seq, &grid, &ladder)?
    };

    if let Some(ladder_path) = pick(&a.ladder_out, &cfg.ladder_out) {
        if grid.len() != 1 {
            bail!("--ladder-out needs a single --theta");
        }
        let t = grid[0];
        let rows = r.ladder.iter().map(|&rho| {
            let ev = abeldisk::evaluate_series(&seq, DiskPoint::new(rho, t).expect("rho < 1"))
                .map(|e| match seq.kind() {
                    SeriesKind::Cosine if !conjugate => e.real_part,
                    SeriesKind::Sine if conjugate => e.real_part,
                    _ => e.imag_part,
                })
                .unwrap_or(f64::NAN);
            format!("{},{}", fmt_f(rho), fmt_f(ev))
        });
        write_output(Some(&ladder_path), &csv_table("rho,value", rows))?;
    }

    let fn_id = pick(&a.fn_id, &cfg.r#fn);
    let table = pick(&a.table, &cfg.table);
    if fn_id.is_some() || table.is_some() {
        let oracle = load_function(fn_id.as_deref(), table.as_ref())?;
        let radius = pick(&a.exclude_radius, &cfg.exclude_radius).unwrap_or(0.2);
        let stats = compare_to_oracle(&r, &oracle, radius)?;
        print!("{}", to_json_pretty(&stats)?);
    }

    let out = pick(&a.out, &cfg.out);
    let content = if wants_csv(out.as_deref(), true) {
        csv_table(
            "theta,value,residual,converged",
            (0..r.theta_grid.len()).map(|i| {
                format!(
                    "{},{},{},{}",
                    fmt_f(r.theta_grid[i]),
                    fmt_f(r.values[i]),
                    fmt_f(r.residuals[i]),
                    r.converged[i]
                )
            }),
        )
    } else {
        to_json_pretty(&r)?
    };
    write_output(out.as_deref(), &content)
}

fn cmd_kernel(a: KernelArgs, cfg: &FileConfig) -> Result<()> {
    let theta1 = pick(&a.theta1, &cfg.theta1).unwrap_or(0.0);
    let rho = pick(&a.rho, &cfg.rho).ok_or_else(|| anyhow::anyhow!("--rho is required"))?;
    let grid_n = validated_grid(pick(&a.grid, &cfg.grid).unwrap_or(256))?;
    let kernel = abeldisk::delta_kernel(theta1)?;
    DiskPoint::new(rho, 0.0)?;
    let rows = abeldisk::disk::uniform_grid(grid_n).into_iter().map(|t| {
        let ev = kernel.eval(DiskPoint::new(rho, t).expect("validated rho"));
        format!("{},{},{}", fmt_f(t), fmt_f(ev.real_part), fmt_f(ev.imag_part))
    });
    let out = pick(&a.out, &cfg.out);
    write_output(out.as_deref(), &csv_table("theta,re,im", rows))
}

fn cmd_verify(a: VerifyArgs, cfg: &FileConfig) -> Result<i32> {
    let results = abeldisk::verify::run_all();
    let mut text = String::new();
    let mut all_ok = true;
    for r in &results {
        all_ok &= r.passed;
        text.push_str(&format!("[{}] {}\n", if r.passed { "PASS" } else { "FAIL" }, r.name));
        for line in &r.details {
            text.push_str("    ");
            text.push_str(line);
            text.push('\n');
        }
    }
    text.push_str(&format!(
        "overall: {} ({}/{} criteria)\n",
        if all_ok { "PASS" } else { "FAIL" },
        results.iter().filter(|r| r.passed).count(),
        results.len()
    ));
    let out = pick(&a.out, &cfg.out);
    write_output(out.as_deref(), &text)?;
    Ok(if all_ok { 0 } else { 1 })
}

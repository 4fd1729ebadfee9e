//! File formats: sample tables, sequence files, CSV/JSON writers.
//!
//! CSV output is UTF-8 with a header row, `.` decimal separator, and 17
//! significant digits, so identical configs produce byte-identical files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use abeldisk::{
    CoefficientSequence, Generator, Parity, PeriodicFunction, SampleTable, SeriesKind,
};

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Deserialize)]
struct TableFile {
    theta: Vec<f64>,
    values: Vec<f64>,
    #[serde(default)]
    singular_points: Vec<f64>,
    #[serde(default)]
    parity: Option<Parity>,
}

pub fn load_table(path: &Path) -> Result<PeriodicFunction> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: TableFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let table = SampleTable::new(file.theta, file.values)?;
    let mut f = PeriodicFunction::from_table(table).with_singular_points(&file.singular_points)?;
    if let Some(p) = file.parity {
        f = f.with_parity(p);
    }
    Ok(f)
}

/// Resolves `--fn` / `--table` into a function; exactly one must be given.
pub fn load_function(fn_id: Option<&str>, table: Option<&PathBuf>) -> Result<PeriodicFunction> {
    match (fn_id, table) {
        (Some(id), None) => Ok(PeriodicFunction::from_catalog_id(id)?),
        (None, Some(path)) => load_table(path),
        (Some(_), Some(_)) => bail!("give either --fn or --table, not both"),
        (None, None) => bail!("a function is required: --fn <id> or --table <file.json>"),
    }
}

/// Synthetic sequence grammar: `const:c`, `power:p`, `inv-power:p`,
/// `geometric:r`, `delta-taylor`, `file:<path>`.
pub fn load_sequence(spec: &str, kind: SeriesKind, k_max: usize) -> Result<CoefficientSequence> {
    if let Some(path) = spec.strip_prefix("file:") {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let seq: CoefficientSequence =
            serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
        return Ok(seq);
    }
    if spec == "delta-taylor" {
        return Ok(abeldisk::delta_taylor_sequence(k_max));
    }
    let (head, arg) = spec
        .split_once(':')
        .ok_or_else(|| anyhow::anyhow!("unknown sequence spec `{spec}`"))?;
    let value: f64 = arg.parse().with_context(|| format!("bad parameter in `{spec}`"))?;
    let gen = match head {
        "const" => Generator::Constant(value),
        "power" => Generator::Power(value),
        "inv-power" => Generator::InvPower(value),
        "geometric" => Generator::Geometric(value),
        _ => bail!("unknown sequence spec `{spec}`"),
    };
    Ok(CoefficientSequence::synthetic(kind, gen, k_max)?)
}

pub fn parse_kind(s: &str) -> Result<SeriesKind> {
    match s {
        "cosine" => Ok(SeriesKind::Cosine),
        "sine" => Ok(SeriesKind::Sine),
        _ => bail!("--kind must be `cosine` or `sine`, got `{s}`"),
    }
}

/// Writes to the path, or to stdout when no path is given.
pub fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent() {
                if !dir.as_os_str().is_empty() {
                    fs::create_dir_all(dir)?;
                }
            }
            fs::write(p, content).with_context(|| format!("writing {}", p.display()))?;
        }
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

pub fn wants_csv(path: Option<&Path>, default_csv: bool) -> bool {
    match path {
        Some(p) => p.extension().map_or(default_csv, |e| e == "csv"),
        None => default_csv,
    }
}

/// A CSV table with a fixed header.
pub fn csv_table(header: &str, rows: impl Iterator<Item = String>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub fn to_json_pretty<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

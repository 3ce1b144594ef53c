//! CSV, JSON and aligned-text renderings.

use std::fmt::Write as _;
use std::io::Write;

use mttdl_core::format::Notation;
use mttdl_core::SimulationResult;
use serde::Serialize;

use crate::error::Result;
use crate::harness::{ComparisonRow, ReproducedTable, TableLayout};

pub const CSV_COLUMNS: [&str; 11] = [
    "n",
    "k",
    "mttf",
    "mttr",
    "model",
    "predicted",
    "observed",
    "op_ratio",
    "iterations",
    "seed",
    "rng_name",
];

/// Writes rows with a header line, even when `rows` is empty.
pub fn write_rows_csv<W: Write>(rows: &[ComparisonRow], out: W) -> Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    writer.write_record(CSV_COLUMNS)?;
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_json<W: Write, T: Serialize + ?Sized>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

/// `digits` significant digits, positional for moderate magnitudes.
pub fn significant(value: f64, digits: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let magnitude = value.abs().log10().floor() as i32;
    if (-4..9).contains(&magnitude) {
        let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
        format!("{value:.decimals$}")
    } else {
        format!("{value:.prec$E}", prec = digits.saturating_sub(1))
    }
}

fn or_dash(value: Option<f64>, render: impl Fn(f64) -> String) -> String {
    value.map_or_else(|| "-".to_string(), render)
}

/// Aligned text for arbitrary comparison rows.
pub fn render_rows(rows: &[ComparisonRow], notation: Notation) -> String {
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{:>5} {:>5} {:>12} {:>10} {:<17} {:>12} {:>12} {:>8}",
        "n", "k", "mttf", "mttr", "model", "predicted", "observed", "o/p"
    );
    for row in rows {
        let _ = writeln!(
            text,
            "{:>5} {:>5} {:>12} {:>10} {:<17} {:>12} {:>12} {:>8}",
            row.n,
            row.k,
            row.mttf,
            row.mttr,
            row.model.as_str(),
            notation.format(row.predicted),
            or_dash(row.observed, |v| notation.format(v)),
            or_dash(row.op_ratio, |v| format!("{v:.3}")),
        );
    }
    text
}

/// One reproduced table laid out like the published one, with the
/// published O/P alongside.
pub fn render_table(table: &ReproducedTable) -> String {
    let spec = &table.spec;
    let notation = spec.notation;
    let decimals = spec.ratio_decimals;
    let mut text = String::new();
    let trials = table.rows.first().and_then(|r| r.iterations).unwrap_or(0);
    let seed = table.rows.first().and_then(|r| r.seed).unwrap_or(0);
    let _ = writeln!(
        text,
        "{} ({trials} trials per row, seed {seed})",
        spec.title
    );
    let (first, second, third) = match spec.layout {
        TableLayout::ByShape => ("N", "K", "MTTF"),
        TableLayout::ByRates => ("MTTF", "MTTR", ""),
    };
    let _ = writeln!(
        text,
        "{first:>6} | {second:>6} | {third:>6} | {:>11} | {:>11} | {:>8} | {:>11} | {:>13}",
        "Predicted", "Observed", "O/P", "±95% CI", "Published O/P"
    );
    for ((row, sim), published) in table.rows.iter().zip(&table.simulations).zip(spec.rows) {
        let (a, b, c) = match spec.layout {
            TableLayout::ByShape => (row.n.to_string(), row.k.to_string(), row.mttf.to_string()),
            TableLayout::ByRates => (row.mttf.to_string(), row.mttr.to_string(), String::new()),
        };
        let _ = writeln!(
            text,
            "{a:>6} | {b:>6} | {c:>6} | {:>11} | {:>11} | {:>8} | {:>11} | {:>13}",
            notation.format(row.predicted),
            notation.format(sim.mean),
            or_dash(row.op_ratio, |v| format!("{v:.decimals$}")),
            significant(1.96 * sim.stderr, 3),
            format!("{:.decimals$}", published.op_ratio),
        );
    }
    text
}

#[derive(Debug, Serialize)]
pub struct SimulationRecord {
    pub n: u32,
    pub k: u32,
    pub mttf: f64,
    pub mttr: f64,
    pub mean: f64,
    pub sample_stddev: f64,
    pub stderr: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub iterations: u64,
    pub degenerate: bool,
    pub seed: u64,
    pub rng_name: &'static str,
}

pub fn render_simulation(record: &SimulationRecord) -> String {
    let mut text = String::new();
    let _ = writeln!(
        text,
        "system      {}-of-{}, mttf {}, mttr {}",
        record.k, record.n, record.mttf, record.mttr
    );
    let _ = writeln!(text, "mean        {}", significant(record.mean, 6));
    let _ = writeln!(text, "stderr      {}", significant(record.stderr, 3));
    let _ = writeln!(
        text,
        "95% ci      {} .. {}",
        significant(record.ci95_low, 6),
        significant(record.ci95_high, 6)
    );
    let _ = writeln!(text, "sample sd   {}", significant(record.sample_stddev, 6));
    let _ = writeln!(text, "iterations  {}", record.iterations);
    if record.degenerate {
        let _ = writeln!(text, "note        single trial, dispersion undefined");
    }
    let _ = writeln!(text, "seed        {}", record.seed);
    let _ = writeln!(text, "rng         {}", record.rng_name);
    text
}

impl SimulationRecord {
    pub fn new(cfg: &mttdl_core::SystemConfig, result: &SimulationResult, seed: u64) -> Self {
        Self {
            n: cfg.n(),
            k: cfg.k(),
            mttf: cfg.mttf(),
            mttr: cfg.mttr(),
            mean: result.mean,
            sample_stddev: result.sample_stddev,
            stderr: result.stderr,
            ci95_low: result.ci95_low,
            ci95_high: result.ci95_high,
            iterations: result.iterations,
            degenerate: result.degenerate,
            seed,
            rng_name: mttdl_core::RNG_NAME,
        }
    }
}

//! The `mttdl` command line.
//!
//! Every flag may also be given in a JSON config file (`--config`), keyed by
//! the flag name. Explicit flags win over the file, which wins over the
//! built-in defaults. Exit status is 0 on success, 2 for usage or
//! validation errors and 1 for runtime failures.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mttdl_core::ancillary::{rebuild_time_floor, reliability_at, ure_survival_probability};
use mttdl_core::format::Notation;
use mttdl_core::models::DEFAULT_DECADE_FACTOR;
use mttdl_core::{correlated_chen_mttdl, predict, Model, SimulationSpec, SystemConfig};
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::harness::{
    compare_models, parse_f64_values, parse_u32_values, reproduce_paper_tables, run_sweep,
    ComparisonRow, SimulationPlan, SweepSpec, TablePlan,
};
use crate::output::{
    render_rows, render_simulation, render_table, significant, write_json, write_rows_csv,
    SimulationRecord,
};
use crate::parallel::{default_parallelism, run_simulation};
use crate::units::parse_bytes;

const DEFAULT_SEED: u64 = 1;
const DEFAULT_ITERATIONS: u64 = 2000;

#[derive(Debug, Parser)]
#[command(
    name = "mttdl",
    version,
    about = "Mean-Time-To-Data-Loss models and simulation for k-of-n storage systems"
)]
struct Cli {
    /// JSON file supplying defaults for any flag
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Predict MTTDL with one model or all of them
    Predict(PredictArgs),
    /// Estimate MTTDL by Monte Carlo simulation
    Simulate(SimulateArgs),
    /// Compare model predictions against one simulation run
    Compare(CompareArgs),
    /// Rebuild the five published model-vs-simulation tables
    Tables(TablesArgs),
    /// Evaluate models over a grid of configurations
    Sweep(SweepArgs),
    /// Probability of no data loss within a time span, e^(-t/MTTDL)
    Reliability(ReliabilityArgs),
    /// Probability of reading data without an unrecoverable read error
    Ure(UreArgs),
    /// Minimum rebuild time for a capacity at a sustained rate
    RebuildFloor(RebuildArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NotationArg {
    Sci,
    Fixed,
    Auto,
}

impl From<NotationArg> for Notation {
    fn from(n: NotationArg) -> Self {
        match n {
            NotationArg::Sci => Notation::Scientific,
            NotationArg::Fixed => Notation::Fixed,
            NotationArg::Auto => Notation::Auto,
        }
    }
}

#[derive(Debug, Args)]
struct SystemArgs {
    /// Number of devices
    #[arg(long)]
    n: Option<u32>,
    /// Devices that must stay operational
    #[arg(long)]
    k: Option<u32>,
    /// Mean time to failure of one device
    #[arg(long)]
    mttf: Option<f64>,
    /// Mean time to repair of one device
    #[arg(long)]
    mttr: Option<f64>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Number style for MTTDL values in text output
    #[arg(long, value_enum)]
    notation: Option<NotationArg>,
}

#[derive(Debug, Args)]
struct SimArgs {
    /// Number of independent trials
    #[arg(long)]
    iterations: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; never changes the result
    #[arg(long)]
    parallelism: Option<usize>,
}

#[derive(Debug, Args)]
struct PredictArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// chen, angus, angus-simplified, markov, markov-linear, correlated-chen or all
    #[arg(long)]
    model: Option<String>,
    /// Per-failure MTTF divisor for correlated-chen
    #[arg(long)]
    decade_factor: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    sim: SimArgs,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Comma-separated model names, or all
    #[arg(long)]
    models: Option<String>,
    #[command(flatten)]
    sim: SimArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct TablesArgs {
    /// Trials per row of the high MTTF/MTTR tables
    #[arg(long)]
    iterations: Option<u64>,
    /// Trials per row of the low MTTF/MTTR tables
    #[arg(long)]
    low_ratio_iterations: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    parallelism: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Values such as 10, 6..10, 4..16:4 or 8,10,12
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    mttf: Option<String>,
    #[arg(long)]
    mttr: Option<String>,
    #[arg(long)]
    models: Option<String>,
    /// Also simulate every point
    #[arg(long)]
    simulate: bool,
    #[command(flatten)]
    sim: SimArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ReliabilityArgs {
    #[arg(long)]
    mttdl: Option<f64>,
    #[arg(long)]
    time: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct UreArgs {
    /// Unrecoverable read errors per bit
    #[arg(long)]
    ber: Option<f64>,
    /// Bits that must be read
    #[arg(long, conflicts_with_all = ["capacity", "width"])]
    bits: Option<f64>,
    /// Per-device capacity, e.g. 1TB
    #[arg(long)]
    capacity: Option<String>,
    /// Devices read in full
    #[arg(long)]
    width: Option<u32>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct RebuildArgs {
    /// Capacity to rebuild, e.g. 1TB
    #[arg(long)]
    capacity: Option<String>,
    /// Sustained rate, e.g. 100MB/s
    #[arg(long)]
    rate: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// Flag values loaded from `--config`.
#[derive(Debug, Default)]
struct Defaults(Map<String, Value>);

impl Defaults {
    fn load(path: Option<&PathBuf>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
        match serde_json::from_str(&text) {
            Ok(Value::Object(map)) => Ok(Self(map)),
            Ok(_) => Err(Error::Usage("config file must hold a JSON object".into())),
            Err(e) => Err(Error::Usage(format!("config file: {e}"))),
        }
    }

    fn lookup<T: DeserializeOwned>(&self, key: &str) -> Result<Option<T>> {
        let value = self
            .0
            .get(key)
            .or_else(|| self.0.get(&key.replace('-', "_")));
        value
            .map(|v| {
                serde_json::from_value(v.clone())
                    .map_err(|e| Error::Usage(format!("config key '{key}': {e}")))
            })
            .transpose()
    }

    fn or<T: DeserializeOwned>(&self, flag: Option<T>, key: &str) -> Result<Option<T>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.lookup(key),
        }
    }

    fn require<T: DeserializeOwned>(&self, flag: Option<T>, key: &str) -> Result<T> {
        self.or(flag, key)?
            .ok_or_else(|| Error::Usage(format!("missing required --{key}")))
    }

    fn choice<E: ValueEnum>(&self, flag: Option<E>, key: &str) -> Result<Option<E>> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.lookup::<String>(key)?
            .map(|s| {
                E::from_str(&s, true)
                    .map_err(|_| Error::Usage(format!("config key '{key}': invalid value '{s}'")))
            })
            .transpose()
    }

    fn system(&self, args: &SystemArgs) -> Result<SystemConfig> {
        Ok(SystemConfig::new(
            self.require(args.n, "n")?,
            self.require(args.k, "k")?,
            self.require(args.mttf, "mttf")?,
            self.require(args.mttr, "mttr")?,
        )?)
    }

    fn simulation(&self, args: &SimArgs) -> Result<SimulationPlan> {
        Ok(SimulationPlan {
            iterations: self
                .or(args.iterations, "iterations")?
                .unwrap_or(DEFAULT_ITERATIONS),
            seed: self.or(args.seed, "seed")?.unwrap_or(DEFAULT_SEED),
            parallelism: self
                .or(args.parallelism, "parallelism")?
                .unwrap_or_else(default_parallelism),
        })
    }

    fn format(&self, flag: Option<Format>) -> Result<Format> {
        Ok(self.choice(flag, "format")?.unwrap_or(Format::Table))
    }

    fn notation(&self, flag: Option<NotationArg>) -> Result<Notation> {
        Ok(self
            .choice(flag, "notation")?
            .map_or(Notation::Scientific, Notation::from))
    }
}

fn parse_models(text: &str) -> Result<Vec<Model>> {
    if text.trim() == "all" {
        return Ok(Model::ALL.to_vec());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<Model>()
                .map_err(|_| Error::Usage(format!("unknown model '{}'", s.trim())))
        })
        .collect()
}

/// Runs the command line on `args` (including the program name) and returns
/// the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let defaults = Defaults::load(cli.config.as_ref())?;
    match cli.command {
        Command::Predict(args) => cmd_predict(&defaults, &args, out),
        Command::Simulate(args) => cmd_simulate(&defaults, &args, out),
        Command::Compare(args) => cmd_compare(&defaults, &args, out),
        Command::Tables(args) => cmd_tables(&defaults, &args, out),
        Command::Sweep(args) => cmd_sweep(&defaults, &args, out, err),
        Command::Reliability(args) => cmd_reliability(&defaults, &args, out),
        Command::Ure(args) => cmd_ure(&defaults, &args, out),
        Command::RebuildFloor(args) => cmd_rebuild_floor(&defaults, &args, out),
    }
}

fn emit_rows(
    rows: &[ComparisonRow],
    format: Format,
    notation: Notation,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        Format::Table => out.write_all(render_rows(rows, notation).as_bytes())?,
        Format::Json => write_json(rows, out)?,
        Format::Csv => write_rows_csv(rows, out)?,
    }
    Ok(())
}

fn cmd_predict(defaults: &Defaults, args: &PredictArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = defaults.system(&args.system)?;
    let models = parse_models(
        &defaults
            .or(args.model.clone(), "model")?
            .unwrap_or_else(|| "all".into()),
    )?;
    let factor = defaults
        .or(args.decade_factor, "decade-factor")?
        .unwrap_or(DEFAULT_DECADE_FACTOR);
    let format = defaults.format(args.output.format)?;
    let notation = defaults.notation(args.output.notation)?;

    let rows = models
        .iter()
        .map(|&m| {
            let prediction = match m {
                Model::CorrelatedChen => correlated_chen_mttdl(&cfg, factor)?,
                other => predict(other, &cfg)?,
            };
            Ok(ComparisonRow::from_prediction(&cfg, &prediction))
        })
        .collect::<Result<Vec<_>>>()?;

    match format {
        Format::Table => {
            for row in &rows {
                writeln!(
                    out,
                    "{:<17} {}",
                    row.model.as_str(),
                    notation.format(row.predicted)
                )?;
            }
        }
        Format::Json => {
            let predictions: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "model": r.model.as_str(), "mttdl": r.predicted }))
                .collect();
            write_json(
                &json!({
                    "n": cfg.n(),
                    "k": cfg.k(),
                    "mttf": cfg.mttf(),
                    "mttr": cfg.mttr(),
                    "predictions": predictions,
                }),
                out,
            )?;
        }
        Format::Csv => write_rows_csv(&rows, out)?,
    }
    Ok(())
}

fn cmd_simulate(defaults: &Defaults, args: &SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = defaults.system(&args.system)?;
    let plan = defaults.simulation(&args.sim)?;
    let format = defaults.format(args.format)?;
    let spec = SimulationSpec::new(cfg, plan.iterations, plan.seed, plan.parallelism)?;
    let result = run_simulation(&spec)?;
    let record = SimulationRecord::new(&cfg, &result, plan.seed);
    match format {
        Format::Table => out.write_all(render_simulation(&record).as_bytes())?,
        Format::Json => write_json(&record, out)?,
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            writer.serialize(&record)?;
            writer.flush()?;
        }
    }
    Ok(())
}

fn cmd_compare(defaults: &Defaults, args: &CompareArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = defaults.system(&args.system)?;
    let models = parse_models(
        &defaults
            .or(args.models.clone(), "models")?
            .unwrap_or_else(|| "all".into()),
    )?;
    let plan = defaults.simulation(&args.sim)?;
    let format = defaults.format(args.output.format)?;
    let notation = defaults.notation(args.output.notation)?;
    let comparison = compare_models(&cfg, &models, &plan)?;
    emit_rows(&comparison.rows, format, notation, out)
}

fn cmd_tables(defaults: &Defaults, args: &TablesArgs, out: &mut dyn Write) -> Result<()> {
    let plan = TablePlan {
        high_ratio_iterations: defaults
            .or(args.iterations, "iterations")?
            .unwrap_or(TablePlan::HIGH_RATIO_ITERATIONS),
        low_ratio_iterations: defaults
            .or(args.low_ratio_iterations, "low-ratio-iterations")?
            .unwrap_or(TablePlan::LOW_RATIO_ITERATIONS),
        seed: defaults.or(args.seed, "seed")?.unwrap_or(DEFAULT_SEED),
        parallelism: defaults
            .or(args.parallelism, "parallelism")?
            .unwrap_or_else(default_parallelism),
    };
    if plan.high_ratio_iterations == 0 || plan.low_ratio_iterations == 0 {
        return Err(Error::Usage("iterations must be at least 1".into()));
    }
    let tables = reproduce_paper_tables(&plan)?;
    match defaults.format(args.format)? {
        Format::Table => {
            for (i, table) in tables.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                out.write_all(render_table(table).as_bytes())?;
            }
        }
        Format::Json => {
            let value: Vec<Value> = tables
                .iter()
                .map(|t| {
                    let rows: Vec<Value> = t
                        .rows
                        .iter()
                        .zip(&t.simulations)
                        .zip(t.spec.rows)
                        .map(|((row, sim), published)| {
                            let mut obj = serde_json::to_value(row).unwrap_or(Value::Null);
                            if let Value::Object(map) = &mut obj {
                                map.insert("stderr".into(), json!(sim.stderr));
                                map.insert("ci95_low".into(), json!(sim.ci95_low));
                                map.insert("ci95_high".into(), json!(sim.ci95_high));
                                map.insert(
                                    "published_predicted".into(),
                                    json!(published.predicted),
                                );
                                map.insert("published_observed".into(), json!(published.observed));
                                map.insert("published_op_ratio".into(), json!(published.op_ratio));
                            }
                            obj
                        })
                        .collect();
                    json!({
                        "name": t.spec.name,
                        "title": t.spec.title,
                        "model": t.spec.model.as_str(),
                        "rows": rows,
                    })
                })
                .collect();
            write_json(&value, out)?;
        }
        Format::Csv => {
            let rows: Vec<ComparisonRow> = tables.into_iter().flat_map(|t| t.rows).collect();
            write_rows_csv(&rows, out)?;
        }
    }
    Ok(())
}

fn cmd_sweep(
    defaults: &Defaults,
    args: &SweepArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let list = |flag: &Option<String>, key: &str| -> Result<String> {
        match defaults.or(flag.clone(), key)? {
            Some(text) => Ok(text),
            None => Err(Error::Usage(format!("missing required --{key}"))),
        }
    };
    let simulate = args.simulate || defaults.lookup::<bool>("simulate")?.unwrap_or(false);
    let spec = SweepSpec {
        n: parse_u32_values(&list(&args.n, "n")?)?,
        k: parse_u32_values(&list(&args.k, "k")?)?,
        mttf: parse_f64_values(&list(&args.mttf, "mttf")?)?,
        mttr: parse_f64_values(&list(&args.mttr, "mttr")?)?,
        models: parse_models(
            &defaults
                .or(args.models.clone(), "models")?
                .unwrap_or_else(|| "all".into()),
        )?,
        simulation: if simulate {
            let plan = defaults.simulation(&args.sim)?;
            if plan.iterations == 0 {
                return Err(Error::Usage("iterations must be at least 1".into()));
            }
            Some(SimulationPlan {
                parallelism: 1,
                ..plan
            })
        } else {
            None
        },
    };
    let report = run_sweep(&spec);
    for p in &report.skipped {
        writeln!(
            err,
            "skipped n={} k={} mttf={} mttr={}: {}",
            p.n, p.k, p.mttf, p.mttr, p.reason
        )?;
    }
    for p in &report.failed {
        writeln!(
            err,
            "failed n={} k={} mttf={} mttr={}: {}",
            p.n, p.k, p.mttf, p.mttr, p.reason
        )?;
    }
    let format = defaults.format(args.output.format)?;
    let notation = defaults.notation(args.output.notation)?;
    emit_rows(&report.rows, format, notation, out)
}

fn emit_scalar(
    format: Format,
    fields: &[(&str, f64)],
    text: String,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        Format::Table => writeln!(out, "{text}")?,
        Format::Json => {
            let map: Map<String, Value> = fields
                .iter()
                .map(|(k, v)| (k.to_string(), json!(v)))
                .collect();
            write_json(&Value::Object(map), out)?;
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            writer.write_record(fields.iter().map(|(k, _)| *k))?;
            writer.write_record(fields.iter().map(|(_, v)| v.to_string()))?;
            writer.flush()?;
        }
    }
    Ok(())
}

fn cmd_reliability(defaults: &Defaults, args: &ReliabilityArgs, out: &mut dyn Write) -> Result<()> {
    let mttdl = defaults.require(args.mttdl, "mttdl")?;
    let time = defaults.require(args.time, "time")?;
    let r = reliability_at(mttdl, time)?;
    emit_scalar(
        defaults.format(args.format)?,
        &[("mttdl", mttdl), ("time", time), ("reliability", r)],
        format!("{r:.4}"),
        out,
    )
}

fn cmd_ure(defaults: &Defaults, args: &UreArgs, out: &mut dyn Write) -> Result<()> {
    let ber = defaults.require(args.ber, "ber")?;
    let bits = match defaults.or(args.bits, "bits")? {
        Some(bits) => bits,
        None => {
            let capacity = defaults
                .or(args.capacity.clone(), "capacity")?
                .ok_or_else(|| Error::Usage("give --bits or --capacity with --width".into()))?;
            let width: u32 = defaults.require(args.width, "width")?;
            parse_bytes(&capacity)? * 8.0 * f64::from(width)
        }
    };
    let p = ure_survival_probability(ber, bits)?;
    emit_scalar(
        defaults.format(args.format)?,
        &[
            ("bit_error_rate", ber),
            ("bits_read", bits),
            ("probability", p),
        ],
        format!("{p:.4}"),
        out,
    )
}

fn cmd_rebuild_floor(defaults: &Defaults, args: &RebuildArgs, out: &mut dyn Write) -> Result<()> {
    let capacity = parse_bytes(&defaults.require(args.capacity.clone(), "capacity")?)?;
    let rate = parse_bytes(&defaults.require(args.rate.clone(), "rate")?)?;
    let hours = rebuild_time_floor(capacity, rate)?;
    emit_scalar(
        defaults.format(args.format)?,
        &[
            ("capacity_bytes", capacity),
            ("rate_bytes_per_second", rate),
            ("hours", hours),
        ],
        format!("{} h", significant(hours, 3)),
        out,
    )
}

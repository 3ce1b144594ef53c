//! Model-versus-simulation comparisons.

use std::collections::BTreeMap;

use mttdl_core::format::Notation;
use mttdl_core::{
    predict, Model, Prediction, SimulationResult, SimulationSpec, SystemConfig, RNG_NAME,
};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::parallel::run_simulation;

/// One model's prediction for one configuration, optionally against a
/// simulated observation.
///
/// Field order matches the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub n: u32,
    pub k: u32,
    pub mttf: f64,
    pub mttr: f64,
    #[serde(serialize_with = "model_name")]
    pub model: Model,
    pub predicted: f64,
    pub observed: Option<f64>,
    pub op_ratio: Option<f64>,
    pub iterations: Option<u64>,
    pub seed: Option<u64>,
    pub rng_name: Option<&'static str>,
}

fn model_name<S: Serializer>(model: &Model, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(model.as_str())
}

impl ComparisonRow {
    pub fn config(&self) -> Result<SystemConfig> {
        Ok(SystemConfig::new(self.n, self.k, self.mttf, self.mttr)?)
    }

    /// A row with no observation, for `model`'s prediction of `cfg`.
    pub fn predicted_only(cfg: &SystemConfig, model: Model) -> Result<Self> {
        Ok(Self::from_prediction(cfg, &predict(model, cfg)?))
    }

    pub fn from_prediction(cfg: &SystemConfig, prediction: &Prediction) -> Self {
        Self {
            n: cfg.n(),
            k: cfg.k(),
            mttf: cfg.mttf(),
            mttr: cfg.mttr(),
            model: prediction.model,
            predicted: prediction.mttdl,
            observed: None,
            op_ratio: None,
            iterations: None,
            seed: None,
            rng_name: None,
        }
    }

    fn with_observation(mut self, observed: &SimulationResult, seed: u64) -> Self {
        self.observed = Some(observed.mean);
        self.op_ratio = Some(observed.mean / self.predicted);
        self.iterations = Some(observed.iterations);
        self.seed = Some(seed);
        self.rng_name = Some(RNG_NAME);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulationPlan {
    pub iterations: u64,
    pub seed: u64,
    pub parallelism: usize,
}

impl SimulationPlan {
    fn spec(&self, cfg: SystemConfig) -> Result<SimulationSpec> {
        Ok(SimulationSpec::new(
            cfg,
            self.iterations,
            self.seed,
            self.parallelism,
        )?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub simulation: SimulationResult,
    pub rows: Vec<ComparisonRow>,
}

/// Predicts `cfg` under every model in `models` and compares each against
/// one shared simulation run.
pub fn compare_models(
    cfg: &SystemConfig,
    models: &[Model],
    plan: &SimulationPlan,
) -> Result<Comparison> {
    let simulation = run_simulation(&plan.spec(*cfg)?)?;
    let rows = models
        .iter()
        .map(|&m| {
            Ok(ComparisonRow::predicted_only(cfg, m)?.with_observation(&simulation, plan.seed))
        })
        .collect::<Result<_>>()?;
    Ok(Comparison { simulation, rows })
}

/// Whether a published table's rows are keyed by `(N, K, MTTF)` or by
/// `(MTTF, MTTR)` at fixed `n = 10, k = 6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableLayout {
    ByShape,
    ByRates,
}

/// A published reference row: predicted column as printed, observed mean
/// and O/P ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedRow {
    pub n: u32,
    pub k: u32,
    pub mttf: f64,
    pub mttr: f64,
    pub predicted: &'static str,
    pub observed: f64,
    pub op_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableSpec {
    pub name: &'static str,
    pub title: &'static str,
    pub model: Model,
    pub layout: TableLayout,
    pub notation: Notation,
    /// Decimal places of the O/P column.
    pub ratio_decimals: usize,
    pub rows: &'static [PublishedRow],
}

const fn row(
    n: u32,
    k: u32,
    mttf: f64,
    predicted: &'static str,
    observed: f64,
    op_ratio: f64,
) -> PublishedRow {
    PublishedRow {
        n,
        k,
        mttf,
        mttr: 1.0,
        predicted,
        observed,
        op_ratio,
    }
}

const fn rates(
    mttf: f64,
    mttr: f64,
    predicted: &'static str,
    observed: f64,
    op_ratio: f64,
) -> PublishedRow {
    PublishedRow {
        n: 10,
        k: 6,
        mttf,
        mttr,
        predicted,
        observed,
        op_ratio,
    }
}

// The 10-of-6 row is printed with MTTF 200 in the original table, but every
// predicted value in that row (and the observed mean) corresponds to 150.
const HIGH_RATIO_SHAPES: [(u32, u32, f64, f64); 5] = [
    (10, 10, 2000.0, 1.988e2),
    (10, 9, 2000.0, 4.488e4),
    (10, 8, 1500.0, 9.446e6),
    (10, 7, 500.0, 7.786e7),
    (10, 6, 150.0, 6.407e7),
];

const fn high(i: usize, predicted: &'static str, op_ratio: f64) -> PublishedRow {
    let (n, k, mttf, observed) = HIGH_RATIO_SHAPES[i];
    row(n, k, mttf, predicted, observed, op_ratio)
}

pub const CHEN_TABLE: TableSpec = TableSpec {
    name: "chen",
    title: "Chen model vs simulation",
    model: Model::Chen,
    layout: TableLayout::ByShape,
    notation: Notation::Scientific,
    ratio_decimals: 3,
    rows: &[
        high(0, "2.000E2", 0.994),
        high(1, "4.444E4", 1.010),
        high(2, "4.688E6", 2.015),
        high(3, "1.240E7", 6.278),
        high(4, "2.511E6", 25.513),
    ],
};

pub const ANGUS_TABLE: TableSpec = TableSpec {
    name: "angus",
    title: "Angus model vs simulation",
    model: Model::Angus,
    layout: TableLayout::ByShape,
    notation: Notation::Scientific,
    ratio_decimals: 3,
    rows: &[
        high(0, "2.000E2", 0.994),
        high(1, "4.467E4", 1.005),
        high(2, "9.438E6", 1.001),
        high(3, "7.591E7", 1.026),
        high(4, "6.441E7", 0.995),
    ],
};

pub const ANGUS_SIMPLIFIED_TABLE: TableSpec = TableSpec {
    name: "angus-simplified",
    title: "Simplified Angus model vs simulation",
    model: Model::AngusSimplified,
    layout: TableLayout::ByShape,
    notation: Notation::Scientific,
    ratio_decimals: 3,
    rows: &[
        high(0, "2.000E2", 0.994),
        high(1, "4.444E4", 1.010),
        high(2, "9.375E6", 1.008),
        high(3, "7.440E7", 1.046),
        high(4, "6.027E7", 1.063),
    ],
};

pub const ANGUS_LOW_RATIO_TABLE: TableSpec = TableSpec {
    name: "angus-low-ratio",
    title: "Angus model at low MTTF/MTTR, 10-of-6",
    model: Model::Angus,
    layout: TableLayout::ByRates,
    notation: Notation::Fixed,
    ratio_decimals: 2,
    rows: &[
        rates(20.0, 1.0, "4136.67", 4423.75, 1.07),
        rates(10.0, 1.0, "205.63", 234.28, 1.14),
        rates(1.0, 1.0, "0.31", 0.67, 2.18),
        rates(1.0, 10.0, "0.18", 0.65, 3.66),
        rates(1.0, 20.0, "0.17", 0.65, 3.77),
    ],
};

pub const MARKOV_LOW_RATIO_TABLE: TableSpec = TableSpec {
    name: "markov-low-ratio",
    title: "Markov first-failure model at low MTTF/MTTR, 10-of-6",
    model: Model::Markov,
    layout: TableLayout::ByRates,
    notation: Notation::Fixed,
    ratio_decimals: 2,
    rows: &[
        rates(20.0, 1.0, "4491.17", 4423.75, 0.98),
        rates(10.0, 1.0, "246.26", 234.28, 0.95),
        rates(1.0, 1.0, "0.89", 0.67, 0.75),
        rates(1.0, 10.0, "0.66", 0.65, 0.97),
        rates(1.0, 20.0, "0.66", 0.65, 0.99),
    ],
};

pub const PUBLISHED_TABLES: [TableSpec; 5] = [
    CHEN_TABLE,
    ANGUS_TABLE,
    ANGUS_SIMPLIFIED_TABLE,
    ANGUS_LOW_RATIO_TABLE,
    MARKOV_LOW_RATIO_TABLE,
];

/// Trial counts and seed for [`reproduce_paper_tables`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TablePlan {
    /// Trials per configuration in the `ByShape` tables.
    pub high_ratio_iterations: u64,
    /// Trials per configuration in the `ByRates` tables.
    pub low_ratio_iterations: u64,
    pub seed: u64,
    pub parallelism: usize,
}

impl TablePlan {
    pub const HIGH_RATIO_ITERATIONS: u64 = 2_000;
    pub const LOW_RATIO_ITERATIONS: u64 = 100_000;

    pub fn published_counts(seed: u64, parallelism: usize) -> Self {
        Self {
            high_ratio_iterations: Self::HIGH_RATIO_ITERATIONS,
            low_ratio_iterations: Self::LOW_RATIO_ITERATIONS,
            seed,
            parallelism,
        }
    }

    fn iterations_for(&self, layout: TableLayout) -> u64 {
        match layout {
            TableLayout::ByShape => self.high_ratio_iterations,
            TableLayout::ByRates => self.low_ratio_iterations,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReproducedTable {
    pub spec: TableSpec,
    pub rows: Vec<ComparisonRow>,
    pub simulations: Vec<SimulationResult>,
}

type ConfigKey = (u32, u32, u64, u64, u64);

fn key(cfg: &SystemConfig, iterations: u64) -> ConfigKey {
    (
        cfg.n(),
        cfg.k(),
        cfg.mttf().to_bits(),
        cfg.mttr().to_bits(),
        iterations,
    )
}

/// Rebuilds all five published tables. Each distinct configuration is
/// simulated once and shared by every table that lists it.
pub fn reproduce_paper_tables(plan: &TablePlan) -> Result<Vec<ReproducedTable>> {
    let mut cache: BTreeMap<ConfigKey, SimulationResult> = BTreeMap::new();
    let mut tables = Vec::with_capacity(PUBLISHED_TABLES.len());
    for spec in PUBLISHED_TABLES {
        let iterations = plan.iterations_for(spec.layout);
        let sim_plan = SimulationPlan {
            iterations,
            seed: plan.seed,
            parallelism: plan.parallelism,
        };
        let mut rows = Vec::with_capacity(spec.rows.len());
        let mut simulations = Vec::with_capacity(spec.rows.len());
        for published in spec.rows {
            let cfg = SystemConfig::new(published.n, published.k, published.mttf, published.mttr)?;
            let simulation = match cache.get(&key(&cfg, iterations)) {
                Some(hit) => *hit,
                None => {
                    let fresh = run_simulation(&sim_plan.spec(cfg)?)?;
                    cache.insert(key(&cfg, iterations), fresh);
                    fresh
                }
            };
            rows.push(
                ComparisonRow::predicted_only(&cfg, spec.model)?
                    .with_observation(&simulation, plan.seed),
            );
            simulations.push(simulation);
        }
        tables.push(ReproducedTable {
            spec,
            rows,
            simulations,
        });
    }
    Ok(tables)
}

/// Cartesian product of parameter values to evaluate.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepSpec {
    pub n: Vec<u32>,
    pub k: Vec<u32>,
    pub mttf: Vec<f64>,
    pub mttr: Vec<f64>,
    pub models: Vec<Model>,
    pub simulation: Option<SimulationPlan>,
}

/// A sweep point that was not evaluated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedPoint {
    pub n: u32,
    pub k: u32,
    pub mttf: f64,
    pub mttr: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepReport {
    pub rows: Vec<ComparisonRow>,
    /// Points violating the configuration invariants.
    pub skipped: Vec<SkippedPoint>,
    /// Valid points whose evaluation failed.
    pub failed: Vec<SkippedPoint>,
}

enum PointOutcome {
    Rows(Vec<ComparisonRow>),
    Skipped(SkippedPoint),
    Failed(SkippedPoint),
}

fn evaluate_point(n: u32, k: u32, mttf: f64, mttr: f64, spec: &SweepSpec) -> PointOutcome {
    let point = |reason: String| SkippedPoint {
        n,
        k,
        mttf,
        mttr,
        reason,
    };
    let cfg = match SystemConfig::new(n, k, mttf, mttr) {
        Ok(cfg) => cfg,
        Err(e) => return PointOutcome::Skipped(point(e.to_string())),
    };
    let rows = match &spec.simulation {
        Some(plan) => compare_models(&cfg, &spec.models, plan).map(|c| c.rows),
        None => spec
            .models
            .iter()
            .map(|&m| ComparisonRow::predicted_only(&cfg, m))
            .collect(),
    };
    match rows {
        Ok(rows) => PointOutcome::Rows(rows),
        Err(e) => PointOutcome::Failed(point(e.to_string())),
    }
}

/// Evaluates every point of the sweep. Invalid combinations are skipped and
/// failures recorded without aborting. Rows are ordered by
/// `(n, k, mttf, mttr, model)`.
pub fn run_sweep(spec: &SweepSpec) -> SweepReport {
    let mut points = Vec::new();
    for &n in &spec.n {
        for &k in &spec.k {
            for &mttf in &spec.mttf {
                for &mttr in &spec.mttr {
                    points.push((n, k, mttf, mttr));
                }
            }
        }
    }
    let outcomes: Vec<PointOutcome> = points
        .par_iter()
        .map(|&(n, k, mttf, mttr)| evaluate_point(n, k, mttf, mttr, spec))
        .collect();

    let mut report = SweepReport::default();
    for outcome in outcomes {
        match outcome {
            PointOutcome::Rows(rows) => report.rows.extend(rows),
            PointOutcome::Skipped(p) => report.skipped.push(p),
            PointOutcome::Failed(p) => report.failed.push(p),
        }
    }
    report.rows.sort_by(|a, b| {
        a.n.cmp(&b.n)
            .then(a.k.cmp(&b.k))
            .then(a.mttf.total_cmp(&b.mttf))
            .then(a.mttr.total_cmp(&b.mttr))
            .then(a.model.cmp(&b.model))
    });
    report
}

/// Parses `"6..10"`, `"6..10:2"`, `"1,2,5"` or a single value.
pub fn parse_u32_values(text: &str) -> Result<Vec<u32>> {
    parse_values(text, |s| s.parse::<u32>().ok(), f64::from, |x| x as u32)
}

/// Like [`parse_u32_values`] for real values; `"10..100:10"`.
pub fn parse_f64_values(text: &str) -> Result<Vec<f64>> {
    parse_values(
        text,
        |s| s.parse::<f64>().ok().filter(|v| v.is_finite()),
        |v| v,
        |x| x,
    )
}

fn parse_values<T: Copy>(
    text: &str,
    parse: impl Fn(&str) -> Option<T>,
    to_f64: impl Fn(T) -> f64,
    from_f64: impl Fn(f64) -> T,
) -> Result<Vec<T>> {
    let bad = || Error::Usage(format!("cannot parse value list '{text}'"));
    let mut values = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once("..") {
            None => values.push(parse(part).ok_or_else(bad)?),
            Some((start, rest)) => {
                let (end, step) = match rest.split_once(':') {
                    Some((end, step)) => (end, Some(step)),
                    None => (rest, None),
                };
                let start = to_f64(parse(start.trim()).ok_or_else(bad)?);
                let end = to_f64(parse(end.trim()).ok_or_else(bad)?);
                let step = match step {
                    Some(s) => to_f64(parse(s.trim()).ok_or_else(bad)?),
                    None => 1.0,
                };
                if step.is_nan() || step <= 0.0 {
                    return Err(Error::Usage(format!(
                        "range step must be positive in '{text}'"
                    )));
                }
                let count = ((end - start) / step + 1e-9).floor();
                if count >= 0.0 {
                    if count > 1e6 {
                        return Err(Error::Usage(format!("range '{part}' is too large")));
                    }
                    for i in 0..=count as u64 {
                        values.push(from_f64(start + i as f64 * step));
                    }
                }
            }
        }
    }
    Ok(values)
}

//! Closed-form MTTDL estimates.
//!
//! All formulas are written in MTTF/MTTR form and evaluated as running
//! products of `ratio / m` factors, so neither `MTTF^(f+1)` nor `n!` is ever
//! materialized on its own.

use core::fmt;
use core::str::FromStr;

use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::markov;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Model {
    Chen,
    Angus,
    AngusSimplified,
    Markov,
    MarkovLinear,
    CorrelatedChen,
}

impl Model {
    pub const ALL: [Model; 6] = [
        Model::Chen,
        Model::Angus,
        Model::AngusSimplified,
        Model::Markov,
        Model::MarkovLinear,
        Model::CorrelatedChen,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Model::Chen => "chen",
            Model::Angus => "angus",
            Model::AngusSimplified => "angus-simplified",
            Model::Markov => "markov",
            Model::MarkovLinear => "markov-linear",
            Model::CorrelatedChen => "correlated-chen",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or(Error::InvalidArgument("unknown model"))
    }
}

/// A model's MTTDL estimate, in the time unit of the config it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub model: Model,
    pub mttdl: f64,
}

/// Default per-failure acceleration for [`correlated_chen_mttdl`].
pub const DEFAULT_DECADE_FACTOR: f64 = 10.0;

fn finish(model: Model, mttdl: f64) -> Result<Prediction> {
    if mttdl.is_finite() && mttdl > 0.0 {
        Ok(Prediction { model, mttdl })
    } else {
        Err(Error::Overflow {
            model: model.as_str(),
        })
    }
}

/// Generalized Chen: `MTTF^(f+1) (k-1)! / (MTTR^f n!)`.
///
/// `n!/(k-1)!` is the falling product `n (n-1) ... k`, so this reduces to
/// `MTTF/n` times one `ratio/(n-i)` factor per tolerated failure.
pub fn chen_mttdl(cfg: &SystemConfig) -> Result<Prediction> {
    finish(Model::Chen, chen_value(cfg))
}

fn chen_value(cfg: &SystemConfig) -> f64 {
    let n = cfg.n();
    let ratio = cfg.ratio();
    (1..=cfg.fault_tolerance()).fold(cfg.mttf() / f64::from(n), |acc, i| {
        acc * ratio / f64::from(n - i)
    })
}

/// Simplified Angus: `MTTF / (k C(n,k)) * (MTTF/MTTR)^(n-k)`.
///
/// Identical to [`chen_mttdl`] multiplied by `(n-k)!`.
pub fn angus_simplified_mttdl(cfg: &SystemConfig) -> Result<Prediction> {
    finish(Model::AngusSimplified, angus_simplified_value(cfg))
}

fn angus_simplified_value(cfg: &SystemConfig) -> f64 {
    // C(n, k) = C(n, f) = prod_{i=1..f} (k+i)/i
    let k = cfg.k();
    let ratio = cfg.ratio();
    (1..=cfg.fault_tolerance()).fold(cfg.mttf() / f64::from(k), |acc, i| {
        acc * ratio * f64::from(i) / f64::from(k + i)
    })
}

/// Full Angus MTBF: the simplified form times
/// `sum_{i=0..n-k} C(n,i) (MTTR/MTTF)^i`.
pub fn angus_mttdl(cfg: &SystemConfig) -> Result<Prediction> {
    let n = cfg.n();
    let inverse_ratio = cfg.mttr() / cfg.mttf();
    let mut term = 1.0;
    let mut sum = 1.0;
    for i in 1..=cfg.fault_tolerance() {
        term = term * f64::from(n - i + 1) / f64::from(i) * inverse_ratio;
        sum += term;
    }
    finish(Model::Angus, angus_simplified_value(cfg) * sum)
}

/// Chen's correlated-failure variant: the `i`-th concurrent failure
/// (1-indexed) sees an effective MTTF of `MTTF / decade_factor^(i-1)`.
///
/// The net effect is a division of [`chen_mttdl`] by
/// `decade_factor^(0 + 1 + ... + f)`.
pub fn correlated_chen_mttdl(cfg: &SystemConfig, decade_factor: f64) -> Result<Prediction> {
    if !(decade_factor.is_finite() && decade_factor >= 1.0) {
        return Err(Error::InvalidArgument(
            "decade factor must be finite and at least 1",
        ));
    }
    let n = cfg.n();
    let ratio = cfg.ratio();
    let mut penalty = 1.0;
    let mut acc = cfg.mttf() / f64::from(n);
    for i in 1..=cfg.fault_tolerance() {
        penalty *= decade_factor;
        acc = acc * ratio / f64::from(n - i) / penalty;
    }
    finish(Model::CorrelatedChen, acc)
}

/// Evaluates any model by identifier. `correlated-chen` uses
/// [`DEFAULT_DECADE_FACTOR`]; `markov-linear` reports `T_0`.
pub fn predict(model: Model, cfg: &SystemConfig) -> Result<Prediction> {
    match model {
        Model::Chen => chen_mttdl(cfg),
        Model::Angus => angus_mttdl(cfg),
        Model::AngusSimplified => angus_simplified_mttdl(cfg),
        Model::Markov => markov::markov_mttdl_closed_form(cfg),
        Model::MarkovLinear => {
            let states = markov::markov_mttdl_linear_system(cfg)?;
            finish(Model::MarkovLinear, states.mttdl())
        }
        Model::CorrelatedChen => correlated_chen_mttdl(cfg, DEFAULT_DECADE_FACTOR),
    }
}

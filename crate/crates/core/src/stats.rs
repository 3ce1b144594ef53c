use crate::error::{Error, Result};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.96;

/// Aggregate of a Monte Carlo run.
///
/// The confidence interval is the normal approximation
/// `mean ± 1.96 · stderr`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationResult {
    pub mean: f64,
    pub sample_stddev: f64,
    pub stderr: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub iterations: u64,
    /// Set when there is a single sample and the dispersion is undefined
    /// (reported as zero).
    pub degenerate: bool,
}

impl SimulationResult {
    /// Aggregates samples in slice order, so equal slices give bit-identical
    /// results.
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidSpec("no samples"));
        }
        let count = samples.len() as f64;
        let mean = neumaier_sum(samples.iter().copied()) / count;
        if mean.is_nan() || mean <= 0.0 {
            return Err(Error::InvalidSpec("sample mean must be positive"));
        }
        let degenerate = samples.len() == 1;
        let sample_stddev = if degenerate {
            0.0
        } else {
            let squares = neumaier_sum(samples.iter().map(|x| (x - mean) * (x - mean)));
            libm::sqrt(squares / (count - 1.0))
        };
        let stderr = sample_stddev / libm::sqrt(count);
        Ok(Self {
            mean,
            sample_stddev,
            stderr,
            ci95_low: mean - Z_95 * stderr,
            ci95_high: mean + Z_95 * stderr,
            iterations: samples.len() as u64,
            degenerate,
        })
    }
}

/// Compensated summation.
fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut compensation = 0.0;
    for v in values {
        let t = sum + v;
        if libm::fabs(sum) >= libm::fabs(v) {
            compensation += (sum - t) + v;
        } else {
            compensation += (v - t) + sum;
        }
        sum = t;
    }
    sum + compensation
}

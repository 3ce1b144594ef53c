use mttdl_core::sim::run_trial;
use mttdl_core::{SimulationResult, SimulationSpec};
use rayon::prelude::*;

use crate::error::Result;

/// Runs `spec.iterations` trials on `spec.parallelism` threads.
///
/// Trials are collected in index order and aggregated on one thread, so the
/// result is bit-identical to [`mttdl_core::sim::run_simulation`] for any
/// worker count.
pub fn run_simulation(spec: &SimulationSpec) -> Result<SimulationResult> {
    spec.validate()?;
    if spec.parallelism == 1 {
        return Ok(mttdl_core::sim::run_simulation(spec)?);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.parallelism)
        .build()?;
    let samples: Vec<f64> = pool.install(|| {
        (0..spec.iterations)
            .into_par_iter()
            .map(|i| run_trial(&spec.cfg, spec.seed, i).time_to_data_loss)
            .collect()
    });
    Ok(SimulationResult::from_samples(&samples)?)
}

/// Worker count used when none is given.
pub fn default_parallelism() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

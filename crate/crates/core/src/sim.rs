//! Monte Carlo estimation of time to data loss.
//!
//! Each trial follows a fixed event loop. Every device holds one pending
//! failure time. The loop repeatedly takes the earliest one, `nf`, and
//! counts the failures in `[nf, nf + MTTR]`. If more than `n - k` fall in
//! that window, the `(n-k+1)`-th of them is the data-loss time. Otherwise
//! only the earliest device is repaired, failing again at
//! `nf + MTTR + ttf`. Repairs take exactly MTTR; failures are exponential.
//!
//! Trial `i` of a run seeded with `s` draws from ChaCha8 seeded with
//! `seed_from_u64(s)` on stream `i`, so results depend only on
//! `(cfg, iterations, seed)`.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::stats::SimulationResult;

/// Identifies the generator and substream derivation in output metadata.
pub const RNG_NAME: &str = "chacha8-seed_from_u64-stream_per_trial";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationSpec {
    pub cfg: SystemConfig,
    pub iterations: u64,
    pub seed: u64,
    /// Worker count hint. Never affects results.
    pub parallelism: usize,
}

impl SimulationSpec {
    pub fn new(cfg: SystemConfig, iterations: u64, seed: u64, parallelism: usize) -> Result<Self> {
        let spec = Self {
            cfg,
            iterations,
            seed,
            parallelism,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::InvalidSpec("iterations must be at least 1"));
        }
        if self.parallelism == 0 {
            return Err(Error::InvalidSpec("parallelism must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct TrialOutcome {
    pub time_to_data_loss: f64,
}

/// `mttf · (-ln u)`: maps a uniform draw to an exponential time to failure.
pub fn random_ttf(mttf: f64, u: f64) -> Result<f64> {
    if !(u > 0.0 && u <= 1.0) {
        return Err(Error::InvalidArgument("uniform draw must lie in (0, 1]"));
    }
    if u == 1.0 {
        return Ok(0.0);
    }
    Ok(mttf * -libm::log(u))
}

/// Uniform draw in the open interval `(0, 1)`: the top 52 bits plus one
/// half, which is exact in `f64` and never reaches 0 or 1.
fn unit_draw<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    const SCALE: f64 = 1.0 / (1u64 << 52) as f64;
    ((rng.next_u64() >> 12) as f64 + 0.5) * SCALE
}

fn draw_ttf<R: RngCore + ?Sized>(mttf: f64, rng: &mut R) -> f64 {
    mttf * -libm::log(unit_draw(rng))
}

/// Number of entries in the closed interval `[start, end]`.
pub fn count_failures(fail_times: &[f64], start: f64, end: f64) -> usize {
    fail_times
        .iter()
        .filter(|&&t| start <= t && t <= end)
        .count()
}

/// Index and value of the earliest failure; ties go to the lower index.
fn earliest(fail_times: &[f64]) -> (usize, f64) {
    let mut best = (0, fail_times[0]);
    for (i, &t) in fail_times.iter().enumerate().skip(1) {
        if t < best.1 {
            best = (i, t);
        }
    }
    best
}

/// Runs one trial to data loss.
pub fn simulate_time_to_data_loss<R: RngCore + ?Sized>(
    cfg: &SystemConfig,
    rng: &mut R,
) -> TrialOutcome {
    let mttf = cfg.mttf();
    let mttr = cfg.mttr();
    let tolerance = cfg.fault_tolerance() as usize;

    let mut fail_times: Vec<f64> = (0..cfg.n()).map(|_| draw_ttf(mttf, rng)).collect();
    loop {
        let (device, nf) = earliest(&fail_times);
        let repaired = nf + mttr;
        if count_failures(&fail_times, nf, repaired) > tolerance {
            let mut window: Vec<(f64, usize)> = fail_times
                .iter()
                .enumerate()
                .filter(|&(_, &t)| nf <= t && t <= repaired)
                .map(|(i, &t)| (t, i))
                .collect();
            window.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            return TrialOutcome {
                time_to_data_loss: window[tolerance].0,
            };
        }
        fail_times[device] = repaired + draw_ttf(mttf, rng);
    }
}

/// The generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Trial `index` of a run seeded with `seed`.
pub fn run_trial(cfg: &SystemConfig, seed: u64, index: u64) -> TrialOutcome {
    simulate_time_to_data_loss(cfg, &mut trial_rng(seed, index))
}

/// Runs every trial on the calling thread, in index order.
///
/// The `mttdl` crate provides a multi-threaded runner with bit-identical
/// output.
pub fn run_simulation(spec: &SimulationSpec) -> Result<SimulationResult> {
    spec.validate()?;
    let samples: Vec<f64> = (0..spec.iterations)
        .map(|i| run_trial(&spec.cfg, spec.seed, i).time_to_data_loss)
        .collect();
    SimulationResult::from_samples(&samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: u32, k: u32, mttf: f64, mttr: f64) -> SystemConfig {
        SystemConfig::new(n, k, mttf, mttr).unwrap()
    }

    #[test]
    fn ttf_endpoints() {
        assert_eq!(random_ttf(2000.0, 1.0).unwrap(), 0.0);
        assert!((random_ttf(2000.0, (-1.0f64).exp()).unwrap() - 2000.0).abs() < 1e-9);
        assert!(random_ttf(1.0, 0.0).is_err());
        assert!(random_ttf(1.0, 1.5).is_err());
        assert!(random_ttf(1.0, -0.1).is_err());
        assert!(random_ttf(1.0, f64::NAN).is_err());
    }

    #[test]
    fn ttf_mean() {
        // stderr of the mean is 2000 / sqrt(1e6) = 2.
        let mut rng = trial_rng(7, 0);
        let draws = 1_000_000;
        let sum: f64 = (0..draws)
            .map(|_| random_ttf(2000.0, unit_draw(&mut rng)).unwrap())
            .sum();
        let mean = sum / draws as f64;
        assert!((mean - 2000.0).abs() < 20.0, "{mean}");
    }

    #[test]
    fn unit_draw_is_open() {
        struct Fixed(u64);
        impl RngCore for Fixed {
            fn next_u32(&mut self) -> u32 {
                self.0 as u32
            }
            fn next_u64(&mut self) -> u64 {
                self.0
            }
            fn fill_bytes(&mut self, _: &mut [u8]) {}
        }
        let lo = unit_draw(&mut Fixed(0));
        let hi = unit_draw(&mut Fixed(u64::MAX));
        assert!(lo > 0.0 && hi < 1.0);
        assert!(draw_ttf(1.0, &mut Fixed(u64::MAX)) > 0.0);
    }

    #[test]
    fn counting() {
        assert_eq!(count_failures(&[1.0, 2.0, 3.0], 1.0, 3.0), 3);
        assert_eq!(count_failures(&[], 0.0, 10.0), 0);
        assert_eq!(count_failures(&[5.0, 10.0], 6.0, 9.0), 0);
        assert_eq!(count_failures(&[5.0, 10.0], 5.0, 5.0), 1);
    }

    #[test]
    fn earliest_breaks_ties_by_index() {
        assert_eq!(earliest(&[3.0, 1.0, 1.0, 2.0]), (1, 1.0));
        assert_eq!(earliest(&[4.0]), (0, 4.0));
    }

    #[test]
    fn single_device_loses_data_at_first_failure() {
        let c = cfg(1, 1, 10.0, 1.0);
        let mut rng = trial_rng(1, 3);
        let first = draw_ttf(10.0, &mut rng);
        assert_eq!(run_trial(&c, 1, 3).time_to_data_loss, first);
    }

    #[test]
    fn no_redundancy_returns_minimum_draw() {
        let c = cfg(6, 6, 100.0, 1.0);
        for index in 0..50 {
            let mut rng = trial_rng(99, index);
            let min = (0..6)
                .map(|_| draw_ttf(100.0, &mut rng))
                .fold(f64::INFINITY, f64::min);
            assert_eq!(run_trial(&c, 99, index).time_to_data_loss, min);
        }
    }

    #[test]
    fn trials_are_reproducible_and_distinct() {
        let c = cfg(10, 8, 50.0, 1.0);
        let a = run_trial(&c, 5, 17);
        assert_eq!(a, run_trial(&c, 5, 17));
        assert_ne!(a, run_trial(&c, 5, 18));
        assert_ne!(a, run_trial(&c, 6, 17));
    }

    #[test]
    fn spec_validation() {
        let c = cfg(3, 2, 10.0, 1.0);
        assert!(SimulationSpec::new(c, 0, 1, 1).is_err());
        assert!(SimulationSpec::new(c, 1, 1, 0).is_err());
        assert!(SimulationSpec::new(c, 1, 1, 4).is_ok());
    }

    #[test]
    fn single_iteration_is_degenerate() {
        let c = cfg(3, 2, 10.0, 1.0);
        let spec = SimulationSpec::new(c, 1, 11, 1).unwrap();
        let result = run_simulation(&spec).unwrap();
        assert_eq!(result.mean, run_trial(&c, 11, 0).time_to_data_loss);
        assert_eq!(result.sample_stddev, 0.0);
        assert!(result.degenerate);
    }
}

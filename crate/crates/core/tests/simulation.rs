use mttdl_core::sim::run_simulation;
use mttdl_core::{markov_mttdl_closed_form, SimulationSpec, SystemConfig};

fn simulate(
    n: u32,
    k: u32,
    mttf: f64,
    mttr: f64,
    iterations: u64,
    seed: u64,
) -> mttdl_core::SimulationResult {
    let cfg = SystemConfig::new(n, k, mttf, mttr).unwrap();
    run_simulation(&SimulationSpec::new(cfg, iterations, seed, 1).unwrap()).unwrap()
}

#[test]
fn no_redundancy_mean_is_mttf_over_n() {
    for (n, mttf) in [(1, 50.0), (10, 2000.0), (4, 3.0)] {
        let r = simulate(n, n, mttf, 1.0, 10_000, 2024);
        let want = mttf / f64::from(n);
        assert!(
            (r.mean - want).abs() < 3.0 * r.stderr,
            "n={n}: {} vs {want}",
            r.mean
        );
    }
}

#[test]
fn single_parity_tracks_markov() {
    // f = 1 at a large ratio: constant and exponential repair agree closely.
    let r = simulate(6, 5, 200.0, 1.0, 20_000, 3);
    let cfg = SystemConfig::new(6, 5, 200.0, 1.0).unwrap();
    let markov = markov_mttdl_closed_form(&cfg).unwrap().mttdl;
    assert!(
        (r.mean / markov - 1.0).abs() < 0.05,
        "{} vs {markov}",
        r.mean
    );
}

#[test]
fn low_ratio_regime() {
    let r = simulate(10, 6, 1.0, 1.0, 100_000, 42);
    assert!((r.mean - 0.67).abs() < 0.067, "{}", r.mean);
}

#[test]
fn statistics_are_consistent() {
    let r = simulate(5, 3, 10.0, 1.0, 5000, 8);
    assert_eq!(r.iterations, 5000);
    assert!((r.stderr - r.sample_stddev / 5000f64.sqrt()).abs() < 1e-12);
    assert!(r.ci95_low < r.mean && r.mean < r.ci95_high);
    assert_eq!(r, simulate(5, 3, 10.0, 1.0, 5000, 8));
}

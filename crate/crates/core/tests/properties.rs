use mttdl_core::sim::run_trial;
use mttdl_core::{
    angus_mttdl, angus_simplified_mttdl, chen_mttdl, markov_mttdl_closed_form,
    markov_mttdl_linear_system, predict, Model, SystemConfig,
};
use proptest::prelude::*;

const MONOTONE: [Model; 5] = [
    Model::Chen,
    Model::Angus,
    Model::AngusSimplified,
    Model::Markov,
    Model::MarkovLinear,
];

fn config() -> impl Strategy<Value = SystemConfig> {
    (1u32..=20, 0.0f64..1.0, -1.0f64..4.0, -2.0f64..2.0).prop_map(|(n, kf, lr, lm)| {
        let k = 1 + ((f64::from(n) * kf) as u32).min(n - 1);
        let mttr = 10f64.powf(lm);
        SystemConfig::new(n, k, mttr * 10f64.powf(lr), mttr).unwrap()
    })
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn factorial_gap(cfg in config()) {
        let f = cfg.fault_tolerance();
        let fact: f64 = (1..=f).map(f64::from).product();
        let chen = chen_mttdl(&cfg).unwrap().mttdl;
        let simplified = angus_simplified_mttdl(&cfg).unwrap().mttdl;
        prop_assert!(rel(simplified, chen * fact) <= 1e-12);
        if f <= 1 {
            prop_assert!(rel(simplified, chen) <= 1e-15);
        }
    }

    #[test]
    fn full_angus_dominates_simplified(cfg in config()) {
        prop_assert!(angus_mttdl(&cfg).unwrap().mttdl >= angus_simplified_mttdl(&cfg).unwrap().mttdl);
    }

    #[test]
    fn closed_form_equals_linear_system(cfg in config()) {
        let closed = markov_mttdl_closed_form(&cfg).unwrap().mttdl;
        let linear = markov_mttdl_linear_system(&cfg).unwrap().mttdl();
        prop_assert!(rel(linear, closed) <= 1e-9);
    }

    // Lowering k multiplies Chen by ratio/k, so the property needs MTTF/MTTR > n.
    #[test]
    fn decreasing_in_k(n in 2u32..=20, k in 1u32..20, headroom in 1.001f64..100.0) {
        prop_assume!(k < n);
        let mttf = f64::from(n) * headroom;
        let looser = SystemConfig::new(n, k, mttf, 1.0).unwrap();
        let stricter = SystemConfig::new(n, k + 1, mttf, 1.0).unwrap();
        for m in MONOTONE {
            prop_assert!(
                predict(m, &looser).unwrap().mttdl > predict(m, &stricter).unwrap().mttdl,
                "{m} not decreasing in k"
            );
        }
    }

    #[test]
    fn redundancy_always_helps_markov_and_angus(n in 2u32..=20, k in 1u32..20, lr in -1.0f64..4.0) {
        prop_assume!(k < n);
        let mttf = 10f64.powf(lr);
        let looser = SystemConfig::new(n, k, mttf, 1.0).unwrap();
        let stricter = SystemConfig::new(n, k + 1, mttf, 1.0).unwrap();
        for m in [Model::Angus, Model::Markov, Model::MarkovLinear] {
            prop_assert!(predict(m, &looser).unwrap().mttdl > predict(m, &stricter).unwrap().mttdl, "{m}");
        }
    }

    #[test]
    fn increasing_in_mttf(cfg in config(), bump in 1.001f64..10.0) {
        let better = SystemConfig::new(cfg.n(), cfg.k(), cfg.mttf() * bump, cfg.mttr()).unwrap();
        for m in MONOTONE {
            prop_assert!(
                predict(m, &better).unwrap().mttdl > predict(m, &cfg).unwrap().mttdl,
                "{m} not increasing in mttf"
            );
        }
    }

    #[test]
    fn scale_invariance(cfg in config(), scale in -3.0f64..3.0) {
        let c = 10f64.powf(scale);
        let scaled = cfg.scaled(c).unwrap();
        for m in Model::ALL {
            let base = predict(m, &cfg).unwrap().mttdl;
            prop_assert!(rel(predict(m, &scaled).unwrap().mttdl, base * c) <= 1e-12, "{m}");
        }
    }

    #[test]
    fn asymptotic_equivalence(n in 1u32..=20, f in 0u32..=4) {
        prop_assume!(f < n);
        let cfg = SystemConfig::new(n, n - f, 1e4, 1.0).unwrap();
        let q = markov_mttdl_closed_form(&cfg).unwrap().mttdl
            / angus_simplified_mttdl(&cfg).unwrap().mttdl;
        prop_assert!((1.0..=1.01).contains(&q), "{q}");
    }

    #[test]
    fn first_failure_time_dominates_mtbf(
        n in 1u32..=12,
        kf in 0.0f64..1.0,
        ratio in prop::sample::select(vec![0.05, 1.0, 20.0, 2000.0]),
    ) {
        let k = 1 + ((f64::from(n) * kf) as u32).min(n - 1);
        let cfg = SystemConfig::new(n, k, ratio, 1.0).unwrap();
        prop_assert!(markov_mttdl_closed_form(&cfg).unwrap().mttdl >= angus_mttdl(&cfg).unwrap().mttdl);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trial_scales_with_time_unit(
        n in 1u32..=8,
        kf in 0.0f64..1.0,
        ratio in 0.5f64..6.0,
        exponent in -4i32..=4,
        seed in any::<u64>(),
        index in 0u64..1000,
    ) {
        let k = 1 + ((f64::from(n) * kf) as u32).min(n - 1);
        let cfg = SystemConfig::new(n, k, ratio, 1.0).unwrap();
        let c = 2f64.powi(exponent);
        let scaled = cfg.scaled(c).unwrap();
        let base = run_trial(&cfg, seed, index).time_to_data_loss;
        prop_assert!(base > 0.0);
        prop_assert_eq!(run_trial(&scaled, seed, index).time_to_data_loss, base * c);
    }
}

// At larger ratios T_0 - T_1 = MTTF/n drops below f64 resolution of T_0.
#[test]
fn state_vector_strictly_decreasing() {
    for n in 1..=12 {
        for k in 1..=n {
            for ratio in [0.1, 1.0, 10.0] {
                let cfg = SystemConfig::new(n, k, ratio, 1.0).unwrap();
                let v = markov_mttdl_linear_system(&cfg).unwrap();
                assert_eq!(v.len() as u32, n - k + 1);
                assert!(v.times().iter().all(|&t| t > 0.0));
                assert!(
                    v.times().windows(2).all(|w| w[0] > w[1]),
                    "({n},{k},{ratio}): {:?}",
                    v.times()
                );
            }
        }
    }
}

#[test]
fn state_vector_non_increasing_at_large_ratio() {
    for n in 1..=20 {
        for k in 1..=n {
            for ratio in [100.0, 1e4] {
                let cfg = SystemConfig::new(n, k, ratio, 1.0).unwrap();
                let v = markov_mttdl_linear_system(&cfg).unwrap();
                assert!(v.times().windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
                assert!(v.times()[0] > *v.times().last().unwrap() || n == k);
            }
        }
    }
}

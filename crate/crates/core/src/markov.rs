//! Mean-Time-To-First-Failure of the k-of-n birth-death chain.
//!
//! State `i` (0 ≤ i ≤ n-k) has `i` failed devices. It moves to `i + 1` at
//! rate `(n-i)λ` and back to `i - 1` at rate `iμ` (every failed device is
//! repaired independently). State `n-k+1` is data loss and is absorbing.
//! `T_i` is the expected time to absorption from state `i`:
//!
//! ```text
//! T_i = 1/((n-i)λ + iμ)
//!     + (n-i)λ/((n-i)λ + iμ) · T_{i+1}
//!     + iμ/((n-i)λ + iμ)     · T_{i-1},      T_{n-k+1} = 0
//! ```
//!
//! The closed form of `T_0` is
//! `(1/n) Σ_{i=0}^{n-k} MTTF^{i+1}/MTTR^i Σ_{j=0}^{n-k-i} C(n,j)/C(n-1,j+i)`.

use alloc::vec::Vec;

use crate::binomial::binomial_row;
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::models::{Model, Prediction};

/// Expected absorption times `T_0 ..= T_{n-k}`.
///
/// Mathematically the entries are positive and strictly decreasing in `i`.
/// In `f64` neighbouring entries can round to the same value, or invert by
/// an ulp, once `T_0` exceeds `MTTF/n` by more than ~16 orders of magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    times: Vec<f64>,
}

impl StateVector {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// `T_0`, the MTTDL from the all-operational state.
    pub fn mttdl(&self) -> f64 {
        self.times[0]
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.times
    }
}

pub fn markov_mttdl_closed_form(cfg: &SystemConfig) -> Result<Prediction> {
    let n = cfg.n();
    let f = cfg.fault_tolerance();
    let ratio = cfg.ratio();
    let c_n = binomial_row(n, f);
    let c_n1 = binomial_row(n - 1, f);

    let mut total = 0.0;
    let mut ratio_pow = 1.0;
    for i in 0..=f {
        let inner: f64 = (0..=f - i)
            .map(|j| c_n[j as usize] / c_n1[(j + i) as usize])
            .sum();
        total += ratio_pow * inner;
        ratio_pow *= ratio;
    }
    let mttdl = cfg.mttf() / f64::from(n) * total;
    if mttdl.is_finite() && mttdl > 0.0 {
        Ok(Prediction {
            model: Model::Markov,
            mttdl,
        })
    } else {
        Err(Error::Overflow { model: "markov" })
    }
}

/// Solves the absorption-time equations directly.
///
/// The system is tridiagonal with diagonal `s_i = a_i + b_i`
/// (`a_i = (n-i)λ`, `b_i = iμ`), super-diagonal `-a_i` and sub-diagonal
/// `-b_i`. Elimination starts at the row next to the absorbing state and
/// sweeps toward state 0, then back-substitutes from `T_0` upward.
///
/// Subtracting `a_i b_{i+1} / p_{i+1}` from `s_i` cancels catastrophically
/// when μ ≫ λ. Because every row sums to zero apart from the exit to the
/// absorbing state, each pivot can be written `p_i = b_i + x_i` with
/// `x_{n-k} = a_{n-k}` and `x_i = a_i x_{i+1} / p_{i+1}`, which needs no
/// subtraction at all.
pub fn markov_mttdl_linear_system(cfg: &SystemConfig) -> Result<StateVector> {
    let n = cfg.n();
    let states = cfg.fault_tolerance() as usize + 1;
    let lambda = cfg.failure_rate();
    let mu = cfg.repair_rate();
    let up = |i: usize| f64::from(n - i as u32) * lambda;
    let down = |i: usize| i as f64 * mu;

    let mut pivot = alloc::vec![0.0; states];
    let mut rhs = alloc::vec![0.0; states];

    let last = states - 1;
    let mut excess = up(last);
    pivot[last] = down(last) + excess;
    rhs[last] = 1.0;
    check_pivot(pivot[last], last)?;
    for i in (0..last).rev() {
        excess = up(i) * excess / pivot[i + 1];
        pivot[i] = down(i) + excess;
        rhs[i] = 1.0 + up(i) * rhs[i + 1] / pivot[i + 1];
        check_pivot(pivot[i], i)?;
    }

    let mut times = Vec::with_capacity(states);
    let mut previous = 0.0;
    for i in 0..states {
        let t = (rhs[i] + down(i) * previous) / pivot[i];
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Overflow {
                model: "markov-linear",
            });
        }
        times.push(t);
        previous = t;
    }
    Ok(StateVector { times })
}

fn check_pivot(p: f64, state: usize) -> Result<()> {
    if p.is_finite() && p > 0.0 {
        Ok(())
    } else {
        Err(Error::NumericInstability { state })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::fixed;

    fn cfg(n: u32, k: u32, mttf: f64, mttr: f64) -> SystemConfig {
        SystemConfig::new(n, k, mttf, mttr).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn low_ratio_table() {
        let expected = [
            (20.0, 1.0, "4491.17"),
            (10.0, 1.0, "246.26"),
            (1.0, 1.0, "0.89"),
            (1.0, 10.0, "0.66"),
            (1.0, 20.0, "0.66"),
        ];
        for (mttf, mttr, want) in expected {
            let c = cfg(10, 6, mttf, mttr);
            let closed = markov_mttdl_closed_form(&c).unwrap().mttdl;
            assert_eq!(fixed(closed), want, "closed form ({mttf}, {mttr})");
            let linear = markov_mttdl_linear_system(&c).unwrap().mttdl();
            assert_eq!(fixed(linear), want, "linear ({mttf}, {mttr})");
        }
    }

    #[test]
    fn state_vector_shape() {
        // Exact values: 26947/6, 26935/6, 8965/2, 13340/3, 12410/3.
        let v = markov_mttdl_linear_system(&cfg(10, 6, 20.0, 1.0)).unwrap();
        let want = [
            26947.0 / 6.0,
            26935.0 / 6.0,
            8965.0 / 2.0,
            13340.0 / 3.0,
            12410.0 / 3.0,
        ];
        assert_eq!(v.len(), 5);
        for (got, want) in v.times().iter().zip(want) {
            assert!(rel(*got, want) < 1e-13, "{got} vs {want}");
        }
        assert!(v.times().windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn single_device() {
        let c = cfg(1, 1, 37.5, 2.0);
        let v = markov_mttdl_linear_system(&c).unwrap();
        assert_eq!(v.times(), &[37.5]);
        assert_eq!(markov_mttdl_closed_form(&c).unwrap().mttdl, 37.5);
    }

    #[test]
    fn no_redundancy_collapses_to_mttf_over_n() {
        for n in [1, 2, 7, 20, 300] {
            let c = cfg(n, n, 900.0, 3.0);
            let want = 900.0 / f64::from(n);
            assert!(rel(markov_mttdl_closed_form(&c).unwrap().mttdl, want) < 1e-15);
            assert!(rel(markov_mttdl_linear_system(&c).unwrap().mttdl(), want) < 1e-15);
        }
    }

    #[test]
    fn closed_form_matches_linear_system() {
        // 9463004.1666..., 6073161584004.1666...
        let a = cfg(10, 8, 1500.0, 1.0);
        let closed = markov_mttdl_closed_form(&a).unwrap().mttdl;
        let linear = markov_mttdl_linear_system(&a).unwrap().mttdl();
        assert!(rel(closed, 9_463_004.166_666_666) < 1e-12);
        assert!(rel(linear, closed) < 1e-9);

        let b = cfg(10, 6, 1500.0, 1.0);
        let closed = markov_mttdl_closed_form(&b).unwrap().mttdl;
        let linear = markov_mttdl_linear_system(&b).unwrap().mttdl();
        assert!(rel(closed, 6_073_161_584_004.167) < 1e-12);
        assert!(rel(linear, closed) < 1e-9);
    }

    #[test]
    fn extreme_ratio_stays_accurate() {
        let c = cfg(20, 1, 1e4, 1.0);
        let closed = markov_mttdl_closed_form(&c).unwrap().mttdl;
        let linear = markov_mttdl_linear_system(&c).unwrap().mttdl();
        assert!(rel(linear, closed) < 1e-12, "{linear} vs {closed}");
    }
}

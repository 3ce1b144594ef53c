//! Mean-Time-To-Data-Loss models for k-of-n repairable storage systems.
//!
//! This crate is `no_std` (it needs `alloc`) and holds only pure
//! computation:
//!
//! - [`models`]: the generalized Chen formula, the full and simplified Angus
//!   formulas, and a correlated-failure variant of Chen.
//! - [`markov`]: the absorbing birth-death chain whose expected hitting time
//!   from the all-healthy state is the Mean-Time-To-First-Failure, both as a
//!   closed form and as a tridiagonal linear system.
//! - [`ancillary`]: exponential reliability, unrecoverable-read-error
//!   survival and rebuild-time floor calculators.
//! - [`sim`] and [`stats`]: a Monte Carlo failure/repair kernel with
//!   constant repair time and per-trial deterministic random substreams.
//!
//! File formats, parallel execution and the command line live in the
//! `mttdl` companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod ancillary;
mod binomial;
pub mod config;
pub mod error;
pub mod format;
pub mod markov;
pub mod models;
pub mod sim;
pub mod stats;

pub use config::SystemConfig;
pub use error::{Error, Result};
pub use markov::{markov_mttdl_closed_form, markov_mttdl_linear_system, StateVector};
pub use models::{
    angus_mttdl, angus_simplified_mttdl, chen_mttdl, correlated_chen_mttdl, predict, Model,
    Prediction,
};
pub use sim::{SimulationSpec, TrialOutcome, RNG_NAME};
pub use stats::SimulationResult;

//! Standard-library companion to [`mttdl_core`]: multi-threaded simulation,
//! model-vs-simulation comparison tables, parameter sweeps, CSV/JSON output
//! and the `mttdl` command line.

pub mod cli;
pub mod error;
pub mod harness;
pub mod output;
pub mod parallel;
pub mod units;

pub use error::{Error, Result};
pub use harness::{
    compare_models, reproduce_paper_tables, run_sweep, Comparison, ComparisonRow, SimulationPlan,
    SweepReport, SweepSpec, TablePlan,
};
pub use parallel::run_simulation;

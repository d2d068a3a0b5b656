//! Monte Carlo replication of simulation cells.
//!
//! A cell fixes a model, its parameters, a list of α values and a replicate
//! count. Each replicate samples one graph from its own derived stream and
//! evaluates the index at every α. Replicates run on a rayon pool and are
//! folded in replicate order, so summaries are identical for any worker
//! count.

pub mod config;
pub mod harness;
pub mod output;
pub mod rate;

pub use config::{CellSpec, ConfigError, EmptyGraphPolicy, ExperimentConfig, ModelSpec};
pub use harness::{run_cell, run_experiment, CellFailure, ExperimentReport, HarnessError, SummaryRow};
pub use output::{format_sig, rows_to_csv, rows_to_json, write_summary, SummaryFormat, CSV_HEADER};
pub use rate::{estimate_rate, RateError, RateEstimate};

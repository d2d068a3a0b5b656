//! Rényi heterogeneity index for networks.
//!
//! The crate is organised bottom-up:
//!
//! * [`index`] computes the Rényi index of a nonnegative weight sequence.
//! * [`graph`] holds simple undirected graphs, degree extraction and the
//!   edge-list text format.
//! * [`kernels`] evaluates symmetric kernels on `[0,1]²` and their finite-n
//!   moments.
//! * [`generators`] samples heterogeneous Erdős–Rényi and power-law graphs
//!   from hash-derived RNG streams.
//! * [`asymptotics`] evaluates the theoretical limits, plug-in predictions
//!   and convergence rates for both models.
//! * [`sim`] replicates simulation cells, aggregates summaries and fits
//!   log-log convergence rates.
//! * [`cli`] is the command-line front end used by the `renyi` binary.

pub mod asymptotics;
pub mod cli;
pub mod generators;
pub mod graph;
pub mod index;
pub mod kernels;
pub mod sim;
pub mod summation;

pub use asymptotics::{
    expected_degree_powerlaw, g_kappa, limit_exponential, limit_r1_exponential, plugin_prediction, plugin_r1,
    powerlaw_gap_rate, r_n_theoretical, truncated_pareto_moment, AsymptoticsError,
};
pub use generators::{
    sample_hetero_er, sample_pareto_weights, sample_power_law_graph, HeteroErConfig, PowerLawConfig, PowerLawSample,
    SeedSpec,
};
pub use graph::{degree_sequence, mean_degree, parse_edge_list, DegreeSequence, Graph, GraphError};
pub use index::{renyi_index, renyi_profile, IndexError, IndexParams, WeightSequence};
pub use kernels::{Kernel, KernelError, KernelMoments, MomentsCache};

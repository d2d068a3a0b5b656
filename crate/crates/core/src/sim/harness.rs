//! Replicate sampling and aggregation.

use rayon::prelude::*;
use thiserror::Error;

use super::config::{CellSpec, EmptyGraphPolicy, ExperimentConfig, ModelSpec};
use crate::asymptotics::{summarize_hetero_er, summarize_power_law, AsymptoticsError};
use crate::generators::{sample_hetero_er, sample_power_law_graph, SeedSpec};
use crate::graph::{degree_sequence, Graph};
use crate::index::{renyi_profile, IndexError, WeightSequence};
use crate::kernels::{Kernel, KernelError, MomentsCache};
use crate::summation::CompensatedSum;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("cell {cell_id}: replicate {replicate} sampled a graph with no edges")]
    EmptyGraph { cell_id: String, replicate: u64 },
    #[error("cell {cell_id}: replicate {replicate} had no edges after {attempts} attempts")]
    ResampleExhausted {
        cell_id: String,
        replicate: u64,
        attempts: u32,
    },
    #[error("cell {cell_id}: {message}")]
    InvalidCell { cell_id: String, message: String },
    #[error("cell {cell_id}: {source}")]
    Index { cell_id: String, source: IndexError },
    #[error("cell {cell_id}: {source}")]
    Theory { cell_id: String, source: AsymptoticsError },
}

/// Aggregated result for one (cell, α).
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub cell_id: String,
    /// `hetero-er`, `hetero-er-constant` or `power-law`.
    pub model: &'static str,
    pub n: usize,
    /// `p` for hetero-ER, `τ` for power-law.
    pub param1: f64,
    /// `κ` (or `c` for the constant kernel) for hetero-ER, `p` for power-law.
    pub param2: f64,
    pub alpha: f64,
    pub replicates: usize,
    pub mean: f64,
    /// Sample standard deviation, divisor `R − 1`.
    pub sd: f64,
    pub limit: Option<f64>,
    /// Finite-n plug-in prediction, unclamped.
    pub plugin: Option<f64>,
    pub abs_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub cell_index: usize,
    pub cell_id: String,
    pub error: HarnessError,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentReport {
    pub rows: Vec<SummaryRow>,
    pub failures: Vec<CellFailure>,
}

fn sample_graph(model: &ModelSpec, seed: &SeedSpec) -> Graph {
    match model {
        ModelSpec::HeteroEr(cfg) => sample_hetero_er(cfg, seed),
        ModelSpec::PowerLaw(cfg) => sample_power_law_graph(cfg, seed).graph,
    }
}

/// Index values at every α of the cell for one replicate.
pub fn run_replicate(cell: &CellSpec, master_seed: u64, replicate: u64) -> Result<Vec<f64>, HarnessError> {
    let base = SeedSpec::new(master_seed, cell.id.clone(), replicate);
    let graph = match cell.empty_graph {
        EmptyGraphPolicy::Abort => {
            let g = sample_graph(&cell.model, &base);
            if g.edge_count() == 0 {
                return Err(HarnessError::EmptyGraph {
                    cell_id: cell.id.clone(),
                    replicate,
                });
            }
            g
        }
        EmptyGraphPolicy::Resample { max_attempts } => (0..max_attempts)
            .map(|attempt| sample_graph(&cell.model, &base.clone().with_attempt(attempt)))
            .find(|g| g.edge_count() > 0)
            .ok_or_else(|| HarnessError::ResampleExhausted {
                cell_id: cell.id.clone(),
                replicate,
                attempts: max_attempts,
            })?,
    };
    let weights = WeightSequence::from_degrees(&degree_sequence(&graph)).map_err(|source| HarnessError::Index {
        cell_id: cell.id.clone(),
        source,
    })?;
    let profile = renyi_profile(&weights, &cell.alphas).map_err(|source| HarnessError::Index {
        cell_id: cell.id.clone(),
        source,
    })?;
    Ok(profile.into_iter().map(|(_, v)| v).collect())
}

struct Theory {
    limit: Option<f64>,
    plugin: Option<f64>,
}

fn theory(cell: &CellSpec, cache: &MomentsCache) -> Result<Vec<Theory>, HarnessError> {
    let theory_err = |source: AsymptoticsError| HarnessError::Theory {
        cell_id: cell.id.clone(),
        source,
    };
    match &cell.model {
        ModelSpec::HeteroEr(cfg) => {
            let moments = cache
                .get(&cfg.kernel, cfg.n)
                .map_err(|e: KernelError| theory_err(e.into()))?;
            cell.alphas
                .iter()
                .map(|&alpha| {
                    let s = summarize_hetero_er(cfg, alpha, &moments).map_err(theory_err)?;
                    Ok(Theory {
                        limit: s.limit,
                        plugin: s.plugin,
                    })
                })
                .collect()
        }
        ModelSpec::PowerLaw(cfg) => Ok(cell
            .alphas
            .iter()
            .map(|&alpha| {
                let s = summarize_power_law(cfg, alpha);
                Theory {
                    limit: s.limit,
                    plugin: s.plugin,
                }
            })
            .collect()),
    }
}

fn descriptor(model: &ModelSpec) -> (&'static str, f64, f64) {
    match model {
        ModelSpec::HeteroEr(cfg) => match cfg.kernel {
            Kernel::ExponentialProduct { kappa } => ("hetero-er", cfg.p, kappa),
            Kernel::Constant { c } => ("hetero-er-constant", cfg.p, c),
        },
        ModelSpec::PowerLaw(cfg) => ("power-law", cfg.tau, cfg.p),
    }
}

fn mean_sd(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let mut count = 0usize;
    let mut total = CompensatedSum::new();
    for v in values.clone() {
        total.add(v);
        count += 1;
    }
    let mean = total.value() / count as f64;
    let mut sq = CompensatedSum::new();
    for v in values {
        sq.add((v - mean) * (v - mean));
    }
    let sd = if count > 1 {
        (sq.value() / (count - 1) as f64).sqrt()
    } else {
        0.0
    };
    (mean, sd)
}

fn aggregate(
    cell: &CellSpec,
    replicates: Vec<Result<Vec<f64>, HarnessError>>,
    theory: Result<Vec<Theory>, HarnessError>,
) -> Result<Vec<SummaryRow>, HarnessError> {
    let values: Vec<Vec<f64>> = replicates.into_iter().collect::<Result<_, _>>()?;
    let theory = theory?;
    let (model, param1, param2) = descriptor(&cell.model);
    Ok(cell
        .alphas
        .iter()
        .enumerate()
        .map(|(a, &alpha)| {
            let (mean, sd) = mean_sd(values.iter().map(|v| v[a]));
            let Theory { limit, plugin } = theory[a];
            SummaryRow {
                cell_id: cell.id.clone(),
                model,
                n: cell.model.n(),
                param1,
                param2,
                alpha,
                replicates: cell.replicates,
                mean,
                sd,
                limit,
                plugin,
                abs_gap: limit.map(|l| (mean - l).abs()),
            }
        })
        .collect())
}

fn validated(cell: &CellSpec) -> Result<(), HarnessError> {
    cell.validate().map_err(|message| HarnessError::InvalidCell {
        cell_id: cell.id.clone(),
        message,
    })
}

/// Runs every replicate of `cell` on the current rayon pool.
pub fn run_cell(cell: &CellSpec, master_seed: u64) -> Result<Vec<SummaryRow>, HarnessError> {
    run_cell_with_cache(cell, master_seed, &MomentsCache::new())
}

pub fn run_cell_with_cache(
    cell: &CellSpec,
    master_seed: u64,
    cache: &MomentsCache,
) -> Result<Vec<SummaryRow>, HarnessError> {
    validated(cell)?;
    let (outcomes, theory) = rayon::join(
        || {
            (0..cell.replicates as u64)
                .into_par_iter()
                .map(|r| run_replicate(cell, master_seed, r))
                .collect()
        },
        || theory(cell, cache),
    );
    aggregate(cell, outcomes, theory)
}

/// Runs all cells with `jobs` workers (`None`: rayon's default).
///
/// Cells that fail are reported in `failures`; the others still produce
/// rows, in config order.
pub fn run_experiment(config: &ExperimentConfig, jobs: Option<usize>) -> ExperimentReport {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().expect("failed to start worker pool");
    let cache = MomentsCache::new();
    pool.install(|| run_experiment_in_pool(config, &cache))
}

fn run_experiment_in_pool(config: &ExperimentConfig, cache: &MomentsCache) -> ExperimentReport {
    let cells = &config.cells;
    let tasks: Vec<(usize, u64)> = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.validate().is_ok())
        .flat_map(|(i, c)| (0..c.replicates as u64).map(move |r| (i, r)))
        .collect();
    let (outcomes, theories): (Vec<_>, Vec<_>) = rayon::join(
        || {
            tasks
                .par_iter()
                .map(|&(i, r)| run_replicate(&cells[i], config.master_seed, r))
                .collect::<Vec<_>>()
        },
        || cells.par_iter().map(|c| theory(c, cache)).collect::<Vec<_>>(),
    );

    let mut report = ExperimentReport::default();
    let mut outcomes = outcomes.into_iter();
    for ((cell_index, cell), theory) in cells.iter().enumerate().zip(theories) {
        let result = validated(cell).and_then(|()| {
            let mine: Vec<_> = outcomes.by_ref().take(cell.replicates).collect();
            aggregate(cell, mine, theory)
        });
        match result {
            Ok(rows) => report.rows.extend(rows),
            Err(error) => report.failures.push(CellFailure {
                cell_index,
                cell_id: cell.id.clone(),
                error,
            }),
        }
    }
    report
}

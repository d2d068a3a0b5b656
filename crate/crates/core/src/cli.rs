//! The `renyi` command line.
//!
//! Exit codes: 0 success, 2 usage/config/parse errors, 3 degenerate input
//! (no edges), 4 at least one simulation cell failed.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::asymptotics::{self, AsymptoticsError};
use crate::generators::{sample_hetero_er, sample_power_law_graph, HeteroErConfig, PowerLawConfig, SeedSpec};
use crate::graph::{degree_sequence, mean_degree, parse_edge_list, weights_to_text};
use crate::index::{renyi_profile, IndexError, WeightSequence, THEIL_BRANCH_TOLERANCE};
use crate::kernels::{Kernel, KernelMoments};
use crate::sim::output::{render, rows_to_table, SummaryTable};
use crate::sim::{estimate_rate, format_sig, run_experiment, ExperimentConfig, SummaryFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_CELL_FAILED: i32 = 4;

/// Bundled experiment configs, addressable by name in `simulate --config`.
pub const BUNDLED_CONFIGS: &[(&str, &str)] = &[
    ("table1_small", include_str!("../configs/table1_small.toml")),
    ("tables123", include_str!("../configs/tables123.toml")),
    ("table4_small", include_str!("../configs/table4_small.toml")),
    ("table4", include_str!("../configs/table4.toml")),
    ("powerlaw_rate", include_str!("../configs/powerlaw_rate.toml")),
];

#[derive(Debug, Parser)]
#[command(name = "renyi", version, about = "Rényi heterogeneity index of networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rényi index of a graph read from an edge-list file.
    Compute(ComputeArgs),
    /// Sample a random graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Print theoretical limits, plug-in predictions or power-law rates.
    Limits(LimitsArgs),
    /// Run a Monte Carlo experiment from a config file.
    Simulate(SimulateArgs),
    /// Fit log(abs_gap) against log(n) for groups of summary rows.
    Rate(RateArgs),
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Edge-list file: "u v" per line, 0-based ids, optional "# n=<N>" header.
    #[arg(long)]
    pub graph: PathBuf,
    /// Comma-separated α values, each > 0 (dimensionless).
    #[arg(long, value_delimiter = ',', required = true)]
    pub alpha: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    HeteroEr,
    PowerLaw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    /// f(x,y) = exp(-κx) exp(-κy)
    Exp,
    /// f ≡ c
    Constant,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Random-graph model.
    #[arg(long, value_enum)]
    pub model: ModelKind,
    /// Number of nodes, ≥ 2.
    #[arg(long)]
    pub n: usize,
    /// Edge probability scale: p_n ∈ [0,1] for hetero-er, p ∈ (0,1) for power-law.
    #[arg(long)]
    pub p: f64,
    /// Kernel family for hetero-er.
    #[arg(long, value_enum, default_value = "exp")]
    pub kernel: KernelKind,
    /// Exponential kernel rate κ ≥ 0 (hetero-er, --kernel exp).
    #[arg(long, default_value_t = 0.0)]
    pub kappa: f64,
    /// Constant kernel value c ∈ (0,1] (hetero-er, --kernel constant).
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Pareto tail exponent τ ∈ (1,2) (power-law).
    #[arg(long)]
    pub tau: Option<f64>,
    /// Master seed (unsigned 64-bit integer).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Replicate index mixed into the seed (nonnegative integer).
    #[arg(long, default_value_t = 0)]
    pub replicate: u64,
    /// Output edge-list path.
    #[arg(long)]
    pub out: PathBuf,
    /// Weights sidecar path for power-law graphs [default: <out>.weights].
    #[arg(long)]
    pub weights_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LimitsArgs {
    /// Kernel family for hetero-er limits.
    #[arg(long, value_enum, conflicts_with = "powerlaw")]
    pub kernel: Option<KernelKind>,
    /// Exponential kernel rate κ ≥ 0.
    #[arg(long, default_value_t = 0.0)]
    pub kappa: f64,
    /// Constant kernel value c ∈ (0,1].
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Comma-separated α values, each > 0.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    /// Node count (≥ 2): adds a finite-n plug-in column, or sets n for --powerlaw.
    #[arg(long)]
    pub n: Option<usize>,
    /// Print the power-law rate n^(τ/2 − 1) instead of kernel limits.
    #[arg(long)]
    pub powerlaw: bool,
    /// Pareto tail exponent τ ∈ (1,2), with --powerlaw.
    #[arg(long)]
    pub tau: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Experiment config (TOML) path, or a bundled name: table1_small, tables123,
    /// table4_small, table4, powerlaw_rate.
    #[arg(long)]
    pub config: String,
    /// Summary output path.
    #[arg(long)]
    pub out: PathBuf,
    /// Summary format.
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    pub format: String,
    /// Worker threads, ≥ 1 [default: available cores].
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    /// Summary CSV written by `simulate`.
    #[arg(long)]
    pub summary: PathBuf,
    /// Comma-separated columns that identify a group; rows in a group differ
    /// only in n.
    #[arg(long, value_delimiter = ',', default_value = "model,param1,param2,alpha")]
    pub group: Vec<String>,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Compute(a) => compute(a, out),
        Command::Generate(a) => generate(a, err),
        Command::Limits(a) => limits(a, out),
        Command::Simulate(a) => simulate(a, out, err),
        Command::Rate(a) => rate(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn io_usage(path: &Path, e: std::io::Error) -> Failure {
    usage(format!("{}: {e}", path.display()))
}

fn compute(a: ComputeArgs, out: &mut dyn Write) -> CmdResult {
    let text = fs::read_to_string(&a.graph).map_err(|e| io_usage(&a.graph, e))?;
    let parsed = parse_edge_list(&text).map_err(|e| usage(format!("{}: {e}", a.graph.display())))?;
    let degrees = degree_sequence(&parsed.graph);
    let degenerate = |m: String| Failure {
        code: EXIT_DEGENERATE,
        message: m,
    };
    let weights =
        WeightSequence::from_degrees(&degrees).map_err(|e| degenerate(format!("{}: {e}", a.graph.display())))?;
    let profile = renyi_profile(&weights, &a.alpha).map_err(|e| match e {
        IndexError::AllZeroWeights => degenerate(format!("{}: graph has no edges", a.graph.display())),
        other => usage(other.to_string()),
    })?;
    let mut text = String::from("alpha,index\n");
    for (alpha, value) in profile {
        text.push_str(&format!("{},{}\n", format_sig(alpha), format_sig(value)));
    }
    out.write_all(text.as_bytes()).map_err(|e| usage(e.to_string()))
}

fn build_kernel(kind: KernelKind, kappa: f64, c: f64) -> Result<Kernel, Failure> {
    match kind {
        KernelKind::Exp => Kernel::exponential_product(kappa),
        KernelKind::Constant => Kernel::constant(c),
    }
    .map_err(|e| usage(e.to_string()))
}

fn generate(a: GenerateArgs, err: &mut dyn Write) -> CmdResult {
    let seed = SeedSpec::new(a.seed, "generate", a.replicate);
    let graph = match a.model {
        ModelKind::HeteroEr => {
            if a.tau.is_some() {
                return Err(usage("--tau only applies to --model power-law"));
            }
            let kernel = build_kernel(a.kernel, a.kappa, a.c)?;
            let cfg = HeteroErConfig::new(a.n, a.p, kernel).map_err(|e| usage(e.to_string()))?;
            sample_hetero_er(&cfg, &seed)
        }
        ModelKind::PowerLaw => {
            let tau = a.tau.ok_or_else(|| usage("--model power-law requires --tau"))?;
            let cfg = PowerLawConfig::new(a.n, tau, a.p).map_err(|e| usage(e.to_string()))?;
            let sample = sample_power_law_graph(&cfg, &seed);
            let sidecar = a.weights_out.clone().unwrap_or_else(|| {
                let mut s = a.out.clone().into_os_string();
                s.push(".weights");
                PathBuf::from(s)
            });
            fs::write(&sidecar, weights_to_text(&sample.weights)).map_err(|e| io_usage(&sidecar, e))?;
            sample.graph
        }
    };
    fs::write(&a.out, graph.to_edge_list()).map_err(|e| io_usage(&a.out, e))?;
    let md = mean_degree(&degree_sequence(&graph));
    let _ = writeln!(
        err,
        "n={} edges={} mean_degree={}",
        graph.n(),
        graph.edge_count(),
        format_sig(md)
    );
    Ok(())
}

fn theory_usage(e: AsymptoticsError) -> Failure {
    usage(e.to_string())
}

fn limits(a: LimitsArgs, out: &mut dyn Write) -> CmdResult {
    let mut text = String::new();
    if a.powerlaw {
        let tau = a.tau.ok_or_else(|| usage("--powerlaw requires --tau"))?;
        let n = a.n.ok_or_else(|| usage("--powerlaw requires --n"))?;
        let rate = asymptotics::powerlaw_gap_rate(n, tau).map_err(theory_usage)?;
        text.push_str("n,tau,rate\n");
        text.push_str(&format!("{n},{},{}\n", format_sig(tau), format_sig(rate)));
    } else {
        let kind = a
            .kernel
            .ok_or_else(|| usage("either --kernel or --powerlaw is required"))?;
        if a.alpha.is_empty() {
            return Err(usage("--alpha is required with --kernel"));
        }
        let kernel = build_kernel(kind, a.kappa, a.c)?;
        let moments = match a.n {
            Some(n) => Some(KernelMoments::new(kernel, n).map_err(|e| usage(e.to_string()))?),
            None => None,
        };
        text.push_str(if moments.is_some() {
            "alpha,limit,plugin\n"
        } else {
            "alpha,limit\n"
        });
        for &alpha in &a.alpha {
            if !(alpha.is_finite() && alpha > 0.0) {
                return Err(usage(format!("alpha must be positive, got {alpha}")));
            }
            let theil = (alpha - 1.0).abs() <= THEIL_BRANCH_TOLERANCE;
            let limit = match kernel {
                Kernel::Constant { .. } => 0.0,
                Kernel::ExponentialProduct { kappa } if theil => {
                    asymptotics::limit_r1_exponential(kappa).map_err(theory_usage)?
                }
                Kernel::ExponentialProduct { kappa } => {
                    asymptotics::limit_exponential(alpha, kappa).map_err(theory_usage)?
                }
            };
            text.push_str(&format!("{},{}", format_sig(alpha), format_sig(limit)));
            if let Some(m) = &moments {
                let plugin = if theil {
                    -(-asymptotics::r_n_from_moments(m, 1.0).map_err(theory_usage)?).exp_m1()
                } else {
                    asymptotics::plugin_from_moments(m, alpha).map_err(theory_usage)?
                };
                text.push_str(&format!(",{}", format_sig(plugin)));
            }
            text.push('\n');
        }
    }
    out.write_all(text.as_bytes()).map_err(|e| usage(e.to_string()))
}

fn load_config(spec: &str) -> Result<ExperimentConfig, Failure> {
    let path = Path::new(spec);
    let text = if path.exists() {
        fs::read_to_string(path).map_err(|e| io_usage(path, e))?
    } else if let Some((_, text)) = BUNDLED_CONFIGS.iter().find(|(name, _)| *name == spec) {
        text.to_string()
    } else {
        return Err(usage(format!("{spec}: no such file or bundled config")));
    };
    ExperimentConfig::from_toml_str(&text).map_err(|e| usage(format!("{spec}: {e}")))
}

fn simulate(a: SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let format: SummaryFormat = a.format.parse().map_err(usage)?;
    if a.jobs == Some(0) {
        return Err(usage("--jobs must be at least 1"));
    }
    let config = load_config(&a.config)?;
    let report = run_experiment(&config, a.jobs);
    fs::write(&a.out, render(&report.rows, format)).map_err(|e| io_usage(&a.out, e))?;
    let _ = out.write_all(rows_to_table(&report.rows).as_bytes());
    for f in &report.failures {
        let _ = writeln!(err, "cell {} ({}) failed: {}", f.cell_index, f.cell_id, f.error);
    }
    if report.failures.is_empty() {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_CELL_FAILED,
            message: format!("{} of {} cells failed", report.failures.len(), config.cells.len()),
        })
    }
}

fn rate(a: RateArgs, out: &mut dyn Write) -> CmdResult {
    let text = fs::read_to_string(&a.summary).map_err(|e| io_usage(&a.summary, e))?;
    let table = SummaryTable::parse(&text).map_err(|m| usage(format!("{}: {m}", a.summary.display())))?;
    let col = |name: &str| {
        table
            .column(name)
            .ok_or_else(|| usage(format!("{}: no column {name:?}", a.summary.display())))
    };
    let n_col = col("n")?;
    let err_col = col("abs_gap")?;
    let group_cols = a.group.iter().map(|g| col(g)).collect::<Result<Vec<_>, _>>()?;

    let mut groups: BTreeMap<Vec<String>, Vec<(f64, f64)>> = BTreeMap::new();
    let mut order: Vec<Vec<String>> = Vec::new();
    for (i, row) in table.rows.iter().enumerate() {
        let key: Vec<String> = group_cols.iter().map(|&c| row[c].clone()).collect();
        let parse = |c: usize| {
            row[c].parse::<f64>().map_err(|_| {
                usage(format!(
                    "data line {}: column {:?} is not a number",
                    i + 1,
                    table.header[c]
                ))
            })
        };
        let point = (parse(n_col)?, parse(err_col)?);
        if !groups.contains_key(&key) {
            order.push(key.clone());
        }
        groups.entry(key).or_default().push(point);
    }

    let mut text = format!("{},points,slope,intercept,r_squared\n", a.group.join(","));
    for key in order {
        let mut points = groups.remove(&key).unwrap();
        points.sort_by(|x, y| x.0.total_cmp(&y.0));
        let fit = estimate_rate(&points).map_err(|e| usage(format!("group {}: {e}", key.join(","))))?;
        text.push_str(&format!(
            "{},{},{},{},{}\n",
            key.join(","),
            fit.points.len(),
            format_sig(fit.slope),
            format_sig(fit.intercept),
            format_sig(fit.r_squared)
        ));
    }
    out.write_all(text.as_bytes()).map_err(|e| usage(e.to_string()))
}

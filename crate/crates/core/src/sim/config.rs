//! Experiment configuration files.
//!
//! Configs are TOML. The top level holds `master_seed` plus optional
//! defaults for `replicates` and `empty_graph`; each `[[cells]]` table
//! describes one model. `n`, `p`, `kappa`, `c` and `tau` accept either a
//! scalar or an array; arrays expand into the Cartesian product in the order
//! `n`, `p`, `kappa`/`c`, `tau` with the last key varying fastest.
//!
//! ```toml
//! master_seed = 7
//!
//! [[cells]]
//! model = "hetero-er"
//! kernel = "exp"
//! n = [100, 500]
//! p = 0.1
//! kappa = 4
//! alphas = [0.5, 1]
//!
//! [[cells]]
//! model = "power-law"
//! n = 1000
//! tau = 1.5
//! p = 0.25
//! alphas = [2]
//! ```

use std::collections::HashMap;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::generators::{GeneratorError, HeteroErConfig, PowerLawConfig};
use crate::kernels::Kernel;

pub const DEFAULT_REPLICATES: usize = 20;
pub const DEFAULT_MAX_ATTEMPTS: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

fn generator_error(path: &str, e: GeneratorError) -> ConfigError {
    let GeneratorError::InvalidParameter { name, .. } = &e;
    schema(format!("{path}.{name}"), e)
}

fn schema(path: impl Into<String>, message: impl fmt::Display) -> ConfigError {
    ConfigError::Schema {
        path: path.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    HeteroEr(HeteroErConfig),
    PowerLaw(PowerLawConfig),
}

impl ModelSpec {
    pub fn n(&self) -> usize {
        match self {
            ModelSpec::HeteroEr(c) => c.n,
            ModelSpec::PowerLaw(c) => c.n,
        }
    }

    /// Canonical text used for default cell ids.
    pub fn descriptor(&self) -> String {
        match self {
            ModelSpec::HeteroEr(c) => format!("hetero-er|n={}|p={}|{}", c.n, c.p, c.kernel),
            ModelSpec::PowerLaw(c) => format!("power-law|n={}|tau={}|p={}", c.n, c.tau, c.p),
        }
    }
}

/// What to do when a replicate samples a graph without edges, for which the
/// index is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmptyGraphPolicy {
    /// Fail the whole cell.
    Abort,
    /// Redraw from a fresh stream, i.e. condition on at least one edge.
    Resample { max_attempts: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellSpec {
    pub id: String,
    pub model: ModelSpec,
    pub alphas: Vec<f64>,
    pub replicates: usize,
    pub empty_graph: EmptyGraphPolicy,
}

impl CellSpec {
    /// A cell whose id is the model descriptor, with default replicates and
    /// the abort policy.
    pub fn new(model: ModelSpec, alphas: Vec<f64>) -> Self {
        Self {
            id: model.descriptor(),
            model,
            alphas,
            replicates: DEFAULT_REPLICATES,
            empty_graph: EmptyGraphPolicy::Abort,
        }
    }

    pub fn with_replicates(mut self, replicates: usize) -> Self {
        self.replicates = replicates;
        self
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn with_empty_graph(mut self, policy: EmptyGraphPolicy) -> Self {
        self.empty_graph = policy;
        self
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.replicates < 2 {
            return Err(format!("replicates must be at least 2, got {}", self.replicates));
        }
        if self.alphas.is_empty() {
            return Err("alphas must not be empty".into());
        }
        if let Some(a) = self.alphas.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
            return Err(format!("alphas must be positive, got {a}"));
        }
        if let EmptyGraphPolicy::Resample { max_attempts: 0 } = self.empty_graph {
            return Err("max_attempts must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub master_seed: u64,
    pub cells: Vec<CellSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    fn values(&self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    master_seed: u64,
    replicates: Option<usize>,
    empty_graph: Option<String>,
    max_attempts: Option<u32>,
    #[serde(default)]
    cells: Vec<RawCell>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCell {
    id: Option<String>,
    model: String,
    n: OneOrMany<usize>,
    p: Option<OneOrMany<f64>>,
    kernel: Option<String>,
    kappa: Option<OneOrMany<f64>>,
    c: Option<OneOrMany<f64>>,
    tau: Option<OneOrMany<f64>>,
    alphas: Vec<f64>,
    replicates: Option<usize>,
    empty_graph: Option<String>,
    max_attempts: Option<u32>,
}

fn parse_policy(
    name: Option<&str>,
    max_attempts: Option<u32>,
    fallback: EmptyGraphPolicy,
    path: &str,
) -> Result<EmptyGraphPolicy, ConfigError> {
    match name {
        None => Ok(match (fallback, max_attempts) {
            (EmptyGraphPolicy::Resample { .. }, Some(m)) => EmptyGraphPolicy::Resample { max_attempts: m },
            (other, _) => other,
        }),
        Some("abort") => Ok(EmptyGraphPolicy::Abort),
        Some("resample") => Ok(EmptyGraphPolicy::Resample {
            max_attempts: max_attempts.unwrap_or(DEFAULT_MAX_ATTEMPTS),
        }),
        Some(other) => Err(schema(
            format!("{path}.empty_graph"),
            format!("expected \"abort\" or \"resample\", got {other:?}"),
        )),
    }
}

fn required<'a, T>(v: &'a Option<OneOrMany<T>>, path: &str, key: &str) -> Result<&'a OneOrMany<T>, ConfigError> {
    v.as_ref()
        .ok_or_else(|| schema(format!("{path}.{key}"), "missing required key"))
}

fn forbid<T>(v: &Option<T>, path: &str, key: &str, model: &str) -> Result<(), ConfigError> {
    if v.is_some() {
        return Err(schema(format!("{path}.{key}"), format!("not used by model {model:?}")));
    }
    Ok(())
}

fn non_empty<T: Clone>(v: &OneOrMany<T>, path: &str, key: &str) -> Result<Vec<T>, ConfigError> {
    let values = v.values();
    if values.is_empty() {
        return Err(schema(format!("{path}.{key}"), "array must not be empty"));
    }
    Ok(values)
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        let default_policy = parse_policy(
            raw.empty_graph.as_deref(),
            raw.max_attempts,
            EmptyGraphPolicy::Abort,
            "",
        )
        .map_err(|e| match e {
            ConfigError::Schema { message, .. } => schema("empty_graph", message),
            other => other,
        })?;
        let default_replicates = raw.replicates.unwrap_or(DEFAULT_REPLICATES);

        let mut cells = Vec::new();
        let mut seen: HashMap<String, String> = HashMap::new();
        for (idx, rc) in raw.cells.iter().enumerate() {
            let path = format!("cells[{idx}]");
            let models = expand_models(rc, &path)?;
            let replicates = rc.replicates.unwrap_or(default_replicates);
            let policy = parse_policy(rc.empty_graph.as_deref(), rc.max_attempts, default_policy, &path)?;
            let single = models.len() == 1;
            for model in models {
                let id = match (&rc.id, single) {
                    (Some(id), true) => id.clone(),
                    (Some(id), false) => format!("{id}/{}", model.descriptor()),
                    (None, _) => model.descriptor(),
                };
                let cell = CellSpec {
                    id: id.clone(),
                    model,
                    alphas: rc.alphas.clone(),
                    replicates,
                    empty_graph: policy,
                };
                cell.validate().map_err(|m| schema(path.clone(), m))?;
                if let Some(first) = seen.insert(id.clone(), path.clone()) {
                    return Err(schema(
                        format!("{path}.id"),
                        format!("cell id {id:?} already used by {first}"),
                    ));
                }
                cells.push(cell);
            }
        }
        Ok(Self {
            master_seed: raw.master_seed,
            cells,
        })
    }
}

fn expand_models(rc: &RawCell, path: &str) -> Result<Vec<ModelSpec>, ConfigError> {
    let ns = non_empty(&rc.n, path, "n")?;
    let mut out = Vec::new();
    match rc.model.as_str() {
        "hetero-er" => {
            forbid(&rc.tau, path, "tau", "hetero-er")?;
            let ps = non_empty(required(&rc.p, path, "p")?, path, "p")?;
            let kernel_kind = rc.kernel.as_deref().unwrap_or("exp");
            let (key, params) = match kernel_kind {
                "exp" => {
                    forbid(&rc.c, path, "c", "hetero-er with kernel \"exp\"")?;
                    ("kappa", non_empty(required(&rc.kappa, path, "kappa")?, path, "kappa")?)
                }
                "constant" => {
                    forbid(&rc.kappa, path, "kappa", "hetero-er with kernel \"constant\"")?;
                    ("c", rc.c.as_ref().map_or(Ok(vec![1.0]), |c| non_empty(c, path, "c"))?)
                }
                other => {
                    return Err(schema(
                        format!("{path}.kernel"),
                        format!("expected \"exp\" or \"constant\", got {other:?}"),
                    ))
                }
            };
            for &n in &ns {
                for &p in &ps {
                    for &param in &params {
                        let kernel = if key == "kappa" {
                            Kernel::exponential_product(param)
                        } else {
                            Kernel::constant(param)
                        }
                        .map_err(|e| schema(format!("{path}.{key}"), e))?;
                        let cfg = HeteroErConfig::new(n, p, kernel).map_err(|e| generator_error(path, e))?;
                        out.push(ModelSpec::HeteroEr(cfg));
                    }
                }
            }
        }
        "power-law" => {
            forbid(&rc.kernel, path, "kernel", "power-law")?;
            forbid(&rc.kappa, path, "kappa", "power-law")?;
            forbid(&rc.c, path, "c", "power-law")?;
            let ps = non_empty(required(&rc.p, path, "p")?, path, "p")?;
            let taus = non_empty(required(&rc.tau, path, "tau")?, path, "tau")?;
            for &n in &ns {
                for &p in &ps {
                    for &tau in &taus {
                        let cfg = PowerLawConfig::new(n, tau, p).map_err(|e| generator_error(path, e))?;
                        out.push(ModelSpec::PowerLaw(cfg));
                    }
                }
            }
        }
        other => {
            return Err(schema(
                format!("{path}.model"),
                format!("expected \"hetero-er\" or \"power-law\", got {other:?}"),
            ))
        }
    }
    Ok(out)
}

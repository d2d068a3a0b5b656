//! Random-graph samplers.
//!
//! Every sampler draws from a ChaCha8 stream keyed by a [`SeedSpec`]. The
//! 256-bit ChaCha key is `SHA-256("renyi-seed-v1" ‖ master_seed ‖ len(cell_id)
//! ‖ cell_id ‖ replicate ‖ attempt)` with integers little-endian, so any two
//! distinct specs get unrelated streams and no state is shared between
//! replicates. Within one key, stream 0 feeds node weights and stream 1 feeds
//! edge coins.
//!
//! Edges are sampled with a plain pass over all `n(n−1)/2` pairs.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::Graph;
use crate::kernels::Kernel;

const SEED_DOMAIN: &[u8] = b"renyi-seed-v1";
const WEIGHT_STREAM: u64 = 0;
const EDGE_STREAM: u64 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
}

fn invalid(name: &'static str, value: f64, reason: &'static str) -> GeneratorError {
    GeneratorError::InvalidParameter { name, value, reason }
}

/// Identifies one random stream: experiment seed, cell, replicate, and the
/// resampling attempt within that replicate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub cell_id: String,
    pub replicate: u64,
    pub attempt: u32,
}

impl SeedSpec {
    pub fn new(master_seed: u64, cell_id: impl Into<String>, replicate: u64) -> Self {
        Self {
            master_seed,
            cell_id: cell_id.into(),
            replicate,
            attempt: 0,
        }
    }

    pub fn with_attempt(mut self, attempt: u32) -> Self {
        self.attempt = attempt;
        self
    }

    pub fn key(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(SEED_DOMAIN);
        h.update(self.master_seed.to_le_bytes());
        h.update((self.cell_id.len() as u64).to_le_bytes());
        h.update(self.cell_id.as_bytes());
        h.update(self.replicate.to_le_bytes());
        h.update(self.attempt.to_le_bytes());
        h.finalize().into()
    }

    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.key());
        rng.set_stream(stream);
        rng
    }
}

/// Uniform on the open interval (0, 1), never exactly 0 or 1.
#[inline]
pub fn open_unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    // 52 bits so the largest value, 1 − 2^-53, is representable.
    const SCALE: f64 = 1.0 / (1u64 << 52) as f64;
    ((rng.next_u64() >> 12) as f64 + 0.5) * SCALE
}

/// One draw with `P(W > x) = x^{−τ}` for `x ≥ 1`.
#[inline]
pub fn pareto_draw<R: RngCore + ?Sized>(rng: &mut R, tau: f64) -> f64 {
    open_unit(rng).powf(-1.0 / tau)
}

/// `n` i.i.d. Pareto(τ) weights by inverse transform.
pub fn sample_pareto_weights(n: usize, tau: f64, seed: &SeedSpec) -> Result<Vec<f64>, GeneratorError> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(invalid("tau", tau, "must be positive"));
    }
    let mut rng = seed.rng(WEIGHT_STREAM);
    Ok((0..n).map(|_| pareto_draw(&mut rng, tau)).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeteroErConfig {
    pub n: usize,
    pub p: f64,
    pub kernel: Kernel,
}

impl HeteroErConfig {
    pub fn new(n: usize, p: f64, kernel: Kernel) -> Result<Self, GeneratorError> {
        if n < 2 {
            return Err(invalid("n", n as f64, "must be at least 2"));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(invalid("p", p, "must lie in [0, 1]"));
        }
        Ok(Self { n, p, kernel })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawConfig {
    pub n: usize,
    pub tau: f64,
    pub p: f64,
}

impl PowerLawConfig {
    pub fn new(n: usize, tau: f64, p: f64) -> Result<Self, GeneratorError> {
        if n < 2 {
            return Err(invalid("n", n as f64, "must be at least 2"));
        }
        if !(tau > 1.0 && tau < 2.0) {
            return Err(invalid("tau", tau, "must lie in (1, 2)"));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(invalid("p", p, "must lie in (0, 1)"));
        }
        Ok(Self { n, tau, p })
    }

    pub fn cutoff(&self) -> f64 {
        (self.n as f64).sqrt()
    }
}

/// Each pair `{u, v}` joins with probability `p · f((u+1)/n, (v+1)/n)`.
pub fn sample_hetero_er(cfg: &HeteroErConfig, seed: &SeedSpec) -> Graph {
    let n = cfg.n;
    if cfg.p == 0.0 {
        return Graph::empty(n);
    }
    let grid = cfg.kernel.grid(n);
    let mut rng = seed.rng(EDGE_STREAM);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if open_unit(&mut rng) < cfg.p * grid.value(u, v) {
                edges.push((u as u32, v as u32));
            }
        }
    }
    Graph::from_sorted_unchecked(n, edges)
}

/// A power-law graph with the weights that generated it.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawSample {
    pub graph: Graph,
    /// Raw Pareto draws `ω_i`.
    pub weights: Vec<f64>,
    /// `ω̃_i = min(ω_i, √n)`.
    pub truncated: Vec<f64>,
}

/// Edges conditional on truncated weights: each pair joins with probability
/// `p · ω̃_u ω̃_v / n`.
pub fn sample_power_law_edges<R: RngCore + ?Sized>(truncated: &[f64], p: f64, rng: &mut R) -> Graph {
    let n = truncated.len();
    let scale = p / n as f64;
    let mut edges = Vec::new();
    for (u, &wu) in truncated.iter().enumerate() {
        let row = scale * wu;
        for (v, &wv) in truncated.iter().enumerate().skip(u + 1) {
            if open_unit(rng) < row * wv {
                edges.push((u as u32, v as u32));
            }
        }
    }
    Graph::from_sorted_unchecked(n, edges)
}

pub fn sample_power_law_graph(cfg: &PowerLawConfig, seed: &SeedSpec) -> PowerLawSample {
    let weights = sample_pareto_weights(cfg.n, cfg.tau, seed).expect("tau validated by config");
    let cutoff = cfg.cutoff();
    let truncated: Vec<f64> = weights.iter().map(|&w| w.min(cutoff)).collect();
    let mut rng = seed.rng(EDGE_STREAM);
    let graph = sample_power_law_edges(&truncated, cfg.p, &mut rng);
    PowerLawSample {
        graph,
        weights,
        truncated,
    }
}

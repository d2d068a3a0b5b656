//! Symmetric kernels on `[0,1]²` and their finite-n moments.
//!
//! Grid values use the 1-based convention `f_ij = f(i/n, j/n)` for
//! `1 ≤ i, j ≤ n`; node `u` of a generated graph sits at `(u+1)/n`.
//!
//! ```text
//! f_i     = (1/n) Σ_{j≠i} f_ij
//! λ_{k,l} = (1/n²) Σ_{i≠j} f_i^k f_ij^l
//! γ_{k,l} = (1/n²) Σ_{i≠j} f_i^k f_j^k f_ij^l
//! ```

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::summation::CompensatedSum;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("invalid kernel parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("kernel argument ({x}, {y}) is outside [0,1]²")]
    Domain { x: f64, y: f64 },
    #[error("grid index ({i}, {j}) is outside 1..={n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("kernel moments need n >= 2, got {0}")]
    SizeTooSmall(usize),
    #[error("moment order k must be finite and nonnegative, got {0}")]
    InvalidOrder(f64),
}

/// Kernel families with a positive lower bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel {
    /// `f ≡ c` with `c ∈ (0, 1]`; the Erdős–Rényi case.
    Constant { c: f64 },
    /// `f(x,y) = e^{−κx} e^{−κy}` with `κ ≥ 0`.
    ExponentialProduct { kappa: f64 },
}

impl Kernel {
    pub fn constant(c: f64) -> Result<Self, KernelError> {
        if !(c > 0.0 && c <= 1.0) {
            return Err(KernelError::InvalidParameter { name: "c", value: c });
        }
        Ok(Kernel::Constant { c })
    }

    pub fn exponential_product(kappa: f64) -> Result<Self, KernelError> {
        if !(kappa.is_finite() && kappa >= 0.0) {
            return Err(KernelError::InvalidParameter {
                name: "kappa",
                value: kappa,
            });
        }
        Ok(Kernel::ExponentialProduct { kappa })
    }

    /// Lower bound `ε` with `f ≥ ε` on the whole square.
    pub fn epsilon(&self) -> f64 {
        match *self {
            Kernel::Constant { c } => c,
            Kernel::ExponentialProduct { kappa } => (-2.0 * kappa).exp(),
        }
    }

    #[inline]
    fn eval_unchecked(&self, x: f64, y: f64) -> f64 {
        match *self {
            Kernel::Constant { c } => c,
            Kernel::ExponentialProduct { kappa } => (-kappa * x).exp() * (-kappa * y).exp(),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64, KernelError> {
        if !((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y)) {
            return Err(KernelError::Domain { x, y });
        }
        Ok(self.eval_unchecked(x, y))
    }

    /// `f_ij = f(i/n, j/n)` with 1-based `i, j`.
    pub fn grid_value(&self, n: usize, i: usize, j: usize) -> Result<f64, KernelError> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(KernelError::IndexOutOfRange { i, j, n });
        }
        Ok(self.eval_unchecked(grid_point(i, n), grid_point(j, n)))
    }

    /// Precomputed grid for repeated lookups by 0-based node id.
    pub fn grid(&self, n: usize) -> KernelGrid {
        let repr = match *self {
            Kernel::Constant { c } => GridRepr::Constant(c),
            Kernel::ExponentialProduct { kappa } => {
                GridRepr::Product((1..=n).map(|i| (-kappa * grid_point(i, n)).exp()).collect())
            }
        };
        KernelGrid { n, repr }
    }

    fn key(&self) -> (u8, u64) {
        match *self {
            Kernel::Constant { c } => (0, c.to_bits()),
            Kernel::ExponentialProduct { kappa } => (1, kappa.to_bits()),
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kernel::Constant { c } => write!(f, "constant({c})"),
            Kernel::ExponentialProduct { kappa } => write!(f, "exp({kappa})"),
        }
    }
}

#[inline]
fn grid_point(i: usize, n: usize) -> f64 {
    i as f64 / n as f64
}

/// Grid values for `0 ≤ u, v < n`, bit-identical to
/// [`Kernel::grid_value`]`(n, u+1, v+1)`.
#[derive(Debug, Clone)]
pub struct KernelGrid {
    n: usize,
    repr: GridRepr,
}

#[derive(Debug, Clone)]
enum GridRepr {
    Constant(f64),
    Product(Vec<f64>),
}

impl KernelGrid {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn value(&self, u: usize, v: usize) -> f64 {
        match &self.repr {
            GridRepr::Constant(c) => *c,
            GridRepr::Product(a) => a[u] * a[v],
        }
    }
}

pub fn eval_kernel(kernel: &Kernel, x: f64, y: f64) -> Result<f64, KernelError> {
    kernel.eval(x, y)
}

pub fn grid_value(kernel: &Kernel, n: usize, i: usize, j: usize) -> Result<f64, KernelError> {
    kernel.grid_value(n, i, j)
}

/// Row means `f_1..f_n`.
pub fn row_means(kernel: &Kernel, n: usize) -> Result<Vec<f64>, KernelError> {
    if n < 2 {
        return Err(KernelError::SizeTooSmall(n));
    }
    let grid = kernel.grid(n);
    Ok((0..n)
        .map(|i| {
            let mut acc = CompensatedSum::new();
            for j in (0..n).filter(|&j| j != i) {
                acc.add(grid.value(i, j));
            }
            acc.value() / n as f64
        })
        .collect())
}

pub fn lambda_moment(kernel: &Kernel, n: usize, k: f64, l: u32) -> Result<f64, KernelError> {
    KernelMoments::new(*kernel, n)?.lambda(k, l)
}

pub fn gamma_moment(kernel: &Kernel, n: usize, k: f64, l: u32) -> Result<f64, KernelError> {
    KernelMoments::new(*kernel, n)?.gamma(k, l)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum MomentKind {
    Lambda,
    Gamma,
}

/// Row means of a kernel at size `n` plus memoised λ and γ moments.
#[derive(Debug)]
pub struct KernelMoments {
    kernel: Kernel,
    n: usize,
    grid: KernelGrid,
    row_means: Vec<f64>,
    memo: RwLock<HashMap<(MomentKind, u64, u32), f64>>,
}

#[inline]
fn pow_order(base: f64, k: f64) -> f64 {
    if k == 0.0 {
        1.0
    } else {
        // base > 0: every kernel here is bounded below.
        (k * base.ln()).exp()
    }
}

impl KernelMoments {
    pub fn new(kernel: Kernel, n: usize) -> Result<Self, KernelError> {
        let row_means = row_means(&kernel, n)?;
        Ok(Self {
            kernel,
            n,
            grid: kernel.grid(n),
            row_means,
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row_means(&self) -> &[f64] {
        &self.row_means
    }

    pub fn lambda(&self, k: f64, l: u32) -> Result<f64, KernelError> {
        self.memoised(MomentKind::Lambda, k, l)
    }

    pub fn gamma(&self, k: f64, l: u32) -> Result<f64, KernelError> {
        self.memoised(MomentKind::Gamma, k, l)
    }

    fn memoised(&self, kind: MomentKind, k: f64, l: u32) -> Result<f64, KernelError> {
        if !(k.is_finite() && k >= 0.0) {
            return Err(KernelError::InvalidOrder(k));
        }
        let key = (kind, k.to_bits(), l);
        if let Some(&v) = self.memo.read().unwrap().get(&key) {
            return Ok(v);
        }
        let v = self.compute(kind, k, l);
        self.memo.write().unwrap().insert(key, v);
        Ok(v)
    }

    fn compute(&self, kind: MomentKind, k: f64, l: u32) -> f64 {
        let n = self.n;
        let powered: Vec<f64> = self.row_means.iter().map(|&f| pow_order(f, k)).collect();
        let mut outer = CompensatedSum::new();
        for i in 0..n {
            let mut inner = CompensatedSum::new();
            for j in (0..n).filter(|&j| j != i) {
                let f_ij = if l == 0 {
                    1.0
                } else {
                    self.grid.value(i, j).powi(l as i32)
                };
                let weight = match kind {
                    MomentKind::Lambda => f_ij,
                    MomentKind::Gamma => powered[j] * f_ij,
                };
                inner.add(weight);
            }
            outer.add(powered[i] * inner.value());
        }
        outer.value() / (n as f64 * n as f64)
    }
}

/// Shared [`KernelMoments`] keyed by kernel parameters and size.
type CacheKey = ((u8, u64), usize);

#[derive(Debug, Default)]
pub struct MomentsCache {
    entries: RwLock<HashMap<CacheKey, Arc<KernelMoments>>>,
}

impl MomentsCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, kernel: &Kernel, n: usize) -> Result<Arc<KernelMoments>, KernelError> {
        let key = (kernel.key(), n);
        if let Some(m) = self.entries.read().unwrap().get(&key) {
            return Ok(Arc::clone(m));
        }
        let fresh = Arc::new(KernelMoments::new(*kernel, n)?);
        let mut entries = self.entries.write().unwrap();
        Ok(Arc::clone(entries.entry(key).or_insert(fresh)))
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

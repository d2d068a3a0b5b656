//! Simple undirected graphs, degrees, and the edge-list text format.
//!
//! The text format is one edge per line as two whitespace-separated 0-based
//! node ids. Lines starting with `#` are comments, except `# n=<N>` which
//! declares the node count. Without a declaration the node count is one more
//! than the largest id seen. LF and CRLF are accepted; output uses LF with
//! edges sorted as `(min, max)` pairs.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: malformed edge {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("line {line}: invalid node-count header {content:?}")]
    InvalidHeader { line: usize, content: String },
    #[error("line {line}: node id {id} is out of range for n = {n}")]
    NodeIdOutOfRange { line: usize, id: u64, n: usize },
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: u32, v: u32, n: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A simple undirected graph on nodes `0..n`.
///
/// Edges are stored once each as `(min, max)` and sorted; there are no
/// self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
}

/// What [`Graph::from_edges`] discarded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Cleanup {
    pub duplicates: usize,
    pub self_loops: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new() }
    }

    /// Builds a graph, canonicalising pairs and dropping self-loops and
    /// repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<(Self, Cleanup), GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut cleanup = Cleanup::default();
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                cleanup.self_loops += 1;
                continue;
            }
            if !set.insert((u.min(v), u.max(v))) {
                cleanup.duplicates += 1;
            }
        }
        Ok((
            Self {
                n,
                edges: set.into_iter().collect(),
            },
            cleanup,
        ))
    }

    /// Caller guarantees `edges` is strictly increasing with `u < v < n`.
    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<(u32, u32)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(u, v)| u < v && (v as usize) < n));
        Self { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Serialises to the edge-list format with a `# n=` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 + self.edges.len() * 12);
        writeln!(out, "# n={}", self.n).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn write_edge_list<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(self.to_edge_list().as_bytes())
    }
}

/// Node degrees `d_i = Σ_{j≠i} A_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence(Vec<u32>);

impl DegreeSequence {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&d| u64::from(d)).sum()
    }
}

impl From<DegreeSequence> for Vec<u32> {
    fn from(ds: DegreeSequence) -> Self {
        ds.0
    }
}

pub fn degree_sequence(g: &Graph) -> DegreeSequence {
    let mut degrees = vec![0u32; g.n];
    for &(u, v) in &g.edges {
        degrees[u as usize] += 1;
        degrees[v as usize] += 1;
    }
    DegreeSequence(degrees)
}

/// Average degree; 0 for an empty sequence.
pub fn mean_degree(ds: &DegreeSequence) -> f64 {
    if ds.is_empty() {
        return 0.0;
    }
    ds.total() as f64 / ds.len() as f64
}

/// A parsed edge list together with the repairs applied to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedEdgeList {
    pub graph: Graph,
    pub duplicates: usize,
    pub self_loops: usize,
}

fn parse_header(body: &str) -> Option<Result<usize, ()>> {
    let rest = body.trim().strip_prefix("n")?.trim_start();
    let value = rest.strip_prefix('=')?.trim();
    Some(value.parse().map_err(|_| ()))
}

pub fn parse_edge_list(text: &str) -> Result<ParsedEdgeList, GraphError> {
    let mut declared: Option<usize> = None;
    let mut raw: Vec<(usize, u32, u32)> = Vec::new();
    let mut max_id: Option<u32> = None;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(body) = trimmed.strip_prefix('#') {
            match parse_header(body) {
                None => {}
                Some(Ok(n)) if declared.is_none_or(|d| d == n) => declared = Some(n),
                Some(_) => {
                    return Err(GraphError::InvalidHeader {
                        line: line_no,
                        content: trimmed.to_string(),
                    })
                }
            }
            continue;
        }
        let malformed = || GraphError::MalformedLine {
            line: line_no,
            content: trimmed.to_string(),
        };
        let mut fields = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(malformed());
        };
        let parse_id = |s: &str| -> Result<u32, GraphError> {
            match s.parse::<u64>() {
                Ok(id) => u32::try_from(id).map_err(|_| GraphError::NodeIdOutOfRange {
                    line: line_no,
                    id,
                    n: u32::MAX as usize,
                }),
                Err(_) => Err(malformed()),
            }
        };
        let u = parse_id(a)?;
        let v = parse_id(b)?;
        max_id = max_id.max(Some(u.max(v)));
        raw.push((line_no, u, v));
    }

    let n = match declared {
        Some(n) => {
            if let Some(&(line, u, v)) = raw.iter().find(|e| e.1.max(e.2) as usize >= n) {
                return Err(GraphError::NodeIdOutOfRange {
                    line,
                    id: u64::from(u.max(v)),
                    n,
                });
            }
            n
        }
        None => max_id.map_or(0, |m| m as usize + 1),
    };

    let (graph, cleanup) = Graph::from_edges(n, raw.into_iter().map(|(_, u, v)| (u, v)))?;
    Ok(ParsedEdgeList {
        graph,
        duplicates: cleanup.duplicates,
        self_loops: cleanup.self_loops,
    })
}

/// Writes `node_id weight` lines; weights use the shortest round-trip form.
pub fn weights_to_text(weights: &[f64]) -> String {
    let mut out = String::with_capacity(weights.len() * 24);
    for (i, w) in weights.iter().enumerate() {
        writeln!(out, "{i} {w}").unwrap();
    }
    out
}

pub fn parse_weights(text: &str) -> Result<Vec<f64>, GraphError> {
    let mut weights = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let malformed = || GraphError::MalformedLine {
            line: idx + 1,
            content: trimmed.to_string(),
        };
        let mut fields = trimmed.split_whitespace();
        let (Some(id), Some(w), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(malformed());
        };
        let id: usize = id.parse().map_err(|_| malformed())?;
        let w: f64 = w.parse().map_err(|_| malformed())?;
        if id != weights.len() {
            return Err(malformed());
        }
        weights.push(w);
    }
    Ok(weights)
}

//! Iterative compression: find a transversal `X` of size `floor(alpha n)`
//! by scanning large subsets, then split every minimal transversal `T` by
//! `N = T ∩ X` and recover `T - N` from a lower-rank projection with an
//! inner engine.

use itertools::Itertools;

use crate::hypergraph::{Hypergraph, Vertex};
use crate::rank3::Rank3;
use crate::search::{EngineError, Enumerator, SearchStats, TransversalSink};

pub const DEFAULT_ALPHA: f64 = 0.66938;

/// Subset scans use one machine word per set.
pub const MAX_VERTICES: usize = 63;

pub struct CompressionConfig {
    alpha: f64,
    inner: Box<dyn Enumerator>,
}

impl CompressionConfig {
    pub fn new(alpha: f64, inner: Box<dyn Enumerator>) -> Result<Self, EngineError> {
        if !(0.5..=1.0).contains(&alpha) {
            return Err(EngineError::Config(format!("alpha must lie in [0.5, 1], got {alpha}")));
        }
        Ok(CompressionConfig { alpha, inner })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn inner(&self) -> &dyn Enumerator {
        self.inner.as_ref()
    }
}

impl Default for CompressionConfig {
    fn default() -> Self {
        CompressionConfig { alpha: DEFAULT_ALPHA, inner: Box::new(Rank3::default()) }
    }
}

impl std::fmt::Debug for CompressionConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CompressionConfig").field("alpha", &self.alpha).field("inner", &self.inner.name()).finish()
    }
}

/// `H'` with `V' = V - X` and edges `e - X` for every edge `e` missing `N`.
pub fn project(h: &Hypergraph, x: &[Vertex], n: &[Vertex]) -> Result<Hypergraph, EngineError> {
    if let Some(v) = x.iter().find(|&&v| !h.contains_vertex(v)) {
        return Err(EngineError::Config(format!("X contains {v}, which is not a vertex")));
    }
    if let Some(v) = n.iter().find(|v| !x.contains(v)) {
        return Err(EngineError::Config(format!("N contains {v}, which is not in X")));
    }
    let vertices = h.vertices().filter(|v| !x.contains(v));
    let edges = h
        .edges()
        .iter()
        .filter(|e| !e.iter().any(|v| n.contains(v)))
        .map(|e| e.iter().copied().filter(|v| !x.contains(v)).collect::<Vec<_>>());
    Hypergraph::with_vertices(h.id_bound(), vertices, edges).map_err(|e| EngineError::Invariant(e.to_string()))
}

/// Result of the subset scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseOne {
    /// `floor(alpha |V|)`.
    pub threshold: usize,
    /// Minimal transversals met during the scan, in scan order.
    pub minimal: Vec<Vec<Vertex>>,
    /// First transversal of size exactly `threshold`, if any.
    pub witness: Option<Vec<Vertex>>,
    /// Number of subsets examined.
    pub checked: u64,
}

struct Masks {
    vertices: Vec<Vertex>,
    edges: Vec<u64>,
}

impl Masks {
    fn new(h: &Hypergraph) -> Self {
        let vertices: Vec<Vertex> = h.vertices().collect();
        let edges = h
            .edges()
            .iter()
            .map(|e| e.iter().fold(0u64, |m, v| m | 1 << vertices.binary_search(v).expect("edge inside V")))
            .collect();
        Masks { vertices, edges }
    }

    fn hits(&self, s: u64) -> bool {
        self.edges.iter().all(|&e| e & s != 0)
    }

    fn minimal(&self, s: u64) -> bool {
        let mut private = 0u64;
        for &e in &self.edges {
            let meet = e & s;
            if meet == 0 {
                return false;
            }
            if meet.is_power_of_two() {
                private |= meet;
            }
        }
        private == s
    }

    fn decode(&self, s: u64) -> Vec<Vertex> {
        self.vertices.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).map(|(_, &v)| v).collect()
    }
}

fn threshold(h: &Hypergraph, alpha: f64) -> usize {
    (alpha * h.vertex_count() as f64).floor() as usize
}

/// Scans all vertex subsets of size at least `floor(alpha n)` in decreasing
/// size, stopping at the first transversal of exactly that size.
pub fn phase_one(h: &Hypergraph, alpha: f64) -> Result<PhaseOne, EngineError> {
    let n = h.vertex_count();
    if n > MAX_VERTICES {
        return Err(EngineError::TooLarge { vertices: n, limit: MAX_VERTICES });
    }
    let t = threshold(h, alpha);
    let masks = Masks::new(h);
    let mut out = PhaseOne { threshold: t, minimal: Vec::new(), witness: None, checked: 0 };
    for size in (t..=n).rev() {
        for combo in (0..n).combinations(size) {
            let s = combo.iter().fold(0u64, |m, &i| m | 1 << i);
            out.checked += 1;
            if !masks.hits(s) {
                continue;
            }
            if size == t {
                out.witness = Some(masks.decode(s));
                return Ok(out);
            }
            if masks.minimal(s) {
                out.minimal.push(masks.decode(s));
            }
        }
    }
    Ok(out)
}

/// The iterative-compression engine.
#[derive(Debug, Default)]
pub struct Compression {
    pub config: CompressionConfig,
}

impl Compression {
    pub fn new(config: CompressionConfig) -> Self {
        Compression { config }
    }
}

impl Enumerator for Compression {
    fn name(&self) -> &'static str {
        "compression"
    }

    fn max_rank(&self) -> Option<usize> {
        self.config.inner.max_rank().map(|r| r + 1)
    }

    fn enumerate(&self, h: &Hypergraph, sink: &mut dyn TransversalSink) -> Result<SearchStats, EngineError> {
        self.check_rank(h)?;
        let scan = phase_one(h, self.config.alpha)?;
        let mut stats = SearchStats { nodes: scan.checked, leaves: scan.checked, max_depth: 0, outputs: 0 };
        let Some(x) = scan.witness else {
            for t in &scan.minimal {
                sink.emit(t);
            }
            stats.outputs = scan.minimal.len() as u64;
            return Ok(stats);
        };
        for bits in 0u64..1 << x.len() {
            let n: Vec<Vertex> = x.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &v)| v).collect();
            let projected = project(h, &x, &n)?;
            let mut emitted = 0u64;
            let mut forward = |y: &[Vertex]| {
                let mut t: Vec<Vertex> = n.iter().chain(y).copied().collect();
                t.sort_unstable();
                if h.is_minimal_transversal(&t) {
                    emitted += 1;
                    sink.emit(&t);
                }
            };
            let inner = self.config.inner.enumerate(&projected, &mut forward).map_err(|e| match e {
                EngineError::RankTooHigh { .. } => {
                    EngineError::Invariant(format!("projection not reduced in rank: {e}"))
                }
                other => other,
            })?;
            stats.absorb(&SearchStats { outputs: 0, max_depth: inner.max_depth + 1, ..inner });
            stats.outputs += emitted;
        }
        Ok(stats)
    }
}

pub fn enumerate_compression(
    h: &Hypergraph,
    config: CompressionConfig,
    sink: &mut dyn TransversalSink,
) -> Result<SearchStats, EngineError> {
    Compression::new(config).enumerate(h, sink)
}

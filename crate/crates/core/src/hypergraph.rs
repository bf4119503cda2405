//! Hypergraph data model shared by every engine.
//!
//! Vertices are 1-based `u32` ids bounded by [`Hypergraph::id_bound`]. The
//! vertex universe is an explicit set so that projections and working
//! instances can carry non-contiguous vertex sets. Edges are kept as sorted
//! vertex lists, deduplicated, and stored in lexicographic ("canonical")
//! order; every tie-break in the engines refers to this order.

use fixedbitset::FixedBitSet;
use thiserror::Error;

/// A 1-based vertex identifier.
pub type Vertex = u32;

/// A hyperedge: strictly ascending vertex list.
pub type Edge = Vec<Vertex>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("vertex {vertex} out of range 1..={bound}")]
    VertexOutOfRange { vertex: Vertex, bound: u32 },
    #[error("vertex {0} is not in the vertex set")]
    NotAVertex(Vertex),
    #[error("edge vertex {0} is not in the vertex set")]
    EdgeOutsideVertexSet(Vertex),
}

/// A finite hypergraph `(V, E)` with set semantics on `E`.
#[derive(Clone, PartialEq, Eq)]
pub struct Hypergraph {
    bound: u32,
    vertices: FixedBitSet,
    edges: Vec<Edge>,
}

impl std::fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Hypergraph")
            .field("vertices", &self.vertices().collect::<Vec<_>>())
            .field("edges", &self.edges)
            .finish()
    }
}

impl Hypergraph {
    /// Builds a hypergraph on the vertex set `1..=n`.
    pub fn new<I, E>(n: u32, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = Vertex>,
    {
        let mut vertices = FixedBitSet::with_capacity(n as usize + 1);
        vertices.insert_range(1..n as usize + 1);
        Self::build(n, vertices, edges)
    }

    /// Builds a hypergraph with an explicit vertex set. Ids must lie in
    /// `1..=bound` and every edge must be contained in `vertices`.
    pub fn with_vertices<V, I, E>(bound: u32, vertices: V, edges: I) -> Result<Self, HypergraphError>
    where
        V: IntoIterator<Item = Vertex>,
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = Vertex>,
    {
        let mut set = FixedBitSet::with_capacity(bound as usize + 1);
        for v in vertices {
            check_range(v, bound)?;
            set.insert(v as usize);
        }
        Self::build(bound, set, edges)
    }

    fn build<I, E>(bound: u32, vertices: FixedBitSet, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = Vertex>,
    {
        let mut out = Vec::new();
        for e in edges {
            let mut e: Edge = e.into_iter().collect();
            e.sort_unstable();
            e.dedup();
            for &v in &e {
                check_range(v, bound)?;
                if !vertices.contains(v as usize) {
                    return Err(HypergraphError::EdgeOutsideVertexSet(v));
                }
            }
            out.push(e);
        }
        Ok(Self::from_parts(bound, vertices, out))
    }

    /// Internal constructor; normalizes edge order and removes duplicates.
    pub(crate) fn from_parts(bound: u32, vertices: FixedBitSet, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Hypergraph { bound, vertices, edges }
    }

    /// Largest admissible vertex id (the `n` of the text format).
    pub fn id_bound(&self) -> u32 {
        self.bound
    }

    /// Number of vertices `|V|`.
    pub fn vertex_count(&self) -> usize {
        self.vertices.count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.ones().map(|v| v as Vertex)
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        (v as usize) < self.vertices.len() && self.vertices.contains(v as usize)
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Maximum edge cardinality, 0 when there are no edges.
    pub fn rank(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_empty_edge(&self) -> bool {
        // the empty edge sorts first
        self.edges.first().is_some_and(|e| e.is_empty())
    }

    /// `|V| + |E|`, the quantity every engine step strictly decreases.
    pub fn size_measure(&self) -> usize {
        self.vertex_count() + self.edge_count()
    }

    /// Degree of every id in `0..=bound` (index 0 unused).
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.bound as usize + 1];
        for e in &self.edges {
            for &v in e {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.binary_search(&v).is_ok()).count()
    }

    pub fn degree_profile(&self, v: Vertex) -> Result<DegreeProfile, HypergraphError> {
        check_range(v, self.bound)?;
        let mut by_size = vec![0; self.rank() + 1];
        let mut neighbors = Vec::new();
        for e in self.edges.iter().filter(|e| e.binary_search(&v).is_ok()) {
            by_size[e.len()] += 1;
            neighbors.extend(e.iter().copied().filter(|&u| u != v));
        }
        neighbors.sort_unstable();
        neighbors.dedup();
        Ok(DegreeProfile { by_size, neighbors })
    }

    pub fn is_transversal(&self, set: &[Vertex]) -> bool {
        let marks = self.mark(set);
        self.edges.iter().all(|e| e.iter().any(|&v| marks.contains(v as usize)))
    }

    /// Whether `set` is an inclusion-minimal transversal.
    ///
    /// Uses the private-edge characterization: `set` hits every edge and each
    /// member is the sole member of `set` in at least one edge.
    pub fn is_minimal_transversal(&self, set: &[Vertex]) -> bool {
        let marks = self.mark(set);
        let mut private = FixedBitSet::with_capacity(marks.len());
        for e in &self.edges {
            let mut hit = e.iter().filter(|&&v| marks.contains(v as usize));
            match (hit.next(), hit.next()) {
                (None, _) => return false,
                (Some(&v), None) => private.insert(v as usize),
                _ => {}
            }
        }
        marks.is_subset(&private)
    }

    fn mark(&self, set: &[Vertex]) -> FixedBitSet {
        let len = set.iter().map(|&v| v as usize + 1).max().unwrap_or(0).max(self.bound as usize + 1);
        let mut marks = FixedBitSet::with_capacity(len);
        for &v in set {
            marks.insert(v as usize);
        }
        marks
    }

    pub(crate) fn parts_mut(&mut self) -> (&mut FixedBitSet, &mut Vec<Edge>) {
        (&mut self.vertices, &mut self.edges)
    }
}

fn check_range(v: Vertex, bound: u32) -> Result<(), HypergraphError> {
    if v == 0 || v > bound {
        Err(HypergraphError::VertexOutOfRange { vertex: v, bound })
    } else {
        Ok(())
    }
}

/// Incidence counts of one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    by_size: Vec<usize>,
    /// Vertices sharing at least one edge with the queried vertex, ascending.
    pub neighbors: Vec<Vertex>,
}

impl DegreeProfile {
    pub fn degree(&self) -> usize {
        self.by_size.iter().sum()
    }

    /// Number of incident edges of size exactly `size`.
    pub fn of_size(&self, size: usize) -> usize {
        self.by_size.get(size).copied().unwrap_or(0)
    }

    /// Number of incident edges of size at most `size`.
    pub fn up_to_size(&self, size: usize) -> usize {
        self.by_size.iter().take(size + 1).sum()
    }
}

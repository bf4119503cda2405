use crate::hypergraph::{Hypergraph, HypergraphError, Vertex};

/// A node of a branching search: the edges still to hit, the vertices still
/// eligible, and the partial solution accumulated so far.
///
/// `working` never contains a vertex of `partial`.
#[derive(Debug, Clone)]
pub struct Instance<'a> {
    working: Hypergraph,
    partial: Vec<Vertex>,
    original: &'a Hypergraph,
}

impl<'a> Instance<'a> {
    pub fn new(original: &'a Hypergraph) -> Self {
        Instance { working: original.clone(), partial: Vec::new(), original }
    }

    /// An instance with a prescribed working hypergraph and partial solution.
    pub fn from_parts(working: Hypergraph, partial: Vec<Vertex>, original: &'a Hypergraph) -> Self {
        debug_assert!(partial.iter().all(|&v| !working.contains_vertex(v)));
        Instance { working, partial, original }
    }

    pub fn working(&self) -> &Hypergraph {
        &self.working
    }

    /// The partial solution in insertion order.
    pub fn partial(&self) -> &[Vertex] {
        &self.partial
    }

    pub fn original(&self) -> &'a Hypergraph {
        self.original
    }

    /// Adds `v` to the solution: drops every edge containing `v`.
    pub fn select(&self, v: Vertex) -> Result<Self, HypergraphError> {
        let mut next = self.clone();
        next.select_in_place(v)?;
        Ok(next)
    }

    /// Forbids `v`: removes it from every edge. Shrunken edges that
    /// coincide are merged.
    pub fn discard(&self, v: Vertex) -> Result<Self, HypergraphError> {
        let mut next = self.clone();
        next.discard_in_place(v)?;
        Ok(next)
    }

    pub fn select_in_place(&mut self, v: Vertex) -> Result<(), HypergraphError> {
        self.require(v)?;
        let (vertices, edges) = self.working.parts_mut();
        vertices.set(v as usize, false);
        edges.retain(|e| e.binary_search(&v).is_err());
        self.partial.push(v);
        Ok(())
    }

    pub fn discard_in_place(&mut self, v: Vertex) -> Result<(), HypergraphError> {
        self.require(v)?;
        let (vertices, edges) = self.working.parts_mut();
        vertices.set(v as usize, false);
        let mut changed = false;
        for e in edges.iter_mut() {
            if let Ok(pos) = e.binary_search(&v) {
                e.remove(pos);
                changed = true;
            }
        }
        if changed {
            edges.sort_unstable();
            edges.dedup();
        }
        Ok(())
    }

    /// Removes one edge from the working hypergraph (subsumption reduction).
    pub(crate) fn remove_edge(&mut self, index: usize) {
        let (_, edges) = self.working.parts_mut();
        edges.remove(index);
    }

    fn require(&self, v: Vertex) -> Result<(), HypergraphError> {
        if self.working.contains_vertex(v) {
            Ok(())
        } else {
            Err(HypergraphError::NotAVertex(v))
        }
    }

    /// The partial solution as an ascending list.
    pub fn sorted_partial(&self) -> Vec<Vertex> {
        let mut s = self.partial.clone();
        s.sort_unstable();
        s
    }
}

//! Shared machinery for the branching engines: the output sink, search
//! statistics, and a depth-first driver over [`Instance`] nodes.

use thiserror::Error;

use crate::hypergraph::{Hypergraph, Vertex};
use crate::instance::Instance;

/// Receives each enumerated minimal transversal exactly once, as an
/// ascending vertex list.
pub trait TransversalSink {
    fn emit(&mut self, transversal: &[Vertex]);
}

impl<F: FnMut(&[Vertex])> TransversalSink for F {
    fn emit(&mut self, transversal: &[Vertex]) {
        self(transversal)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search-tree nodes visited.
    pub nodes: u64,
    /// Nodes where a halting rule fired.
    pub leaves: u64,
    pub max_depth: usize,
    /// Transversals handed to the sink.
    pub outputs: u64,
}

impl SearchStats {
    /// Accumulates counters of a sub-search run as part of this one.
    pub fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.leaves += other.leaves;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.outputs += other.outputs;
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("hypergraph has rank {rank}, engine `{engine}` handles rank at most {max}")]
    RankTooHigh { engine: &'static str, rank: usize, max: usize },
    #[error("{vertices} vertices exceed the limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// An algorithm enumerating all minimal transversals of a hypergraph.
pub trait Enumerator {
    fn name(&self) -> &'static str;

    /// Largest rank accepted, `None` when unbounded.
    fn max_rank(&self) -> Option<usize>;

    fn enumerate(&self, h: &Hypergraph, sink: &mut dyn TransversalSink) -> Result<SearchStats, EngineError>;

    fn check_rank(&self, h: &Hypergraph) -> Result<(), EngineError> {
        match self.max_rank() {
            Some(max) if h.rank() > max => Err(EngineError::RankTooHigh { engine: self.name(), rank: h.rank(), max }),
            _ => Ok(()),
        }
    }
}

/// Runs `engine` and returns its output in canonical order.
pub fn collect_sorted<E: Enumerator + ?Sized>(engine: &E, h: &Hypergraph) -> Result<Vec<Vec<Vertex>>, EngineError> {
    let mut out = Vec::new();
    engine.enumerate(h, &mut |t: &[Vertex]| out.push(t.to_vec()))?;
    out.sort_unstable();
    Ok(out)
}

/// What a rule does at a search node.
pub(crate) enum Step<'a> {
    /// Halting rule. With `candidate` set, the partial solution hits every
    /// edge and is emitted if it is minimal for the original hypergraph.
    Halt {
        candidate: bool,
    },
    Branch(Vec<Instance<'a>>),
}

pub(crate) type BranchObserver<'o> = dyn FnMut(&Instance<'_>, &[Instance<'_>]) + 'o;

/// Depth-first search from `root`. Children are explored in the order the
/// rule lists them. Every child must have a strictly smaller `|V| + |E|`.
pub(crate) fn depth_first<'a, F>(
    root: Instance<'a>,
    mut expand: F,
    sink: &mut dyn TransversalSink,
    mut observer: Option<&mut BranchObserver<'_>>,
) -> Result<SearchStats, EngineError>
where
    F: FnMut(&Instance<'a>) -> Result<Step<'a>, EngineError>,
{
    let mut stats = SearchStats::default();
    let mut stack = vec![(root, 0usize)];
    while let Some((inst, depth)) = stack.pop() {
        stats.nodes += 1;
        stats.max_depth = stats.max_depth.max(depth);
        match expand(&inst)? {
            Step::Halt { candidate } => {
                stats.leaves += 1;
                if candidate {
                    let s = inst.sorted_partial();
                    if inst.original().is_minimal_transversal(&s) {
                        stats.outputs += 1;
                        sink.emit(&s);
                    }
                }
            }
            Step::Branch(children) => {
                let size = inst.working().size_measure();
                if let Some(child) = children.iter().find(|c| c.working().size_measure() >= size) {
                    return Err(EngineError::Invariant(format!(
                        "|V|+|E| did not decrease ({} -> {})",
                        size,
                        child.working().size_measure()
                    )));
                }
                if let Some(obs) = observer.as_mut() {
                    obs(&inst, &children);
                }
                stack.extend(children.into_iter().rev().map(|c| (c, depth + 1)));
            }
        }
    }
    Ok(stats)
}

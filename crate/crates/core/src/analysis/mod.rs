//! Measure & Conquer bookkeeping for the rank-3 engine, the rank-k
//! recurrence solver, and the bound table generator.

mod bounds;
mod constraints;
mod weights;

use thiserror::Error;

use crate::hypergraph::Hypergraph;

pub use bounds::{
    best_compression_alpha, beta_k, bounds_table, compression_phase_bases, lower_bound_base, recurrence, BoundsRow,
    RANK2_UPPER, RANK4_UPPER, ROOT_TOLERANCE,
};
pub use constraints::{verify_weights, ConstraintRecord, ConstraintReport, Family, FamilySummary};
pub use weights::{Weights, WeightsError, WEIGHT_SLOTS};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("the measure is defined for rank at most 3, got rank {0}")]
    RankTooHigh(usize),
    #[error("k = {k} is below the minimum {min}")]
    RankTooSmall { k: usize, min: usize },
}

/// `psi(m_{<=2}) + sum_v omega_{d(v)}` over the vertex set of `h`.
pub fn measure(h: &Hypergraph, w: &Weights) -> Result<f64, AnalysisError> {
    let rank = h.rank();
    if rank > 3 {
        return Err(AnalysisError::RankTooHigh(rank));
    }
    let small = h.edges().iter().filter(|e| e.len() <= 2).count();
    let deg = h.degrees();
    let vertex_part: f64 = h.vertices().map(|v| w.omega(deg[v as usize])).sum();
    Ok(w.psi(small) + vertex_part)
}

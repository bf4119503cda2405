//! Brute-force oracle and instance generators.

mod generators;
mod oracle;

use thiserror::Error;

pub use generators::{gen_lower_bound, gen_random, gen_triangles, generate, GeneratorKind, GeneratorSpec};
pub use oracle::{brute_force_enumerate, ORACLE_MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("{vertices} vertices exceed the oracle limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("cannot draw {requested} distinct edges, only {available} exist")]
    Infeasible { requested: usize, available: u128 },
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("vertex count {0} does not fit a vertex id")]
    VertexCount(u64),
}

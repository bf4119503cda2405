//! Exact enumeration of the minimal transversals (minimal hitting sets) of
//! bounded-rank hypergraphs.
//!
//! Three engines are provided:
//!
//! * [`rank3::Rank3`], a branch-and-reduce algorithm for rank at most 3
//!   whose search tree has `O(1.6755^n)` leaves,
//! * [`compression::Compression`], iterative compression that lifts a
//!   rank-(k-1) engine to rank k (`O(1.8863^n)` for rank 4 over `Rank3`),
//! * [`rankk::RankK`], a branching algorithm for any rank.
//!
//! [`instances`] holds a brute-force oracle and instance generators, and
//! [`analysis`] verifies the measure behind the rank-3 bound and computes
//! the bound table.

pub mod analysis;
pub mod compression;
pub mod format;
pub mod hypergraph;
pub mod instance;
pub mod instances;
pub mod rank3;
pub mod rankk;
pub mod search;

pub use compression::{Compression, CompressionConfig};
pub use hypergraph::{DegreeProfile, Edge, Hypergraph, HypergraphError, Vertex};
pub use instance::Instance;
pub use rank3::Rank3;
pub use rankk::RankK;
pub use search::{collect_sorted, EngineError, Enumerator, SearchStats, TransversalSink};

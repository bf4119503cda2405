use crate::hypergraph::{Hypergraph, Vertex};

use super::InstanceError;

pub const ORACLE_MAX_VERTICES: usize = 25;

/// All minimal transversals of `h` by testing every vertex subset, in
/// canonical order.
///
/// A subset is kept when it hits every edge and no subset obtained by
/// removing one vertex does.
pub fn brute_force_enumerate(h: &Hypergraph) -> Result<Vec<Vec<Vertex>>, InstanceError> {
    let vertices: Vec<Vertex> = h.vertices().collect();
    let n = vertices.len();
    if n > ORACLE_MAX_VERTICES {
        return Err(InstanceError::TooLarge { vertices: n, limit: ORACLE_MAX_VERTICES });
    }
    let edges: Vec<u32> = h
        .edges()
        .iter()
        .map(|e| {
            e.iter().fold(0u32, |m, v| {
                let i = vertices.iter().position(|u| u == v).expect("edge vertices lie in V");
                m | 1 << i
            })
        })
        .collect();
    let hits = |s: u32| edges.iter().all(|&e| e & s != 0);
    let mut out: Vec<Vec<Vertex>> = (0..1u32 << n)
        .filter(|&s| hits(s) && (0..n).filter(|i| s >> i & 1 == 1).all(|i| !hits(s & !(1 << i))))
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).map(|i| vertices[i]).collect())
        .collect();
    out.sort_unstable();
    Ok(out)
}

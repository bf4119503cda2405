use std::collections::HashSet;

use itertools::Itertools;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::hypergraph::{Edge, Hypergraph, Vertex};

use super::InstanceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Disjoint copies of the complete k-uniform hypergraph on `2k-1`
    /// vertices.
    LowerBound,
    /// Disjoint triangles; the rank is always 2.
    Triangles,
    /// `m` distinct seeded random edges of size `1..=k`.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub k: usize,
    pub n: u32,
    pub m: usize,
    pub seed: u64,
}

pub fn generate(spec: &GeneratorSpec) -> Result<Hypergraph, InstanceError> {
    match spec.kind {
        GeneratorKind::LowerBound => gen_lower_bound(spec.k, spec.n),
        GeneratorKind::Triangles => Ok(gen_triangles(spec.n)),
        GeneratorKind::Random => gen_random(spec),
    }
}

/// `floor(n / (2k-1))` disjoint blocks of `2k-1` consecutive vertices, each
/// carrying all its k-subsets, followed by isolated vertices up to `n`.
pub fn gen_lower_bound(k: usize, n: u32) -> Result<Hypergraph, InstanceError> {
    if k == 0 {
        return Err(InstanceError::ZeroRank);
    }
    let span = 2 * k as u64 - 1;
    let blocks = u64::from(n) / span;
    let edges = (0..blocks).flat_map(|b| {
        let start = (b * span) as Vertex + 1;
        (start..start + span as Vertex).combinations(k)
    });
    Ok(Hypergraph::new(n, edges).expect("blocks lie inside 1..=n"))
}

pub fn gen_triangles(n: u32) -> Hypergraph {
    gen_lower_bound(2, n).expect("rank 2 is valid")
}

/// Number of non-empty subsets of size at most `k` of an `n`-set, saturating.
fn available_edges(k: usize, n: u32) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for s in 1..=k.min(n as usize) as u128 {
        binom = binom.saturating_mul(u128::from(n) - s + 1) / s;
        total = total.saturating_add(binom);
    }
    total
}

/// Seeded random hypergraph with `m` distinct edges of size `1..=k`.
///
/// The stream is SplitMix64 with initial state `seed`. Each draw takes one
/// output `r` for the size `1 + r mod min(k, n)`, then builds the edge by a
/// partial Fisher-Yates shuffle of `[1, ..., n]`: for `i` in `0..size`,
/// swap position `i` with `i + r mod (n - i)` using a fresh output `r`.
/// Draws that repeat an earlier edge are rejected.
pub fn gen_random(spec: &GeneratorSpec) -> Result<Hypergraph, InstanceError> {
    if spec.k == 0 {
        return Err(InstanceError::ZeroRank);
    }
    let available = available_edges(spec.k, spec.n);
    if spec.m as u128 > available {
        return Err(InstanceError::Infeasible { requested: spec.m, available });
    }
    let n = spec.n as u64;
    let max_size = (spec.k as u64).min(n);
    let mut rng = SplitMix64::seed_from_u64(spec.seed);
    let mut seen: HashSet<Edge> = HashSet::with_capacity(spec.m);
    let mut edges: Vec<Edge> = Vec::with_capacity(spec.m);
    while edges.len() < spec.m {
        let size = (1 + rng.next_u64() % max_size) as usize;
        let mut pool: Vec<Vertex> = (1..=spec.n).collect();
        for i in 0..size {
            let j = i + (rng.next_u64() % (n - i as u64)) as usize;
            pool.swap(i, j);
        }
        let mut edge = pool[..size].to_vec();
        edge.sort_unstable();
        if seen.insert(edge.clone()) {
            edges.push(edge);
        }
    }
    Ok(Hypergraph::new(spec.n, edges).expect("edges drawn from 1..=n"))
}

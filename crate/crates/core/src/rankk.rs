//! Branching enumeration of minimal transversals for hypergraphs of any
//! rank.
//!
//! Rules, first applicable wins:
//!
//! * H1: no edges left, emit `S` if it is minimal for the input.
//! * H2: an empty edge, backtrack.
//! * R1: discard a degree-0 vertex.
//! * R2: drop an edge that contains another edge.
//! * R3: select the vertex of a 1-edge.
//! * B1: `d(v) = 1` in edge `e`: discard `v` / select `v` and discard `e - v`.
//! * B2: `e` smallest, `e'` overlapping it; branch `i` discards
//!   `v_1..v_{i-1}` and selects `v_i`.

use crate::hypergraph::{Edge, Hypergraph, Vertex};
use crate::instance::Instance;
use crate::rank3::{child, Op};
use crate::search::{depth_first, EngineError, Enumerator, SearchStats, Step, TransversalSink};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKTag {
    H1,
    H2,
    R1,
    R2,
    R3,
    B1,
    B2,
}

/// The pair of edges B2 branches on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct B2Choice {
    pub e: Edge,
    pub e_prime: Edge,
    /// Vertices of `e`: those shared with `e_prime` first, each part
    /// ascending.
    pub ordering: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleK {
    Exhausted,
    EmptyEdge,
    Isolated { v: Vertex },
    Subsumed { subset: Edge, superset: Edge },
    Unit { v: Vertex },
    LoneVertex { v: Vertex, edge: Edge },
    Smallest(B2Choice),
}

impl RuleK {
    pub fn tag(&self) -> RuleKTag {
        match self {
            RuleK::Exhausted => RuleKTag::H1,
            RuleK::EmptyEdge => RuleKTag::H2,
            RuleK::Isolated { .. } => RuleKTag::R1,
            RuleK::Subsumed { .. } => RuleKTag::R2,
            RuleK::Unit { .. } => RuleKTag::R3,
            RuleK::LoneVertex { .. } => RuleKTag::B1,
            RuleK::Smallest(_) => RuleKTag::B2,
        }
    }
}

fn is_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.by_ref().any(|y| y == x))
}

fn overlap(a: &[Vertex], b: &[Vertex]) -> usize {
    a.iter().filter(|x| b.binary_search(x).is_ok()).count()
}

/// First edge, in canonical order, that strictly contains another edge.
fn find_subsumed(edges: &[Edge]) -> Option<(Edge, Edge)> {
    edges.iter().find_map(|sup| {
        edges.iter().find(|sub| sub.len() < sup.len() && is_subset(sub, sup)).map(|sub| (sub.clone(), sup.clone()))
    })
}

/// The rule that fires on `inst`.
pub fn next_rule(inst: &Instance<'_>) -> RuleK {
    let h = inst.working();
    let edges = h.edges();
    if edges.is_empty() {
        return RuleK::Exhausted;
    }
    if h.has_empty_edge() {
        return RuleK::EmptyEdge;
    }
    let deg = h.degrees();
    if let Some(v) = h.vertices().find(|&v| deg[v as usize] == 0) {
        return RuleK::Isolated { v };
    }
    if let Some((subset, superset)) = find_subsumed(edges) {
        return RuleK::Subsumed { subset, superset };
    }
    if let Some(e) = edges.iter().find(|e| e.len() == 1) {
        return RuleK::Unit { v: e[0] };
    }
    if let Some(v) = h.vertices().find(|&v| deg[v as usize] == 1) {
        let edge = edges.iter().find(|e| e.binary_search(&v).is_ok()).expect("degree 1").clone();
        return RuleK::LoneVertex { v, edge };
    }
    RuleK::Smallest(b2_choice(edges))
}

fn b2_choice(edges: &[Edge]) -> B2Choice {
    let min = edges.iter().map(Vec::len).min().expect("edges present");
    let (ei, e) = edges.iter().enumerate().find(|(_, e)| e.len() == min).expect("smallest edge");
    let mut best: Option<(&Edge, usize)> = None;
    for (i, f) in edges.iter().enumerate() {
        let shared = overlap(e, f);
        if i != ei && shared > 0 && best.is_none_or(|(_, b)| shared > b) {
            best = Some((f, shared));
        }
    }
    let e_prime = best.expect("a partner edge exists when every degree is at least 2").0;
    let (mut ordering, rest): (Vec<Vertex>, Vec<Vertex>) = e.iter().partition(|v| e_prime.binary_search(v).is_ok());
    ordering.extend(rest);
    B2Choice { e: e.clone(), e_prime: e_prime.clone(), ordering }
}

/// The B2 branching pair of `inst`; fails when an earlier rule applies.
pub fn choose_b2(inst: &Instance<'_>) -> Result<B2Choice, EngineError> {
    match next_rule(inst) {
        RuleK::Smallest(choice) => Ok(choice),
        other => Err(EngineError::Invariant(format!("B2 does not apply, rule {:?} fires first", other.tag()))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankKOptions {
    /// In B1's select branch, discard the rest of `v`'s edge. Turning this
    /// off keeps the output unchanged but grows the search tree.
    pub minimality_discards: bool,
}

impl Default for RankKOptions {
    fn default() -> Self {
        RankKOptions { minimality_discards: true }
    }
}

/// Child instances of `rule`, in branch order.
pub fn apply_rule<'a>(
    inst: &Instance<'a>,
    rule: &RuleK,
    options: RankKOptions,
) -> Result<Vec<Instance<'a>>, EngineError> {
    use Op::{Discard, Select};
    let branches: Vec<Vec<Op>> = match rule {
        RuleK::Exhausted | RuleK::EmptyEdge => Vec::new(),
        RuleK::Isolated { v } => vec![vec![Discard(*v)]],
        RuleK::Subsumed { superset, .. } => {
            let mut next = inst.clone();
            let idx = next.working().edges().binary_search(superset).expect("subsumed edge present");
            next.remove_edge(idx);
            return Ok(vec![next]);
        }
        RuleK::Unit { v } => vec![vec![Select(*v)]],
        RuleK::LoneVertex { v, edge } => {
            let mut second = vec![Select(*v)];
            if options.minimality_discards {
                second.extend(edge.iter().filter(|&u| u != v).map(|&u| Discard(u)));
            }
            vec![vec![Discard(*v)], second]
        }
        RuleK::Smallest(choice) => (0..choice.ordering.len())
            .map(|i| {
                let mut ops: Vec<Op> = choice.ordering[..i].iter().map(|&u| Discard(u)).collect();
                ops.push(Select(choice.ordering[i]));
                ops
            })
            .collect(),
    };
    branches.iter().map(|ops| child(inst, ops)).collect()
}

pub(crate) fn expand<'a>(inst: &Instance<'a>, options: RankKOptions) -> Result<Step<'a>, EngineError> {
    let rule = next_rule(inst);
    Ok(match rule {
        RuleK::Exhausted => Step::Halt { candidate: true },
        RuleK::EmptyEdge => Step::Halt { candidate: false },
        _ => Step::Branch(apply_rule(inst, &rule, options)?),
    })
}

/// The rank-k engine.
#[derive(Debug, Clone, Copy, Default)]
pub struct RankK {
    pub options: RankKOptions,
}

impl RankK {
    pub fn new(options: RankKOptions) -> Self {
        RankK { options }
    }
}

impl Enumerator for RankK {
    fn name(&self) -> &'static str {
        "rankk"
    }

    fn max_rank(&self) -> Option<usize> {
        None
    }

    fn enumerate(&self, h: &Hypergraph, sink: &mut dyn TransversalSink) -> Result<SearchStats, EngineError> {
        let options = self.options;
        depth_first(Instance::new(h), |inst: &Instance<'_>| expand(inst, options), sink, None)
    }
}

pub fn enumerate_rankk(h: &Hypergraph, sink: &mut dyn TransversalSink) -> Result<SearchStats, EngineError> {
    RankK::default().enumerate(h, sink)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::collect_sorted;
    use itertools::Itertools;

    fn hg(n: u32, edges: &[&[u32]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.iter().copied())).unwrap()
    }

    /// Minimal transversals by checking every subset.
    fn subsets_oracle(h: &Hypergraph) -> Vec<Vec<u32>> {
        let vs: Vec<u32> = h.vertices().collect();
        let mut out: Vec<Vec<u32>> = (0..1u32 << vs.len())
            .map(|mask| vs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect::<Vec<_>>())
            .filter(|s| {
                let hits = |s: &[u32]| h.edges().iter().all(|e| e.iter().any(|v| s.contains(v)));
                hits(s) && (0..s.len()).all(|i| !hits(&[&s[..i], &s[i + 1..]].concat()))
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn triangle() {
        let h = hg(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(collect_sorted(&RankK::default(), &h).unwrap(), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn complete_3_uniform_on_five() {
        let h = Hypergraph::new(5, (1..=5).combinations(3)).unwrap();
        let expected: Vec<Vec<u32>> = (1..=5).combinations(3).collect();
        assert_eq!(collect_sorted(&RankK::default(), &h).unwrap(), expected);
    }

    #[test]
    fn two_five_edges_sharing_a_pair() {
        let h = hg(8, &[&[1, 2, 3, 4, 5], &[1, 2, 6, 7, 8]]);
        let got = collect_sorted(&RankK::default(), &h).unwrap();
        assert_eq!(got.len(), 11);
        assert_eq!(got, subsets_oracle(&h));
        assert!(got.contains(&vec![1]) && got.contains(&vec![2]) && got.contains(&vec![4, 7]));
    }

    #[test]
    fn empty_and_edgeless() {
        let h = Hypergraph::new(3, [vec![], vec![1]]).unwrap();
        assert!(collect_sorted(&RankK::default(), &h).unwrap().is_empty());
        let h = hg(3, &[]);
        assert_eq!(collect_sorted(&RankK::default(), &h).unwrap(), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn rule_order() {
        let tag = |h: &Hypergraph| next_rule(&Instance::new(h)).tag();
        assert_eq!(tag(&hg(2, &[])), RuleKTag::H1);
        assert_eq!(tag(&Hypergraph::new(2, [vec![], vec![1, 2]]).unwrap()), RuleKTag::H2);
        assert_eq!(tag(&hg(3, &[&[1, 2]])), RuleKTag::R1);
        assert_eq!(
            next_rule(&Instance::new(&hg(4, &[&[1, 2, 3, 4], &[2, 3], &[1, 4]]))),
            RuleK::Subsumed { subset: vec![1, 4], superset: vec![1, 2, 3, 4] }
        );
        assert_eq!(tag(&hg(3, &[&[2], &[1, 3]])), RuleKTag::R3);
        assert_eq!(
            next_rule(&Instance::new(&hg(3, &[&[1, 2], &[2, 3]]))),
            RuleK::LoneVertex { v: 1, edge: vec![1, 2] }
        );
    }

    #[test]
    fn choose_b2_examples() {
        let pick = |h: &Hypergraph| choose_b2(&Instance::new(h)).unwrap();
        let c = pick(&hg(5, &[&[1, 2, 3], &[3, 4, 5], &[1, 4, 5], &[2, 3, 4], &[1, 2, 5]]));
        assert_eq!(c.e, vec![1, 2, 3]);
        assert_eq!(c.e_prime, vec![1, 2, 5]);
        assert_eq!(c.ordering, vec![1, 2, 3]);

        let c = pick(&hg(3, &[&[1, 2], &[2, 3], &[1, 3]]));
        assert_eq!((c.e, c.e_prime, c.ordering), (vec![1, 2], vec![1, 3], vec![1, 2]));

        let c = pick(&hg(5, &[&[1, 2, 3], &[1, 4, 5], &[2, 3, 4], &[2, 4, 5]]));
        assert_eq!(c.e_prime, vec![2, 3, 4]);
        assert_eq!(c.ordering, vec![2, 3, 1]);

        assert!(choose_b2(&Instance::new(&hg(2, &[&[1, 2]]))).is_err());
    }

    #[test]
    fn choose_b2_prefers_larger_overlap() {
        let h =
            hg(11, &[&[1, 2, 3, 4, 5], &[1, 2, 6, 7, 8], &[3, 6, 9, 10, 11], &[4, 7, 9, 10, 11], &[5, 8, 9, 10, 11]]);
        let c = choose_b2(&Instance::new(&h)).unwrap();
        assert_eq!(c.e, vec![1, 2, 3, 4, 5]);
        assert_eq!(c.e_prime, vec![1, 2, 6, 7, 8]);
        assert_eq!(c.ordering, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn b2_branches_partition_by_first_ordered_vertex() {
        let h = hg(6, &[&[1, 2, 3], &[3, 4, 5], &[1, 4, 6], &[2, 5, 6], &[1, 5, 3]]);
        let root = Instance::new(&h);
        let RuleK::Smallest(choice) = next_rule(&root) else { panic!("expected B2") };
        let children = apply_rule(&root, &RuleK::Smallest(choice.clone()), RankKOptions::default()).unwrap();
        let mut all = Vec::new();
        for (i, c) in children.into_iter().enumerate() {
            let mut out: Vec<Vec<u32>> = Vec::new();
            depth_first(
                c,
                |x: &Instance<'_>| expand(x, RankKOptions::default()),
                &mut |t: &[u32]| out.push(t.to_vec()),
                None,
            )
            .unwrap();
            for t in &out {
                let first = choice.ordering.iter().position(|v| t.contains(v));
                assert_eq!(first, Some(i), "{t:?} in branch {i}");
            }
            all.extend(out);
        }
        all.sort();
        let n = all.len();
        all.dedup();
        assert_eq!(all.len(), n);
        assert_eq!(all, subsets_oracle(&h));
    }

    #[test]
    fn b1_discards_only_prune() {
        let lean = RankK::new(RankKOptions { minimality_discards: false });
        for h in [
            hg(8, &[&[1, 2, 3, 4, 5], &[1, 2, 6, 7, 8]]),
            hg(6, &[&[1, 2, 3], &[3, 4], &[4, 5, 6], &[1, 6]]),
            hg(7, &[&[1, 2], &[2, 3, 4], &[4, 5, 6, 7]]),
        ] {
            let full = collect_sorted(&RankK::default(), &h).unwrap();
            assert_eq!(collect_sorted(&lean, &h).unwrap(), full);
            let a = RankK::default().enumerate(&h, &mut |_: &[u32]| {}).unwrap();
            let b = lean.enumerate(&h, &mut |_: &[u32]| {}).unwrap();
            assert!(a.nodes <= b.nodes);
        }
    }

    #[test]
    fn matches_subsets_oracle_on_mixed_ranks() {
        for h in [
            hg(7, &[&[1, 2, 3, 4], &[1, 5, 6, 7]]),
            hg(6, &[&[1, 2], &[2, 3, 4, 5, 6], &[1, 6], &[3, 4]]),
            hg(6, &[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[4, 5, 6], &[1, 6]]),
        ] {
            assert_eq!(collect_sorted(&RankK::default(), &h).unwrap(), subsets_oracle(&h));
        }
    }
}

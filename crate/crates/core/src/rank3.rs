//! Branching enumeration of minimal transversals for hypergraphs of rank at
//! most 3.
//!
//! At every node the first applicable rule fires:
//!
//! | tag  | prerequisite                              | action                                   |
//! |------|-------------------------------------------|------------------------------------------|
//! | 0.0  | an empty edge                              | backtrack                                |
//! | 0.1  | no edges                                   | emit `S` if it is minimal                |
//! | 1.0  | a degree-0 vertex                          | discard it                               |
//! | 1.1  | an edge inside a 3-edge                    | drop the 3-edge                          |
//! | 1.2  | a 1-edge `{v}`                             | select `v`                               |
//! | 2.1  | `d(v)=1`, its edge is `{v,u}`              | `v`+discard `u` / discard `v`+`u`        |
//! | 2.2  | a 3-edge of three degree-1 vertices       | one branch per member                    |
//! | 2.3  | `d(v)=1`, its edge `{v,u,w}`, `d(u)>=2`    | `v`+discard `u,w` / discard `v`          |
//! | 3.x  | some 2-edge; pivot by `(d_2, d)`           | `v` / discard `v`+select its 2-partners  |
//! | 4.1  | 3-uniform, max degree `>= 3`               | `v` / discard `v`                        |
//! | 4.2  | 2-regular, `u` shares both edges with `v`  | `v`+discard `u` / discard `v`            |
//! | 4.3  | 2-regular otherwise                        | `v,u1`+discard `u2,w2` / `v`+discard `u1` / discard `v` |
//!
//! Ties are broken by smallest vertex id, then canonical edge order.

use std::collections::HashSet;

use crate::analysis::{measure, Weights};
use crate::hypergraph::{Edge, Hypergraph, Vertex};
use crate::instance::Instance;
use crate::search::{depth_first, EngineError, Enumerator, SearchStats, Step, TransversalSink};

pub const MAX_RANK: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(non_camel_case_types)]
pub enum RuleTag {
    R0_0,
    R0_1,
    R1_0,
    R1_1,
    R1_2,
    R2_1,
    R2_2,
    R2_3,
    R3_1,
    R3_2,
    R3_3,
    R4_1,
    R4_2,
    R4_3,
}

/// A rule together with the pivots it acts on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    EmptyEdge,
    Exhausted,
    Isolated {
        v: Vertex,
    },
    /// `subset` is contained in the 3-edge `superset`, which is dropped.
    Subsumed {
        subset: Edge,
        superset: Edge,
    },
    Unit {
        v: Vertex,
    },
    LonePair {
        v: Vertex,
        u: Vertex,
    },
    LoneTriple {
        edge: [Vertex; 3],
    },
    LoneOpen {
        v: Vertex,
        u: Vertex,
        w: Vertex,
    },
    /// Some 2-edge exists; `partners` are the other ends of the 2-edges at
    /// `v`, ascending. The tag depends on how many there are.
    Pairs {
        v: Vertex,
        partners: Vec<Vertex>,
    },
    HighDegree {
        v: Vertex,
        degree: usize,
    },
    SharedPair {
        v: Vertex,
        u: Vertex,
    },
    Disjoint {
        v: Vertex,
        u1: Vertex,
        w1: Vertex,
        u2: Vertex,
        w2: Vertex,
    },
}

impl Rule {
    pub fn tag(&self) -> RuleTag {
        match self {
            Rule::EmptyEdge => RuleTag::R0_0,
            Rule::Exhausted => RuleTag::R0_1,
            Rule::Isolated { .. } => RuleTag::R1_0,
            Rule::Subsumed { .. } => RuleTag::R1_1,
            Rule::Unit { .. } => RuleTag::R1_2,
            Rule::LonePair { .. } => RuleTag::R2_1,
            Rule::LoneTriple { .. } => RuleTag::R2_2,
            Rule::LoneOpen { .. } => RuleTag::R2_3,
            Rule::Pairs { partners, .. } => match partners.len() {
                1 => RuleTag::R3_1,
                2 => RuleTag::R3_2,
                _ => RuleTag::R3_3,
            },
            Rule::HighDegree { .. } => RuleTag::R4_1,
            Rule::SharedPair { .. } => RuleTag::R4_2,
            Rule::Disjoint { .. } => RuleTag::R4_3,
        }
    }

    /// The branching vertex, if the rule has one.
    pub fn pivot(&self) -> Option<Vertex> {
        match *self {
            Rule::Isolated { v }
            | Rule::Unit { v }
            | Rule::LonePair { v, .. }
            | Rule::LoneOpen { v, .. }
            | Rule::Pairs { v, .. }
            | Rule::HighDegree { v, .. }
            | Rule::SharedPair { v, .. }
            | Rule::Disjoint { v, .. } => Some(v),
            Rule::LoneTriple { edge } => Some(edge[0]),
            _ => None,
        }
    }
}

fn rank_error(rank: usize) -> EngineError {
    EngineError::RankTooHigh { engine: "rank3", rank, max: MAX_RANK }
}

/// Picks the first applicable rule for `inst`.
pub fn next_rule(inst: &Instance<'_>) -> Result<Rule, EngineError> {
    let h = inst.working();
    let rank = h.rank();
    if rank > MAX_RANK {
        return Err(rank_error(rank));
    }
    let edges = h.edges();
    if h.has_empty_edge() {
        return Ok(Rule::EmptyEdge);
    }
    if edges.is_empty() {
        return Ok(Rule::Exhausted);
    }

    let deg = h.degrees();
    if let Some(v) = h.vertices().find(|&v| deg[v as usize] == 0) {
        return Ok(Rule::Isolated { v });
    }

    if let Some((subset, superset)) = find_subsumed_triple(edges) {
        return Ok(Rule::Subsumed { subset, superset });
    }

    if let Some(e) = edges.iter().find(|e| e.len() == 1) {
        return Ok(Rule::Unit { v: e[0] });
    }

    if let Some(v) = h.vertices().find(|&v| deg[v as usize] == 1) {
        let e = edges.iter().find(|e| e.binary_search(&v).is_ok()).expect("degree-1 vertex has an edge");
        let others: Vec<Vertex> = e.iter().copied().filter(|&x| x != v).collect();
        return Ok(match *others.as_slice() {
            [u] => Rule::LonePair { v, u },
            [a, b] if deg[a as usize] == 1 && deg[b as usize] == 1 => Rule::LoneTriple { edge: [e[0], e[1], e[2]] },
            [a, b] => {
                let (u, w) = if deg[a as usize] >= 2 { (a, b) } else { (b, a) };
                Rule::LoneOpen { v, u, w }
            }
            _ => unreachable!("edge sizes are 2 or 3 here"),
        });
    }

    let mut deg2 = vec![0usize; deg.len()];
    for e in edges.iter().filter(|e| e.len() == 2) {
        deg2[e[0] as usize] += 1;
        deg2[e[1] as usize] += 1;
    }
    if deg2.iter().any(|&d| d > 0) {
        let v = first_max_by_key(h.vertices(), |v| (deg2[v as usize], deg[v as usize])).expect("a 2-edge has vertices");
        let partners: Vec<Vertex> = edges
            .iter()
            .filter(|e| e.len() == 2 && e.binary_search(&v).is_ok())
            .map(|e| if e[0] == v { e[1] } else { e[0] })
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        return Ok(Rule::Pairs { v, partners });
    }

    // every edge has size 3 and every vertex degree >= 2
    let v = first_max_by_key(h.vertices(), |v| deg[v as usize]).expect("non-empty");
    let degree = deg[v as usize];
    if degree >= 3 {
        return Ok(Rule::HighDegree { v, degree });
    }
    let mut incident = edges.iter().filter(|e| e.binary_search(&v).is_ok());
    let (e1, e2) = (incident.next().expect("degree 2"), incident.next().expect("degree 2"));
    if let Some(&u) = e1.iter().find(|&&x| x != v && e2.binary_search(&x).is_ok()) {
        return Ok(Rule::SharedPair { v, u });
    }
    let rest = |e: &Edge| {
        let mut it = e.iter().copied().filter(|&x| x != v);
        (it.next().unwrap(), it.next().unwrap())
    };
    let (u1, w1) = rest(e1);
    let (u2, w2) = rest(e2);
    Ok(Rule::Disjoint { v, u1, w1, u2, w2 })
}

/// The first vertex (in iteration order) attaining the maximum key.
pub(crate) fn first_max_by_key<K: Ord>(
    vertices: impl Iterator<Item = Vertex>,
    key: impl Fn(Vertex) -> K,
) -> Option<Vertex> {
    let mut best: Option<(Vertex, K)> = None;
    for v in vertices {
        let k = key(v);
        if best.as_ref().is_none_or(|(_, b)| k > *b) {
            best = Some((v, k));
        }
    }
    best.map(|(v, _)| v)
}

/// First 3-edge, in canonical order, that contains another edge.
fn find_subsumed_triple(edges: &[Edge]) -> Option<(Edge, Edge)> {
    let small: HashSet<&[Vertex]> = edges.iter().filter(|e| e.len() < 3).map(Vec::as_slice).collect();
    if small.is_empty() {
        return None;
    }
    edges.iter().filter(|e| e.len() == 3).find_map(|e| {
        let candidates = [vec![e[0], e[1]], vec![e[0], e[2]], vec![e[1], e[2]], vec![e[0]], vec![e[1]], vec![e[2]]];
        candidates.into_iter().find(|c| small.contains(c.as_slice())).map(|c| (c, e.clone()))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rank3Options {
    /// Discard the companions of the selected vertex that would rob it of
    /// its private edge (rules 2.1, 2.3, 4.2, 4.3). Turning this off keeps
    /// the output unchanged but grows the search tree.
    pub minimality_discards: bool,
}

impl Default for Rank3Options {
    fn default() -> Self {
        Rank3Options { minimality_discards: true }
    }
}

pub(crate) enum Op {
    Select(Vertex),
    Discard(Vertex),
}

pub(crate) fn child<'a>(inst: &Instance<'a>, ops: &[Op]) -> Result<Instance<'a>, EngineError> {
    let mut next = inst.clone();
    for op in ops {
        match *op {
            Op::Select(v) => next.select_in_place(v),
            Op::Discard(v) => next.discard_in_place(v),
        }
        .map_err(|e| EngineError::Invariant(format!("branch action: {e}")))?;
    }
    Ok(next)
}

/// Child instances of `rule`, in branch order.
pub fn apply_rule<'a>(
    inst: &Instance<'a>,
    rule: &Rule,
    options: Rank3Options,
) -> Result<Vec<Instance<'a>>, EngineError> {
    use Op::{Discard, Select};
    let keep = options.minimality_discards;
    let branches: Vec<Vec<Op>> = match rule {
        Rule::EmptyEdge | Rule::Exhausted => Vec::new(),
        Rule::Isolated { v } => vec![vec![Discard(*v)]],
        Rule::Subsumed { superset, .. } => {
            let mut next = inst.clone();
            let idx = next.working().edges().binary_search(superset).expect("subsumed edge present");
            next.remove_edge(idx);
            return Ok(vec![next]);
        }
        Rule::Unit { v } => vec![vec![Select(*v)]],
        Rule::LonePair { v, u } => {
            let mut first = vec![Select(*v)];
            if keep {
                first.push(Discard(*u));
            }
            vec![first, vec![Discard(*v), Select(*u)]]
        }
        Rule::LoneTriple { edge } => edge
            .iter()
            .map(|&x| {
                let mut ops = vec![Select(x)];
                ops.extend(edge.iter().filter(|&&y| y != x).map(|&y| Discard(y)));
                ops
            })
            .collect(),
        Rule::LoneOpen { v, u, w } => {
            let mut first = vec![Select(*v)];
            if keep {
                first.extend([Discard(*u), Discard(*w)]);
            }
            vec![first, vec![Discard(*v)]]
        }
        Rule::Pairs { v, partners } => {
            let mut second = vec![Discard(*v)];
            second.extend(partners.iter().map(|&u| Select(u)));
            vec![vec![Select(*v)], second]
        }
        Rule::HighDegree { v, .. } => vec![vec![Select(*v)], vec![Discard(*v)]],
        Rule::SharedPair { v, u } => {
            let mut first = vec![Select(*v)];
            if keep {
                first.push(Discard(*u));
            }
            vec![first, vec![Discard(*v)]]
        }
        Rule::Disjoint { v, u1, u2, w2, .. } => {
            let mut first = vec![Select(*v), Select(*u1)];
            if keep {
                first.extend([Discard(*u2), Discard(*w2)]);
            }
            vec![first, vec![Select(*v), Discard(*u1)], vec![Discard(*v)]]
        }
    };
    branches.iter().map(|ops| child(inst, ops)).collect()
}

fn expand<'a>(inst: &Instance<'a>, options: Rank3Options) -> Result<Step<'a>, EngineError> {
    let rule = next_rule(inst)?;
    Ok(match rule {
        Rule::EmptyEdge => Step::Halt { candidate: false },
        Rule::Exhausted => Step::Halt { candidate: true },
        _ => Step::Branch(apply_rule(inst, &rule, options)?),
    })
}

/// Outcome of checking `sum_i 2^{mu(child_i)} <= 2^{mu(parent)}` at every
/// branching node of a run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MeasureAudit {
    pub checked: u64,
    pub violations: u64,
    /// Largest `sum_i 2^{mu(child_i) - mu(parent)}` seen.
    pub worst_ratio: f64,
    /// Largest `sum_i 2^{mu(child_i)} - 2^{mu(parent)}` seen.
    pub worst_excess: f64,
    /// Parent measure at the node attaining `worst_ratio`.
    pub worst_parent_measure: f64,
}

impl MeasureAudit {
    pub const TOLERANCE: f64 = 1e-9;

    pub fn holds(&self) -> bool {
        self.violations == 0
    }

    fn record(&mut self, parent: f64, children: &[f64]) {
        self.checked += 1;
        let ratio: f64 = children.iter().map(|&c| (c - parent).exp2()).sum();
        let excess: f64 = children.iter().map(|&c| c.exp2()).sum::<f64>() - parent.exp2();
        if ratio > 1.0 + Self::TOLERANCE {
            self.violations += 1;
        }
        if self.checked == 1 || ratio > self.worst_ratio {
            self.worst_ratio = ratio;
            self.worst_parent_measure = parent;
        }
        if self.checked == 1 || excess > self.worst_excess {
            self.worst_excess = excess;
        }
    }
}

/// The rank-3 engine.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rank3 {
    pub options: Rank3Options,
}

impl Rank3 {
    pub fn new(options: Rank3Options) -> Self {
        Rank3 { options }
    }

    fn run<'a>(
        &self,
        h: &'a Hypergraph,
        sink: &mut dyn TransversalSink,
        audit: Option<(&Weights, &mut MeasureAudit)>,
    ) -> Result<SearchStats, EngineError> {
        self.check_rank(h)?;
        let options = self.options;
        let expand = |inst: &Instance<'a>| expand(inst, options);
        match audit {
            None => depth_first(Instance::new(h), expand, sink, None),
            Some((weights, audit)) => {
                let mut observe = |parent: &Instance<'_>, children: &[Instance<'_>]| {
                    let mu = |i: &Instance<'_>| measure(i.working(), weights).expect("rank checked");
                    let kids: Vec<f64> = children.iter().map(mu).collect();
                    audit.record(mu(parent), &kids);
                };
                depth_first(Instance::new(h), expand, sink, Some(&mut observe))
            }
        }
    }

    /// Runs the engine while checking the measure inequality at every
    /// branching node with `weights`.
    pub fn enumerate_audited(
        &self,
        h: &Hypergraph,
        weights: &Weights,
        sink: &mut dyn TransversalSink,
    ) -> Result<(SearchStats, MeasureAudit), EngineError> {
        let mut audit = MeasureAudit::default();
        let stats = self.run(h, sink, Some((weights, &mut audit)))?;
        Ok((stats, audit))
    }
}

impl Enumerator for Rank3 {
    fn name(&self) -> &'static str {
        "rank3"
    }

    fn max_rank(&self) -> Option<usize> {
        Some(MAX_RANK)
    }

    fn enumerate(&self, h: &Hypergraph, sink: &mut dyn TransversalSink) -> Result<SearchStats, EngineError> {
        self.run(h, sink, None)
    }
}

pub fn enumerate_rank3(h: &Hypergraph, sink: &mut dyn TransversalSink) -> Result<SearchStats, EngineError> {
    Rank3::default().enumerate(h, sink)
}

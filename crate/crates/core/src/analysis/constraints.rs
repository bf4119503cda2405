//! Mechanical check of the rank-3 weight table.
//!
//! Every branching rule of the rank-3 engine contributes a family of
//! inequalities `sum_i 2^{-eta_i} <= 1`, one per combination of the degree
//! and small-edge parameters the rule's analysis ranges over. The two
//! structural families (`deltas`, `rule1_2`) are plain linear inequalities.

use std::fmt;

use itertools::iproduct;

use super::weights::Weights;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Deltas,
    Rule1_2,
    C21,
    Rule2_2,
    Rule2_3,
    C31,
    C32,
    Rule3_3,
    C41,
    Rule4_2,
    Rule4_3,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Deltas,
        Family::Rule1_2,
        Family::C21,
        Family::Rule2_2,
        Family::Rule2_3,
        Family::C31,
        Family::C32,
        Family::Rule3_3,
        Family::C41,
        Family::Rule4_2,
        Family::Rule4_3,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::Deltas => "deltas",
            Family::Rule1_2 => "rule1_2",
            Family::C21 => "c21",
            Family::Rule2_2 => "rule2_2",
            Family::Rule2_3 => "rule2_3",
            Family::C31 => "c31",
            Family::C32 => "c32",
            Family::Rule3_3 => "rule3_3",
            Family::C41 => "c41",
            Family::Rule4_2 => "rule4_2",
            Family::Rule4_3 => "rule4_3",
        }
    }

    /// Names of the parameters in [`ConstraintRecord::params`].
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Deltas | Family::Rule1_2 => &["i"],
            Family::C21 => &["d(u)", "m2"],
            Family::C31 => &["d(u1)", "m2"],
            Family::C32 => &["d(v)", "d(u1)", "d(u2)", "m2"],
            Family::Rule3_3 => &["d2(v)", "m2", "d(u1)", "d(u2)", "d(u3)"],
            Family::C41 => &["d(v)"],
            Family::Rule2_2 | Family::Rule2_3 | Family::Rule4_2 | Family::Rule4_3 => &[],
        }
    }

    /// Branching families bound `sum 2^{-eta}` by 1; the others are linear.
    pub fn is_branching(self) -> bool {
        !matches!(self, Family::Deltas | Family::Rule1_2)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// One evaluated inequality.
///
/// For branching families `lhs` is `sum 2^{-eta_i}` and `slack = 1 - lhs`.
/// For linear families `lhs` is the largest violation amount (non-positive
/// when satisfied) and `slack = -lhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintRecord {
    pub family: Family,
    pub params: Vec<usize>,
    /// Which half of a two-part linear constraint (`omega` / `psi`).
    pub part: Option<&'static str>,
    pub lhs: f64,
    pub slack: f64,
    pub pass: bool,
}

impl ConstraintRecord {
    pub fn describe_params(&self) -> String {
        let mut parts: Vec<String> =
            self.family.param_names().iter().zip(&self.params).map(|(n, v)| format!("{n}={v}")).collect();
        if let Some(p) = self.part {
            parts.push(p.to_string());
        }
        parts.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilySummary {
    pub family: Family,
    pub tuples: usize,
    pub failures: usize,
    pub max_lhs: f64,
    pub min_slack: f64,
}

impl FamilySummary {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintReport {
    pub tolerance: f64,
    pub records: Vec<ConstraintRecord>,
}

impl ConstraintReport {
    pub fn pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    /// Largest `sum 2^{-eta}` over all branching tuples.
    pub fn max_lhs(&self) -> f64 {
        self.records.iter().filter(|r| r.family.is_branching()).map(|r| r.lhs).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn family(&self, family: Family) -> impl Iterator<Item = &ConstraintRecord> {
        self.records.iter().filter(move |r| r.family == family)
    }

    pub fn summaries(&self) -> Vec<FamilySummary> {
        Family::ALL
            .iter()
            .map(|&family| {
                let mut s = FamilySummary {
                    family,
                    tuples: 0,
                    failures: 0,
                    max_lhs: f64::NEG_INFINITY,
                    min_slack: f64::INFINITY,
                };
                for r in self.family(family) {
                    s.tuples += 1;
                    s.failures += usize::from(!r.pass);
                    s.max_lhs = s.max_lhs.max(r.lhs);
                    s.min_slack = s.min_slack.min(r.slack);
                }
                s
            })
            .collect()
    }

    /// Branching tuples whose slack is at most `within` (tight constraints).
    pub fn tight(&self, within: f64) -> impl Iterator<Item = &ConstraintRecord> {
        self.records.iter().filter(move |r| r.family.is_branching() && r.slack <= within)
    }

    pub fn find(&self, family: Family, params: &[usize]) -> Option<&ConstraintRecord> {
        self.records.iter().find(|r| r.family == family && r.params == params)
    }
}

struct Builder {
    tolerance: f64,
    records: Vec<ConstraintRecord>,
}

impl Builder {
    fn branching(&mut self, family: Family, params: Vec<usize>, exponents: &[f64]) {
        let lhs: f64 = exponents.iter().map(|&x| x.exp2()).sum();
        self.records.push(ConstraintRecord {
            family,
            params,
            part: None,
            lhs,
            slack: 1.0 - lhs,
            pass: lhs <= 1.0 + self.tolerance,
        });
    }

    fn linear(&mut self, family: Family, params: Vec<usize>, part: Option<&'static str>, violation: f64) {
        self.records.push(ConstraintRecord {
            family,
            params,
            part,
            lhs: violation,
            slack: -violation,
            pass: violation <= self.tolerance,
        });
    }
}

/// Evaluates every constraint family on `w`.
pub fn verify_weights(w: &Weights, tolerance: f64) -> ConstraintReport {
    let mut b = Builder { tolerance, records: Vec::new() };
    let om = |i: usize| w.omega(i);
    let psi = |i: usize| w.psi(i);
    let dom = |i: usize| w.delta_omega(i);
    let dpsi = |i: usize| w.delta_psi(i);

    // 0 <= d_omega(i+1) <= d_omega(i), 0 >= d_psi(i+1) >= d_psi(i)
    for i in 1..=5 {
        let omega_violation = (-dom(i + 1)).max(dom(i + 1) - dom(i));
        b.linear(Family::Deltas, vec![i], Some("omega"), omega_violation);
        let psi_violation = dpsi(i + 1).max(dpsi(i) - dpsi(i + 1));
        b.linear(Family::Deltas, vec![i], Some("psi"), psi_violation);
    }

    // psi(i) - psi(0) >= -omega_i
    for i in 1..=6 {
        b.linear(Family::Rule1_2, vec![i], None, psi(0) - psi(i) - om(i));
    }

    for (du, m) in iproduct!(1..=6, 1..=6) {
        b.branching(
            Family::C21,
            vec![du, m],
            &[-om(1) - om(du) - dpsi(m), -om(1) - om(du) - psi(m) + psi(m.saturating_sub(du))],
        );
    }

    b.branching(Family::Rule2_2, vec![], &[-3.0 * om(1); 3]);

    b.branching(Family::Rule2_3, vec![], &[-2.0 * om(1) - om(2), -om(1)]);

    for (d, m) in iproduct!(2..=6, 1..=6) {
        b.branching(Family::C31, vec![d, m], &[-om(d) - dom(d) - dpsi(m), -2.0 * om(d) - psi(m) + psi(m + d - 2)]);
    }

    for (dv, du1, du2, m) in iproduct!(2..=6, 2..=6, 2..=6, 2..=6) {
        b.branching(
            Family::C32,
            vec![dv, du1, du2, m],
            &[
                -om(dv) - dom(du1) - dom(du2) - psi(m) + psi(m - 2),
                -om(dv) - om(du1) - om(du2) - psi(m) + psi(m.saturating_sub(4) + dv - 2),
            ],
        );
    }

    for d2v in 3..=6 {
        for (m, du1, du2, du3) in iproduct!(d2v..=6, 2..=6, 2..=6, 2..=6) {
            let du = [du1, du2, du3];
            let sum_dom: f64 = du.iter().map(|&d| dom(d)).sum();
            let sum_om: f64 = du.iter().map(|&d| om(d)).sum();
            let sum_deg: usize = du.iter().sum();
            b.branching(
                Family::Rule3_3,
                vec![d2v, m, du1, du2, du3],
                &[
                    -om(d2v) - sum_dom - psi(m) + psi(m - d2v),
                    -om(d2v) - sum_om - (d2v - 3) as f64 * om(2) - psi(m) + psi(m.saturating_sub(sum_deg)),
                ],
            );
        }
    }

    for d in 3..=6 {
        b.branching(Family::C41, vec![d], &[-om(d) - 2.0 * d as f64 * dom(d), -om(d) - psi(0) + psi(d)]);
    }

    b.branching(Family::Rule4_2, vec![], &[-2.0 * om(2) - 2.0 * dom(2), -om(2) - psi(0) + psi(2)]);

    b.branching(
        Family::Rule4_3,
        vec![],
        &[-4.0 * om(2) - dom(2) + dpsi(1), -2.0 * om(2) - 3.0 * dom(2) + dpsi(1), -om(2) + dpsi(2)],
    );

    ConstraintReport { tolerance, records: b.records }
}

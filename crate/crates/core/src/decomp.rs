//! Catalogue of the colon and sum decompositions used by the inductions,
//! each checked by building the ideal, applying the pivot and matching the
//! connected components of the result against the expected factors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::FamilyParams;
use crate::graph::{LabeledGraph, VertexLabel};
use crate::ideal::{edge_ideal, Monomial};
use crate::iso::is_isomorphic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    /// `(I : m)`
    Colon,
    /// `(I, x)`
    Add,
}

/// Which family a rule starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Base {
    TriSnake,
    TriSnakeStar,
    TriSnakeStarStar,
    Ouroboros,
    BristledTriSnake,
    BristledTriSnakeStar,
    BristledTriSnakeStarStar,
    BristledOuroboros,
}

impl Base {
    pub fn is_bristled(self) -> bool {
        matches!(
            self,
            Base::BristledTriSnake
                | Base::BristledTriSnakeStar
                | Base::BristledTriSnakeStarStar
                | Base::BristledOuroboros
        )
    }

    pub fn family(self, n: i64, p: i64, q: i64) -> FamilyParams {
        use FamilyParams as F;
        match self {
            Base::TriSnake => F::TriSnake { n, p },
            Base::TriSnakeStar => F::TriSnakeStar { n, p },
            Base::TriSnakeStarStar => F::TriSnakeStarStar { n, p },
            Base::Ouroboros => F::Ouroboros { n, p },
            Base::BristledTriSnake => F::BristledTriSnake { n, p, q },
            Base::BristledTriSnakeStar => F::BristledTriSnakeStar { n, p, q },
            Base::BristledTriSnakeStarStar => F::BristledTriSnakeStarStar { n, p, q },
            Base::BristledOuroboros => F::BristledOuroboros { n, p, q },
        }
    }
}

/// One catalogued decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub id: &'static str,
    pub base: Base,
    pub kind: RuleKind,
    /// Smallest `n` the rule is used for.
    pub min_n: i64,
    /// Human-readable statement.
    pub statement: &'static str,
}

const fn rule(id: &'static str, base: Base, kind: RuleKind, min_n: i64, statement: &'static str) -> Rule {
    Rule { id, base, kind, min_n, statement }
}

use Base::*;
use RuleKind::*;

/// All catalogued rules.
pub const CATALOGUE: [Rule; 20] = [
    rule("R1", TriSnakeStar, Colon, 1, "T*_n : x_n = T*_{n-3} (x) K[{x_n} u B_{n+1}]"),
    rule("R2", TriSnakeStar, Add, 1, "(T*_n, x_n) = T*_{n-2} (x) S_{2p}"),
    rule("R3", TriSnake, Colon, 1, "T_n : x_n = T*_{n-3} (x) K[x_n]"),
    rule("R4", TriSnake, Add, 1, "(T_n, x_n) = T*_{n-2} (x) S_p"),
    rule("R5", BristledTriSnakeStar, Colon, 1, "BT*_n : x_{n+1} = BT*_{n-2} (x) K[{x_{n+1}} u A_n u C_n u C_{n+1}]"),
    rule("R6", BristledTriSnakeStar, Add, 1, "(BT*_n, x_{n+1}) = BT*_{n-1} (x) K[A_{n+1}] (x) p S_q"),
    rule("R7", BristledTriSnakeStar, Colon, 1, "BT*_n : y_{(n+1)1}..y_{(n+1)p} = BT*_{n-1} (x) K[A_{n+1} u B_{n+1}]"),
    rule("R8", BristledTriSnake, Colon, 1, "BT_n : x_{n+1} = BT*_{n-2} (x) K[{x_{n+1}} u A_n u C_n]"),
    rule("R9", BristledTriSnake, Add, 1, "(BT_n, x_{n+1}) = BT*_{n-1} (x) K[A_{n+1}]"),
    rule("R10", BristledTriSnake, Colon, 1, "BT_n : x_{(n+1)1}..x_{(n+1)q} = BT*_{n-1} (x) K[A_{n+1}]"),
    rule("R11", TriSnakeStarStar, Colon, 1, "T**_n : x_n = T**_{n-3} (x) K[{x_n} u B_{n+1}]"),
    rule("R12", TriSnakeStarStar, Add, 1, "(T**_n, x_n) = T**_{n-2} (x) S_{2p}"),
    rule("R13", Ouroboros, Colon, 3, "O_n : x_n = T**_{n-4} (x) K[x_n]"),
    rule("R14", Ouroboros, Add, 3, "(O_n, x_n) = T**_{n-2}"),
    rule(
        "R15",
        BristledTriSnakeStarStar,
        Colon,
        1,
        "BT**_n : x_{n+1} = BT**_{n-2} (x) K[{x_{n+1}} u A_n u C_n u C_{n+1}]",
    ),
    rule("R16", BristledTriSnakeStarStar, Add, 1, "(BT**_n, x_{n+1}) = BT**_{n-1} (x) K[A_{n+1}] (x) p S_q"),
    rule(
        "R17",
        BristledTriSnakeStarStar,
        Colon,
        1,
        "BT**_n : y_{(n+1)1}..y_{(n+1)p} = BT**_{n-1} (x) K[A_{n+1} u B_{n+1}]",
    ),
    rule("R18", BristledOuroboros, Colon, 3, "BO_n : x_n = BT**_{n-4} (x) K[{x_n} u A_1 u A_{n-1} u C_{n-1} u C_n]"),
    rule("R19", BristledOuroboros, Add, 3, "(BO_n, x_n) = BT**_{n-2} (x) K[A_n]"),
    rule("R20", BristledOuroboros, Colon, 3, "BO_n : x_{n1}..x_{nq} = BT**_{n-2} (x) K[A_n]"),
];

pub fn find_rule(id: &str) -> Result<&'static Rule> {
    CATALOGUE
        .iter()
        .find(|r| r.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::RuleInapplicable { rule: id.to_string(), reason: "no such rule".into() })
}

/// A rule at concrete parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleInstance {
    pub family: FamilyParams,
    pub pivot: Vec<VertexLabel>,
    pub factors: Vec<FamilyParams>,
    pub free: Vec<VertexLabel>,
}

fn x(i: i64) -> VertexLabel {
    VertexLabel::PathVertex(i as u32)
}

fn a_set(i: i64, q: i64) -> Vec<VertexLabel> {
    (1..=q).map(|t| VertexLabel::PathBristle(i as u32, t as u32)).collect()
}

fn b_set(j: i64, p: i64) -> Vec<VertexLabel> {
    (1..=p).map(|k| VertexLabel::Apex(j as u32, k as u32)).collect()
}

fn c_set(j: i64, p: i64, q: i64) -> Vec<VertexLabel> {
    (1..=p).flat_map(|k| (1..=q).map(move |t| VertexLabel::ApexBristle(j as u32, k as u32, t as u32))).collect()
}

impl Rule {
    /// Concrete pivot, expected factors and expected free labels.
    pub fn instantiate(&self, n: i64, p: i64, q: i64) -> Result<RuleInstance> {
        use FamilyParams as F;
        let inapplicable = |reason: String| Err(Error::RuleInapplicable { rule: self.id.to_string(), reason });
        if n < self.min_n || p < 1 || (self.base.is_bristled() && q < 1) {
            return inapplicable(format!("needs n >= {}, p >= 1, q >= 1; got n={n}, p={p}, q={q}", self.min_n));
        }
        let family = self.base.family(n, p, q);
        let star = |u: i64| F::Star { u };
        let copies = |count: i64, f: FamilyParams| vec![f; count as usize];
        let cat = |parts: Vec<Vec<VertexLabel>>| parts.concat();
        let (pivot, factors, free) = match self.id {
            "R1" => (vec![x(n)], vec![F::TriSnakeStar { n: n - 3, p }], cat(vec![vec![x(n)], b_set(n + 1, p)])),
            "R2" => (vec![x(n)], vec![F::TriSnakeStar { n: n - 2, p }, star(2 * p)], vec![]),
            "R3" => (vec![x(n)], vec![F::TriSnakeStar { n: n - 3, p }], vec![x(n)]),
            "R4" => (vec![x(n)], vec![F::TriSnakeStar { n: n - 2, p }, star(p)], vec![]),
            "R5" => (
                vec![x(n + 1)],
                vec![F::BristledTriSnakeStar { n: n - 2, p, q }],
                cat(vec![vec![x(n + 1)], a_set(n, q), c_set(n, p, q), c_set(n + 1, p, q)]),
            ),
            "R6" => (
                vec![x(n + 1)],
                cat_f(vec![vec![F::BristledTriSnakeStar { n: n - 1, p, q }], copies(p, star(q))]),
                a_set(n + 1, q),
            ),
            "R7" => (
                b_set(n + 1, p),
                vec![F::BristledTriSnakeStar { n: n - 1, p, q }],
                cat(vec![a_set(n + 1, q), b_set(n + 1, p)]),
            ),
            "R8" => (
                vec![x(n + 1)],
                vec![F::BristledTriSnakeStar { n: n - 2, p, q }],
                cat(vec![vec![x(n + 1)], a_set(n, q), c_set(n, p, q)]),
            ),
            "R9" => (vec![x(n + 1)], vec![F::BristledTriSnakeStar { n: n - 1, p, q }], a_set(n + 1, q)),
            "R10" => (a_set(n + 1, q), vec![F::BristledTriSnakeStar { n: n - 1, p, q }], a_set(n + 1, q)),
            "R11" => (vec![x(n)], vec![F::TriSnakeStarStar { n: n - 3, p }], cat(vec![vec![x(n)], b_set(n + 1, p)])),
            "R12" => (vec![x(n)], vec![F::TriSnakeStarStar { n: n - 2, p }, star(2 * p)], vec![]),
            "R13" => (vec![x(n)], vec![F::TriSnakeStarStar { n: n - 4, p }], vec![x(n)]),
            "R14" => (vec![x(n)], vec![F::TriSnakeStarStar { n: n - 2, p }], vec![]),
            "R15" => (
                vec![x(n + 1)],
                vec![F::BristledTriSnakeStarStar { n: n - 2, p, q }],
                cat(vec![vec![x(n + 1)], a_set(n, q), c_set(n, p, q), c_set(n + 1, p, q)]),
            ),
            "R16" => (
                vec![x(n + 1)],
                cat_f(vec![vec![F::BristledTriSnakeStarStar { n: n - 1, p, q }], copies(p, star(q))]),
                a_set(n + 1, q),
            ),
            "R17" => (
                b_set(n + 1, p),
                vec![F::BristledTriSnakeStarStar { n: n - 1, p, q }],
                cat(vec![a_set(n + 1, q), b_set(n + 1, p)]),
            ),
            "R18" => (
                vec![x(n)],
                vec![F::BristledTriSnakeStarStar { n: n - 4, p, q }],
                cat(vec![vec![x(n)], a_set(1, q), a_set(n - 1, q), c_set(n - 1, p, q), c_set(n, p, q)]),
            ),
            "R19" => (vec![x(n)], vec![F::BristledTriSnakeStarStar { n: n - 2, p, q }], a_set(n, q)),
            "R20" => (a_set(n, q), vec![F::BristledTriSnakeStarStar { n: n - 2, p, q }], a_set(n, q)),
            other => unreachable!("rule {other} has no instantiation"),
        };
        Ok(RuleInstance { family, pivot, factors, free })
    }
}

fn cat_f(parts: Vec<Vec<FamilyParams>>) -> Vec<FamilyParams> {
    parts.concat()
}

/// Connected components with at least one edge, plus a count of free
/// variables, for a family member including the degenerate base cases.
pub fn resolve_factor(f: &FamilyParams) -> Result<(Vec<LabeledGraph>, usize)> {
    use FamilyParams as F;
    let none = Ok((Vec::new(), 0));
    match *f {
        F::TriSnakeStar { n: -2 | -1, .. } => none,
        F::BristledTriSnakeStar { n: -1, .. } => none,
        F::TriSnakeStarStar { n: -2, .. } => none,
        F::TriSnakeStarStar { n: -1, p } => Ok((Vec::new(), p as usize)),
        F::BristledTriSnakeStarStar { n: -1, p, q } => {
            let s = F::Star { u: q }.build()?;
            Ok((vec![s; p as usize], 0))
        }
        _ => {
            let g = f.build()?;
            Ok(split(&g))
        }
    }
}

/// Components with an edge, and the number of isolated vertices.
fn split(g: &LabeledGraph) -> (Vec<LabeledGraph>, usize) {
    let mut parts = Vec::new();
    let mut isolated = 0;
    for comp in g.components() {
        if comp.len() == 1 {
            isolated += 1;
        } else {
            let mut keep = vec![false; g.vertex_count()];
            for v in comp {
                keep[v] = true;
            }
            parts.push(g.induced(&keep));
        }
    }
    (parts, isolated)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorCheck {
    pub expected: String,
    pub vertices: usize,
    pub edges: usize,
    pub matched: bool,
}

/// Outcome of replaying one rule at one parameter point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub rule: String,
    pub family: String,
    pub kind: RuleKind,
    pub pivot: Vec<String>,
    pub factors: Vec<FactorCheck>,
    /// Components of the result no expected factor matched, as
    /// `vertices/edges`.
    pub unmatched: Vec<String>,
    pub expected_free: usize,
    pub actual_free: usize,
    /// Expected free labels not free in the result.
    pub missing_free: Vec<String>,
    pub killed: usize,
    pub n_vars: usize,
    pub pass: bool,
}

/// Builds the ideal, applies the pivot and compares the result with the
/// expected decomposition. An isomorphism failure is reported, not raised.
pub fn verify_decomposition(rule: &Rule, n: i64, p: i64, q: i64) -> Result<DecompositionReport> {
    verify_instance(rule, &rule.instantiate(n, p, q)?)
}

/// Checks an explicit instance, which need not come from [`Rule::instantiate`].
pub fn verify_instance(rule: &Rule, inst: &RuleInstance) -> Result<DecompositionReport> {
    let g = inst.family.build()?;
    let ideal = edge_ideal(&g)?;
    let mut pivot = Monomial::ONE;
    for label in &inst.pivot {
        let v = g.find(*label).ok_or_else(|| Error::RuleInapplicable {
            rule: rule.id.to_string(),
            reason: format!("pivot {label} is not a vertex of {}", inst.family),
        })?;
        pivot = pivot.lcm(Monomial::var(v));
    }
    let result = match rule.kind {
        RuleKind::Colon => ideal.colon(pivot).map_err(|_| Error::RuleInapplicable {
            rule: rule.id.to_string(),
            reason: "pivot lies in the ideal".into(),
        })?,
        RuleKind::Add => pivot.vars().fold(ideal, |acc, v| acc.add_variable(v)),
    };
    let (quotient, killed) = result.quotient_graph(&g)?;
    let (components, _) = split(&quotient);
    let free_labels: Vec<VertexLabel> =
        (0..quotient.vertex_count()).filter(|&v| quotient.degree(v) == 0).map(|v| quotient.label(v)).collect();

    let mut expected_graphs: Vec<(String, LabeledGraph)> = Vec::new();
    let mut expected_free = inst.free.len();
    for f in &inst.factors {
        let (parts, free) = resolve_factor(f)?;
        expected_free += free;
        let many = parts.len() > 1;
        for (k, part) in parts.into_iter().enumerate() {
            let name = if many { format!("{f}[{}]", k + 1) } else { f.to_string() };
            expected_graphs.push((name, part));
        }
    }

    let mut used = vec![false; components.len()];
    let mut factors = Vec::new();
    for (name, want) in &expected_graphs {
        let hit = (0..components.len()).find(|&c| !used[c] && is_isomorphic(want, &components[c]));
        if let Some(c) = hit {
            used[c] = true;
        }
        factors.push(FactorCheck {
            expected: name.clone(),
            vertices: want.vertex_count(),
            edges: want.edge_count(),
            matched: hit.is_some(),
        });
    }
    let unmatched: Vec<String> = components
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(c, _)| format!("{}/{}", c.vertex_count(), c.edge_count()))
        .collect();
    let missing_free: Vec<String> =
        inst.free.iter().filter(|l| !free_labels.contains(l)).map(|l| l.to_string()).collect();
    let actual_free = free_labels.len();
    let ambient_ok = components.iter().map(LabeledGraph::vertex_count).sum::<usize>() + actual_free + killed.degree()
        == g.vertex_count();
    let pass = ambient_ok
        && factors.iter().all(|f| f.matched)
        && unmatched.is_empty()
        && missing_free.is_empty()
        && actual_free == expected_free;
    Ok(DecompositionReport {
        rule: rule.id.to_string(),
        family: inst.family.to_string(),
        kind: rule.kind,
        pivot: inst.pivot.iter().map(|l| l.to_string()).collect(),
        factors,
        unmatched,
        expected_free,
        actual_free,
        missing_free,
        killed: killed.degree(),
        n_vars: g.vertex_count(),
        pass,
    })
}

/// Parameter points a rule is replayed on, within `n ≤ max_n`, `p ≤ max_p`,
/// `q ≤ max_q` (q fixed to 0 for unbristled rules).
pub fn replay_grid(rule: &Rule, max_n: i64, max_p: i64, max_q: i64) -> Vec<(i64, i64, i64)> {
    let qs: Vec<i64> = if rule.base.is_bristled() { (1..=max_q).collect() } else { vec![0] };
    let mut out = Vec::new();
    for n in rule.min_n..=max_n {
        for p in 1..=max_p {
            for &q in &qs {
                out.push((n, p, q));
            }
        }
    }
    out
}

/// Identifications of the degenerate members with stars: `T*_0(p) = S_p`,
/// `T**_0(p) = S_{2p}`, `Brs_q T*_0(p) = S_{p,q}`, `Brs_q T**_0(p) = S_{2p,q}`.
pub fn base_case_checks(p: i64, q: i64) -> Result<Vec<(String, bool)>> {
    use FamilyParams as F;
    let pairs = [
        (F::TriSnakeStar { n: 0, p }, F::Star { u: p }),
        (F::TriSnakeStarStar { n: 0, p }, F::Star { u: 2 * p }),
        (F::BristledTriSnakeStar { n: 0, p, q }, F::BristledStar { u: p, q }),
        (F::BristledTriSnakeStarStar { n: 0, p, q }, F::BristledStar { u: 2 * p, q }),
    ];
    pairs.iter().map(|(a, b)| Ok((format!("{a} = {b}"), is_isomorphic(&a.build()?, &b.build()?)))).collect()
}

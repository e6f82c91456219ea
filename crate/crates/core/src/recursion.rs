//! Regularity of `S/I(G)` without homology, by the colon/sum recursion.
//!
//! With `c = reg S/(J : y)` and `a = reg S/(J, y)`:
//! `c > a` gives `c + 1`, `c < a` gives `a`, and `c = a` only pins the value
//! to `{a, a + 1}`. Disjoint components add, free variables contribute
//! nothing, an empty graph has regularity 0 and a single edge 1.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexLabel};
use crate::ideal::{edge_ideal, MonomialIdeal};

/// Default limit on recursion depth.
pub const DEFAULT_DEPTH_CAP: usize = 128;

/// Order in which pivot variables are tried at each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PivotStrategy {
    /// The pivots of the snake inductions, read from vertex labels, then
    /// the remaining vertices by increasing degree.
    #[default]
    Snake,
    MaxDegree,
    MinDegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecursionOptions {
    pub strategy: PivotStrategy,
    pub depth_cap: usize,
}

impl Default for RecursionOptions {
    fn default() -> Self {
        RecursionOptions { strategy: PivotStrategy::Snake, depth_cap: DEFAULT_DEPTH_CAP }
    }
}

/// Regularity as an exact value or an enclosure `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegValue {
    Exact(usize),
    Between(usize, usize),
}

impl RegValue {
    fn from_bounds(lo: usize, hi: usize) -> RegValue {
        if lo == hi {
            RegValue::Exact(lo)
        } else {
            RegValue::Between(lo, hi)
        }
    }

    pub fn exact(self) -> Option<usize> {
        match self {
            RegValue::Exact(r) => Some(r),
            RegValue::Between(..) => None,
        }
    }

    pub fn bounds(self) -> (usize, usize) {
        match self {
            RegValue::Exact(r) => (r, r),
            RegValue::Between(lo, hi) => (lo, hi),
        }
    }
}

/// Which branch of the trichotomy a split landed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    /// `reg S/(J:y) > reg S/(J,y)`
    ColonLarger,
    /// `reg S/(J:y) = reg S/(J,y)`
    Equal,
    /// `reg S/(J:y) < reg S/(J,y)`
    SumLarger,
    /// The two enclosures overlap without being equal points.
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegRecursionResult {
    pub value: RegValue,
    /// Pivot label and case of the first split at the top level, if any.
    pub root_pivot: Option<String>,
    pub root_case: Option<Case>,
    /// Splits that ended in the equal case for every pivot tried.
    pub equal_case_nodes: usize,
    /// Distinct vertex subsets evaluated.
    pub states: usize,
}

/// `reg S/I` for an ideal generated in degree at most 2. Labels, when
/// given, index the variables and drive [`PivotStrategy::Snake`].
pub fn regularity_by_recursion(
    ideal: &MonomialIdeal,
    labels: Option<&[VertexLabel]>,
    opts: &RecursionOptions,
) -> Result<RegRecursionResult> {
    let view = ideal.quadratic_view()?;
    let n = ideal.n_vars();
    if let Some(l) = labels {
        if l.len() != n {
            return Err(Error::InvalidParameter(format!("{} labels for {n} variables", l.len())));
        }
    }
    let mut adj = vec![0u64; n];
    for &(a, b) in &view.edges {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let alive = ideal.ambient().strip(view.killed).0;
    let mut rec = Recursion { adj, labels, opts: *opts, memo: HashMap::new(), root: None, equal_nodes: 0 };
    let (lo, hi) = rec.reg(alive, 0, true)?;
    let (root_pivot, root_case) = match rec.root {
        Some((v, case)) => (Some(label_name(labels, v)), Some(case)),
        None => (None, None),
    };
    Ok(RegRecursionResult {
        value: RegValue::from_bounds(lo, hi),
        root_pivot,
        root_case,
        equal_case_nodes: rec.equal_nodes,
        states: rec.memo.len(),
    })
}

/// Convenience wrapper using the graph's labels.
pub fn graph_regularity_by_recursion(g: &LabeledGraph, opts: &RecursionOptions) -> Result<RegRecursionResult> {
    regularity_by_recursion(&edge_ideal(g)?, Some(g.labels()), opts)
}

fn label_name(labels: Option<&[VertexLabel]>, v: usize) -> String {
    match labels {
        Some(l) => l[v].to_string(),
        None => format!("x{}", v + 1),
    }
}

struct Recursion<'a> {
    adj: Vec<u64>,
    labels: Option<&'a [VertexLabel]>,
    opts: RecursionOptions,
    memo: HashMap<u64, (usize, usize)>,
    root: Option<(usize, Case)>,
    equal_nodes: usize,
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

impl Recursion<'_> {
    fn reg(&mut self, alive: u64, depth: usize, top: bool) -> Result<(usize, usize)> {
        if depth > self.opts.depth_cap {
            return Err(Error::RecursionDepth(self.opts.depth_cap));
        }
        let alive = bits(alive).filter(|&v| self.adj[v] & alive != 0).fold(0u64, |m, v| m | 1 << v);
        if alive == 0 {
            return Ok((0, 0));
        }
        if let Some(&r) = self.memo.get(&alive) {
            return Ok(r);
        }
        let comps = self.components(alive);
        let result = if comps.len() > 1 {
            let mut sum = (0, 0);
            for c in comps {
                let (lo, hi) = self.reg(c, depth + 1, false)?;
                sum = (sum.0 + lo, sum.1 + hi);
            }
            sum
        } else if alive.count_ones() == 2 {
            (1, 1)
        } else {
            self.split(alive, depth, top)?
        };
        self.memo.insert(alive, result);
        Ok(result)
    }

    fn split(&mut self, alive: u64, depth: usize, top: bool) -> Result<(usize, usize)> {
        let mut enclosure = (0usize, usize::MAX);
        let mut all_equal = true;
        for (k, y) in self.pivots(alive).into_iter().enumerate() {
            let closed = self.adj[y] & alive | 1 << y;
            let c = self.reg(alive & !closed, depth + 1, false)?;
            let a = self.reg(alive & !(1 << y), depth + 1, false)?;
            let (case, bounds) = combine(c, a);
            if top && k == 0 {
                self.root = Some((y, case));
            }
            all_equal &= case == Case::Equal;
            enclosure = (enclosure.0.max(bounds.0), enclosure.1.min(bounds.1));
            if enclosure.0 == enclosure.1 {
                break;
            }
        }
        if all_equal {
            self.equal_nodes += 1;
        }
        Ok(enclosure)
    }

    fn components(&self, alive: u64) -> Vec<u64> {
        let mut rest = alive;
        let mut out = Vec::new();
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            loop {
                let grown = bits(comp).fold(comp, |m, v| m | self.adj[v] & alive);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    fn pivots(&self, alive: u64) -> Vec<usize> {
        let degree = |v: usize| (self.adj[v] & alive).count_ones();
        let mut order: Vec<usize> = bits(alive).collect();
        match self.opts.strategy {
            PivotStrategy::MaxDegree => order.sort_by_key(|&v| (std::cmp::Reverse(degree(v)), v)),
            PivotStrategy::MinDegree | PivotStrategy::Snake => order.sort_by_key(|&v| (degree(v), v)),
        }
        if self.opts.strategy == PivotStrategy::Snake {
            if let Some(first) = self.snake_pivot(alive) {
                order.retain(|&v| v != first);
                order.insert(0, first);
            }
        }
        order
    }

    /// The last path vertex for bristled or cyclic pieces, otherwise the
    /// one before it.
    fn snake_pivot(&self, alive: u64) -> Option<usize> {
        let labels = self.labels?;
        let mut path: Vec<(u32, usize)> = bits(alive)
            .filter_map(|v| match labels[v] {
                VertexLabel::PathVertex(i) => Some((i, v)),
                _ => None,
            })
            .collect();
        path.sort_unstable();
        let bristled = bits(alive).any(|v| labels[v].is_bristle());
        let path_mask = path.iter().fold(0u64, |m, &(_, v)| m | 1 << v);
        let path_edges: u32 = path.iter().map(|&(_, v)| (self.adj[v] & path_mask).count_ones()).sum::<u32>() / 2;
        let cyclic = path.len() >= 3 && path_edges as usize == path.len();
        match path.len() {
            0 => None,
            _ if bristled || cyclic => path.last().map(|&(_, v)| v),
            1 => None,
            len => Some(path[len - 2].1),
        }
    }
}

/// Trichotomy on enclosures of `c = reg S/(J:y)` and `a = reg S/(J,y)`.
fn combine(c: (usize, usize), a: (usize, usize)) -> (Case, (usize, usize)) {
    if c.0 > a.1 {
        (Case::ColonLarger, (c.0 + 1, c.1 + 1))
    } else if c.1 < a.0 {
        (Case::SumLarger, a)
    } else if c.0 == c.1 && a.0 == a.1 {
        (Case::Equal, (a.0, a.0 + 1))
    } else {
        // reg lies in [max(a, c), max(c + 1, a)] whatever the case
        (Case::Undecided, (a.0.max(c.0), (c.1 + 1).max(a.1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilyParams;

    fn run(spec: &str) -> RegRecursionResult {
        let g = spec.parse::<FamilyParams>().unwrap().build().unwrap();
        graph_regularity_by_recursion(&g, &RecursionOptions::default()).unwrap()
    }

    #[test]
    fn stars() {
        for u in 1..=5 {
            assert_eq!(run(&format!("star({u})")).value, RegValue::Exact(1));
        }
    }

    #[test]
    fn single_snakes_use_the_sum_branch() {
        for n in 1..=4i64 {
            let r = run(&format!("tsnake({n},1)"));
            assert_eq!(r.value, RegValue::Exact(((n + 1) as usize).div_ceil(2)), "n={n}");
            assert_eq!(r.root_pivot, Some(format!("x{n}")));
            assert_eq!(r.root_case, Some(Case::SumLarger));
        }
    }

    #[test]
    fn disjoint_edges_add() {
        let g = LabeledGraph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        let r = graph_regularity_by_recursion(&g, &RecursionOptions::default()).unwrap();
        assert_eq!(r.value, RegValue::Exact(2));
        assert_eq!(r.root_pivot, None);
    }

    #[test]
    fn trichotomy() {
        assert_eq!(combine((2, 2), (1, 1)), (Case::ColonLarger, (3, 3)));
        assert_eq!(combine((1, 1), (2, 2)), (Case::SumLarger, (2, 2)));
        assert_eq!(combine((1, 1), (1, 1)), (Case::Equal, (1, 2)));
        assert_eq!(combine((1, 2), (2, 2)).0, Case::Undecided);
    }

    #[test]
    fn errors() {
        let cubic = MonomialIdeal::new(3, [crate::ideal::Monomial::from_vars([0, 1, 2])]).unwrap();
        assert_eq!(regularity_by_recursion(&cubic, None, &RecursionOptions::default()), Err(Error::NotQuadratic(3)));
        let g = LabeledGraph::path(6);
        let opts = RecursionOptions { depth_cap: 1, ..Default::default() };
        assert_eq!(graph_regularity_by_recursion(&g, &opts), Err(Error::RecursionDepth(1)));
    }

    #[test]
    fn degree_strategies_agree_on_cycles() {
        for n in 3..=9 {
            let g = LabeledGraph::cycle(n).unwrap();
            for strategy in [PivotStrategy::MaxDegree, PivotStrategy::MinDegree] {
                let r =
                    graph_regularity_by_recursion(&g, &RecursionOptions { strategy, ..Default::default() }).unwrap();
                let (lo, hi) = r.value.bounds();
                let expected = crate::betti::invariants(&edge_ideal(&g).unwrap(), &Default::default()).unwrap().reg;
                assert!(lo <= expected && expected <= hi, "C_{n}: {:?}", r.value);
            }
        }
    }
}

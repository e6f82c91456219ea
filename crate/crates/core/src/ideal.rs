//! Squarefree monomial ideals over at most 64 variables.
//!
//! A squarefree monomial is its support, stored as a bit mask. Ideals keep
//! their minimal generating set sorted by degree, then by mask.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// Ambient rings are limited to one machine word of variables.
pub const MAX_VARS: usize = 64;

/// Squarefree monomial as a variable set. The empty set is `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(v: usize) -> Monomial {
        Monomial(1 << v)
    }

    pub fn from_vars<I: IntoIterator<Item = usize>>(vars: I) -> Monomial {
        Monomial(vars.into_iter().fold(0, |m, v| m | (1 << v)))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn vars(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
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

    /// `m / gcd(m, other)` for squarefree monomials.
    pub fn strip(self, other: Monomial) -> Monomial {
        Monomial(self.0 & !other.0)
    }

    pub fn lcm(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }
}

/// Reduces a generator list to the minimal generating set: sort by degree,
/// keep each monomial not divisible by an earlier keeper.
pub fn minimize(gens: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
    let mut all: Vec<Monomial> = gens.into_iter().collect();
    all.sort_by_key(|m| (m.degree(), m.0));
    all.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
    for m in all {
        if !kept.iter().any(|k| k.divides(m)) {
            kept.push(m);
        }
    }
    kept
}

/// A squarefree monomial ideal, stored by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n_vars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(n_vars: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        if n_vars > MAX_VARS {
            return Err(Error::TooManyVariables { count: n_vars, limit: MAX_VARS });
        }
        let gens = minimize(gens);
        let ambient = if n_vars == MAX_VARS { u64::MAX } else { (1u64 << n_vars) - 1 };
        if let Some(g) = gens.iter().find(|g| g.0 & !ambient != 0) {
            let v = (g.0 & !ambient).trailing_zeros() as usize;
            return Err(Error::UnknownVariable(format!("variable index {v} in a ring of {n_vars}")));
        }
        Ok(MonomialIdeal { n_vars, gens })
    }

    pub fn zero(n_vars: usize) -> Self {
        MonomialIdeal { n_vars, gens: Vec::new() }
    }

    pub fn unit(n_vars: usize) -> Self {
        MonomialIdeal { n_vars, gens: vec![Monomial::ONE] }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Minimal generators, sorted by degree then mask.
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first() == Some(&Monomial::ONE)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// All variables of the ambient ring as a mask.
    pub fn ambient(&self) -> Monomial {
        Monomial(if self.n_vars == MAX_VARS { u64::MAX } else { (1u64 << self.n_vars) - 1 })
    }

    /// Variables dividing some minimal generator.
    pub fn support(&self) -> Monomial {
        Monomial(self.gens.iter().fold(0, |acc, g| acc | g.0))
    }

    pub fn max_degree(&self) -> usize {
        self.gens.iter().map(|g| g.degree()).max().unwrap_or(0)
    }

    /// True iff some generator divides `m`.
    pub fn contains(&self, m: Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `(I : m)`; errors if `m` lies in `I`.
    pub fn colon(&self, m: Monomial) -> Result<MonomialIdeal> {
        if self.contains(m) {
            return Err(Error::Membership);
        }
        Ok(MonomialIdeal { n_vars: self.n_vars, gens: minimize(self.gens.iter().map(|g| g.strip(m))) })
    }

    /// `(I, x_v)`. A no-op when `x_v` already lies in `I`.
    pub fn add_variable(&self, v: usize) -> MonomialIdeal {
        let x = Monomial::var(v);
        if self.contains(x) {
            return self.clone();
        }
        let mut gens = vec![x];
        gens.extend(self.gens.iter().copied().filter(|g| !g.contains(v)));
        MonomialIdeal { n_vars: self.n_vars, gens: minimize(gens) }
    }

    /// Ideal sum with a list of extra generators.
    pub fn with_generators(&self, extra: impl IntoIterator<Item = Monomial>) -> MonomialIdeal {
        let gens = minimize(self.gens.iter().copied().chain(extra));
        MonomialIdeal { n_vars: self.n_vars, gens }
    }

    /// Same generators in a ring with `s` extra variables appended.
    pub fn with_free_variables(&self, s: usize) -> Result<MonomialIdeal> {
        MonomialIdeal::new(self.n_vars + s, self.gens.iter().copied())
    }

    /// Connected components of the generator-overlap graph on `supp(I)`,
    /// each as (generators of the component, its variable set), plus the
    /// free variables outside the support.
    pub fn connected_components(&self) -> Components {
        let mut parts: Vec<(Vec<Monomial>, Monomial)> = Vec::new();
        for &g in &self.gens {
            let (touching, rest): (Vec<_>, Vec<_>) = parts.into_iter().partition(|(_, vars)| vars.0 & g.0 != 0);
            let mut merged_gens = vec![g];
            let mut merged_vars = g;
            for (gs, vs) in touching {
                merged_gens.extend(gs);
                merged_vars = merged_vars.lcm(vs);
            }
            parts = rest;
            parts.push((merged_gens, merged_vars));
        }
        parts.sort_by_key(|(_, vars)| vars.0.trailing_zeros());
        let components = parts
            .into_iter()
            .map(|(gens, vars)| Component { ideal: MonomialIdeal { n_vars: self.n_vars, gens: minimize(gens) }, vars })
            .collect();
        Components { components, free: Monomial(self.ambient().0 & !self.support().0) }
    }

    /// Rewrites the ideal over the variables in `keep` only, renumbered in
    /// increasing order. Generators touching dropped variables are discarded.
    /// Returns the new ideal and the old index of each new variable.
    pub fn restrict(&self, keep: Monomial) -> (MonomialIdeal, Vec<usize>) {
        let old: Vec<usize> = keep.vars().collect();
        let mut new_index = [usize::MAX; MAX_VARS];
        for (i, &v) in old.iter().enumerate() {
            new_index[v] = i;
        }
        let gens =
            self.gens.iter().filter(|g| g.divides(keep)).map(|g| Monomial::from_vars(g.vars().map(|v| new_index[v])));
        (MonomialIdeal { n_vars: old.len(), gens: minimize(gens) }, old)
    }

    /// Parses one generator per line, each a `*`-separated list of variable
    /// names from `names`. Blank lines and `#` comments are skipped.
    pub fn parse_text(text: &str, names: &[String]) -> Result<MonomialIdeal> {
        let mut gens = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut m = Monomial::ONE;
            if line != "1" {
                for name in line.split('*') {
                    let name = name.trim();
                    let v =
                        names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                    m = m.lcm(Monomial::var(v));
                }
            }
            gens.push(m);
        }
        MonomialIdeal::new(names.len(), gens)
    }

    /// One generator per line, variables sorted by index and joined with `*`.
    pub fn to_text(&self, names: &[String]) -> String {
        let mut out = String::new();
        for g in &self.gens {
            if g.0 == 0 {
                out.push('1');
            } else {
                let parts: Vec<&str> = g.vars().map(|v| names[v].as_str()).collect();
                out.push_str(&parts.join("*"));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .gens
            .iter()
            .map(|g| {
                if g.0 == 0 {
                    "1".to_string()
                } else {
                    g.vars().map(|v| format!("x{}", v + 1)).collect::<Vec<_>>().join("*")
                }
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// One block of [`MonomialIdeal::connected_components`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub ideal: MonomialIdeal,
    pub vars: Monomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub components: Vec<Component>,
    pub free: Monomial,
}

/// `I(G)`: one quadratic generator per edge, one variable per vertex.
pub fn edge_ideal(g: &LabeledGraph) -> Result<MonomialIdeal> {
    let n = g.vertex_count();
    if n > MAX_VARS {
        return Err(Error::TooManyVariables { count: n, limit: MAX_VARS });
    }
    MonomialIdeal::new(n, g.edges().into_iter().map(|(a, b)| Monomial::from_vars([a, b])))
}

/// Split of an ideal generated in degree at most 2 into the variables it
/// contains (degree-1 generators) and the graph of its quadratic generators.
#[derive(Debug, Clone)]
pub struct QuadraticView {
    /// Variables that are themselves generators.
    pub killed: Monomial,
    /// Quadratic generators as variable pairs.
    pub edges: Vec<(usize, usize)>,
}

impl MonomialIdeal {
    /// Errors with [`Error::NotQuadratic`] if some generator has degree > 2,
    /// and [`Error::UnitIdeal`] for the unit ideal.
    pub fn quadratic_view(&self) -> Result<QuadraticView> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let mut killed = Monomial::ONE;
        let mut edges = Vec::new();
        for g in &self.gens {
            match g.degree() {
                1 => killed = killed.lcm(*g),
                2 => {
                    let mut vs = g.vars();
                    edges.push((vs.next().unwrap(), vs.next().unwrap()));
                }
                d => return Err(Error::NotQuadratic(d)),
            }
        }
        Ok(QuadraticView { killed, edges })
    }

    /// Graph on the surviving variables of `S/I` (all variables except the
    /// degree-1 generators), carrying `g`'s labels, with one edge per
    /// quadratic generator. `g` must be the graph whose vertices index the
    /// ring.
    pub fn quotient_graph(&self, g: &LabeledGraph) -> Result<(LabeledGraph, Monomial)> {
        if g.vertex_count() != self.n_vars {
            return Err(Error::InvalidParameter(format!(
                "graph has {} vertices but the ring has {} variables",
                g.vertex_count(),
                self.n_vars
            )));
        }
        let view = self.quadratic_view()?;
        let keep: Vec<bool> = (0..self.n_vars).map(|v| !view.killed.contains(v)).collect();
        let mut new_id = vec![usize::MAX; self.n_vars];
        let mut labels = Vec::new();
        for v in 0..self.n_vars {
            if keep[v] {
                new_id[v] = labels.len();
                labels.push(g.label(v));
            }
        }
        let edges: Vec<_> = view.edges.iter().map(|&(a, b)| (new_id[a], new_id[b])).collect();
        Ok((LabeledGraph::new(labels, &edges)?, view.killed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilyParams;

    fn m(vs: &[usize]) -> Monomial {
        Monomial::from_vars(vs.iter().copied())
    }

    #[test]
    fn edge_ideal_of_triangle() {
        let g = FamilyParams::TriSnake { n: 1, p: 1 }.build().unwrap();
        let i = edge_ideal(&g).unwrap();
        assert_eq!(i.to_text(&g.variable_names()), "x1*x2\nx1*y11\nx2*y11\n");
    }

    #[test]
    fn edge_ideal_of_star_shares_center() {
        let g = FamilyParams::Star { u: 4 }.build().unwrap();
        let i = edge_ideal(&g).unwrap();
        assert_eq!(i.gens().len(), 4);
        assert!(i.gens().iter().all(|gen| gen.contains(0)));
    }

    #[test]
    fn edge_ideal_of_bristled_triangle() {
        let g = FamilyParams::BristledTriSnake { n: 1, p: 1, q: 1 }.build().unwrap();
        let i = edge_ideal(&g).unwrap();
        assert_eq!((i.n_vars(), i.gens().len()), (6, 6));
    }

    #[test]
    fn colon_examples() {
        let i = MonomialIdeal::new(2, [m(&[0, 1])]).unwrap();
        assert_eq!(i.colon(Monomial::var(0)).unwrap().gens(), &[m(&[1])]);
        assert_eq!(i.colon(m(&[0, 1])), Err(Error::Membership));
        assert_eq!(i.colon(Monomial::ONE).unwrap(), i);
    }

    #[test]
    fn add_variable_examples() {
        let i = MonomialIdeal::new(2, [m(&[0, 1])]).unwrap();
        assert_eq!(i.add_variable(0).gens(), &[m(&[0])]);
        let j = MonomialIdeal::new(5, [m(&[0, 1]), m(&[2, 3])]).unwrap();
        assert_eq!(j.add_variable(4).gens(), &[m(&[4]), m(&[0, 1]), m(&[2, 3])]);
    }

    #[test]
    fn membership_examples() {
        let i = MonomialIdeal::new(3, [m(&[0, 1])]).unwrap();
        assert!(i.contains(m(&[0, 1, 2])));
        assert!(!i.contains(m(&[0, 2])));
        let c4 = edge_ideal(&LabeledGraph::cycle(4).unwrap()).unwrap();
        assert!(!c4.contains(m(&[0, 2])));
        assert!(!c4.contains(m(&[1, 3])));
    }

    #[test]
    fn components_and_free() {
        let i = MonomialIdeal::new(5, [m(&[0, 1]), m(&[2, 3])]).unwrap();
        let c = i.connected_components();
        assert_eq!(c.components.len(), 2);
        assert_eq!(c.free, m(&[4]));
        let t2 = edge_ideal(&FamilyParams::TriSnake { n: 2, p: 1 }.build().unwrap()).unwrap();
        let c = t2.connected_components();
        assert_eq!((c.components.len(), c.free), (1, Monomial::ONE));
    }

    #[test]
    fn minimize_examples() {
        assert_eq!(minimize([m(&[0, 1, 2]), m(&[0, 1]), m(&[1])]), vec![m(&[1])]);
        assert_eq!(minimize([m(&[2, 3]), m(&[0, 1]), m(&[0, 1])]), vec![m(&[0, 1]), m(&[2, 3])]);
    }

    #[test]
    fn text_round_trip_and_errors() {
        let names: Vec<String> = ["x1", "x2", "y11"].iter().map(|s| s.to_string()).collect();
        let i = MonomialIdeal::parse_text("x2*y11\n# comment\nx1*x2\n\nx1*y11 # trailing\n", &names).unwrap();
        assert_eq!(MonomialIdeal::parse_text(&i.to_text(&names), &names).unwrap(), i);
        assert_eq!(MonomialIdeal::parse_text("x1*z9", &names), Err(Error::UnknownVariable("z9".into())));
    }

    #[test]
    fn restrict_renumbers() {
        let i = MonomialIdeal::new(5, [m(&[1, 3]), m(&[3, 4]), m(&[0, 2])]).unwrap();
        let (r, old) = i.restrict(m(&[1, 3, 4]));
        assert_eq!(old, vec![1, 3, 4]);
        assert_eq!(r.gens(), &[m(&[0, 1]), m(&[1, 2])]);
    }

    #[test]
    fn too_many_variables() {
        let g = FamilyParams::Path { n: 65 }.build().unwrap();
        assert_eq!(edge_ideal(&g), Err(Error::TooManyVariables { count: 65, limit: 64 }));
    }
}

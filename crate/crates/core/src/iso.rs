//! Graph isomorphism for small structured graphs.
//!
//! Colour refinement runs on the disjoint union of both graphs so colours are
//! comparable across them. When refinement stalls, one vertex of the first
//! graph is individualised against each same-coloured candidate of the second
//! and the search recurses.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::LabeledGraph;

/// True iff an edge-preserving bijection between the vertex sets exists.
/// Labels are ignored.
pub fn is_isomorphic(g: &LabeledGraph, h: &LabeledGraph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// An isomorphism as `map[v_in_g] = v_in_h`, if one exists.
pub fn find_isomorphism(g: &LabeledGraph, h: &LabeledGraph) -> Option<Vec<usize>> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    if g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    let n = g.vertex_count();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(2 * n);
    adj.extend((0..n).map(|v| g.neighbors(v).to_vec()));
    adj.extend((0..n).map(|v| h.neighbors(v).iter().map(|w| w + n).collect()));
    let union = Union { n, adj };
    let colours = union.refine(vec![0; 2 * n])?;
    let map = union.search(colours)?;
    debug_assert!(g.edges().iter().all(|&(a, b)| h.has_edge(map[a], map[b])));
    Some(map)
}

struct Union {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Union {
    /// Refines to a stable colouring; `None` if the two halves disagree on
    /// some colour class size.
    fn refine(&self, mut colours: Vec<u32>) -> Option<Vec<u32>> {
        let mut classes = count_classes(&colours);
        loop {
            let signatures: Vec<(u32, Vec<u32>)> = (0..2 * self.n)
                .map(|v| {
                    let mut nb: Vec<u32> = self.adj[v].iter().map(|&w| colours[w]).collect();
                    nb.sort_unstable();
                    (colours[v], nb)
                })
                .collect();
            let distinct: BTreeSet<&(u32, Vec<u32>)> = signatures.iter().collect();
            // renumber in sorted signature order so colours are canonical
            let ranks: BTreeMap<&(u32, Vec<u32>), u32> =
                distinct.into_iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
            colours = signatures.iter().map(|s| ranks[s]).collect();
            if !self.balanced(&colours) {
                return None;
            }
            let now = count_classes(&colours);
            if now == classes {
                return Some(colours);
            }
            classes = now;
        }
    }

    fn balanced(&self, colours: &[u32]) -> bool {
        let mut left: BTreeMap<u32, usize> = BTreeMap::new();
        let mut right: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &colours[..self.n] {
            *left.entry(c).or_default() += 1;
        }
        for &c in &colours[self.n..] {
            *right.entry(c).or_default() += 1;
        }
        left == right
    }

    fn search(&self, colours: Vec<u32>) -> Option<Vec<usize>> {
        let n = self.n;
        // smallest non-singleton class on the left half
        let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &colours[..n] {
            *sizes.entry(c).or_default() += 1;
        }
        let target = sizes.iter().filter(|(_, &s)| s > 1).min_by_key(|(&c, &s)| (s, c)).map(|(&c, _)| c);
        let Some(target) = target else {
            // discrete: the colouring is the bijection
            let mut by_colour = BTreeMap::new();
            for (v, &c) in colours[n..].iter().enumerate() {
                by_colour.insert(c, v);
            }
            let map: Vec<usize> = (0..n).map(|v| by_colour[&colours[v]]).collect();
            return self.check(&map).then_some(map);
        };
        let v = (0..n).find(|&v| colours[v] == target).expect("class is non-empty");
        let fresh = colours.iter().max().copied().unwrap_or(0) + 1;
        for u in (n..2 * n).filter(|&u| colours[u] == target) {
            let mut trial = colours.clone();
            trial[v] = fresh;
            trial[u] = fresh;
            if let Some(refined) = self.refine(trial) {
                if let Some(map) = self.search(refined) {
                    return Some(map);
                }
            }
        }
        None
    }

    fn check(&self, map: &[usize]) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            let mut image: Vec<usize> = self.adj[a].iter().map(|&b| map[b] + n).collect();
            image.sort_unstable();
            let mut target = self.adj[map[a] + n].clone();
            target.sort_unstable();
            image == target
        })
    }
}

fn count_classes(colours: &[u32]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_cycle() {
        let c4 = LabeledGraph::cycle(4).unwrap();
        let other = LabeledGraph::from_edge_list(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert!(is_isomorphic(&c4, &other));
    }

    #[test]
    fn path_vs_star() {
        let p4 = LabeledGraph::path(4);
        let star = LabeledGraph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!is_isomorphic(&p4, &star));
    }

    #[test]
    fn refinement_equal_but_not_isomorphic() {
        // C_6 and two triangles: both 2-regular on 6 vertices
        let c6 = LabeledGraph::cycle(6).unwrap();
        let tt = LabeledGraph::from_edge_list(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!is_isomorphic(&c6, &tt));
        assert!(is_isomorphic(&c6, &c6.permuted(&[3, 5, 0, 1, 4, 2])));
    }

    #[test]
    fn empty_graphs() {
        assert!(is_isomorphic(&LabeledGraph::null(0), &LabeledGraph::null(0)));
        assert!(is_isomorphic(&LabeledGraph::null(3), &LabeledGraph::null(3)));
        assert!(!is_isomorphic(&LabeledGraph::null(3), &LabeledGraph::null(2)));
    }
}

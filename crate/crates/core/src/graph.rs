//! Labelled simple graphs and the surgery operations used by the snake
//! constructions: fusion, corona products, bristling, induced subgraphs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Role of a vertex in a snake-family graph.
///
/// The derived `Ord` is the canonical vertex order: path vertices, then
/// apexes row-major, then path bristles, then apex bristles, then anonymous
/// vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VertexLabel {
    /// `x_i`
    PathVertex(u32),
    /// `y_{jk}`
    Apex(u32, u32),
    /// `x_{it}`, the `t`-th bristle of `x_i`
    PathBristle(u32, u32),
    /// `y_{jkt}`, the `t`-th bristle of `y_{jk}`
    ApexBristle(u32, u32, u32),
    Anonymous(u32),
}

impl VertexLabel {
    /// Label given to the `t`-th pendant leaf hung on a vertex with this label.
    pub fn bristle(self, t: u32) -> Option<VertexLabel> {
        match self {
            VertexLabel::PathVertex(i) => Some(VertexLabel::PathBristle(i, t)),
            VertexLabel::Apex(j, k) => Some(VertexLabel::ApexBristle(j, k, t)),
            _ => None,
        }
    }

    pub fn is_bristle(self) -> bool {
        matches!(self, VertexLabel::PathBristle(..) | VertexLabel::ApexBristle(..))
    }
}

fn join_indices(f: &mut fmt::Formatter<'_>, idx: &[u32]) -> fmt::Result {
    if idx.iter().all(|&i| i < 10) {
        for i in idx {
            write!(f, "{i}")?;
        }
        Ok(())
    } else {
        let parts: Vec<String> = idx.iter().map(u32::to_string).collect();
        f.write_str(&parts.join("_"))
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexLabel::PathVertex(i) => write!(f, "x{i}"),
            // always separated, `x12` is the path vertex x_12
            VertexLabel::PathBristle(i, t) => write!(f, "x{i}_{t}"),
            VertexLabel::Apex(j, k) => {
                f.write_str("y")?;
                join_indices(f, &[j, k])
            }
            VertexLabel::ApexBristle(j, k, t) => {
                f.write_str("y")?;
                join_indices(f, &[j, k, t])
            }
            VertexLabel::Anonymous(id) => write!(f, "v{id}"),
        }
    }
}

impl FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownVariable(s.to_string());
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        if rest.is_empty() {
            return Err(bad());
        }
        let indices: Vec<u32> = if rest.contains('_') {
            rest.split('_').map(|p| p.parse::<u32>().map_err(|_| bad())).collect::<Result<_>>()?
        } else if head == 'y' {
            rest.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect::<Result<_>>()?
        } else {
            vec![rest.parse::<u32>().map_err(|_| bad())?]
        };
        match (head, indices.as_slice()) {
            ('x', [i]) => Ok(VertexLabel::PathVertex(*i)),
            ('x', [i, t]) => Ok(VertexLabel::PathBristle(*i, *t)),
            ('y', [j, k]) => Ok(VertexLabel::Apex(*j, *k)),
            ('y', [j, k, t]) => Ok(VertexLabel::ApexBristle(*j, *k, *t)),
            ('v', [id]) => Ok(VertexLabel::Anonymous(*id)),
            _ => Err(bad()),
        }
    }
}

/// A simple undirected graph whose vertices carry unique labels.
///
/// Vertex ids are dense, 0-based, and sorted by label, so two graphs built
/// from the same labelled edge set are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    labels: Vec<VertexLabel>,
    adj: Vec<Vec<usize>>,
}

impl LabeledGraph {
    /// Builds a graph from labels and an edge list over indices into `labels`.
    ///
    /// Parallel edges are merged. Loops, duplicate labels and out-of-range
    /// endpoints are rejected.
    pub fn new(labels: Vec<VertexLabel>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let unique: BTreeSet<_> = labels.iter().collect();
        if unique.len() != n {
            return Err(Error::InvalidParameter("duplicate vertex label".into()));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| labels[v]);
        let mut new_id = vec![0; n];
        for (pos, &old) in order.iter().enumerate() {
            new_id[old] = pos;
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n {
                return Err(Error::UnknownVertex(a));
            }
            if b >= n {
                return Err(Error::UnknownVertex(b));
            }
            if a == b {
                return Err(Error::Loop(a, b));
            }
            let (a, b) = (new_id[a], new_id[b]);
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let labels = order.into_iter().map(|v| labels[v]).collect();
        Ok(LabeledGraph { labels, adj })
    }

    /// Anonymous graph on `n` vertices labelled `v0..v{n-1}`.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let labels = (0..n as u32).map(VertexLabel::Anonymous).collect();
        Self::new(labels, edges)
    }

    /// Graph with `n` vertices and no edges.
    pub fn null(n: usize) -> Self {
        Self::from_edge_list(n, &[]).expect("null graph is valid")
    }

    pub fn path(n: usize) -> Self {
        let labels = (1..=n as u32).map(VertexLabel::PathVertex).collect();
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(labels, &edges).expect("path is valid")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let labels = (1..=n as u32).map(VertexLabel::PathVertex).collect();
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(labels, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.labels[v]
    }

    /// Vertex id carrying `label`, if any.
    pub fn find(&self, label: VertexLabel) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    /// Subgraph induced by the vertices with `keep[v] == true`.
    pub fn induced(&self, keep: &[bool]) -> LabeledGraph {
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        let mut labels = Vec::new();
        for v in 0..self.vertex_count() {
            if keep[v] {
                new_id[v] = labels.len();
                labels.push(self.labels[v]);
            }
        }
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|&(a, b)| keep[a] && keep[b])
            .map(|(a, b)| (new_id[a], new_id[b]))
            .collect();
        // ids stay sorted because label order is preserved
        LabeledGraph::new(labels, &edges).expect("induced subgraph is valid")
    }

    /// Connected components as sorted vertex-id lists, ordered by smallest id.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Components as separate graphs.
    pub fn component_graphs(&self) -> Vec<LabeledGraph> {
        self.components()
            .into_iter()
            .map(|comp| {
                let mut keep = vec![false; self.vertex_count()];
                for v in comp {
                    keep[v] = true;
                }
                self.induced(&keep)
            })
            .collect()
    }

    /// Merges `a` and `b` into one vertex carrying `a`'s label.
    ///
    /// Edges incident to either endpoint move to the merged vertex; parallel
    /// edges collapse. Fusing adjacent vertices is a loop error.
    pub fn fuse(&self, a: usize, b: usize) -> Result<LabeledGraph> {
        let n = self.vertex_count();
        if a >= n {
            return Err(Error::UnknownVertex(a));
        }
        if b >= n {
            return Err(Error::UnknownVertex(b));
        }
        if a == b {
            return Err(Error::InvalidParameter("cannot fuse a vertex with itself".into()));
        }
        if self.has_edge(a, b) {
            return Err(Error::Loop(a, b));
        }
        let map = |v: usize| -> usize {
            let v = if v == b { a } else { v };
            if v > b {
                v - 1
            } else {
                v
            }
        };
        let labels: Vec<_> = (0..n).filter(|&v| v != b).map(|v| self.labels[v]).collect();
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (map(u), map(v))).collect();
        LabeledGraph::new(labels, &edges)
    }

    /// Corona product: one copy of `h` per vertex `v` of `self`, each vertex
    /// of that copy joined to `v`. Copies get fresh anonymous labels.
    pub fn corona(&self, h: &LabeledGraph) -> LabeledGraph {
        let n = self.vertex_count();
        let m = h.vertex_count();
        let mut next = self.next_anonymous_id();
        let mut labels = self.labels.clone();
        let mut edges = self.edges();
        let h_edges = h.edges();
        for v in 0..n {
            let base = labels.len();
            for _ in 0..m {
                labels.push(VertexLabel::Anonymous(next));
                next += 1;
            }
            edges.extend(h_edges.iter().map(|&(a, b)| (base + a, base + b)));
            edges.extend((0..m).map(|i| (v, base + i)));
        }
        LabeledGraph::new(labels, &edges).expect("corona product is valid")
    }

    /// `q`-fold bristled graph: `q` new pendant leaves on every vertex.
    ///
    /// Leaves of `x_i` are labelled `x_{it}`, leaves of `y_{jk}` are `y_{jkt}`;
    /// leaves of any other vertex, or whose name is already taken, get fresh
    /// anonymous labels.
    pub fn bristle(&self, q: usize) -> LabeledGraph {
        let mut next = self.next_anonymous_id();
        let mut labels = self.labels.clone();
        let mut edges = self.edges();
        for v in 0..self.vertex_count() {
            for t in 1..=q as u32 {
                let named = self.labels[v].bristle(t).filter(|l| self.find(*l).is_none());
                let leaf = named.unwrap_or_else(|| {
                    next += 1;
                    VertexLabel::Anonymous(next - 1)
                });
                edges.push((v, labels.len()));
                labels.push(leaf);
            }
        }
        LabeledGraph::new(labels, &edges).expect("bristled graph is valid")
    }

    /// Drops degree-0 vertices; returns the rest and how many were removed.
    pub fn strip_isolated(&self) -> (LabeledGraph, usize) {
        let keep: Vec<bool> = (0..self.vertex_count()).map(|v| self.degree(v) > 0).collect();
        let removed = keep.iter().filter(|k| !**k).count();
        (self.induced(&keep), removed)
    }

    /// Disjoint union. Fails if the two graphs share a label.
    pub fn disjoint_union(&self, other: &LabeledGraph) -> Result<LabeledGraph> {
        let off = self.vertex_count();
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(a, b)| (a + off, b + off)));
        LabeledGraph::new(labels, &edges)
    }

    /// Same graph with every vertex relabelled `Anonymous(offset + id)`.
    pub fn anonymized(&self, offset: u32) -> LabeledGraph {
        let labels = (0..self.vertex_count() as u32).map(|i| VertexLabel::Anonymous(offset + i)).collect();
        LabeledGraph::new(labels, &self.edges()).expect("relabelling keeps the graph valid")
    }

    /// Applies a vertex permutation: vertex `v` gets the label of `perm[v]`'s
    /// old position. Used to shuffle vertex ids in tests.
    pub fn permuted(&self, perm: &[usize]) -> LabeledGraph {
        let n = self.vertex_count();
        let labels = (0..n as u32).map(VertexLabel::Anonymous).collect();
        let edges: Vec<_> = self.edges().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
        LabeledGraph::new(labels, &edges).expect("permutation keeps the graph valid")
    }

    fn next_anonymous_id(&self) -> u32 {
        self.labels
            .iter()
            .filter_map(|l| match l {
                VertexLabel::Anonymous(id) => Some(id + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Graphviz rendering: one node line per vertex with its label, then one
    /// line per edge.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{name}\" {{\n");
        for (v, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("  {v} [label=\"{l}\"];\n"));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("  {a} -- {b};\n"));
        }
        out.push_str("}\n");
        out
    }

    /// Variable names, one per vertex, in vertex-id order.
    pub fn variable_names(&self) -> Vec<String> {
        self.labels.iter().map(ToString::to_string).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_names_round_trip() {
        let labels = [
            VertexLabel::PathVertex(3),
            VertexLabel::PathVertex(12),
            VertexLabel::Apex(1, 1),
            VertexLabel::Apex(12, 1),
            VertexLabel::PathBristle(1, 2),
            VertexLabel::ApexBristle(2, 3, 1),
            VertexLabel::ApexBristle(2, 3, 11),
            VertexLabel::Anonymous(7),
        ];
        for l in labels {
            let s = l.to_string();
            assert_eq!(s.parse::<VertexLabel>().unwrap(), l, "{s}");
        }
        assert_eq!(VertexLabel::Apex(1, 1).to_string(), "y11");
        assert_eq!(VertexLabel::PathBristle(1, 2).to_string(), "x1_2");
        assert!("z1".parse::<VertexLabel>().is_err());
        assert!("y1".parse::<VertexLabel>().is_err());
    }

    #[test]
    fn canonical_order_sorts_by_label() {
        let g = LabeledGraph::new(
            vec![VertexLabel::Apex(1, 1), VertexLabel::PathVertex(2), VertexLabel::PathVertex(1)],
            &[(0, 1), (0, 2), (1, 2)],
        )
        .unwrap();
        assert_eq!(g.labels(), &[VertexLabel::PathVertex(1), VertexLabel::PathVertex(2), VertexLabel::Apex(1, 1)]);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn rejects_loops_and_duplicate_labels() {
        assert_eq!(LabeledGraph::from_edge_list(2, &[(1, 1)]), Err(Error::Loop(1, 1)));
        assert!(LabeledGraph::new(vec![VertexLabel::PathVertex(1); 2], &[]).is_err());
        assert_eq!(LabeledGraph::from_edge_list(2, &[(0, 2)]), Err(Error::UnknownVertex(2)));
    }

    #[test]
    fn parallel_edges_merge() {
        let g = LabeledGraph::from_edge_list(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn fuse_path_endpoints_deduplicates() {
        // P_3 endpoints are non-adjacent; both edges land on the same pair
        let p3 = LabeledGraph::path(3);
        let fused = p3.fuse(0, 2).unwrap();
        assert_eq!(fused.vertex_count(), 2);
        assert_eq!(fused.edge_count(), 1);
    }

    #[test]
    fn fuse_adjacent_is_loop_error() {
        let p2 = LabeledGraph::path(2);
        assert_eq!(p2.fuse(0, 1), Err(Error::Loop(0, 1)));
    }

    #[test]
    fn corona_counts() {
        let p2 = LabeledGraph::path(2);
        let c = p2.corona(&LabeledGraph::null(1));
        assert_eq!((c.vertex_count(), c.edge_count()), (4, 3));
        let c3 = LabeledGraph::cycle(3).unwrap().corona(&LabeledGraph::null(1));
        assert_eq!((c3.vertex_count(), c3.edge_count()), (6, 6));
        let k2 = LabeledGraph::path(2);
        let c = LabeledGraph::cycle(4).unwrap().corona(&k2);
        // |V| = 4 + 4*2, |E| = 4 + 4*(1 + 2)
        assert_eq!((c.vertex_count(), c.edge_count()), (12, 16));
    }

    #[test]
    fn bristle_labels_follow_parent() {
        let g = LabeledGraph::path(2).bristle(2);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 5);
        let leaf = g.find(VertexLabel::PathBristle(2, 2)).unwrap();
        let parent = g.find(VertexLabel::PathVertex(2)).unwrap();
        assert_eq!(g.neighbors(leaf), &[parent]);
    }

    #[test]
    fn strip_isolated_counts() {
        let g = LabeledGraph::from_edge_list(5, &[(0, 1)]).unwrap();
        let (h, k) = g.strip_isolated();
        assert_eq!((h.vertex_count(), h.edge_count(), k), (2, 1, 3));
        let (h, k) = LabeledGraph::null(5).strip_isolated();
        assert_eq!((h.vertex_count(), k), (0, 5));
    }

    #[test]
    fn dot_has_one_line_per_edge() {
        let dot = LabeledGraph::cycle(3).unwrap().to_dot("c3");
        assert_eq!(dot.lines().filter(|l| l.contains("--")).count(), 3);
        assert!(dot.contains("label=\"x1\""));
    }

    #[test]
    fn components_split() {
        let g = LabeledGraph::from_edge_list(5, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3], vec![4]]);
    }
}

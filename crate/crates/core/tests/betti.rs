use edgeideal::betti::{independence_complex, SimplicialComplex};
use edgeideal::graph::LabeledGraph;
use edgeideal::ideal::{edge_ideal, Monomial, MonomialIdeal};
use edgeideal::{betti_table, betti_table_taylor, invariants, BettiOptions, Error, Field};
use proptest::prelude::*;

fn single(field: Field) -> BettiOptions {
    BettiOptions { field, threads: Some(1), ..BettiOptions::default() }
}

/// Independent sets counted by brute force over all vertex subsets.
fn independent_sets(g: &LabeledGraph) -> Vec<u64> {
    let n = g.vertex_count();
    (0..1u64 << n).filter(|&s| g.edges().iter().all(|&(a, b)| s >> a & 1 == 0 || s >> b & 1 == 0)).collect()
}

/// Coefficients of `sum_F t^|F| (1-t)^(n-|F|)`, the numerator of the Hilbert
/// series of `S/I` over `(1-t)^n`.
fn hilbert_numerator(faces: &[u64], n: usize) -> Vec<i64> {
    let mut out = vec![0i64; n + 1];
    for f in faces {
        let k = f.count_ones() as usize;
        let mut binom = 1i64;
        for m in 0..=n - k {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            out[k + m] += sign * binom;
            binom = binom * (n - k - m) as i64 / (m + 1) as i64;
        }
    }
    out
}

/// `sum_{i,j} (-1)^i beta_{i,j} t^j`.
fn betti_numerator(ideal: &MonomialIdeal, n: usize) -> Vec<i64> {
    let table = betti_table(ideal, &single(Field::GF2)).unwrap();
    let mut out = vec![0i64; n + 1];
    for ((i, j), b) in table.entries() {
        out[j] += if i % 2 == 0 { b as i64 } else { -(b as i64) };
    }
    out
}

fn graph_from(n: usize, pairs: Vec<(usize, usize)>) -> LabeledGraph {
    let mut edges: Vec<(usize, usize)> =
        pairs.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))).collect();
    edges.sort_unstable();
    edges.dedup();
    LabeledGraph::from_edge_list(n, &edges).unwrap()
}

fn arb_graph(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = LabeledGraph> {
    (1usize..=max_vertices)
        .prop_flat_map(move |n| (Just(n), proptest::collection::vec((0..n, 0..n), 0..=max_edges)))
        .prop_map(|(n, pairs)| graph_from(n, pairs))
        .prop_filter("at most 12 edges", |g| g.edge_count() <= 12)
}

#[test]
fn single_generator_is_koszul() {
    let i = MonomialIdeal::new(2, [Monomial::from_vars([0, 1])]).unwrap();
    let t = betti_table(&i, &BettiOptions::default()).unwrap();
    assert_eq!(t.entries().collect::<Vec<_>>(), vec![((0, 0), 1), ((1, 2), 1)]);
    assert_eq!(t, betti_table_taylor(&i, Field::GF2).unwrap());
}

#[test]
fn path_and_cycle_regularity_follow_known_formulas() {
    // reg S/I(P_n) = floor((n+1)/3); reg S/I(C_n) = floor(n/3) + [n = 2 mod 3].
    for n in 2..=13 {
        let reg = invariants(&edge_ideal(&LabeledGraph::path(n)).unwrap(), &BettiOptions::default()).unwrap().reg;
        assert_eq!(reg, (n + 1) / 3, "P_{n}");
    }
    for n in 3..=13 {
        let reg =
            invariants(&edge_ideal(&LabeledGraph::cycle(n).unwrap()).unwrap(), &BettiOptions::default()).unwrap().reg;
        assert_eq!(reg, n / 3 + usize::from(n % 3 == 2), "C_{n}");
    }
}

#[test]
fn cycle_depth_matches_known_formula() {
    // depth S/I(C_n) = ceil((n-1)/3) for n >= 3.
    for n in 3..=12 {
        let depth =
            invariants(&edge_ideal(&LabeledGraph::cycle(n).unwrap()).unwrap(), &BettiOptions::default()).unwrap().depth;
        assert_eq!(depth, (n - 1).div_ceil(3), "C_{n}");
    }
}

#[test]
fn caps_and_degenerate_ideals() {
    let big = edge_ideal(&LabeledGraph::path(18)).unwrap();
    assert!(matches!(
        betti_table(&big, &BettiOptions::default()),
        Err(Error::TooManyVariables { count: 18, limit: 16 })
    ));
    let unit = MonomialIdeal::unit(3);
    assert_eq!(betti_table(&unit, &BettiOptions::default()).unwrap_err(), Error::UnitIdeal);
    let zero = invariants(&MonomialIdeal::zero(4), &BettiOptions::default()).unwrap();
    assert_eq!((zero.reg, zero.pdim, zero.depth), (0, 0, 4));
    let g = LabeledGraph::from_edge_list(5, &[(0, 1)]).unwrap();
    let inv = invariants(&edge_ideal(&g).unwrap(), &BettiOptions::default()).unwrap();
    assert_eq!((inv.reg, inv.pdim, inv.depth), (1, 1, 4));
}

#[test]
fn thread_counts_agree() {
    let i =
        edge_ideal(&"brs(q=1,tsnake(n=2,p=1))".parse::<edgeideal::FamilyParams>().unwrap().build().unwrap()).unwrap();
    let one = betti_table(&i, &single(Field::GF2)).unwrap();
    for threads in [Some(3), None] {
        assert_eq!(one, betti_table(&i, &BettiOptions { threads, ..BettiOptions::default() }).unwrap());
    }
}

#[test]
fn complex_of_empty_graph_is_simplex() {
    let c = independence_complex(&LabeledGraph::null(4)).unwrap();
    assert_eq!(c.face_count(), 16);
    assert!(c.is_face(Monomial::from_vars([0, 1, 2, 3])));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn faces_are_independent_sets(g in arb_graph(8, 16)) {
        let c = independence_complex(&g).unwrap();
        let mut faces: Vec<u64> = c.faces().into_iter().map(|m| m.0).collect();
        faces.sort_unstable();
        prop_assert_eq!(faces, independent_sets(&g));
    }

    #[test]
    fn betti_numbers_give_the_hilbert_series(g in arb_graph(8, 16)) {
        let n = g.vertex_count();
        let ideal = edge_ideal(&g).unwrap();
        prop_assert_eq!(betti_numerator(&ideal, n), hilbert_numerator(&independent_sets(&g), n));
    }

    #[test]
    fn hochster_equals_taylor(g in arb_graph(8, 16)) {
        let ideal = edge_ideal(&g).unwrap();
        prop_assert_eq!(
            betti_table(&ideal, &single(Field::GF2)).unwrap(),
            betti_table_taylor(&ideal, Field::GF2).unwrap()
        );
    }

    #[test]
    fn taylor_agrees_over_gf3(g in arb_graph(7, 10)) {
        let ideal = edge_ideal(&g).unwrap();
        prop_assert_eq!(
            betti_table(&ideal, &single(Field::GF3)).unwrap(),
            betti_table_taylor(&ideal, Field::GF3).unwrap()
        );
    }

    #[test]
    fn auslander_buchsbaum_bookkeeping(g in arb_graph(8, 16)) {
        let inv = invariants(&edge_ideal(&g).unwrap(), &BettiOptions::default()).unwrap();
        prop_assert_eq!(inv.depth + inv.pdim, g.vertex_count());
        prop_assert!(inv.depth >= 1 || g.vertex_count() == 0);
    }

    #[test]
    fn stanley_reisner_of_edge_ideal_is_independence_complex(g in arb_graph(7, 12)) {
        let a = independence_complex(&g).unwrap();
        let b = SimplicialComplex::stanley_reisner(&edge_ideal(&g).unwrap()).unwrap();
        prop_assert_eq!(a.faces(), b.faces());
    }
}

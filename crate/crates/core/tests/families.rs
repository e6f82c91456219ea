use edgeideal::graph::LabeledGraph;
use edgeideal::iso::{find_isomorphism, is_isomorphic};
use edgeideal::{FamilyParams as F, VertexLabel};
use proptest::prelude::*;

fn counts(f: &F) -> (i64, i64) {
    let g = f.build().unwrap();
    (g.vertex_count() as i64, g.edge_count() as i64)
}

#[test]
fn snake_and_bristled_counts_match_formulas() {
    for n in 1..=6 {
        for p in 1..=4 {
            assert_eq!(counts(&F::TriSnake { n, p }), (1 + n + n * p, (2 * p + 1) * n));
            for q in 1..=3 {
                let v = (1 + q) * (1 + n + n * p);
                let e = (2 * p + 1) * n + (1 + n + n * p) * q;
                assert_eq!(counts(&F::BristledTriSnake { n, p, q }), (v, e));
                if n >= 3 {
                    let v = (q + 1) * (p + 1) * n;
                    let e = n * (q * (p + 1) + 2 * p + 1);
                    assert_eq!(counts(&F::BristledOuroboros { n, p, q }), (v, e));
                }
            }
        }
    }
}

#[test]
fn closed_count_formulas_agree_with_construction() {
    let specs = [
        "star(u=5)",
        "brs(q=2,star(u=3))",
        "tsnake_star(n=3,p=2)",
        "tsnake_star2(n=2,p=3)",
        "brs(q=2,tsnake_star(n=2,p=2))",
        "brs(q=1,tsnake_star2(n=3,p=1))",
        "ouroboros(n=5,p=2)",
        "brs(q=2,brs(q=1,path(3)))",
        "cycle(n=7)",
    ];
    for s in specs {
        let f: F = s.parse().unwrap();
        assert_eq!(counts(&f), (f.vertex_count(), f.edge_count()), "{s}");
    }
}

#[test]
fn display_round_trips() {
    for s in ["tsnake(n=3,p=3)", "brs(q=3,ouroboros(n=4,p=2))", "brs(q=2,tsnake_star2(n=0,p=1))", "path(n=4)"] {
        let f: F = s.parse().unwrap();
        assert_eq!(f.to_string(), s);
    }
    assert_eq!("tsnake( 3 , p = 2 )".parse::<F>().unwrap(), F::TriSnake { n: 3, p: 2 });
}

#[test]
fn parse_errors_carry_positions() {
    let err = "tsnake(n=3,p=)".parse::<F>().unwrap_err();
    assert!(matches!(err, edgeideal::Error::Parse { position: 13, .. }), "{err:?}");
    assert!(matches!("hexagon(n=1)".parse::<F>(), Err(edgeideal::Error::Parse { position: 0, .. })));
    assert!("tsnake(n=1,p=1) x".parse::<F>().is_err());
}

#[test]
fn invalid_parameters_are_rejected() {
    for s in ["ouroboros(n=2,p=1)", "tsnake(n=0,p=1)", "star(u=0)", "brs(q=-1,star(u=1))"] {
        let f: F = s.parse().unwrap();
        assert!(f.build().is_err(), "{s}");
    }
}

#[test]
fn fused_snake_is_ouroboros() {
    for n in 3..=5u32 {
        for p in 1..=3 {
            let snake = F::TriSnake { n: n as i64, p }.build().unwrap();
            let a = snake.find(VertexLabel::PathVertex(1)).unwrap();
            let b = snake.find(VertexLabel::PathVertex(n + 1)).unwrap();
            let fused = snake.fuse(a, b).unwrap();
            assert!(is_isomorphic(&fused, &F::Ouroboros { n: n as i64, p }.build().unwrap()), "n={n} p={p}");
        }
    }
}

fn arb_graph() -> impl Strategy<Value = LabeledGraph> {
    (1usize..=8).prop_flat_map(|n| (Just(n), proptest::collection::vec((0..n, 0..n), 0..=14))).prop_map(|(n, pairs)| {
        let mut edges: Vec<(usize, usize)> =
            pairs.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        edges.dedup();
        LabeledGraph::from_edge_list(n, &edges).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, ..ProptestConfig::default() })]

    #[test]
    fn bristle_is_corona_with_null_graph(g in arb_graph(), q in 1usize..=3) {
        let corona = g.corona(&LabeledGraph::null(q));
        prop_assert!(is_isomorphic(&g.bristle(q), &corona));
    }

    #[test]
    fn isomorphism_survives_relabelling(g in arb_graph(), seed in any::<u64>()) {
        prop_assert!(is_isomorphic(&g, &g));
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let moved = g.permuted(&perm);
        let map = find_isomorphism(&g, &moved).expect("relabelled graph is isomorphic");
        for (a, b) in g.edges() {
            prop_assert!(moved.has_edge(map[a], map[b]));
        }
    }

    #[test]
    fn degree_sequence_separates_non_isomorphic(g in arb_graph(), h in arb_graph()) {
        if is_isomorphic(&g, &h) {
            prop_assert_eq!(g.degree_sequence(), h.degree_sequence());
        }
    }
}

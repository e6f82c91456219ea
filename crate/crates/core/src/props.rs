//! Seeded randomized property checks of the algebraic toolkit.
//!
//! Each property draws its own stream from the run seed, so results depend
//! only on the seed and the property name.

use rand::seq::SliceRandom;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::betti::{betti_table, betti_table_taylor, invariants, BettiOptions};
use crate::error::Result;
use crate::graph::LabeledGraph;
use crate::ideal::{edge_ideal, Monomial, MonomialIdeal};
use crate::linalg::Field;
use crate::sdepth::{stanley_depth, StanleyOptions};
use crate::verify::SCHEMA_VERSION;

/// Outcome of one property over its corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub trials: usize,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropsReport {
    pub schema_version: u32,
    pub seed: u64,
    pub results: Vec<PropertyResult>,
}

impl PropsReport {
    pub fn exit_code(&self) -> i32 {
        if self.results.iter().all(PropertyResult::passed) {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,trials,violations,first_counterexample\n");
        for r in &self.results {
            let ce = r.first_counterexample.clone().unwrap_or_default().replace('"', "'");
            out.push_str(&format!("{},{},{},\"{}\"\n", r.name, r.trials, r.violations, ce));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("seed {}\n", self.seed);
        for r in &self.results {
            let verdict = if r.passed() { "pass" } else { "FAIL" };
            out.push_str(&format!("{verdict:<5} {:<24} {} trials, {} violations\n", r.name, r.trials, r.violations));
            if let Some(ce) = &r.first_counterexample {
                out.push_str(&format!("      first counterexample: {ce}\n"));
            }
        }
        out
    }
}

/// Property names in run order.
pub const PROPERTIES: [&str; 9] = [
    "hochster_vs_taylor",
    "colon_depth",
    "colon_sdepth",
    "union_additivity",
    "free_variable_shift",
    "sdepth_at_least_depth",
    "field_agreement",
    "cycle_symmetry",
    "relabel_invariance",
];

/// Random graph with at most `max_vertices` vertices and `max_edges` edges.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> LabeledGraph {
    let n = rng.random_range(1..=max_vertices);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(rng);
    let m = rng.random_range(0..=pairs.len().min(max_edges));
    pairs.truncate(m);
    LabeledGraph::from_edge_list(n, &pairs).expect("pairs are simple edges")
}

fn describe(g: &LabeledGraph) -> String {
    format!("{} vertices, edges {:?}", g.vertex_count(), g.edges())
}

/// Random squarefree monomial outside `ideal`, if one is found quickly.
fn random_non_member<R: Rng>(rng: &mut R, ideal: &MonomialIdeal) -> Option<Monomial> {
    for _ in 0..64 {
        let m = Monomial::from_vars((0..ideal.n_vars()).filter(|_| rng.random_bool(0.3)));
        if !ideal.contains(m) {
            return Some(m);
        }
    }
    None
}

struct Tally {
    result: PropertyResult,
}

impl Tally {
    fn new(name: &str) -> Tally {
        Tally { result: PropertyResult { name: name.into(), trials: 0, violations: 0, first_counterexample: None } }
    }

    fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        self.result.trials += 1;
        if !ok {
            self.result.violations += 1;
            if self.result.first_counterexample.is_none() {
                self.result.first_counterexample = Some(counterexample());
            }
        }
    }
}

fn stream(seed: u64, name: &str) -> ChaCha8Rng {
    let salt = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

fn single() -> BettiOptions {
    BettiOptions { threads: Some(1), ..BettiOptions::default() }
}

fn depth(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(invariants(ideal, &single())?.depth)
}

fn sdepth(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(stanley_depth(ideal, &StanleyOptions::default())?.value)
}

/// Runs one property by name. Unknown names give `None`.
pub fn run_property(name: &str, seed: u64) -> Option<Result<PropertyResult>> {
    let mut rng = stream(seed, name);
    let mut t = Tally::new(name);
    let run = |rng: &mut ChaCha8Rng, t: &mut Tally| -> Result<()> {
        match name {
            "hochster_vs_taylor" => {
                for _ in 0..240 {
                    let g = random_graph(rng, 8, 12);
                    let i = edge_ideal(&g)?;
                    let ok = betti_table(&i, &single())? == betti_table_taylor(&i, Field::GF2)?;
                    t.record(ok, || describe(&g));
                }
            }
            "colon_depth" => {
                for _ in 0..50 {
                    let g = random_graph(rng, 8, 12);
                    let i = edge_ideal(&g)?;
                    let Some(m) = random_non_member(rng, &i) else { continue };
                    let (before, after) = (depth(&i)?, depth(&i.colon(m)?)?);
                    t.record(before <= after, || {
                        format!("{}; m = {:?}; {before} > {after}", describe(&g), m.vars().collect::<Vec<_>>())
                    });
                }
            }
            "colon_sdepth" => {
                for _ in 0..50 {
                    let g = random_graph(rng, 8, 12);
                    let i = edge_ideal(&g)?;
                    let before = sdepth(&i)?;
                    for l in 0..g.vertex_count() {
                        let colon = i.colon(Monomial::var(l))?;
                        let after = sdepth(&colon)?;
                        t.record(before <= after, || format!("{}; l = {l}; {before} > {after}", describe(&g)));
                    }
                }
            }
            "union_additivity" => {
                for _ in 0..50 {
                    let g = random_graph(rng, 6, 8);
                    let h = random_graph(rng, 6, 8);
                    let u = g.disjoint_union(&h.anonymized(g.vertex_count() as u32))?;
                    let (a, b, c) = (
                        invariants(&edge_ideal(&g)?, &single())?,
                        invariants(&edge_ideal(&h)?, &single())?,
                        invariants(&edge_ideal(&u)?, &single())?,
                    );
                    let ok = c.reg == a.reg + b.reg && c.depth == a.depth + b.depth;
                    t.record(ok, || format!("G: {}; H: {}", describe(&g), describe(&h)));
                }
            }
            "free_variable_shift" => {
                for _ in 0..50 {
                    let g = random_graph(rng, 7, 10);
                    let s = rng.random_range(1..=3);
                    let i = edge_ideal(&g)?;
                    let shifted = i.with_free_variables(s)?;
                    let (a, b) = (invariants(&i, &single())?, invariants(&shifted, &single())?);
                    let ok = a.reg == b.reg && b.depth == a.depth + s && sdepth(&shifted)? == sdepth(&i)? + s;
                    t.record(ok, || format!("{}; s = {s}", describe(&g)));
                }
            }
            "sdepth_at_least_depth" => {
                for _ in 0..100 {
                    let g = random_graph(rng, 8, 12);
                    let i = edge_ideal(&g)?;
                    let (d, sd) = (depth(&i)?, sdepth(&i)?);
                    t.record(sd >= d, || format!("{}; sdepth {sd} < depth {d}", describe(&g)));
                }
            }
            "field_agreement" => {
                for _ in 0..100 {
                    let g = random_graph(rng, 8, 12);
                    let i = edge_ideal(&g)?;
                    let a = invariants(&i, &single())?;
                    let b = invariants(&i, &BettiOptions { field: Field::GF3, ..single() })?;
                    let ok = (a.reg, a.pdim) == (b.reg, b.pdim);
                    t.record(ok, || describe(&g));
                }
            }
            "cycle_symmetry" => {
                for n in 3..=9 {
                    let c = LabeledGraph::cycle(n)?;
                    let base = betti_table(&edge_ideal(&c)?, &single())?;
                    let rotation: Vec<usize> = (0..n).map(|v| (v + 1) % n).collect();
                    let reflection: Vec<usize> = (0..n).map(|v| (n - v) % n).collect();
                    for perm in [rotation, reflection] {
                        let moved = c.permuted(&perm);
                        let ok = moved.edges().iter().all(|&(a, b)| c.has_edge(a, b))
                            && betti_table(&edge_ideal(&moved)?, &single())? == base;
                        t.record(ok, || format!("C_{n} under {perm:?}"));
                    }
                }
            }
            "relabel_invariance" => {
                for _ in 0..50 {
                    let g = random_graph(rng, 8, 12);
                    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
                    perm.shuffle(rng);
                    let moved = g.permuted(&perm);
                    let ok = betti_table(&edge_ideal(&g)?, &single())? == betti_table(&edge_ideal(&moved)?, &single())?
                        && crate::iso::is_isomorphic(&g, &moved);
                    t.record(ok, || format!("{}; perm {perm:?}", describe(&g)));
                }
            }
            _ => unreachable!(),
        }
        Ok(())
    };
    if !PROPERTIES.contains(&name) {
        return None;
    }
    Some(run(&mut rng, &mut t).map(|()| t.result))
}

/// Runs every property in [`PROPERTIES`] order.
pub fn run_all(seed: u64) -> Result<PropsReport> {
    let results =
        PROPERTIES.iter().map(|name| run_property(name, seed).expect("known property")).collect::<Result<_>>()?;
    Ok(PropsReport { schema_version: SCHEMA_VERSION, seed, results })
}

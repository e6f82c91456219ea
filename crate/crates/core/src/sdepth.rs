//! Stanley depth of `S/I` through interval partitions of the face poset.
//!
//! `sdepth(S/I) ≥ d` iff the faces of size at most `d` split into disjoint
//! intervals `[σ, τ]` with `|τ| = d` and every member a face. Larger faces
//! are covered by singleton intervals, and any interval with a larger top can
//! be trimmed to one of this shape. Feasibility is monotone in `d`, so the
//! exact value is found by binary search.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{Monomial, MonomialIdeal};

/// Most variables a face poset is enumerated for.
pub const POSET_CAP: usize = 14;
/// Default limit for the exact search.
pub const DEFAULT_EXACT_CAP: usize = 10;

/// The faces of the Stanley-Reisner complex of `I`, ordered by size and
/// then by mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacePoset {
    n_vars: usize,
    faces: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl FacePoset {
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn faces(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.faces.iter().map(|&f| Monomial(f))
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, sigma: Monomial) -> bool {
        self.index.contains_key(&sigma.0)
    }

    pub fn max_face_size(&self) -> usize {
        self.faces.last().map_or(0, |f| f.count_ones() as usize)
    }
}

/// Variables of `I` that are neither generators nor free.
fn effective_vars(ideal: &MonomialIdeal) -> usize {
    ideal.support().degree() - killed(ideal).degree()
}

fn killed(ideal: &MonomialIdeal) -> Monomial {
    Monomial(ideal.gens().iter().filter(|g| g.degree() == 1).fold(0, |m, g| m | g.0))
}

/// Enumerates the faces of `S/I`. Variables lying in `I` never occur in a
/// face, so the cap counts only the others.
pub fn face_poset(ideal: &MonomialIdeal) -> Result<FacePoset> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let live = ideal.ambient().strip(killed(ideal));
    if live.degree() > POSET_CAP {
        return Err(Error::TooManyVariables { count: live.degree(), limit: POSET_CAP });
    }
    let verts: Vec<usize> = live.vars().collect();
    let gens: Vec<u64> = ideal.gens().iter().map(|g| g.0).collect();
    let mut faces = Vec::new();
    let mut stack = vec![(0u64, 0usize)];
    while let Some((sigma, start)) = stack.pop() {
        faces.push(sigma);
        for (k, &v) in verts.iter().enumerate().skip(start) {
            let next = sigma | 1 << v;
            if gens.iter().all(|&g| g & !next != 0) {
                stack.push((next, k + 1));
            }
        }
    }
    faces.sort_unstable_by_key(|&f| (f.count_ones(), f));
    let index = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    Ok(FacePoset { n_vars: ideal.n_vars(), faces, index })
}

/// Disjoint intervals `[lower, upper]` covering a face poset.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalPartition {
    pub intervals: Vec<(Monomial, Monomial)>,
}

impl IntervalPartition {
    /// `min |upper|` over the intervals.
    pub fn value(&self) -> usize {
        self.intervals.iter().map(|(_, t)| t.degree()).min().unwrap_or(0)
    }

    /// Checks that each interval is non-empty and made of faces, that the
    /// intervals are disjoint and that they cover the poset. Returns the
    /// witness value.
    pub fn validate(&self, poset: &FacePoset) -> std::result::Result<usize, String> {
        let mut seen: HashSet<u64> = HashSet::new();
        for &(s, t) in &self.intervals {
            if !s.divides(t) {
                return Err(format!("lower {:#x} is not inside upper {:#x}", s.0, t.0));
            }
            for rho in between(s.0, t.0) {
                if !poset.contains(Monomial(rho)) {
                    return Err(format!("{rho:#x} in [{:#x}, {:#x}] is not a face", s.0, t.0));
                }
                if !seen.insert(rho) {
                    return Err(format!("{rho:#x} is covered twice"));
                }
            }
        }
        if seen.len() != poset.len() {
            return Err(format!("{} of {} faces covered", seen.len(), poset.len()));
        }
        Ok(self.value())
    }

    /// JSON list of `{lower: [...], upper: [...]}` with variable names.
    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        #[derive(Serialize)]
        struct Interval<'a> {
            lower: Vec<&'a str>,
            upper: Vec<&'a str>,
        }
        let list: Vec<Interval> = self
            .intervals
            .iter()
            .map(|(s, t)| Interval {
                lower: s.vars().map(|v| names[v].as_str()).collect(),
                upper: t.vars().map(|v| names[v].as_str()).collect(),
            })
            .collect();
        serde_json::to_value(list).expect("plain data serializes")
    }
}

/// All `ρ` with `s ⊆ ρ ⊆ t`.
fn between(s: u64, t: u64) -> impl Iterator<Item = u64> {
    let diff = t & !s;
    let mut sub = 0u64;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = s | sub;
        sub = sub.wrapping_sub(diff) & diff;
        done = sub == 0;
        Some(out)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StanleyOptions {
    /// Largest number of effective variables the exact search accepts.
    pub exact_cap: usize,
    /// Search on the support of `I` and add the free variables afterwards.
    pub strip_free: bool,
}

impl Default for StanleyOptions {
    fn default() -> Self {
        StanleyOptions { exact_cap: DEFAULT_EXACT_CAP, strip_free: true }
    }
}

/// Exact Stanley depth with an optimal witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StanleyDepth {
    pub value: usize,
    pub witness: IntervalPartition,
}

struct Search<'a> {
    faces: &'a [u64],
    index: &'a HashMap<u64, usize>,
    d: usize,
    /// Number of leading faces with size below `d`.
    below: usize,
    covered: Vec<u64>,
    chosen: Vec<(u64, u64)>,
    failed: HashSet<Vec<u64>>,
    greedy: bool,
}

impl<'a> Search<'a> {
    fn new(poset: &'a FacePoset, d: usize, greedy: bool) -> Search<'a> {
        let below = poset.faces.partition_point(|f| (f.count_ones() as usize) < d);
        Search {
            faces: &poset.faces,
            index: &poset.index,
            d,
            below,
            covered: vec![0; poset.faces.len().div_ceil(64)],
            chosen: Vec::new(),
            failed: HashSet::new(),
            greedy,
        }
    }

    fn is_covered(&self, i: usize) -> bool {
        self.covered[i / 64] >> (i % 64) & 1 == 1
    }

    fn toggle(&mut self, members: &[usize]) {
        for &i in members {
            self.covered[i / 64] ^= 1 << (i % 64);
        }
    }

    /// Members of `[σ, τ]` if all are uncovered faces.
    fn free_interval(&self, sigma: u64, tau: u64) -> Option<Vec<usize>> {
        between(sigma, tau).map(|rho| self.index.get(&rho).copied().filter(|&i| !self.is_covered(i))).collect()
    }

    fn run(&mut self) -> bool {
        let Some(i) = (0..self.below).find(|&i| !self.is_covered(i)) else {
            return true;
        };
        if !self.greedy && self.failed.contains(&self.covered) {
            return false;
        }
        let sigma = self.faces[i];
        let tops_from = self.faces.partition_point(|f| (f.count_ones() as usize) < self.d);
        let tops_to = self.faces.partition_point(|f| (f.count_ones() as usize) <= self.d);
        for k in tops_from..tops_to {
            let tau = self.faces[k];
            if sigma & !tau != 0 {
                continue;
            }
            let Some(members) = self.free_interval(sigma, tau) else {
                continue;
            };
            self.toggle(&members);
            self.chosen.push((sigma, tau));
            if self.run() {
                return true;
            }
            self.chosen.pop();
            self.toggle(&members);
            if self.greedy {
                return false;
            }
        }
        if !self.greedy {
            self.failed.insert(self.covered.clone());
        }
        false
    }

    /// The chosen intervals plus singletons for every face left over.
    fn partition(&self) -> IntervalPartition {
        let mut intervals: Vec<(Monomial, Monomial)> =
            self.chosen.iter().map(|&(s, t)| (Monomial(s), Monomial(t))).collect();
        for (i, &f) in self.faces.iter().enumerate().skip(self.below) {
            if !self.is_covered(i) {
                intervals.push((Monomial(f), Monomial(f)));
            }
        }
        IntervalPartition { intervals }
    }
}

fn feasible(poset: &FacePoset, d: usize, greedy: bool) -> Option<IntervalPartition> {
    if d > poset.max_face_size() {
        return None;
    }
    let mut search = Search::new(poset, d, greedy);
    search.run().then(|| search.partition())
}

/// Adds the variables of `free` to every interval top.
fn lift(partition: IntervalPartition, free: Monomial) -> IntervalPartition {
    IntervalPartition { intervals: partition.intervals.into_iter().map(|(s, t)| (s, t.lcm(free))).collect() }
}

/// Splits off the variables outside the support of `I` when requested.
fn reduce(ideal: &MonomialIdeal, strip_free: bool) -> Result<(MonomialIdeal, Vec<usize>, Monomial)> {
    if !strip_free {
        return Ok((ideal.clone(), (0..ideal.n_vars()).collect(), Monomial::ONE));
    }
    let support = ideal.support();
    let (reduced, old) = ideal.restrict(support);
    Ok((reduced, old, ideal.ambient().strip(support)))
}

fn to_ambient(partition: IntervalPartition, old: &[usize]) -> IntervalPartition {
    let map = |m: Monomial| Monomial::from_vars(m.vars().map(|v| old[v]));
    IntervalPartition { intervals: partition.intervals.into_iter().map(|(s, t)| (map(s), map(t))).collect() }
}

/// Largest `d` found by a greedy, non-backtracking cover, with its witness.
pub fn greedy_partition(ideal: &MonomialIdeal) -> Result<StanleyDepth> {
    let (reduced, old, free) = reduce(ideal, true)?;
    let poset = face_poset(&reduced)?;
    for d in (0..=poset.max_face_size()).rev() {
        if let Some(p) = feasible(&poset, d, true) {
            let witness = lift(to_ambient(p, &old), free);
            return Ok(StanleyDepth { value: witness.value(), witness });
        }
    }
    unreachable!("d = 0 is always feasible")
}

/// Exact Stanley depth of `S/I` by binary search over exact-cover
/// feasibility, starting from the greedy value.
pub fn stanley_depth(ideal: &MonomialIdeal, opts: &StanleyOptions) -> Result<StanleyDepth> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let (reduced, old, free) = reduce(ideal, opts.strip_free)?;
    let effective = effective_vars(&reduced) + (reduced.n_vars() - reduced.support().degree());
    if effective > opts.exact_cap {
        return Err(Error::TooManyVariables { count: effective, limit: opts.exact_cap });
    }
    let poset = face_poset(&reduced)?;
    let mut lo = (0..=poset.max_face_size())
        .rev()
        .find_map(|d| feasible(&poset, d, true).map(|p| (d, p)))
        .expect("d = 0 is always feasible");
    let mut hi = poset.max_face_size();
    while lo.0 < hi {
        let mid = (lo.0 + hi).div_ceil(2);
        match feasible(&poset, mid, false) {
            Some(p) => lo = (mid, p),
            None => hi = mid - 1,
        }
    }
    let witness = lift(to_ambient(lo.1, &old), free);
    Ok(StanleyDepth { value: witness.value(), witness })
}

/// Bounds `lower ≤ sdepth(S/I) ≤ upper`. The lower bound is the greedy
/// value. The upper bound is the largest face size, improved by
/// `sdepth(S/I) ≤ sdepth(S/(I : x_l))` for each variable `x_l ∉ I` of the
/// support, using the exact value of the colon when it is within the cap and
/// its own upper bound otherwise.
pub fn sdepth_bounds(ideal: &MonomialIdeal, opts: &StanleyOptions) -> Result<(usize, usize)> {
    let lower = greedy_partition(ideal)?.value;
    let upper = upper_bound(ideal, opts)?;
    Ok((lower, upper))
}

fn upper_bound(ideal: &MonomialIdeal, opts: &StanleyOptions) -> Result<usize> {
    let free = ideal.n_vars() - ideal.support().degree();
    let (reduced, _) = ideal.restrict(ideal.support());
    let poset = face_poset(&reduced)?;
    let mut best = poset.max_face_size();
    for l in reduced.support().strip(killed(&reduced)).vars() {
        let colon = reduced.colon(Monomial::var(l))?;
        let value = if effective_vars(&colon) <= opts.exact_cap {
            stanley_depth(&colon, &StanleyOptions { strip_free: true, ..*opts })?.value
        } else {
            upper_bound(&colon, opts)?
        };
        best = best.min(value);
    }
    Ok(best + free)
}

//! Graded Betti numbers of `S/I` for squarefree `I`.
//!
//! The main engine uses Hochster's formula
//! `β_{i,j} = Σ_{|W|=j} dim H̃_{j-i-1}(Δ_W)` over the Stanley-Reisner complex.
//! An independent second engine computes the same numbers from the
//! multigraded strands of the Taylor complex.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::ideal::{edge_ideal, Monomial, MonomialIdeal};
use crate::linalg::{BitMatrix, DenseMatrix, Field};

/// Default limit on the number of variables the subset scan will visit.
pub const DEFAULT_HOCHSTER_CAP: usize = 16;
/// Taylor oracle limit on minimal generators.
pub const TAYLOR_MAX_GENS: usize = 12;

/// The Stanley-Reisner complex of a squarefree ideal: `σ` is a face iff the
/// monomial `x^σ` is not in the ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    nonfaces: Vec<u64>,
    /// For each vertex, the minimal non-faces containing it.
    through: Vec<Vec<u64>>,
}

impl SimplicialComplex {
    pub fn stanley_reisner(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
        if ideal.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let n = ideal.n_vars();
        let nonfaces: Vec<u64> = ideal.gens().iter().map(|g| g.0).collect();
        let through = (0..n).map(|v| nonfaces.iter().copied().filter(|g| g >> v & 1 == 1).collect()).collect();
        Ok(SimplicialComplex { n, nonfaces, through })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn is_face(&self, sigma: Monomial) -> bool {
        !self.nonfaces.iter().any(|&g| g & !sigma.0 == 0)
    }

    /// Faces inside `w`, grouped by cardinality and sorted by mask within
    /// each group. Index 0 holds the empty face.
    pub fn faces_within(&self, w: Monomial) -> Vec<Vec<u64>> {
        let verts: Vec<usize> = w.vars().collect();
        let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); verts.len() + 1];
        self.extend_faces(&verts, 0, 0, &mut by_size);
        while by_size.len() > 1 && by_size.last().is_some_and(|v| v.is_empty()) {
            by_size.pop();
        }
        for group in &mut by_size {
            group.sort_unstable();
        }
        by_size
    }

    fn extend_faces(&self, verts: &[usize], start: usize, sigma: u64, out: &mut Vec<Vec<u64>>) {
        out[sigma.count_ones() as usize].push(sigma);
        for (k, &v) in verts.iter().enumerate().skip(start) {
            let next = sigma | 1 << v;
            if self.through[v].iter().all(|&g| g & !next != 0) {
                self.extend_faces(verts, k + 1, next, out);
            }
        }
    }

    /// All faces, by size then mask.
    pub fn faces(&self) -> Vec<Monomial> {
        self.faces_within(self.ground()).into_iter().flatten().map(Monomial).collect()
    }

    pub fn face_count(&self) -> usize {
        self.faces_within(self.ground()).iter().map(Vec::len).sum()
    }

    fn ground(&self) -> Monomial {
        Monomial(if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 })
    }

    /// True if some vertex of `w` lies in no minimal non-face inside `w`;
    /// then `Δ_W` is a cone and has no reduced homology.
    fn is_cone(&self, w: u64) -> bool {
        let mut rest = w;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.through[v].iter().all(|&g| g & !w != 0) {
                return true;
            }
        }
        false
    }
}

/// Complex of independent sets of `g`, on vertex indices of `g`.
pub fn independence_complex(g: &LabeledGraph) -> Result<SimplicialComplex> {
    SimplicialComplex::stanley_reisner(&edge_ideal(g)?)
}

/// `dim H̃_k` for `k = -1, 0, 1, ...` (entry `k + 1`), given faces grouped
/// by size with the empty face in group 0.
pub fn reduced_homology(faces: &[Vec<u64>], field: Field) -> Vec<usize> {
    let top = faces.len();
    // ranks[s] = rank of the boundary from size-s faces to size-(s-1) faces
    let mut ranks = vec![0usize; top + 1];
    for s in 1..top {
        ranks[s] = boundary_rank(&faces[s], &faces[s - 1], field);
    }
    (0..top).map(|s| faces[s].len() - ranks[s] - ranks[s + 1]).collect()
}

fn boundary_rank(hi: &[u64], lo: &[u64], field: Field) -> usize {
    if hi.is_empty() || lo.is_empty() {
        return 0;
    }
    let index = |f: u64| lo.binary_search(&f).expect("boundary face present");
    if field == Field::GF2 {
        let mut m = BitMatrix::zeros(hi.len(), lo.len());
        for (r, &f) in hi.iter().enumerate() {
            let mut rest = f;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                m.set(r, index(f ^ bit));
            }
        }
        m.rank()
    } else {
        let mut m = DenseMatrix::zeros(field, hi.len(), lo.len());
        for (r, &f) in hi.iter().enumerate() {
            let mut rest = f;
            let mut sign = 1i64;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                m.set(r, index(f ^ bit), sign);
                sign = -sign;
            }
        }
        m.rank()
    }
}

/// Graded Betti numbers `β_{i,j}` of a quotient `S/I`. Only non-zero
/// entries are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub field: Field,
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new(field: Field) -> BettiTable {
        BettiTable { field, entries: BTreeMap::new() }
    }

    pub fn add(&mut self, i: usize, j: usize, beta: u64) {
        if beta > 0 {
            *self.entries.entry((i, j)).or_default() += beta;
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Non-zero entries as `((i, j), β)` in increasing `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn reg(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }

    pub fn pdim(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries.iter().filter(|(k, _)| k.0 == i).map(|(_, v)| v).sum()
    }

    /// `i,j,beta` rows with a header, non-zero entries only.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,beta\n");
        for ((i, j), b) in self.entries() {
            let _ = writeln!(out, "{i},{j},{b}");
        }
        out
    }

    /// Row `r`, column `i` holds `β_{i,i+r}`; zeros print as `.`.
    pub fn pretty(&self) -> String {
        let cols = self.pdim() + 1;
        let rows = self.reg() + 1;
        let mut cells: Vec<Vec<String>> = Vec::new();
        cells.push((0..cols).map(|i| i.to_string()).collect());
        cells.push((0..cols).map(|i| self.total(i).to_string()).collect());
        for r in 0..rows {
            cells.push(
                (0..cols)
                    .map(|i| match self.get(i, i + r) {
                        0 => ".".to_string(),
                        b => b.to_string(),
                    })
                    .collect(),
            );
        }
        let widths: Vec<usize> = (0..cols).map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(1)).collect();
        let heads: Vec<String> = std::iter::once(String::new())
            .chain(std::iter::once("total:".to_string()))
            .chain((0..rows).map(|r| format!("{r}:")))
            .collect();
        let hw = heads.iter().map(String::len).max().unwrap_or(0);
        let mut out = String::new();
        for (head, row) in heads.iter().zip(&cells) {
            let _ = write!(out, "{head:>hw$}");
            for (c, cell) in row.iter().enumerate() {
                let _ = write!(out, " {cell:>w$}", w = widths[c]);
            }
            out.push('\n');
        }
        out
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            i: usize,
            j: usize,
            beta: u64,
        }
        #[derive(Serialize)]
        struct Table {
            field: u32,
            entries: Vec<Entry>,
        }
        Table {
            field: self.field.characteristic(),
            entries: self.entries().map(|((i, j), beta)| Entry { i, j, beta }).collect(),
        }
        .serialize(s)
    }
}

/// Settings for the Hochster engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BettiOptions {
    pub field: Field,
    /// Limit on the size of the support of `I`.
    pub max_vars: usize,
    /// `Some(1)` runs on the calling thread; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for BettiOptions {
    fn default() -> Self {
        BettiOptions { field: Field::GF2, max_vars: DEFAULT_HOCHSTER_CAP, threads: None }
    }
}

impl BettiOptions {
    pub fn with_field(field: Field) -> BettiOptions {
        BettiOptions { field, ..BettiOptions::default() }
    }
}

/// Graded Betti numbers of `S/I` by Hochster's formula.
///
/// Variables outside the support of `I` do not change the Betti numbers,
/// so the scan runs over the support only and the cap applies to it.
pub fn betti_table(ideal: &MonomialIdeal, opts: &BettiOptions) -> Result<BettiTable> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let support = ideal.support();
    if support.degree() > opts.max_vars {
        return Err(Error::TooManyVariables { count: support.degree(), limit: opts.max_vars });
    }
    let (reduced, _) = ideal.restrict(support);
    let complex = SimplicialComplex::stanley_reisner(&reduced)?;
    let m = reduced.n_vars();
    let width = m + 1;
    let field = opts.field;

    let scan = |w: u64, mut acc: Vec<u64>| {
        if w != 0 && complex.is_cone(w) {
            return acc;
        }
        let faces = complex.faces_within(Monomial(w));
        let j = w.count_ones() as usize;
        for (s, h) in reduced_homology(&faces, field).into_iter().enumerate() {
            // group s is H̃_{s-1}, so i = j - s
            if h > 0 {
                acc[(j - s) * width + j] += h as u64;
            }
        }
        acc
    };
    let sum = |mut a: Vec<u64>, b: Vec<u64>| {
        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        a
    };
    let zero = || vec![0u64; width * width];
    let range = 0..1u64 << m;

    let flat = match opts.threads {
        Some(1) => range.fold(zero(), |acc, w| scan(w, acc)),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::InvalidParameter(e.to_string()))?;
            pool.install(|| range.into_par_iter().fold(zero, |acc, w| scan(w, acc)).reduce(zero, sum))
        }
        None => range.into_par_iter().fold(zero, |acc, w| scan(w, acc)).reduce(zero, sum),
    };

    let mut table = BettiTable::new(field);
    for (k, &b) in flat.iter().enumerate() {
        table.add(k / width, k % width, b);
    }
    Ok(table)
}

/// Graded Betti numbers from the Taylor complex: for each lcm `m` of a
/// subset of generators, the subsets with that lcm form a complex whose
/// homology in size `i` is `β_{i,m}`.
pub fn betti_table_taylor(ideal: &MonomialIdeal, field: Field) -> Result<BettiTable> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let gens = ideal.gens();
    let r = gens.len();
    if r > TAYLOR_MAX_GENS {
        return Err(Error::TooManyGenerators { count: r, limit: TAYLOR_MAX_GENS });
    }
    let mut lcm = vec![0u64; 1 << r];
    for f in 1..1usize << r {
        let low = f.trailing_zeros() as usize;
        lcm[f] = lcm[f & (f - 1)] | gens[low].0;
    }
    let mut strands: HashMap<u64, Vec<Vec<usize>>> = HashMap::new();
    for f in 0..1usize << r {
        let by_size = strands.entry(lcm[f]).or_insert_with(|| vec![Vec::new(); r + 1]);
        by_size[f.count_ones() as usize].push(f);
    }
    let mut table = BettiTable::new(field);
    for (m, by_size) in &strands {
        let mut ranks = vec![0usize; r + 2];
        for s in 1..=r {
            let (hi, lo) = (&by_size[s], &by_size[s - 1]);
            if hi.is_empty() || lo.is_empty() {
                continue;
            }
            let mut mat = DenseMatrix::zeros(field, hi.len(), lo.len());
            for (row, &f) in hi.iter().enumerate() {
                let mut sign = 1i64;
                for t in 0..r {
                    if f >> t & 1 == 0 {
                        continue;
                    }
                    let face = f & !(1 << t);
                    if lcm[face] == *m {
                        let col = lo.iter().position(|&x| x == face).expect("same strand");
                        mat.set(row, col, sign);
                    }
                    sign = -sign;
                }
            }
            ranks[s] = mat.rank();
        }
        let j = m.count_ones() as usize;
        for s in 0..=r {
            let h = by_size[s].len() - ranks[s] - ranks[s + 1];
            table.add(s, j, h as u64);
        }
    }
    Ok(table)
}

/// Regularity, projective dimension and depth of `S/I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantBundle {
    pub reg: usize,
    pub pdim: usize,
    pub depth: usize,
    pub n_vars: usize,
    pub field: Field,
}

impl InvariantBundle {
    pub fn from_table(table: &BettiTable, n_vars: usize) -> InvariantBundle {
        let pdim = table.pdim();
        InvariantBundle { reg: table.reg(), pdim, depth: n_vars - pdim, n_vars, field: table.field }
    }
}

pub fn invariants(ideal: &MonomialIdeal, opts: &BettiOptions) -> Result<InvariantBundle> {
    let table = betti_table(ideal, opts)?;
    Ok(InvariantBundle::from_table(&table, ideal.n_vars()))
}

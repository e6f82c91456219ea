//! Parameter-grid verification of the closed forms.
//!
//! Every grid point yields one cell per predicted invariant, one cell
//! comparing the recursive regularity with the homological one, and one cell
//! per decomposition rule that applies to the family at that point.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::betti::{invariants, BettiOptions, InvariantBundle, DEFAULT_HOCHSTER_CAP};
use crate::closed_form::{closed_form, Prediction};
use crate::decomp::{verify_decomposition, CATALOGUE};
use crate::error::{Error, Result};
use crate::families::FamilyParams;
use crate::ideal::edge_ideal;
use crate::linalg::Field;
use crate::recursion::{graph_regularity_by_recursion, RecursionOptions, RegValue};
use crate::sdepth::{sdepth_bounds, stanley_depth, StanleyOptions, DEFAULT_EXACT_CAP, POSET_CAP};

pub const SCHEMA_VERSION: u32 = 1;
/// Seed for every randomized corpus unless overridden.
pub const DEFAULT_SEED: u64 = 0x5EED_2024;

/// Inclusive integer range written `a..b` or `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn new(lo: i64, hi: i64) -> Result<IntRange> {
        if lo > hi {
            return Err(Error::InvalidParameter(format!("empty range {lo}..{hi}")));
        }
        Ok(IntRange { lo, hi })
    }

    pub fn values(self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<IntRange> {
        let parse = |t: &str, at: usize| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse { position: at, message: format!("`{}` is not an integer", t.trim()) })
        };
        match s.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                IntRange::new(parse(a, 0)?, parse(b, a.len() + 2)?)
            }
            None => {
                let v = parse(s, 0)?;
                IntRange::new(v, v)
            }
        }
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// A result whose formulas the grid checks, with its default grid.
#[derive(Debug, Clone, Copy)]
pub struct TheoremSpec {
    pub id: &'static str,
    pub title: &'static str,
    make: fn(i64, i64, i64) -> FamilyParams,
    default_n: (i64, i64),
    default_p: (i64, i64),
    default_q: (i64, i64),
    uses_p: bool,
    uses_q: bool,
    /// Default grids drop members with more vertices than this.
    default_max_vars: i64,
}

use FamilyParams as F;

pub const THEOREMS: [TheoremSpec; 10] = [
    TheoremSpec {
        id: "th2.8",
        title: "star S_u (n stands for u)",
        make: |n, _, _| F::Star { u: n },
        default_n: (1, 6),
        default_p: (1, 1),
        default_q: (1, 1),
        uses_p: false,
        uses_q: false,
        default_max_vars: 16,
    },
    TheoremSpec {
        id: "cor2.9",
        title: "bristled star S_{u,q} (n stands for u)",
        make: |n, _, q| F::BristledStar { u: n, q },
        default_n: (1, 2),
        default_p: (1, 1),
        default_q: (1, 2),
        uses_p: false,
        uses_q: true,
        default_max_vars: 16,
    },
    TheoremSpec {
        id: "lem3.2",
        title: "reg of T*_n(p)",
        make: |n, p, _| F::TriSnakeStar { n, p },
        default_n: (1, 4),
        default_p: (1, 2),
        default_q: (1, 1),
        uses_p: true,
        uses_q: false,
        default_max_vars: 14,
    },
    TheoremSpec {
        id: "th3.3",
        title: "reg of T_n(p)",
        make: |n, p, _| F::TriSnake { n, p },
        default_n: (1, 4),
        default_p: (1, 3),
        default_q: (1, 1),
        uses_p: true,
        uses_q: false,
        default_max_vars: 13,
    },
    TheoremSpec {
        id: "lem3.4",
        title: "invariants of Brs_q(T*_n(p))",
        make: |n, p, q| F::BristledTriSnakeStar { n, p, q },
        default_n: (1, 2),
        default_p: (1, 1),
        default_q: (1, 1),
        uses_p: true,
        uses_q: true,
        default_max_vars: 12,
    },
    TheoremSpec {
        id: "th3.5",
        title: "invariants of Brs_q(T_n(p))",
        make: |n, p, q| F::BristledTriSnake { n, p, q },
        default_n: (1, 2),
        default_p: (1, 2),
        default_q: (1, 2),
        uses_p: true,
        uses_q: true,
        default_max_vars: 12,
    },
    TheoremSpec {
        id: "lem4.2",
        title: "reg of T**_n(p)",
        make: |n, p, _| F::TriSnakeStarStar { n, p },
        default_n: (1, 3),
        default_p: (1, 2),
        default_q: (1, 1),
        uses_p: true,
        uses_q: false,
        default_max_vars: 14,
    },
    TheoremSpec {
        id: "th4.3",
        title: "reg of O_n(p)",
        make: |n, p, _| F::Ouroboros { n, p },
        default_n: (3, 4),
        default_p: (1, 3),
        default_q: (1, 1),
        uses_p: true,
        uses_q: false,
        default_max_vars: 16,
    },
    TheoremSpec {
        id: "lem4.4",
        title: "invariants of Brs_q(T**_n(p))",
        make: |n, p, q| F::BristledTriSnakeStarStar { n, p, q },
        default_n: (0, 1),
        default_p: (1, 1),
        default_q: (1, 1),
        uses_p: true,
        uses_q: true,
        default_max_vars: 12,
    },
    TheoremSpec {
        id: "th4.5",
        title: "invariants of Brs_q(O_n(p))",
        make: |n, p, q| F::BristledOuroboros { n, p, q },
        default_n: (3, 3),
        default_p: (1, 1),
        default_q: (1, 1),
        uses_p: true,
        uses_q: true,
        default_max_vars: 12,
    },
];

pub fn find_theorem(id: &str) -> Result<&'static TheoremSpec> {
    THEOREMS.iter().find(|t| t.id.eq_ignore_ascii_case(id)).ok_or_else(|| Error::UnknownTheorem(id.to_string()))
}

/// Optional overrides of a theorem's default grid.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GridRanges {
    pub n: Option<IntRange>,
    pub p: Option<IntRange>,
    pub q: Option<IntRange>,
}

impl TheoremSpec {
    /// Family members of the grid, in `(n, p, q)` lexicographic order.
    pub fn grid(&self, ranges: &GridRanges) -> Vec<FamilyParams> {
        let pick =
            |given: Option<IntRange>, default: (i64, i64)| given.unwrap_or(IntRange { lo: default.0, hi: default.1 });
        let explicit = ranges.n.is_some() || ranges.p.is_some() || ranges.q.is_some();
        let ns = pick(ranges.n, self.default_n);
        let ps = if self.uses_p { pick(ranges.p, self.default_p) } else { IntRange { lo: 1, hi: 1 } };
        let qs = if self.uses_q { pick(ranges.q, self.default_q) } else { IntRange { lo: 1, hi: 1 } };
        let mut out = Vec::new();
        for n in ns.values() {
            for p in ps.values() {
                for q in qs.values() {
                    let f = (self.make)(n, p, q);
                    if explicit || f.vertex_count() <= self.default_max_vars {
                        out.push(f);
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Outside every stated range; computed for information only.
    Observational,
    /// Not computed because of a cap.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Observational => "observational",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub family: String,
    pub params: FamilyParams,
    /// Result id the prediction comes from.
    pub source: String,
    pub invariant: String,
    pub computed: Option<i64>,
    pub predicted: Option<i64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub observational: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub field: Field,
    pub hochster_cap: usize,
    pub sdepth_cap: usize,
    /// Threads for the cell pool; `None` uses all cores.
    pub threads: Option<usize>,
    pub seed: u64,
    /// Record per-cell wall-clock times (makes reports non-reproducible).
    pub timings: bool,
    pub replay_rules: bool,
    pub recursion: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            field: Field::GF2,
            hochster_cap: DEFAULT_HOCHSTER_CAP,
            sdepth_cap: DEFAULT_EXACT_CAP,
            threads: None,
            seed: DEFAULT_SEED,
            timings: false,
            replay_rules: true,
            recursion: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub theorems: Vec<String>,
    pub config: VerifyConfig,
    pub ranges: GridRanges,
    pub cells: Vec<Cell>,
    pub summary: Summary,
}

impl VerificationReport {
    /// 0 if every claimed cell passed, 1 on any failure, 2 if nothing
    /// failed but some claimed cells were skipped.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.skipped > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,source,invariant,computed,predicted,status,detail\n");
        let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
        for c in &self.cells {
            out.push_str(&format!(
                "\"{}\",{},{},{},{},{},\"{}\"\n",
                c.family,
                c.source,
                c.invariant,
                opt(c.computed),
                opt(c.predicted),
                c.status,
                c.detail.clone().unwrap_or_default().replace('"', "'")
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "{:<14} {:<40} {:<16} computed {:>4}  predicted {:>4}  {}",
                c.status.to_string(),
                c.family,
                c.invariant,
                opt(c.computed),
                opt(c.predicted),
                c.source
            ));
            if let Some(d) = &c.detail {
                out.push_str(&format!("  ({d})"));
            }
            out.push('\n');
        }
        let s = self.summary;
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} observational, {} skipped\n",
            s.pass, s.fail, s.observational, s.skipped
        ));
        out
    }
}

/// Formula values for members outside the stated range, where the formula
/// still makes sense.
fn extrapolated(family: &FamilyParams) -> Option<(String, Prediction)> {
    match *family {
        F::Ouroboros { n, p } if n >= 3 && p >= 1 => {
            Some(("th4.3".into(), Prediction { reg: Some(n / 2), ..Prediction::default() }))
        }
        _ => None,
    }
}

struct CellBuilder<'a> {
    family: &'a FamilyParams,
    source: String,
    claimed: bool,
    timer: Option<Instant>,
    cells: Vec<Cell>,
}

impl CellBuilder<'_> {
    fn push(&mut self, invariant: &str, computed: Option<i64>, predicted: Option<i64>, detail: Option<String>) {
        let status = match (computed, predicted) {
            (None, _) => Status::Skipped,
            (Some(_), _) if !self.claimed => Status::Observational,
            (Some(c), Some(p)) if c == p => Status::Pass,
            (Some(_), Some(_)) => Status::Fail,
            (Some(_), None) => Status::Observational,
        };
        self.push_status(invariant, computed, predicted, status, detail);
    }

    fn push_status(
        &mut self,
        invariant: &str,
        computed: Option<i64>,
        predicted: Option<i64>,
        status: Status,
        detail: Option<String>,
    ) {
        let millis = self.timer.map(|t| t.elapsed().as_millis() as u64);
        self.cells.push(Cell {
            family: self.family.to_string(),
            params: self.family.clone(),
            source: self.source.clone(),
            invariant: invariant.to_string(),
            computed,
            predicted,
            status,
            detail,
            millis,
        });
    }
}

/// All cells for one family member.
pub fn verify_member(family: &FamilyParams, config: &VerifyConfig) -> Result<Vec<Cell>> {
    let g = family.build()?;
    let (source, predicted, claimed) = match closed_form(family) {
        Ok(cf) => (cf.source, cf.predicted, true),
        Err(Error::OutOfStatedRange(_)) => match extrapolated(family) {
            Some((s, p)) => (s, p, false),
            None => ("none".to_string(), Prediction::default(), false),
        },
        Err(e) => return Err(e),
    };
    let mut b = CellBuilder { family, source, claimed, timer: config.timings.then(Instant::now), cells: Vec::new() };
    let ideal = edge_ideal(&g)?;
    let opts = BettiOptions { field: config.field, max_vars: config.hochster_cap, threads: config.threads };
    let bundle: Option<InvariantBundle> = match invariants(&ideal, &opts) {
        Ok(bundle) => Some(bundle),
        Err(Error::TooManyVariables { .. }) => None,
        Err(e) => return Err(e),
    };
    let cap_note =
        || Some(format!("{} variables exceed the homology cap of {}", g.vertex_count(), config.hochster_cap));
    let as_i64 = |v: usize| Some(v as i64);

    if predicted.depth.is_some() {
        match bundle {
            Some(bd) => b.push("depth", as_i64(bd.depth), predicted.depth, None),
            None => b.push("depth", None, predicted.depth, cap_note()),
        }
    }
    if predicted.sdepth.is_some() {
        sdepth_cell(&mut b, &ideal, predicted.sdepth, config)?;
    }
    if predicted.reg.is_some() {
        match bundle {
            Some(bd) => b.push("reg", as_i64(bd.reg), predicted.reg, None),
            None => b.push("reg", None, predicted.reg, cap_note()),
        }
    }
    if predicted.pdim.is_some() {
        match bundle {
            Some(bd) => b.push("pdim", as_i64(bd.pdim), predicted.pdim, None),
            None => b.push("pdim", None, predicted.pdim, cap_note()),
        }
    }

    if config.recursion {
        let r = graph_regularity_by_recursion(&g, &RecursionOptions::default())?;
        let reference = bundle.map(|bd| bd.reg as i64);
        let detail = format!(
            "pivot {} case {}; {} states",
            r.root_pivot.as_deref().unwrap_or("-"),
            r.root_case.map(|c| format!("{c:?}")).unwrap_or_else(|| "-".into()),
            r.states
        );
        match (r.value, reference) {
            (RegValue::Exact(v), Some(h)) => {
                let status = if v as i64 == h { Status::Pass } else { Status::Fail };
                b.push_status(
                    "reg_recursion",
                    Some(v as i64),
                    Some(h),
                    status,
                    Some(format!("against homology; {detail}")),
                );
            }
            (RegValue::Exact(v), None) => b.push("reg_recursion", Some(v as i64), predicted.reg, Some(detail)),
            (RegValue::Between(lo, hi), reference) => b.push_status(
                "reg_recursion",
                None,
                reference.or(predicted.reg),
                Status::Fail,
                Some(format!("only the enclosure {lo}..{hi}; {detail}")),
            ),
        }
    }

    if config.replay_rules {
        if let Some((n, p, q)) = indices(family) {
            for rule in CATALOGUE.iter().filter(|r| r.base.family(n, p, q) == *family && n >= r.min_n) {
                let report = verify_decomposition(rule, n, p, q)?;
                let status = if report.pass { Status::Pass } else { Status::Fail };
                let detail = if report.pass {
                    format!("{}; {} free", rule.statement, report.actual_free)
                } else {
                    format!("{}; {report:?}", rule.statement)
                };
                b.push_status(&format!("decomp:{}", rule.id), None, None, status, Some(detail));
            }
        }
    }
    Ok(b.cells)
}

fn indices(f: &FamilyParams) -> Option<(i64, i64, i64)> {
    match *f {
        F::TriSnake { n, p } | F::TriSnakeStar { n, p } | F::TriSnakeStarStar { n, p } | F::Ouroboros { n, p } => {
            Some((n, p, 0))
        }
        F::BristledTriSnake { n, p, q }
        | F::BristledTriSnakeStar { n, p, q }
        | F::BristledTriSnakeStarStar { n, p, q }
        | F::BristledOuroboros { n, p, q } => Some((n, p, q)),
        _ => None,
    }
}

/// Exact Stanley depth within the cap; beyond it, a pass or fail only when
/// the bounds decide the comparison.
fn sdepth_cell(
    b: &mut CellBuilder<'_>,
    ideal: &crate::ideal::MonomialIdeal,
    predicted: Option<i64>,
    config: &VerifyConfig,
) -> Result<()> {
    let opts = StanleyOptions { exact_cap: config.sdepth_cap, strip_free: true };
    match stanley_depth(ideal, &opts) {
        Ok(r) => {
            b.push("sdepth", Some(r.value as i64), predicted, Some(format!("{} intervals", r.witness.intervals.len())));
            return Ok(());
        }
        Err(Error::TooManyVariables { .. }) => {}
        Err(e) => return Err(e),
    }
    if ideal.n_vars() > POSET_CAP {
        b.push("sdepth", None, predicted, Some(format!("{} variables exceed the poset cap", ideal.n_vars())));
        return Ok(());
    }
    let (lo, hi) = sdepth_bounds(ideal, &opts)?;
    let detail = Some(format!("bounds {lo}..{hi}"));
    let p = predicted.unwrap_or(-1);
    if lo == hi {
        b.push("sdepth", Some(lo as i64), predicted, detail);
    } else if p < lo as i64 || p > hi as i64 {
        let status = if b.claimed { Status::Fail } else { Status::Observational };
        b.push_status("sdepth", None, predicted, status, detail);
    } else {
        b.push("sdepth", None, predicted, detail);
    }
    Ok(())
}

/// Runs every member of the chosen grids. Cells are evaluated in parallel
/// and reported in grid order.
pub fn verify_grid(
    theorems: &[&TheoremSpec],
    ranges: &GridRanges,
    config: &VerifyConfig,
) -> Result<VerificationReport> {
    let members: Vec<FamilyParams> = theorems.iter().flat_map(|t| t.grid(ranges)).collect();
    let run = || -> Result<Vec<Vec<Cell>>> { members.par_iter().map(|f| verify_member(f, config)).collect() };
    let per_member = match config.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let cells: Vec<Cell> = per_member.into_iter().flatten().collect();
    let mut summary = Summary::default();
    for c in &cells {
        match c.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Observational => summary.observational += 1,
            Status::Skipped => summary.skipped += 1,
        }
    }
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        theorems: theorems.iter().map(|t| t.id.to_string()).collect(),
        config: *config,
        ranges: *ranges,
        cells,
        summary,
    })
}

/// Resolves `all` or a single id.
pub fn select_theorems(id: &str) -> Result<Vec<&'static TheoremSpec>> {
    if id.eq_ignore_ascii_case("all") {
        Ok(THEOREMS.iter().collect())
    } else {
        Ok(vec![find_theorem(id)?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyConfig {
        VerifyConfig { threads: Some(2), ..VerifyConfig::default() }
    }

    #[test]
    fn ranges_parse() {
        assert_eq!("1..4".parse::<IntRange>().unwrap(), IntRange { lo: 1, hi: 4 });
        assert_eq!("2".parse::<IntRange>().unwrap(), IntRange { lo: 2, hi: 2 });
        assert_eq!("1..=3".parse::<IntRange>().unwrap(), IntRange { lo: 1, hi: 3 });
        assert!("4..1".parse::<IntRange>().is_err());
        assert!(matches!("a..2".parse::<IntRange>(), Err(Error::Parse { position: 0, .. })));
    }

    #[test]
    fn unknown_theorem() {
        assert_eq!(select_theorems("th9.9").unwrap_err(), Error::UnknownTheorem("th9.9".into()));
        assert_eq!(select_theorems("all").unwrap().len(), THEOREMS.len());
    }

    #[test]
    fn default_grid_respects_limits() {
        let th33 = find_theorem("th3.3").unwrap();
        let grid = th33.grid(&GridRanges::default());
        assert!(grid.iter().all(|f| f.vertex_count() <= 13));
        assert!(grid.contains(&F::TriSnake { n: 3, p: 3 }));
        assert!(!grid.contains(&F::TriSnake { n: 4, p: 3 }));
    }

    #[test]
    fn lemma_3_4_first_cell() {
        let cells = verify_member(&F::BristledTriSnakeStar { n: 1, p: 1, q: 1 }, &quick()).unwrap();
        let get = |inv: &str| cells.iter().find(|c| c.invariant == inv).unwrap();
        assert_eq!((get("depth").computed, get("sdepth").computed), (Some(4), Some(4)));
        assert_eq!((get("reg").computed, get("pdim").computed), (Some(2), Some(4)));
        assert!(cells.iter().all(|c| c.status == Status::Pass), "{cells:?}");
        assert!(cells.iter().any(|c| c.invariant == "decomp:R7"));
    }

    #[test]
    fn out_of_range_cells_are_observational() {
        let cells = verify_member(&F::Ouroboros { n: 3, p: 1 }, &quick()).unwrap();
        let reg = cells.iter().find(|c| c.invariant == "reg").unwrap();
        assert_eq!(reg.status, Status::Observational);
        assert_eq!(reg.source, "th4.3");
    }

    #[test]
    fn report_exit_code_and_formats() {
        let th = find_theorem("th3.3").unwrap();
        let ranges = GridRanges { n: Some(IntRange { lo: 1, hi: 2 }), p: Some(IntRange { lo: 1, hi: 1 }), q: None };
        let report = verify_grid(&[th], &ranges, &quick()).unwrap();
        assert_eq!(report.exit_code(), 0);
        assert!(report.to_json().contains("\"schema_version\": 1"));
        assert!(report.to_csv().starts_with("family,source,invariant"));
        assert_eq!(
            report.cells,
            verify_grid(&[th], &ranges, &VerifyConfig { threads: Some(1), ..quick() }).unwrap().cells
        );
    }

    #[test]
    fn skipped_cells_give_exit_two() {
        let th = find_theorem("th3.3").unwrap();
        let ranges = GridRanges { n: Some(IntRange { lo: 2, hi: 2 }), p: Some(IntRange { lo: 1, hi: 1 }), q: None };
        let config = VerifyConfig { hochster_cap: 4, ..quick() };
        let report = verify_grid(&[th], &ranges, &config).unwrap();
        assert_eq!(report.exit_code(), 2);
    }
}

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verified claim failed, 2 nothing failed but
//! claimed cells were skipped, 3 usage or runtime error.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::betti::{betti_table, BettiOptions, InvariantBundle, DEFAULT_HOCHSTER_CAP};
use crate::closed_form::closed_form;
use crate::decomp::{base_case_checks, find_rule, replay_grid, verify_decomposition, DecompositionReport, CATALOGUE};
use crate::error::{Error, Result};
use crate::families::FamilyParams;
use crate::ideal::edge_ideal;
use crate::linalg::Field;
use crate::props;
use crate::sdepth::{sdepth_bounds, stanley_depth, StanleyOptions, DEFAULT_EXACT_CAP};
use crate::verify::{select_theorems, verify_grid, GridRanges, IntRange, VerifyConfig, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_SKIPPED: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "edgeideal", version, about = "Invariants of edge ideals of triangular snake families")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Characteristic of the coefficient field.
    #[arg(long, global = true, default_value_t = 2)]
    pub field: u32,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest support size for Hochster's formula.
    #[arg(long, global = true, default_value_t = DEFAULT_HOCHSTER_CAP)]
    pub hochster_cap: usize,
    /// Largest effective variable count for exact Stanley depth.
    #[arg(long, global = true, default_value_t = DEFAULT_EXACT_CAP)]
    pub sdepth_cap: usize,
    /// Seed for randomized corpora.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Include wall-clock timings (output is then not reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a family member as DOT with vertex and edge counts.
    Gen { spec: String },
    /// Betti table, reg, pdim, depth and (within the cap) Stanley depth.
    Inv { spec: String },
    /// Stanley depth with an interval-partition witness, or bounds beyond the cap.
    Sdepth { spec: String },
    /// Replay a decomposition rule (`R1`..`R20` or `all`).
    Decomp {
        rule: String,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        q: Option<i64>,
    },
    /// Check closed forms over a parameter grid (`th3.3`, ..., `all`), or run
    /// the randomized property suite (`props`).
    Verify {
        theorem: String,
        #[arg(long)]
        n: Option<IntRange>,
        #[arg(long)]
        p: Option<IntRange>,
        #[arg(long)]
        q: Option<IntRange>,
    },
}

/// Output produced by a subcommand and the exit code it implies.
pub struct Outcome {
    pub body: String,
    pub code: i32,
}

impl Outcome {
    fn ok(body: String) -> Outcome {
        Outcome { body, code: EXIT_OK }
    }
}

fn cap_guidance(e: Error) -> Error {
    match e {
        Error::TooManyVariables { count, limit } => Error::InvalidParameter(format!(
            "{count} variables exceed the cap of {limit}; raise --hochster-cap or --sdepth-cap to compute anyway"
        )),
        other => other,
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

impl GlobalOpts {
    fn field(&self) -> Result<Field> {
        Field::new(self.field)
    }

    fn betti(&self) -> Result<BettiOptions> {
        Ok(BettiOptions { field: self.field()?, max_vars: self.hochster_cap, threads: self.threads })
    }

    fn stanley(&self) -> StanleyOptions {
        StanleyOptions { exact_cap: self.sdepth_cap, strip_free: true }
    }

    fn validate(&self) -> Result<()> {
        if self.hochster_cap == 0 || self.sdepth_cap == 0 {
            return Err(Error::InvalidParameter("caps must be positive".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidParameter("--threads must be positive".into()));
        }
        self.field().map(|_| ())
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    g.validate()?;
    match &cli.command {
        Command::Gen { spec } => cmd_gen(spec, g),
        Command::Inv { spec } => cmd_inv(spec, g),
        Command::Sdepth { spec } => cmd_sdepth(spec, g),
        Command::Decomp { rule, n, p, q } => cmd_decomp(rule, *n, *p, *q, g),
        Command::Verify { theorem, n, p, q } => {
            if theorem.eq_ignore_ascii_case("props") {
                cmd_props(g)
            } else {
                cmd_verify(theorem, GridRanges { n: *n, p: *p, q: *q }, g)
            }
        }
    }
}

fn cmd_gen(spec: &str, g: &GlobalOpts) -> Result<Outcome> {
    let family: FamilyParams = spec.parse()?;
    let graph = family.build()?;
    let dot = graph.to_dot(&family.to_string());
    let body = match g.format {
        Format::Json => json_text(&json!({
            "family": family.to_string(),
            "params": family,
            "vertices": graph.vertex_count(),
            "edges": graph.edge_count(),
            "variables": graph.variable_names(),
            "dot": dot,
        })),
        Format::Csv => {
            let names = graph.variable_names();
            let mut out = String::from("source,target\n");
            for (a, b) in graph.edges() {
                out.push_str(&format!("{},{}\n", names[a], names[b]));
            }
            out
        }
        Format::Text => format!("// {family}: {} vertices, {} edges\n{dot}", graph.vertex_count(), graph.edge_count()),
    };
    Ok(Outcome::ok(body))
}

fn cmd_inv(spec: &str, g: &GlobalOpts) -> Result<Outcome> {
    let family: FamilyParams = spec.parse()?;
    let graph = family.build()?;
    let ideal = edge_ideal(&graph)?;
    let start = Instant::now();
    let table = betti_table(&ideal, &g.betti()?).map_err(cap_guidance)?;
    let bundle = InvariantBundle::from_table(&table, ideal.n_vars());
    let betti_ms = start.elapsed().as_millis();
    let start = Instant::now();
    let sdepth = match stanley_depth(&ideal, &g.stanley()) {
        Ok(s) => Some(s.value),
        Err(Error::TooManyVariables { .. }) => None,
        Err(e) => return Err(e),
    };
    let sdepth_ms = start.elapsed().as_millis();
    let predicted = closed_form(&family).ok();
    let body = match g.format {
        Format::Json => {
            let mut v = json!({
                "family": family.to_string(),
                "field": bundle.field,
                "hochster_cap": g.hochster_cap,
                "sdepth_cap": g.sdepth_cap,
                "n_vars": bundle.n_vars,
                "depth": bundle.depth,
                "sdepth": sdepth,
                "reg": bundle.reg,
                "pdim": bundle.pdim,
                "betti": table,
                "predicted": predicted,
            });
            if g.timings {
                v["timings_ms"] = json!({ "betti": betti_ms, "sdepth": sdepth_ms });
            }
            json_text(&v)
        }
        Format::Csv => table.to_csv(),
        Format::Text => {
            let mut out = format!("{family} over {}\n{}", bundle.field, table.pretty());
            out.push_str(&format!("n_vars {}\ndepth  {}\n", bundle.n_vars, bundle.depth));
            match sdepth {
                Some(s) => out.push_str(&format!("sdepth {s}\n")),
                None => {
                    out.push_str(&format!("sdepth not computed (more than {} effective variables)\n", g.sdepth_cap))
                }
            }
            out.push_str(&format!("reg    {}\npdim   {}\n", bundle.reg, bundle.pdim));
            if let Some(cf) = predicted {
                out.push_str(&format!(
                    "predicted by {}: {}\n",
                    cf.source,
                    serde_json::to_string(&cf.predicted).unwrap()
                ));
            }
            if g.timings {
                out.push_str(&format!("time betti {betti_ms} ms, sdepth {sdepth_ms} ms\n"));
            }
            out
        }
    };
    Ok(Outcome::ok(body))
}

fn cmd_sdepth(spec: &str, g: &GlobalOpts) -> Result<Outcome> {
    let family: FamilyParams = spec.parse()?;
    let graph = family.build()?;
    let ideal = edge_ideal(&graph)?;
    let names = graph.variable_names();
    let body = match stanley_depth(&ideal, &g.stanley()) {
        Ok(s) => match g.format {
            Format::Json => json_text(&json!({
                "family": family.to_string(),
                "sdepth": s.value,
                "witness": s.witness.to_json(&names),
            })),
            Format::Csv => {
                let mut out = String::from("lower,upper\n");
                for (lo, hi) in &s.witness.intervals {
                    let join =
                        |m: crate::ideal::Monomial| m.vars().map(|v| names[v].clone()).collect::<Vec<_>>().join(" ");
                    out.push_str(&format!("{},{}\n", join(*lo), join(*hi)));
                }
                out
            }
            Format::Text => format!("{family}: sdepth {} ({} intervals)\n", s.value, s.witness.intervals.len()),
        },
        Err(Error::TooManyVariables { .. }) => {
            let (lo, hi) = sdepth_bounds(&ideal, &g.stanley()).map_err(cap_guidance)?;
            match g.format {
                Format::Json => json_text(&json!({ "family": family.to_string(), "lower": lo, "upper": hi })),
                Format::Csv => format!("lower,upper\n{lo},{hi}\n"),
                Format::Text => format!("{family}: {lo} <= sdepth <= {hi} (beyond the exact cap {})\n", g.sdepth_cap),
            }
        }
        Err(e) => return Err(e),
    };
    Ok(Outcome::ok(body))
}

fn cmd_decomp(rule: &str, n: Option<i64>, p: Option<i64>, q: Option<i64>, g: &GlobalOpts) -> Result<Outcome> {
    let rules: Vec<_> =
        if rule.eq_ignore_ascii_case("all") { CATALOGUE.iter().collect() } else { vec![find_rule(rule)?] };
    let mut reports: Vec<DecompositionReport> = Vec::new();
    for r in rules {
        let points: Vec<(i64, i64, i64)> = match (n, p, q) {
            (None, None, None) => replay_grid(r, 4, 2, 2),
            _ => {
                let q_default = if r.base.is_bristled() { 1 } else { 0 };
                vec![(n.unwrap_or(r.min_n.max(2)), p.unwrap_or(1), q.unwrap_or(q_default))]
            }
        };
        for (n, p, q) in points {
            reports.push(verify_decomposition(r, n, p, q)?);
        }
    }
    let base_cases = if rule.eq_ignore_ascii_case("all") { base_case_checks(2, 2)? } else { Vec::new() };
    let failures = reports.iter().filter(|r| !r.pass).count() + base_cases.iter().filter(|(_, ok)| !ok).count();
    let body = match g.format {
        Format::Json => json_text(&json!({
            "reports": reports,
            "base_cases": base_cases.iter().map(|(s, ok)| json!({ "identity": s, "pass": ok })).collect::<Vec<_>>(),
            "failures": failures,
        })),
        Format::Csv => {
            let mut out = String::from("rule,family,kind,factors,free,killed,pass\n");
            for r in &reports {
                let factors: Vec<_> = r.factors.iter().map(|f| f.expected.clone()).collect();
                out.push_str(&format!(
                    "{},\"{}\",{:?},\"{}\",{},{},{}\n",
                    r.rule,
                    r.family,
                    r.kind,
                    factors.join(" x "),
                    r.actual_free,
                    r.killed,
                    r.pass
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                let factors: Vec<_> = r.factors.iter().map(|f| f.expected.clone()).collect();
                out.push_str(&format!(
                    "{} {:<4} {:<36} -> [{}] + {} free, {} killed\n",
                    if r.pass { "pass" } else { "FAIL" },
                    r.rule,
                    r.family,
                    factors.join(", "),
                    r.actual_free,
                    r.killed
                ));
                if !r.pass {
                    out.push_str(&format!("     unmatched {:?}, missing free {:?}\n", r.unmatched, r.missing_free));
                }
            }
            for (s, ok) in &base_cases {
                out.push_str(&format!("{} {s}\n", if *ok { "pass" } else { "FAIL" }));
            }
            out.push_str(&format!("{} replays, {failures} failures\n", reports.len() + base_cases.len()));
            out
        }
    };
    Ok(Outcome { body, code: if failures > 0 { EXIT_FAIL } else { EXIT_OK } })
}

fn cmd_verify(theorem: &str, ranges: GridRanges, g: &GlobalOpts) -> Result<Outcome> {
    let theorems = select_theorems(theorem)?;
    let config = VerifyConfig {
        field: g.field()?,
        hochster_cap: g.hochster_cap,
        sdepth_cap: g.sdepth_cap,
        threads: g.threads,
        seed: g.seed,
        timings: g.timings,
        ..VerifyConfig::default()
    };
    let report = verify_grid(&theorems, &ranges, &config)?;
    let body = match g.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    Ok(Outcome { body, code: report.exit_code() })
}

fn cmd_props(g: &GlobalOpts) -> Result<Outcome> {
    let report = props::run_all(g.seed)?;
    let body = match g.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    Ok(Outcome { body, code: report.exit_code() })
}

/// Parses `args`, runs the command, writes its output and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(stderr, "{}", e.render()) } else { write!(stdout, "{}", e.render()) };
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_ERROR;
        }
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, &outcome.body).map_err(Error::from),
        None => stdout.write_all(outcome.body.as_bytes()).map_err(Error::from),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_ERROR;
    }
    outcome.code
}

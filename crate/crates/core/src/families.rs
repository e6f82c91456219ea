//! Generators for the snake families and the compact spec-string grammar.
//!
//! Grammar: `name(arg, ...)` where each arg is `key=int`, a bare integer
//! (positional, in declared order), or a nested family for `brs`.
//!
//! ```text
//! path(n=4)  cycle(5)  star(u=3)
//! tsnake(n=3,p=3)  tsnake_star(n,p)  tsnake_star2(n,p)  ouroboros(n=4,p=2)
//! brs(q=3, tsnake(n=3,p=3))
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexLabel};

/// A family member. Indices are signed so the catalogue can name the
/// negative-index base cases; only non-negative members are buildable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyParams {
    Path {
        n: i64,
    },
    Cycle {
        n: i64,
    },
    Star {
        u: i64,
    },
    BristledStar {
        u: i64,
        q: i64,
    },
    /// `T_n(p)`
    TriSnake {
        n: i64,
        p: i64,
    },
    /// `T*_n(p)`: `T_n(p)` plus `p` pendants on `x_{n+1}`
    TriSnakeStar {
        n: i64,
        p: i64,
    },
    /// `T**_n(p)`: `T*_n(p)` plus `p` pendants on `x_1`
    TriSnakeStarStar {
        n: i64,
        p: i64,
    },
    /// `O_n(p)`: `T_n(p)` with `x_1` and `x_{n+1}` fused
    Ouroboros {
        n: i64,
        p: i64,
    },
    BristledTriSnake {
        n: i64,
        p: i64,
        q: i64,
    },
    BristledTriSnakeStar {
        n: i64,
        p: i64,
        q: i64,
    },
    BristledTriSnakeStarStar {
        n: i64,
        p: i64,
        q: i64,
    },
    BristledOuroboros {
        n: i64,
        p: i64,
        q: i64,
    },
    /// Bristling of any other family (paths, cycles).
    Bristled {
        q: i64,
        base: Box<FamilyParams>,
    },
}

use FamilyParams as F;

impl FamilyParams {
    /// Bristled version of `self` with `q` leaves per vertex, using the named
    /// variant when one exists.
    pub fn bristled(self, q: i64) -> FamilyParams {
        match self {
            F::Star { u } => F::BristledStar { u, q },
            F::TriSnake { n, p } => F::BristledTriSnake { n, p, q },
            F::TriSnakeStar { n, p } => F::BristledTriSnakeStar { n, p, q },
            F::TriSnakeStarStar { n, p } => F::BristledTriSnakeStarStar { n, p, q },
            F::Ouroboros { n, p } => F::BristledOuroboros { n, p, q },
            other => F::Bristled { q, base: Box::new(other) },
        }
    }

    /// Short identifier of the family without parameters.
    pub fn name(&self) -> &'static str {
        match self {
            F::Path { .. } => "path",
            F::Cycle { .. } => "cycle",
            F::Star { .. } => "star",
            F::BristledStar { .. } => "brs_star",
            F::TriSnake { .. } => "tsnake",
            F::TriSnakeStar { .. } => "tsnake_star",
            F::TriSnakeStarStar { .. } => "tsnake_star2",
            F::Ouroboros { .. } => "ouroboros",
            F::BristledTriSnake { .. } => "brs_tsnake",
            F::BristledTriSnakeStar { .. } => "brs_tsnake_star",
            F::BristledTriSnakeStarStar { .. } => "brs_tsnake_star2",
            F::BristledOuroboros { .. } => "brs_ouroboros",
            F::Bristled { .. } => "brs",
        }
    }

    /// Vertex count by closed formula (no construction).
    pub fn vertex_count(&self) -> i64 {
        match *self {
            F::Path { n } | F::Cycle { n } => n,
            F::Star { u } => u + 1,
            F::BristledStar { u, q } => (u + 1) * (q + 1),
            F::TriSnake { n, p } => 1 + n + n * p,
            F::TriSnakeStar { n, p } => (n + 1) * (p + 1),
            F::TriSnakeStarStar { n, p } => (n + 1) * (p + 1) + p,
            F::Ouroboros { n, p } => n * (p + 1),
            F::BristledTriSnake { n, p, q } => (1 + q) * (1 + n + n * p),
            F::BristledTriSnakeStar { n, p, q } => (1 + q) * (n + 1) * (p + 1),
            F::BristledTriSnakeStarStar { n, p, q } => (1 + q) * ((n + 1) * (p + 1) + p),
            F::BristledOuroboros { n, p, q } => (q + 1) * (p + 1) * n,
            F::Bristled { q, ref base } => (1 + q) * base.vertex_count(),
        }
    }

    /// Edge count by closed formula (no construction).
    pub fn edge_count(&self) -> i64 {
        match *self {
            F::Path { n } => (n - 1).max(0),
            F::Cycle { n } => n,
            F::Star { u } => u,
            F::BristledStar { u, q } => u + (u + 1) * q,
            F::TriSnake { n, p } => (2 * p + 1) * n,
            F::TriSnakeStar { n, p } => (2 * p + 1) * n + p,
            F::TriSnakeStarStar { n, p } => (2 * p + 1) * n + 2 * p,
            F::Ouroboros { n, p } => (2 * p + 1) * n,
            F::BristledTriSnake { n, p, q } => (2 * p + 1) * n + (1 + n + n * p) * q,
            F::BristledTriSnakeStar { n, p, q } => (2 * p + 1) * n + p + (n + 1) * (p + 1) * q,
            F::BristledTriSnakeStarStar { n, p, q } => (2 * p + 1) * n + 2 * p + ((n + 1) * (p + 1) + p) * q,
            F::BristledOuroboros { n, p, q } => n * (q * (p + 1) + 2 * p + 1),
            F::Bristled { q, ref base } => base.edge_count() + q * base.vertex_count(),
        }
    }

    fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::InvalidParameter(format!("{self}: {msg}")));
        match *self {
            F::Path { n } if n < 1 => fail("n must be at least 1"),
            F::Cycle { n } if n < 3 => fail("n must be at least 3"),
            F::Star { u } if u < 1 => fail("u must be at least 1"),
            F::BristledStar { u, q } if u < 1 || q < 1 => fail("u and q must be at least 1"),
            F::TriSnake { n, p } | F::BristledTriSnake { n, p, .. } if n < 1 || p < 1 => {
                fail("n and p must be at least 1")
            }
            F::TriSnakeStar { n, p }
            | F::TriSnakeStarStar { n, p }
            | F::BristledTriSnakeStar { n, p, .. }
            | F::BristledTriSnakeStarStar { n, p, .. }
                if n < 0 || p < 1 =>
            {
                fail("n must be at least 0 and p at least 1; negative n is a catalogue base case only")
            }
            F::Ouroboros { n, p } | F::BristledOuroboros { n, p, .. } if n < 3 || p < 1 => {
                fail("ouroboros needs n >= 3 (fusion would create a loop or multi-edge) and p >= 1")
            }
            F::BristledTriSnake { q, .. }
            | F::BristledTriSnakeStar { q, .. }
            | F::BristledTriSnakeStarStar { q, .. }
            | F::BristledOuroboros { q, .. }
                if q < 1 =>
            {
                fail("q must be at least 1")
            }
            F::Bristled { q, ref base } => {
                if q < 1 {
                    return fail("q must be at least 1");
                }
                base.validate()
            }
            _ => Ok(()),
        }
    }

    /// Constructs the graph with its canonical labels.
    pub fn build(&self) -> Result<LabeledGraph> {
        self.validate()?;
        let g = match *self {
            F::Path { n } => LabeledGraph::path(n as usize),
            F::Cycle { n } => LabeledGraph::cycle(n as usize)?,
            F::Star { u } => snake(0, u as u32, true, false),
            F::BristledStar { u, q } => snake(0, u as u32, true, false).bristle(q as usize),
            F::TriSnake { n, p } => snake(n as u32, p as u32, false, false),
            F::TriSnakeStar { n, p } => snake(n as u32, p as u32, true, false),
            F::TriSnakeStarStar { n, p } => snake(n as u32, p as u32, true, true),
            F::Ouroboros { n, p } => ouroboros(n as u32, p as u32),
            F::BristledTriSnake { n, p, q } => snake(n as u32, p as u32, false, false).bristle(q as usize),
            F::BristledTriSnakeStar { n, p, q } => snake(n as u32, p as u32, true, false).bristle(q as usize),
            F::BristledTriSnakeStarStar { n, p, q } => snake(n as u32, p as u32, true, true).bristle(q as usize),
            F::BristledOuroboros { n, p, q } => ouroboros(n as u32, p as u32).bristle(q as usize),
            F::Bristled { q, ref base } => base.build()?.bristle(q as usize),
        };
        debug_assert_eq!(g.vertex_count() as i64, self.vertex_count());
        debug_assert_eq!(g.edge_count() as i64, self.edge_count());
        Ok(g)
    }
}

/// Builds the common path `x_1..x_{n+1}` with `p` apexes `y_{jk}` over each
/// edge `x_j x_{j+1}`, optionally `p` pendants `y_{(n+1)k}` on `x_{n+1}` and
/// `p` pendants `y_{(n+2)k}` on `x_1`.
fn snake(n: u32, p: u32, pendants_last: bool, pendants_first: bool) -> LabeledGraph {
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for i in 1..=n + 1 {
        labels.push(VertexLabel::PathVertex(i));
    }
    let x = |i: u32| (i - 1) as usize;
    for i in 1..=n {
        edges.push((x(i), x(i + 1)));
    }
    for j in 1..=n {
        for k in 1..=p {
            let y = labels.len();
            labels.push(VertexLabel::Apex(j, k));
            edges.push((x(j), y));
            edges.push((x(j + 1), y));
        }
    }
    if pendants_last {
        for k in 1..=p {
            edges.push((x(n + 1), labels.len()));
            labels.push(VertexLabel::Apex(n + 1, k));
        }
    }
    if pendants_first {
        for k in 1..=p {
            edges.push((x(1), labels.len()));
            labels.push(VertexLabel::Apex(n + 2, k));
        }
    }
    LabeledGraph::new(labels, &edges).expect("snake construction is simple")
}

/// `x_1..x_n` on a cycle with `p` apexes `y_{jk}` over each cycle edge; the
/// apexes `y_{nk}` close the cycle between `x_n` and `x_1`.
fn ouroboros(n: u32, p: u32) -> LabeledGraph {
    let mut labels: Vec<VertexLabel> = (1..=n).map(VertexLabel::PathVertex).collect();
    let mut edges = Vec::new();
    let x = |i: u32| ((i - 1) % n) as usize;
    for j in 1..=n {
        edges.push((x(j), x(j + 1)));
        for k in 1..=p {
            let y = labels.len();
            labels.push(VertexLabel::Apex(j, k));
            edges.push((x(j), y));
            edges.push((x(j + 1), y));
        }
    }
    LabeledGraph::new(labels, &edges).expect("ouroboros construction is simple")
}

/// Builds a family member by its spec string.
pub fn build_family(params: &FamilyParams) -> Result<LabeledGraph> {
    params.build()
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            F::Path { n } => write!(f, "path(n={n})"),
            F::Cycle { n } => write!(f, "cycle(n={n})"),
            F::Star { u } => write!(f, "star(u={u})"),
            F::BristledStar { u, q } => write!(f, "brs(q={q},star(u={u}))"),
            F::TriSnake { n, p } => write!(f, "tsnake(n={n},p={p})"),
            F::TriSnakeStar { n, p } => write!(f, "tsnake_star(n={n},p={p})"),
            F::TriSnakeStarStar { n, p } => write!(f, "tsnake_star2(n={n},p={p})"),
            F::Ouroboros { n, p } => write!(f, "ouroboros(n={n},p={p})"),
            F::BristledTriSnake { n, p, q } => write!(f, "brs(q={q},tsnake(n={n},p={p}))"),
            F::BristledTriSnakeStar { n, p, q } => write!(f, "brs(q={q},tsnake_star(n={n},p={p}))"),
            F::BristledTriSnakeStarStar { n, p, q } => write!(f, "brs(q={q},tsnake_star2(n={n},p={p}))"),
            F::BristledOuroboros { n, p, q } => write!(f, "brs(q={q},ouroboros(n={n},p={p}))"),
            F::Bristled { q, base } => write!(f, "brs(q={q},{base})"),
        }
    }
}

impl FromStr for FamilyParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let fam = p.family()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(fam)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

enum Arg {
    Int(Option<String>, i64, usize),
    Family(FamilyParams),
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).ok()?;
        if word.is_empty() || word.as_bytes()[0].is_ascii_digit() {
            self.pos = start;
            return None;
        }
        Some(word.to_string())
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.src.len() && self.src[self.pos] == b'-' {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok().and_then(|t| t.parse().ok()).ok_or_else(|| {
            self.pos = start;
            self.error("expected an integer")
        })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn arg(&mut self) -> Result<Arg> {
        let start = self.pos;
        if let Some(word) = self.ident() {
            if self.peek() == Some(b'=') {
                self.pos += 1;
                let at = self.pos;
                return Ok(Arg::Int(Some(word), self.int()?, at));
            }
            self.pos = start;
            return Ok(Arg::Family(self.family()?));
        }
        let at = self.pos;
        Ok(Arg::Int(None, self.int()?, at))
    }

    fn family(&mut self) -> Result<FamilyParams> {
        let name_at = {
            self.skip_ws();
            self.pos
        };
        let name = self.ident().ok_or_else(|| self.error("expected a family name"))?;
        self.expect(b'(')?;
        let mut args = Vec::new();
        if self.peek() != Some(b')') {
            loop {
                args.push(self.arg()?);
                if self.peek() == Some(b',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(b')')?;
        let keys: &[&str] = match name.as_str() {
            "path" | "cycle" => &["n"],
            "star" => &["u"],
            "tsnake" | "tsnake_star" | "tsnake_star2" | "ouroboros" => &["n", "p"],
            "brs" => &["q"],
            _ => {
                return Err(Error::Parse { position: name_at, message: format!("unknown family `{name}`") });
            }
        };
        let mut values: Vec<Option<i64>> = vec![None; keys.len()];
        let mut inner = None;
        let mut next_positional = 0;
        for a in args {
            match a {
                Arg::Family(f) if name == "brs" && inner.is_none() => inner = Some(f),
                Arg::Family(_) => {
                    return Err(Error::Parse { position: name_at, message: format!("`{name}` takes no nested family") })
                }
                Arg::Int(key, v, at) => {
                    let slot = match key {
                        Some(k) => keys.iter().position(|kk| *kk == k).ok_or_else(|| Error::Parse {
                            position: at,
                            message: format!("`{name}` has no argument `{k}`"),
                        })?,
                        None => {
                            while next_positional < keys.len() && values[next_positional].is_some() {
                                next_positional += 1;
                            }
                            if next_positional >= keys.len() {
                                return Err(Error::Parse { position: at, message: "too many arguments".into() });
                            }
                            next_positional
                        }
                    };
                    if values[slot].is_some() {
                        return Err(Error::Parse {
                            position: at,
                            message: format!("duplicate argument `{}`", keys[slot]),
                        });
                    }
                    values[slot] = Some(v);
                }
            }
        }
        let missing = |k: &str| Error::Parse { position: self.pos, message: format!("`{name}` is missing `{k}`") };
        let get = |i: usize| values[i].ok_or_else(|| missing(keys[i]));
        Ok(match name.as_str() {
            "path" => F::Path { n: get(0)? },
            "cycle" => F::Cycle { n: get(0)? },
            "star" => F::Star { u: get(0)? },
            "tsnake" => F::TriSnake { n: get(0)?, p: get(1)? },
            "tsnake_star" => F::TriSnakeStar { n: get(0)?, p: get(1)? },
            "tsnake_star2" => F::TriSnakeStarStar { n: get(0)?, p: get(1)? },
            "ouroboros" => F::Ouroboros { n: get(0)?, p: get(1)? },
            "brs" => {
                let q = get(0)?;
                let base = inner.ok_or_else(|| Error::Parse {
                    position: self.pos,
                    message: "`brs` needs a nested family".into(),
                })?;
                base.bristled(q)
            }
            _ => unreachable!(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(s: &str) -> (usize, usize) {
        let g = s.parse::<FamilyParams>().unwrap().build().unwrap();
        (g.vertex_count(), g.edge_count())
    }

    #[test]
    fn triangle_snake_single() {
        let g = F::TriSnake { n: 1, p: 1 }.build().unwrap();
        let names = g.variable_names();
        assert_eq!(names, vec!["x1", "x2", "y11"]);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn figure_counts() {
        assert_eq!(counts("tsnake(n=3,p=3)"), (13, 21));
        assert_eq!(counts("tsnake(n=3,p=1)"), (7, 9));
        assert_eq!(counts("ouroboros(n=4,p=2)"), (12, 20));
        assert_eq!(counts("brs(q=3,tsnake(n=3,p=3))"), (52, 60));
        assert_eq!(counts("brs(q=3,ouroboros(n=4,p=2))"), (48, 56));
        assert_eq!(counts("star(u=1)"), (2, 1));
        assert_eq!(counts("brs(q=3,tsnake_star(n=2,p=3))"), (48, 53));
    }

    #[test]
    fn starred_zero_is_star() {
        let g = F::TriSnakeStar { n: 0, p: 3 }.build().unwrap();
        assert_eq!(g, F::Star { u: 3 }.build().unwrap());
    }

    #[test]
    fn parse_positional_and_nested() {
        assert_eq!("path(4)".parse::<FamilyParams>().unwrap(), F::Path { n: 4 });
        assert_eq!(" tsnake( 3 , p = 2 ) ".parse::<FamilyParams>().unwrap(), F::TriSnake { n: 3, p: 2 });
        assert_eq!(
            "brs(q=1, brs(q=2, path(3)))".parse::<FamilyParams>().unwrap(),
            F::Bristled { q: 1, base: Box::new(F::Bristled { q: 2, base: Box::new(F::Path { n: 3 }) }) }
        );
        for s in ["brs(q=3,tsnake(n=3,p=3))", "brs(q=2,star(u=1))", "cycle(n=5)", "tsnake_star2(n=0,p=2)"] {
            let f: FamilyParams = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        match "tsnake(n=3,r=2)".parse::<FamilyParams>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 13),
            other => panic!("{other:?}"),
        }
        assert!(matches!("blob(1)".parse::<FamilyParams>(), Err(Error::Parse { position: 0, .. })));
        assert!(matches!("tsnake(n=3)".parse::<FamilyParams>(), Err(Error::Parse { .. })));
        assert!(matches!("path(3) x".parse::<FamilyParams>(), Err(Error::Parse { position: 8, .. })));
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(F::Ouroboros { n: 2, p: 1 }.build(), Err(Error::InvalidParameter(_))));
        assert!(matches!(F::TriSnakeStar { n: -1, p: 1 }.build(), Err(Error::InvalidParameter(_))));
        assert!(matches!(F::BristledTriSnake { n: 1, p: 1, q: 0 }.build(), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn ouroboros_labels_follow_snake() {
        let g = F::Ouroboros { n: 3, p: 1 }.build().unwrap();
        let x1 = g.find(VertexLabel::PathVertex(1)).unwrap();
        let y31 = g.find(VertexLabel::Apex(3, 1)).unwrap();
        assert!(g.has_edge(x1, y31));
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 9));
    }
}

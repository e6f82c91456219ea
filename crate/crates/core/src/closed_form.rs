//! Predicted invariants for each family, with the parameter range the
//! formula is established on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilyParams;

/// Predicted values; `None` where no prediction is made.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Prediction {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sdepth: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reg: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pdim: Option<i64>,
}

impl Prediction {
    fn reg_only(reg: i64) -> Prediction {
        Prediction { reg: Some(reg), ..Prediction::default() }
    }

    /// `depth = sdepth`, plus `reg` and `pdim`.
    fn full(depth: i64, reg: i64, pdim: i64) -> Prediction {
        Prediction { depth: Some(depth), sdepth: Some(depth), reg: Some(reg), pdim: Some(pdim) }
    }
}

/// A family member with its predicted invariants and the result they come
/// from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub family: FamilyParams,
    /// Result id, e.g. `th3.3`.
    pub source: String,
    pub predicted: Prediction,
    pub n_vars: i64,
}

fn ceil_half(a: i64) -> i64 {
    a.div_euclid(2) + a.rem_euclid(2)
}

/// Predicted invariants of `S/I(G)` for a family member, or
/// [`Error::OutOfStatedRange`] if no formula covers the parameters.
pub fn closed_form(family: &FamilyParams) -> Result<ClosedForm> {
    use FamilyParams as F;
    let out_of_range = || Err(Error::OutOfStatedRange(family.to_string()));
    let (source, predicted) = match *family {
        F::Star { u } if u >= 1 => ("th2.8", Prediction::full(1, 1, u)),
        F::BristledStar { u, q } if u >= 1 && q >= 1 => ("cor2.9", Prediction::full(u + q, u, u * q + 1)),
        F::TriSnake { n, p } if n >= 1 && p >= 1 => ("th3.3", Prediction::reg_only(ceil_half(n + 1))),
        F::TriSnakeStar { n: 0, p } if p >= 1 => ("rem3.1", Prediction::full(1, 1, p)),
        F::TriSnakeStar { n, p } if n >= 1 && p >= 1 => ("lem3.2", Prediction::reg_only(ceil_half(n + 1))),
        F::TriSnakeStarStar { n: 0, p } if p >= 1 => ("rem4.1", Prediction::full(1, 1, 2 * p)),
        F::TriSnakeStarStar { n, p } if n >= 1 && p >= 1 => ("lem4.2", Prediction::reg_only(ceil_half(n + 1))),
        F::Ouroboros { n, p } if n >= 3 && p >= 3 => ("th4.3", Prediction::reg_only(ceil_half(n - 1))),
        F::BristledTriSnake { n, p, q } if n >= 1 && p >= 1 && q >= 1 => {
            ("th3.5", Prediction::full((p + q) * n + q, n * p, (1 + p * q) * n + 1))
        }
        F::BristledTriSnakeStar { n: 0, p, q } if p >= 1 && q >= 1 => ("rem3.1", Prediction::full(p + q, p, p * q + 1)),
        F::BristledTriSnakeStar { n, p, q } if n >= 1 && p >= 1 && q >= 1 => {
            ("lem3.4", Prediction::full((p + q) * (n + 1), (n + 1) * p, (1 + p * q) * (n + 1)))
        }
        F::BristledTriSnakeStarStar { n: 0, p, q } if p >= 1 && q >= 1 => {
            ("rem4.1", Prediction::full(2 * p + q, 2 * p, 2 * p * q + 1))
        }
        F::BristledTriSnakeStarStar { n, p, q } if n >= 1 && p >= 1 && q >= 1 => {
            ("lem4.4", Prediction::full((p + q) * (n + 1) + p, (n + 2) * p, (1 + p * q) * (n + 1) + p * q))
        }
        F::BristledOuroboros { n, p, q } if n >= 3 && p >= 1 && q >= 1 => {
            ("th4.5", Prediction::full(n * (p + q), n * p, (1 + p * q) * n))
        }
        _ => return out_of_range(),
    };
    Ok(ClosedForm { family: family.clone(), source: source.to_string(), predicted, n_vars: family.vertex_count() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use FamilyParams as F;

    fn pred(f: F) -> Prediction {
        closed_form(&f).unwrap().predicted
    }

    #[test]
    fn examples() {
        assert_eq!(pred(F::TriSnake { n: 4, p: 1 }).reg, Some(3));
        assert_eq!(pred(F::BristledTriSnakeStar { n: 2, p: 1, q: 1 }), Prediction::full(6, 3, 6));
        assert_eq!(pred(F::BristledOuroboros { n: 3, p: 1, q: 1 }), Prediction::full(6, 3, 6));
        assert_eq!(pred(F::BristledTriSnakeStar { n: 1, p: 1, q: 1 }), Prediction::full(4, 2, 4));
        assert_eq!(pred(F::Ouroboros { n: 3, p: 3 }).reg, Some(1));
    }

    #[test]
    fn stated_ranges() {
        assert!(matches!(closed_form(&F::Ouroboros { n: 3, p: 2 }), Err(Error::OutOfStatedRange(_))));
        assert!(matches!(closed_form(&F::BristledOuroboros { n: 2, p: 1, q: 1 }), Err(Error::OutOfStatedRange(_))));
        assert!(matches!(closed_form(&F::Path { n: 4 }), Err(Error::OutOfStatedRange(_))));
        assert!(matches!(closed_form(&F::TriSnakeStar { n: -1, p: 2 }), Err(Error::OutOfStatedRange(_))));
    }

    #[test]
    fn starred_base_cases_agree_with_general_formula() {
        for p in 1..=3 {
            for q in 1..=3 {
                let at_zero = |f: F| closed_form(&f).unwrap().predicted;
                let (n, pp, qq) = (0i64, p, q);
                assert_eq!(
                    at_zero(F::BristledTriSnakeStarStar { n, p, q }),
                    Prediction::full((pp + qq) * (n + 1) + pp, (n + 2) * pp, (1 + pp * qq) * (n + 1) + pp * qq)
                );
                assert_eq!(
                    at_zero(F::BristledTriSnakeStar { n, p, q }),
                    Prediction::full((pp + qq) * (n + 1), (n + 1) * pp, (1 + pp * qq) * (n + 1))
                );
            }
        }
    }

    #[test]
    fn auslander_buchsbaum_symbolically() {
        for n in 0..=6 {
            for p in 1..=4 {
                for q in 1..=4 {
                    let families = [
                        F::BristledTriSnake { n, p, q },
                        F::BristledTriSnakeStar { n, p, q },
                        F::BristledTriSnakeStarStar { n, p, q },
                        F::BristledOuroboros { n, p, q },
                        F::BristledStar { u: p, q },
                        F::Star { u: p },
                        F::TriSnakeStar { n, p },
                        F::TriSnakeStarStar { n, p },
                    ];
                    for f in families {
                        if let Ok(cf) = closed_form(&f) {
                            if let (Some(d), Some(pd)) = (cf.predicted.depth, cf.predicted.pdim) {
                                assert_eq!(d + pd, f.vertex_count(), "{f}");
                            }
                        }
                    }
                }
            }
        }
    }
}

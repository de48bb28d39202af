//! JSON serialization with exact round-tripping.
//!
//! Coefficients are decimal strings (`"p"` or `"p/q"`), so no precision is
//! lost at any size. Parsing re-canonicalizes, which makes
//! `from_json(to_json(e)) == e` hold for every expression.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::bracket::Bracket;
use crate::error::{Error, Result};
use crate::expr::atom::Atom;
use crate::expr::rational::{Denominator, RationalExpr};
use crate::expr::symexpr::{SymExpr, Term};
use crate::monomial::Exponents;
use crate::Rational;

#[derive(Serialize, Deserialize)]
struct ExprDto {
    terms: Vec<TermDto>,
}

#[derive(Serialize, Deserialize)]
struct TermDto {
    coeff: String,
    atoms: Vec<AtomDto>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum AtomDto {
    N { pow: u32 },
    Falling { k: u16, pow: u32 },
    PowerSum { v: Vec<u16>, pow: u32 },
    Moment { v: Vec<u16>, pow: u32 },
    Aug { parts: Vec<Vec<u16>>, pow: u32 },
}

#[derive(Serialize, Deserialize)]
struct RationalDto {
    num: ExprDto,
    den: DenDto,
}

#[derive(Serialize, Deserialize)]
struct DenDto {
    constant: String,
    /// `(n - j)^e` factors as `[j, e]` pairs.
    factors: Vec<(u32, u32)>,
}

fn parse_rational(s: &str) -> Result<Rational> {
    let mk_err = || Error::Parse(format!("invalid rational literal {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| mk_err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| mk_err())?;
            if q == BigInt::from(0) {
                return Err(mk_err());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p = BigInt::from_str(s.trim()).map_err(|_| mk_err())?;
            Ok(Rational::from(p))
        }
    }
}

fn expr_to_dto(e: &SymExpr) -> ExprDto {
    ExprDto {
        terms: e
            .terms()
            .map(|(term, coeff)| TermDto {
                coeff: coeff.to_string(),
                atoms: term
                    .atoms()
                    .iter()
                    .map(|(a, p)| match a {
                        Atom::N => AtomDto::N { pow: *p },
                        Atom::Falling(k) => AtomDto::Falling { k: *k, pow: *p },
                        Atom::PowerSum(v) => AtomDto::PowerSum {
                            v: v.values().to_vec(),
                            pow: *p,
                        },
                        Atom::Moment(v) => AtomDto::Moment {
                            v: v.values().to_vec(),
                            pow: *p,
                        },
                        Atom::Aug(b) => AtomDto::Aug {
                            parts: b.parts().iter().map(|x| x.values().to_vec()).collect(),
                            pow: *p,
                        },
                    })
                    .collect(),
            })
            .collect(),
    }
}

fn expr_from_dto(dto: &ExprDto) -> Result<SymExpr> {
    let mut e = SymExpr::zero();
    for t in &dto.terms {
        let coeff = parse_rational(&t.coeff)?;
        let mut powers: Vec<(Atom, u32)> = Vec::with_capacity(t.atoms.len());
        for a in &t.atoms {
            let (atom, pow) = match a {
                AtomDto::N { pow } => (Atom::N, *pow),
                AtomDto::Falling { k, pow } => (Atom::Falling(*k), *pow),
                AtomDto::PowerSum { v, pow } => {
                    (Atom::PowerSum(Exponents::new(v.clone())), *pow)
                }
                AtomDto::Moment { v, pow } => (Atom::Moment(Exponents::new(v.clone())), *pow),
                AtomDto::Aug { parts, pow } => {
                    let b = Bracket::new(parts.iter().cloned().map(Exponents::new).collect())?;
                    (Atom::Aug(b), *pow)
                }
            };
            powers.push((atom, pow));
        }
        e.add_term(Term::from_powers(powers), coeff);
    }
    Ok(e)
}

impl SymExpr {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&expr_to_dto(self)).expect("expression serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<SymExpr> {
        let dto: ExprDto =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad expression JSON: {e}")))?;
        expr_from_dto(&dto)
    }
}

impl RationalExpr {
    pub fn to_json(&self) -> String {
        let dto = RationalDto {
            num: expr_to_dto(&self.num),
            den: DenDto {
                constant: self.den.constant().to_string(),
                factors: self.den.factors().iter().map(|(&j, &e)| (j, e)).collect(),
            },
        };
        serde_json::to_string(&dto).expect("expression serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<RationalExpr> {
        let dto: RationalDto =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad expression JSON: {e}")))?;
        let num = expr_from_dto(&dto.num)?;
        let den = Denominator::from_parts(
            parse_rational(&dto.den.constant)?,
            dto.den.factors.iter().copied().collect(),
        )?;
        Ok(RationalExpr::new(num, den))
    }
}

//! Canonical text and JSON forms of [`PolyField`] over Gaussian rationals.
//!
//! Text form: `[(c)*p1^a*p2^b*p3^c + ...]/(1+p^2)^N`, terms in ascending
//! graded-lex order, coefficients written as explicit rationals
//! (`a/b`, `c/di`, `a/b+c/di`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{write_polynomial, PolyField, Polynomial3};
use crate::error::{Error, Result};
use crate::gaussian::{format_rational, parse_rational, GaussianRational};

impl fmt::Display for PolyField<GaussianRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        write_polynomial(f, self.numerator(), &["p1", "p2", "p3"])?;
        write!(f, "]/(1+p^2)^{}", self.denom_power())
    }
}

fn parse_term(term: &str) -> Result<([u32; 3], GaussianRational)> {
    let bad = || Error::Parse(format!("invalid term `{term}`"));
    let rest = term.strip_prefix('(').ok_or_else(bad)?;
    let close = rest.find(')').ok_or_else(bad)?;
    let coeff: GaussianRational = rest[..close].parse()?;
    let mut exps = [0u32; 3];
    let factors = &rest[close + 1..];
    if !factors.is_empty() {
        let factors = factors.strip_prefix('*').ok_or_else(bad)?;
        for factor in factors.split('*') {
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad())?),
                None => (factor, 1),
            };
            let idx = match var {
                "p1" => 0,
                "p2" => 1,
                "p3" => 2,
                _ => return Err(bad()),
            };
            exps[idx] += exp;
        }
    }
    Ok((exps, coeff))
}

impl FromStr for PolyField<GaussianRational> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid field `{s}`"));
        let s = s.trim();
        let body = s.strip_prefix('[').ok_or_else(bad)?;
        let (num, denom) = body.rsplit_once("]/(1+p^2)^").ok_or_else(bad)?;
        let denom_power: u32 = denom.parse().map_err(|_| bad())?;
        let numerator = if num.trim() == "0" {
            Polynomial3::zero()
        } else {
            let terms = num.split(" + ").map(|t| parse_term(t.trim())).collect::<Result<Vec<_>>>()?;
            Polynomial3::from_terms(terms)
        };
        Ok(PolyField::new(numerator, denom_power))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: [u32; 3],
    pub re: String,
    pub im: String,
}

/// JSON form `{terms:[{e:[e1,e2,e3], re:"a/b", im:"c/d"}], denomPower:N}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyFieldJson {
    pub terms: Vec<TermJson>,
    #[serde(rename = "denomPower")]
    pub denom_power: u32,
}

impl From<&PolyField<GaussianRational>> for PolyFieldJson {
    fn from(f: &PolyField<GaussianRational>) -> Self {
        let terms = f
            .numerator()
            .terms()
            .map(|(m, c)| TermJson {
                e: *m.exponents(),
                re: format_rational(c.re()),
                im: format_rational(c.im()),
            })
            .collect();
        PolyFieldJson { terms, denom_power: f.denom_power() }
    }
}

impl TryFrom<&PolyFieldJson> for PolyField<GaussianRational> {
    type Error = Error;

    fn try_from(json: &PolyFieldJson) -> Result<Self> {
        let terms = json
            .terms
            .iter()
            .map(|t| Ok((t.e, GaussianRational::new(parse_rational(&t.re)?, parse_rational(&t.im)?))))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyField::new(Polynomial3::from_terms(terms), json.denom_power))
    }
}

impl PolyField<GaussianRational> {
    pub fn to_json(&self) -> PolyFieldJson {
        PolyFieldJson::from(self)
    }

    pub fn from_json(json: &PolyFieldJson) -> Result<Self> {
        PolyField::try_from(json)
    }
}

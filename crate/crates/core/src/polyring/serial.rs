//! Text and JSON forms of polynomials.
//!
//! Text: terms in descending graded-lex order, e.g.
//! `2*t0*t1 - 2*t0*t2 - t1*t2 + t2^2`. JSON: an array of
//! `{"coeff": "p/q", "exps": [..]}` objects in the same order, with
//! integer coefficients written without a denominator.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

pub fn coeff_to_string(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn coeff_from_str(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid coefficient {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
    }
}

impl Polynomial {
    pub(crate) fn write_with_prefix(&self, f: &mut impl fmt::Write, prefix: &str) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let abs = c.abs();
            match (idx == 0, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&coeff_to_string(&abs))?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{}*", coeff_to_string(&abs))?;
            }
            let mut first = true;
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                write!(f, "{prefix}{i}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                first = false;
            }
        }
        Ok(())
    }

    /// LaTeX form with variables written `{symbol}_{i}`, e.g.
    /// `2 t_{0} t_{1} - \frac{1}{2} t_{2}^{2}`.
    pub fn to_latex(&self, symbol: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let abs = c.abs();
            match (idx == 0, c.is_negative()) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
            };
            if m.is_one() {
                out.push_str(&coeff);
                continue;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() {
                factors.push(coeff);
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("{symbol}_{{{i}}}")),
                    _ => factors.push(format!("{symbol}_{{{i}}}^{{{e}}}")),
                }
            }
            out.push_str(&factors.join(" "));
        }
        out
    }

    /// Parses the text form produced by `Display`, in `nvars` variables
    /// named `t0, t1, ...`.
    pub fn parse(s: &str, nvars: usize) -> Result<Polynomial> {
        Self::parse_with_prefix(s, nvars, "t")
    }

    pub fn parse_with_prefix(s: &str, nvars: usize, prefix: &str) -> Result<Polynomial> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        // split into signed terms
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut current = String::new();
        for (pos, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(current.is_empty() && pos == 0) {
                if current.is_empty() {
                    return Err(Error::Parse(format!("dangling sign in {s:?}")));
                }
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if ch == '-' {
                negative = true;
            } else if ch != '+' {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(Error::Parse(format!("dangling sign in {s:?}")));
        }
        terms.push((negative, current));

        let mut out = Polynomial::zero(nvars);
        for (negative, body) in terms {
            let mut coeff = BigRational::one();
            let mut exps = vec![0u32; nvars];
            for factor in body.split('*') {
                if let Some(var) = factor.strip_prefix(prefix) {
                    let (index, exp) = match var.split_once('^') {
                        Some((i, e)) => (i, e),
                        None => (var, "1"),
                    };
                    let index: usize = index
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable {factor:?}")))?;
                    let exp: u32 = exp
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                    if index >= nvars {
                        return Err(Error::IndexOutOfRange {
                            what: "variable",
                            index,
                            bound: format!("< {nvars}"),
                        });
                    }
                    exps[index] += exp;
                } else {
                    coeff *= coeff_from_str(factor)?;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Monomial::new(exps), coeff);
        }
        Ok(out)
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| TermJson {
                coeff: coeff_to_string(c),
                exps: m.exps().to_vec(),
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[TermJson], nvars: usize) -> Result<Polynomial> {
        let parsed = terms
            .iter()
            .map(|t| Ok((t.exps.clone(), coeff_from_str(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(nvars, parsed)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_terms()).expect("terms serialize")
    }

    pub fn from_json_value(value: &serde_json::Value, nvars: usize) -> Result<Polynomial> {
        let terms: Vec<TermJson> = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("polynomial JSON: {e}")))?;
        Self::from_json_terms(&terms, nvars)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with_prefix(f, "t")
    }
}

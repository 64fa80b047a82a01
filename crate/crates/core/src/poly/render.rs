//! Canonical text form of polynomials.
//!
//! Terms appear in canonical order, coefficients as integers or `p/q`, and
//! variables as `a_ij`, `x_ij` or `t`, e.g. `79/2*t^2 + 23/2*t + 1`.
//! Compound coefficients are parenthesised: `(a_12 - a_13)*x_13^2`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{Coefficient, Monomial, MultiPoly, QPoly, VarSet};
use crate::error::{Error, Result};

pub fn render_monomial(vars: VarSet, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .support()
        .map(|(v, e)| {
            if e == 1 {
                vars.name(v)
            } else {
                format!("{}^{}", vars.name(v), e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

pub fn render<C: Coefficient>(p: &MultiPoly<C>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let multi = p.len() > 1;
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        let abs = if negative { c.neg_ref() } else { c.clone() };
        let body = if m.is_one() {
            if !abs.is_atomic() && multi {
                format!("({})", abs.render())
            } else {
                abs.render()
            }
        } else if abs.is_one_coef() {
            render_monomial(p.vars(), m)
        } else if abs.is_atomic() {
            format!("{}*{}", abs.render(), render_monomial(p.vars(), m))
        } else {
            format!("({})*{}", abs.render(), render_monomial(p.vars(), m))
        };
        match (k, negative) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

/// Parses a rational number written as an integer or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Parses the canonical rendering of a rational polynomial over `vars`.
///
/// Accepts any term order and repeated monomials, so it also reads
/// hand-written input such as `a_12 + 2*a_12^2 - 1/2`.
pub fn parse_qpoly(vars: VarSet, text: &str) -> Result<QPoly> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = QPoly::zero(vars, ());
    // split on top-level signs, remembering each term's sign
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    for (k, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && !(k > 0 && cur.ends_with('^')) {
            if k > 0 {
                if cur.is_empty() {
                    return Err(Error::Parse(format!("dangling sign in `{text}`")));
                }
                terms.push((negative, std::mem::take(&mut cur)));
            }
            negative = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("dangling sign in `{text}`")));
    }
    terms.push((negative, cur));

    for (negative, term) in terms {
        let mut coef: BigRational = One::one();
        let mut exps = vec![0u16; vars.len()];
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in `{term}`")));
            }
            if factor.starts_with(|c: char| c.is_ascii_digit()) {
                coef *= parse_rational(factor)?;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<u16>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            let idx = vars
                .parse_name(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            exps[idx] += exp;
        }
        if negative {
            coef = -coef;
        }
        p.add_term(Monomial::from_exponents(exps), coef);
    }
    Ok(p)
}

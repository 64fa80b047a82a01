//! JSON form of polynomials: a list of `{"exp": {"12": 2, ...}, "coef": "p/q"}`
//! terms in canonical order; univariate polynomials as coefficient strings,
//! lowest degree first.

use std::collections::BTreeMap;

use num_rational::BigRational;
use polytropes::poly::{parse_rational, Monomial, QPoly, VarSet};
use polytropes::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exp: BTreeMap<String, u16>,
    pub coef: String,
}

pub fn terms(p: &QPoly) -> Vec<Term> {
    let vars = p.vars();
    p.terms()
        .map(|(m, c)| Term {
            exp: m.support().map(|(v, e)| (vars.key(v), e)).collect(),
            coef: c.to_string(),
        })
        .collect()
}

pub fn from_terms(vars: VarSet, terms: &[Term]) -> Result<QPoly> {
    let mut p = QPoly::zero(vars, ());
    for t in terms {
        let mut pairs = Vec::with_capacity(t.exp.len());
        for (k, &e) in &t.exp {
            let v = vars
                .parse_key(k)
                .ok_or_else(|| Error::UnknownVariable(k.clone()))?;
            pairs.push((v, e));
        }
        p.add_term(Monomial::from_pairs(vars.len(), &pairs), parse_rational(&t.coef)?);
    }
    Ok(p)
}

pub fn rationals(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Coefficients of a polynomial in `t`, lowest degree first.
pub fn univariate(p: &QPoly) -> Vec<String> {
    rationals(&p.univariate_coefficients())
}

#[cfg(test)]
mod tests {
    use super::*;
    use polytropes::poly::parse_qpoly;

    #[test]
    fn round_trip() {
        let vars = VarSet::a(3);
        let p = parse_qpoly(vars, "a_12^2 - 3/2*a_12*a_31 + 7").unwrap();
        let t = terms(&p);
        assert_eq!(t[0].exp, BTreeMap::from([("12".to_string(), 2)]));
        assert_eq!(t[0].coef, "1");
        assert_eq!(t.last().unwrap().coef, "7");
        assert_eq!(from_terms(vars, &t).unwrap(), p);
        let text = serde_json::to_string(&t[1]).unwrap();
        assert_eq!(text, r#"{"exp":{"12":1,"31":1},"coef":"-3/2"}"#);
    }

    #[test]
    fn rejects_unknown_keys() {
        let t = Term {
            exp: BTreeMap::from([("44".to_string(), 1)]),
            coef: "1".into(),
        };
        assert!(from_terms(VarSet::a(3), &[t]).is_err());
    }
}

//! Cross-checks of the algebraic pipeline against lattice-point enumeration
//! and the subdivision rules.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::cohomology::{factorial, volume_polynomial, VolumePolynomial};
use crate::ehrhart::ehrhart_from_hstar;
use crate::error::{Error, Result};
use crate::oracle::{
    count_lattice_points_with, hstar_bruteforce_with, normalized_volume_bruteforce_with,
    OracleConfig,
};
use crate::pipeline::PolynomialTriple;
use crate::poly::{render_monomial, QPoly};
use crate::subdivision::{central_subdivision, verify_coefficients_3d, verify_coefficients_4d, Check};
use crate::tropical::WeightMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Depth {
    /// Volume, lattice-point count and h*-vector at `c` only.
    Quick,
    /// Adds dilates up to 4, the binomial-basis identity, h* sanity and, for
    /// `n = 4, 5`, the subdivision rules for the coefficients.
    Full,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {}: {}", c.name, c.detail)?;
        }
        match self.first_failure() {
            None => write!(f, "PASS ({} checks)", self.checks.len()),
            Some(c) => write!(f, "FAIL ({})", c.name),
        }
    }
}

/// Computes the polynomials of `w` and checks them.
pub fn verify(w: &WeightMatrix, depth: Depth, cfg: &OracleConfig) -> Result<VerifyReport> {
    verify_volume(w, volume_polynomial(w)?, depth, cfg)
}

/// Checks a volume polynomial supplied from outside; the first check
/// compares it with a fresh computation and names the first differing term.
pub fn verify_supplied(
    w: &WeightMatrix,
    normalized: QPoly,
    depth: Depth,
    cfg: &OracleConfig,
) -> Result<VerifyReport> {
    let fresh = volume_polynomial(w)?;
    let scale = BigRational::from_integer(factorial(w.n() - 1)).recip();
    let supplied = VolumePolynomial {
        euclidean: normalized.scale(&scale),
        normalized,
        ..fresh.clone()
    };
    let diff = supplied.normalized.checked_sub(&fresh.normalized)?;
    let detail = match diff.terms().next() {
        None => "identical".to_string(),
        Some((m, _)) => format!(
            "coefficient of {} is {}, recomputed {}",
            render_monomial(diff.vars(), m),
            supplied.normalized.coefficient_or_zero(m),
            fresh.normalized.coefficient_or_zero(m)
        ),
    };
    // a wrong polynomial may not even yield a valid Ehrhart polynomial
    let mut report = match verify_volume(w, supplied, depth, cfg) {
        Err(Error::Consistency(msg)) => {
            let mut r = VerifyReport::default();
            r.push("derived polynomials", false, msg);
            r
        }
        other => other?,
    };
    report.checks.insert(
        0,
        Check {
            name: "supplied volume polynomial".into(),
            passed: diff.is_zero(),
            detail,
        },
    );
    Ok(report)
}

/// Runs every check on the polynomials derived from `volume`.
pub fn verify_volume(
    w: &WeightMatrix,
    volume: VolumePolynomial,
    depth: Depth,
    cfg: &OracleConfig,
) -> Result<VerifyReport> {
    let triple = PolynomialTriple::from_volume(volume)?;
    let mut report = VerifyReport::default();
    let d = w.n() - 1;

    let vol_c = triple.volume.normalized.eval_integers(&w.to_vector())?;
    let vol_oracle = BigRational::from_integer(normalized_volume_bruteforce_with(w, cfg)?);
    report.push(
        "volume at c",
        vol_c == vol_oracle,
        format!("polynomial {vol_c}, enumeration {vol_oracle}"),
    );

    let count = |k: u64| -> Result<(BigRational, BigRational)> {
        let poly = triple.ehrhart.count(w, k as i64)?;
        let enumerated = BigRational::from_integer(BigInt::from(count_lattice_points_with(w, k, cfg)?));
        Ok((poly, enumerated))
    };
    let (p1, e1) = count(1)?;
    report.push(
        "lattice points at k=1",
        p1 == e1,
        format!("polynomial {p1}, enumeration {e1}"),
    );

    let hstar = triple.hstar.at(w)?;
    let hstar_oracle: Vec<BigRational> = hstar_bruteforce_with(w, cfg)?
        .into_iter()
        .map(BigRational::from_integer)
        .collect();
    report.push(
        "h*-vector",
        hstar == hstar_oracle,
        format!("polynomial {}, enumeration {}", join(&hstar), join(&hstar_oracle)),
    );

    if depth == Depth::Quick {
        return Ok(report);
    }

    let mut dilate_bad = None;
    for k in 1..=4 {
        let (p, e) = count(k)?;
        if p != e {
            dilate_bad = Some(format!("k={k}: polynomial {p}, enumeration {e}"));
            break;
        }
    }
    report.push(
        "dilates k=1..4",
        dilate_bad.is_none(),
        dilate_bad.unwrap_or_else(|| "all agree".into()),
    );

    let mut binom_bad = None;
    for k in 0..=d {
        let lhs = triple.ehrhart.count(w, k as i64)?;
        let rhs = ehrhart_from_hstar(&hstar, k);
        if lhs != rhs {
            binom_bad = Some(format!("k={k}: {lhs} vs {rhs}"));
            break;
        }
    }
    report.push(
        "binomial-basis identity",
        binom_bad.is_none(),
        binom_bad.unwrap_or_else(|| format!("k=0..{d}")),
    );

    let sum: BigRational = hstar.iter().sum();
    let sane = hstar.iter().all(|h| h.is_integer() && !h.is_negative())
        && hstar.first().is_some_and(|h| *h == BigRational::from_integer(1.into()))
        && sum == vol_c;
    report.push(
        "h* nonnegative integers, h*_0 = 1, sum = volume",
        sane,
        format!("{} (sum {sum})", join(&hstar)),
    );

    match w.n() {
        4 | 5 if !triple.volume.tie_flag => {
            let s = central_subdivision(w)?;
            let sub = if w.n() == 4 {
                verify_coefficients_3d(&triple.volume, &s)?
            } else {
                verify_coefficients_4d(&triple.volume, Some(&s))?
            };
            report.checks.extend(sub.checks);
        }
        _ => {}
    }
    Ok(report)
}

fn join(v: &[BigRational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

//! From Euclidean volume polynomials to multivariate Ehrhart and
//! h*-polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{rat, Monomial, NestedPoly, PolyCtx, QPoly, VarKind, VarSet};
use crate::tropical::WeightMatrix;

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `B_0 .. B_k` from `z / (e^z - 1) = sum B_k z^k / k!`, so `B_1 = -1/2`.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    pub fn new(k: usize) -> Self {
        let mut values: Vec<BigRational> = vec![rat(1)];
        for m in 1..=k {
            // sum_{j=0}^{m} C(m+1, j) B_j = 0
            let s = (0..m).fold(BigRational::zero(), |acc, j| {
                acc + BigRational::from_integer(binomial(m + 1, j)) * &values[j]
            });
            values.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        Self { values }
    }

    pub fn get(&self, k: usize) -> &BigRational {
        &self.values[k]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Coefficients `(-1)^k B_k / k!` of `z / (1 - e^-z)`.
    pub fn todd_series(&self) -> Vec<BigRational> {
        let mut fact = BigInt::one();
        self.values
            .iter()
            .enumerate()
            .map(|(k, b)| {
                if k > 0 {
                    fact *= BigInt::from(k);
                }
                let sign = if k % 2 == 1 { -1 } else { 1 };
                b * rat(sign) / BigRational::from_integer(fact.clone())
            })
            .collect()
    }
}

/// Eulerian polynomials `A_0 .. A_d` with `sum_j j^d t^j = A_d(t) / (1 - t)^(d+1)`.
#[derive(Clone, Debug)]
pub struct EulerianTable {
    polys: Vec<Vec<BigInt>>,
}

impl EulerianTable {
    pub fn new(d: usize) -> Self {
        // numbers[m] = A(k, m), number of permutations of [k] with m ascents
        let mut numbers = vec![BigInt::one()];
        let mut polys = vec![vec![BigInt::one()]];
        for k in 1..=d {
            let mut next = vec![BigInt::zero(); k];
            for (m, slot) in next.iter_mut().enumerate() {
                let keep = numbers.get(m).cloned().unwrap_or_default() * BigInt::from(m + 1);
                let shift = if m > 0 {
                    numbers.get(m - 1).cloned().unwrap_or_default() * BigInt::from(k - m)
                } else {
                    BigInt::zero()
                };
                *slot = keep + shift;
            }
            numbers = next;
            // A_k(t) = sum_{m=1}^{k} A(k, m-1) t^m
            let mut p = vec![BigInt::zero()];
            p.extend(numbers.iter().cloned());
            polys.push(p);
        }
        Self { polys }
    }

    /// Coefficients of `A_i(t)`, lowest degree first.
    pub fn polynomial(&self, i: usize) -> &[BigInt] {
        &self.polys[i]
    }

    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }
}

/// Multivariate Ehrhart polynomial in the facet parameters `a_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct EhrhartPolynomial {
    pub multivariate: QPoly,
    pub dimension: usize,
}

impl EhrhartPolynomial {
    /// Homogeneous components `lambda_0 .. lambda_d`.
    pub fn components(&self) -> Vec<QPoly> {
        (0..=self.dimension)
            .map(|i| self.multivariate.homogeneous_component(i as u32))
            .collect()
    }

    /// Univariate Ehrhart polynomial of the family `k * P(c)`.
    pub fn univariate(&self, w: &WeightMatrix) -> Result<QPoly> {
        dilate(&self.multivariate, w)
    }

    /// Number of lattice points of the `k`-th dilate of `P(c)`.
    pub fn count(&self, w: &WeightMatrix, k: i64) -> Result<BigRational> {
        let c: Vec<i64> = w.to_vector().iter().map(|v| v * k).collect();
        self.multivariate.eval_integers(&c)
    }
}

/// Applies `prod_ij D_ij / (1 - exp(-D_ij))` (with `D_ij = d/da_ij`) to `vol`,
/// keeping derivative monomials of total order at most `order`.
pub fn todd_apply_truncated(vol: &QPoly, order: usize) -> QPoly {
    let series = BernoulliTable::new(order).todd_series();
    // parts[o] collects the terms produced by derivatives of total order o
    let mut parts: Vec<QPoly> = vec![QPoly::zero(vol.vars(), ()); order + 1];
    parts[0] = vol.clone();
    for var in 0..vol.vars().len() {
        let mut next: Vec<QPoly> = vec![QPoly::zero(vol.vars(), ()); order + 1];
        for (o, p) in parts.iter().enumerate() {
            let mut deriv = p.clone();
            for (k, tau) in series.iter().enumerate().take(order + 1 - o) {
                if k > 0 {
                    deriv = deriv.derivative(var).expect("variable in range");
                }
                if deriv.is_zero() {
                    break;
                }
                if !tau.is_zero() {
                    next[o + k] = &next[o + k] + &deriv.scale(tau);
                }
            }
        }
        parts = next;
    }
    parts
        .into_iter()
        .fold(QPoly::zero(vol.vars(), ()), |acc, p| &acc + &p)
}

/// Multivariate Ehrhart polynomial from the Euclidean volume polynomial of
/// degree `d`, differentiating directly in the facet parameters.
pub fn todd_apply(vol: &QPoly, d: usize) -> EhrhartPolynomial {
    EhrhartPolynomial {
        multivariate: todd_apply_truncated(vol, d),
        dimension: d,
    }
}

/// `h*_0 .. h*_d` as polynomials in the facet parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct HStarPolynomial {
    pub coefficients: Vec<QPoly>,
}

impl HStarPolynomial {
    pub fn dimension(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `sum_i h*_i(a) t^i` as a polynomial in `t` with coefficients in the `a_ij`.
    pub fn as_t_polynomial(&self) -> NestedPoly {
        let avars = self.coefficients[0].vars();
        let mut p = NestedPoly::zero(VarSet::t(), PolyCtx { vars: avars, inner: () });
        for (i, c) in self.coefficients.iter().enumerate() {
            p.add_term(Monomial::var(1, 0, i as u16), c.clone());
        }
        p
    }

    /// The h*-vector of `P(c)`.
    pub fn at(&self, w: &WeightMatrix) -> Result<Vec<BigRational>> {
        let c = w.to_vector();
        self.coefficients.iter().map(|h| h.eval_integers(&c)).collect()
    }

    /// The h*-polynomial of `P(c)` in `t`.
    pub fn univariate(&self, w: &WeightMatrix) -> Result<QPoly> {
        Ok(QPoly::univariate(&self.at(w)?))
    }
}

impl fmt::Display for HStarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_t_polynomial())
    }
}

/// Coefficients of `(1 - t)^k`, lowest degree first.
fn one_minus_t_pow(k: usize) -> Vec<BigInt> {
    (0..=k)
        .map(|j| {
            let b = binomial(k, j);
            if j % 2 == 1 {
                -b
            } else {
                b
            }
        })
        .collect()
}

fn mul_univariate(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `h*(a, t) = sum_i lambda_i(a) A_i(t) (1 - t)^(d - i)` with `lambda_i` the
/// degree-`i` part of the Ehrhart polynomial.
pub fn hstar_transform(ehr: &EhrhartPolynomial) -> Result<HStarPolynomial> {
    let d = ehr.dimension;
    let lambdas = ehr.components();
    if lambdas[0].as_constant() != Some(rat(1)) {
        return Err(Error::Consistency(format!(
            "Ehrhart polynomial has constant term {}, expected 1",
            lambdas[0]
        )));
    }
    let eulerian = EulerianTable::new(d);
    let vars = ehr.multivariate.vars();
    let mut coefficients = vec![QPoly::zero(vars, ()); d + 1];
    for (i, lambda) in lambdas.iter().enumerate() {
        let weights = mul_univariate(eulerian.polynomial(i), &one_minus_t_pow(d - i));
        for (k, wk) in weights.iter().enumerate().take(d + 1) {
            if !wk.is_zero() {
                coefficients[k] = &coefficients[k] + &lambda.scale(&BigRational::from_integer(wk.clone()));
            }
        }
    }
    Ok(HStarPolynomial { coefficients })
}

/// Substitutes `a_ij -> t * c_ij`.
pub fn dilate(p: &QPoly, w: &WeightMatrix) -> Result<QPoly> {
    check_avars(p, w)?;
    let t = QPoly::var(VarSet::t(), (), 0);
    let assignment: BTreeMap<usize, QPoly> = w
        .to_vector()
        .into_iter()
        .enumerate()
        .map(|(k, c)| (k, t.scale(&rat(c))))
        .collect();
    p.substitute(VarSet::t(), &assignment)
}

/// Substitutes `a_ij -> c_ij` in each coefficient.
pub fn specialize(p: &QPoly, w: &WeightMatrix) -> Result<BigRational> {
    check_avars(p, w)?;
    p.eval_integers(&w.to_vector())
}

fn check_avars(p: &QPoly, w: &WeightMatrix) -> Result<()> {
    let v = p.vars();
    if v.kind() != VarKind::A || v.n() != w.n() {
        return Err(Error::DomainMismatch(format!(
            "expected a polynomial in the a-variables of a {0}x{0} matrix, got {v}",
            w.n()
        )));
    }
    Ok(())
}

/// `ehr(k) = sum_i h*_i C(k + d - i, d)`.
pub fn ehrhart_from_hstar(hstar: &[BigRational], k: usize) -> BigRational {
    let d = hstar.len() - 1;
    hstar
        .iter()
        .enumerate()
        .filter(|&(i, _)| k + d >= i)
        .map(|(i, h)| h * BigRational::from_integer(binomial(k + d - i, d)))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::volume_polynomial;
    use crate::poly::{frac, parse_qpoly};
    use proptest::prelude::*;

    fn half() -> BigRational {
        frac(1, 2)
    }

    fn hexagon() -> WeightMatrix {
        WeightMatrix::from_vector(3, &[3, 2, 3, 4, 5, 6]).unwrap()
    }

    #[test]
    fn bernoulli_values() {
        let b = BernoulliTable::new(6);
        let expect = [frac(1, 1), frac(-1, 2), frac(1, 6), frac(0, 1), frac(-1, 30), frac(0, 1), frac(1, 42)];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(b.get(k), e, "B_{k}");
        }
        let s = b.todd_series();
        assert_eq!(&s[..5], &[frac(1, 1), half(), frac(1, 12), frac(0, 1), frac(-1, 720)]);
    }

    #[test]
    fn eulerian_values() {
        let e = EulerianTable::new(4);
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(e.polynomial(0), ints(&[1]).as_slice());
        assert_eq!(e.polynomial(1), ints(&[0, 1]).as_slice());
        assert_eq!(e.polynomial(2), ints(&[0, 1, 1]).as_slice());
        assert_eq!(e.polynomial(3), ints(&[0, 1, 4, 1]).as_slice());
        assert_eq!(e.polynomial(4), ints(&[0, 1, 11, 11, 1]).as_slice());
    }

    #[test]
    fn eulerian_generating_function() {
        // sum_{j<=N} j^d t^j (1-t)^(d+1) agrees with A_d(t) up to degree N
        let e = EulerianTable::new(4);
        for d in 0..=4usize {
            let series: Vec<BigInt> = (0..12u32).map(|j| BigInt::from(j).pow(d as u32)).collect();
            let prod = mul_univariate(&series, &one_minus_t_pow(d + 1));
            let a = e.polynomial(d);
            for (k, got) in prod.iter().take(12).enumerate() {
                let want = a.get(k).cloned().unwrap_or_default();
                let want = if d == 0 && k == 0 { BigInt::one() } else { want };
                assert_eq!(*got, want, "d={d} k={k}");
            }
        }
    }

    #[test]
    fn hexagon_ehrhart_and_hstar() {
        let v = volume_polynomial(&hexagon()).unwrap();
        let ehr = todd_apply(&v.euclidean, 2);
        let a = VarSet::a(3);
        let expected = &(&v.euclidean
            + &parse_qpoly(a, "a_12 + a_13 + a_21 + a_23 + a_31 + a_32").unwrap().scale(&half()))
            + &QPoly::one(a, ());
        assert_eq!(ehr.multivariate, expected);
        assert_eq!(ehr.count(&hexagon(), 1).unwrap(), rat(52));
        assert_eq!(ehr.count(&hexagon(), 2).unwrap(), rat(182));
        assert_eq!(ehr.univariate(&hexagon()).unwrap().to_string(), "79/2*t^2 + 23/2*t + 1");

        let h = hstar_transform(&ehr).unwrap();
        assert_eq!(h.univariate(&hexagon()).unwrap().to_string(), "29*t^2 + 49*t + 1");
        let sum: BigRational = h.at(&hexagon()).unwrap().into_iter().sum();
        assert_eq!(sum, rat(79));
    }

    #[test]
    fn segment() {
        let a = VarSet::a(2);
        let vol = parse_qpoly(a, "a_12 + a_21").unwrap();
        let ehr = todd_apply(&vol, 1);
        assert_eq!(ehr.multivariate, parse_qpoly(a, "a_12 + a_21 + 1").unwrap());
        let h = hstar_transform(&ehr).unwrap();
        assert_eq!(h.coefficients[0], QPoly::one(a, ()));
        assert_eq!(h.coefficients[1], parse_qpoly(a, "a_12 + a_21 - 1").unwrap());
        let unit = WeightMatrix::from_vector(2, &[1, 1]).unwrap();
        assert_eq!(h.at(&unit).unwrap(), vec![rat(1), rat(1)]);
        assert_eq!(h.to_string(), "(a_12 + a_21 - 1)*t + 1");
    }

    #[test]
    fn truncation_order_beyond_degree_is_inert() {
        let v = volume_polynomial(&hexagon()).unwrap();
        assert_eq!(todd_apply_truncated(&v.euclidean, 2), todd_apply_truncated(&v.euclidean, 5));
        assert_ne!(todd_apply_truncated(&v.euclidean, 1), todd_apply_truncated(&v.euclidean, 2));
    }

    #[test]
    fn volume_dilates_homogeneously() {
        let v = volume_polynomial(&hexagon()).unwrap();
        assert_eq!(dilate(&v.normalized, &hexagon()).unwrap().to_string(), "79*t^2");
        assert_eq!(specialize(&v.normalized, &hexagon()).unwrap(), rat(79));
        assert!(dilate(&v.normalized, &WeightMatrix::zero(4)).is_err());
    }

    #[test]
    fn binomial_basis_identity_for_hexagon() {
        let ehr = todd_apply(&volume_polynomial(&hexagon()).unwrap().euclidean, 2);
        let h = hstar_transform(&ehr).unwrap().at(&hexagon()).unwrap();
        for k in 0..5 {
            assert_eq!(ehrhart_from_hstar(&h, k), ehr.count(&hexagon(), k as i64).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // Todd of a single power a^d is the Bernoulli-polynomial expansion
        // sum_k C(d,k) (-1)^k B_k a^(d-k), i.e. B_d(a + 1) with B_1 = -1/2.
        #[test]
        fn todd_of_a_power(d in 0usize..7, v in 0usize..6) {
            let a = VarSet::a(3);
            let p = QPoly::monomial(a, Monomial::var(6, v, d as u16), rat(1));
            let got = todd_apply_truncated(&p, d);
            let b = BernoulliTable::new(d);
            let mut want = QPoly::zero(a, ());
            for k in 0..=d {
                let sign = if k % 2 == 1 { -1 } else { 1 };
                let c = BigRational::from_integer(binomial(d, k)) * b.get(k) * rat(sign);
                want.add_term(Monomial::var(6, v, (d - k) as u16), c);
            }
            prop_assert_eq!(got, want);
        }

        #[test]
        fn hstar_inverts_to_ehrhart(coefs in prop::collection::vec(-20i64..20, 3)) {
            // any polynomial with constant term 1: the transform's inverse is the binomial identity
            let t = VarSet::a(2);
            let mut p = QPoly::one(t, ());
            p.add_term(Monomial::var(2, 0, 1), rat(coefs[0]));
            p.add_term(Monomial::var(2, 1, 1), rat(coefs[1]));
            p.add_term(Monomial::from_pairs(2, &[(0, 1), (1, 1)]), rat(coefs[2]));
            let ehr = EhrhartPolynomial { multivariate: p, dimension: 2 };
            let w = WeightMatrix::from_vector(2, &[2, 3]).unwrap();
            let h = hstar_transform(&ehr).unwrap().at(&w).unwrap();
            for k in 0..4 {
                prop_assert_eq!(ehrhart_from_hstar(&h, k), ehr.count(&w, k as i64).unwrap());
            }
        }
    }
}

//! Integration in the cohomology ring `R / (M + L)` of the toric variety of a
//! polytrope's normal fan, and the multivariate volume polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger_truncated, initial_ideal, linear_ideal_generators, minimal_prime, GroebnerBasis,
    InitialIdeal,
};
use crate::poly::{divisor_class, Monomial, NestedPoly, QPoly, VarSet};
use crate::tropical::WeightMatrix;

/// The data Algorithm 1 needs for one weight matrix: a Gröbner basis of
/// `M + L`, the top-degree standard monomial `m`, and the normal form
/// `gamma * m` of the chosen vertex monomial.
///
/// `M + L` is homogeneous and only degree `n - 1` matters, so the basis is
/// computed up to that degree; normal forms in degree `<= n - 1` are exact.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    n: usize,
    initial: InitialIdeal,
    basis: GroebnerBasis,
    facet: Vec<usize>,
    top: Monomial,
    gamma: BigRational,
}

impl CohomologyRing {
    pub fn new(w: &WeightMatrix) -> Result<Self> {
        let n = w.n();
        let initial = initial_ideal(w)?;
        let mut gens = initial.ideal.to_polys();
        gens.extend(linear_ideal_generators(n));
        let degree = (n - 1) as u32;
        let basis = buchberger_truncated(&gens, &initial.order, Some(degree))?;

        let prime = minimal_prime(&initial.ideal, &initial.order.variables_descending())?;
        let x = VarSet::x(n);
        let facet: Vec<usize> = (0..x.len()).filter(|v| !prime.contains(v)).collect();

        let standard = basis.standard_monomials_of_degree(degree);
        let top = match standard.as_slice() {
            [m] => m.clone(),
            _ => {
                return Err(Error::Consistency(format!(
                    "expected one standard monomial of degree {degree}, found {}",
                    standard.len()
                )))
            }
        };

        let vertex = QPoly::monomial(
            x,
            Monomial::from_pairs(x.len(), &facet.iter().map(|&v| (v, 1)).collect::<Vec<_>>()),
            BigRational::one(),
        );
        let nf = basis.normal_form(&vertex)?;
        let gamma = nf.coefficient_or_zero(&top);
        if gamma.is_zero() || nf.len() != 1 {
            return Err(Error::Consistency(format!(
                "vertex monomial reduces to {nf}, not a nonzero multiple of the top monomial"
            )));
        }
        Ok(Self {
            n,
            initial,
            basis,
            facet,
            top,
            gamma,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn initial(&self) -> &InitialIdeal {
        &self.initial
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    /// Variables `x_ij` with `ij` not in `I_v` for the chosen vertex `v`.
    pub fn vertex_facets(&self) -> &[usize] {
        &self.facet
    }

    /// The standard monomial `m` spanning the top degree.
    pub fn top_monomial(&self) -> &Monomial {
        &self.top
    }

    pub fn gamma(&self) -> &BigRational {
        &self.gamma
    }

    /// `delta / gamma`, where `delta` is the coefficient of `m` in the normal
    /// form of `p`. Components of `p` outside degree `n - 1` contribute zero.
    pub fn integrate(&self, p: &NestedPoly) -> Result<QPoly> {
        let top = p.homogeneous_component((self.n - 1) as u32);
        let delta = self.basis.reducer().coefficient_of(&top, &self.top)?;
        Ok(delta.scale(&self.gamma.recip()))
    }
}

/// Runs Algorithm 1 on `p` for the polytrope of `w`.
pub fn integrate_cohomology(p: &NestedPoly, w: &WeightMatrix) -> Result<QPoly> {
    CohomologyRing::new(w)?.integrate(p)
}

/// Multivariate normalized and Euclidean volume polynomials of a polytrope type.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumePolynomial {
    /// Integer coefficients, homogeneous of degree `n - 1`.
    pub normalized: QPoly,
    /// `normalized / (n - 1)!`.
    pub euclidean: QPoly,
    pub source_weight: WeightMatrix,
    /// The weight sits on the boundary of a Gröbner cone; the polynomial is
    /// that of the neighbouring cone picked by the grevlex refinement.
    pub tie_flag: bool,
}

impl VolumePolynomial {
    pub fn dimension(&self) -> usize {
        self.source_weight.n() - 1
    }

    /// Normalized volume at the source weight.
    pub fn normalized_at_source(&self) -> BigRational {
        self.normalized
            .eval_integers(&self.source_weight.to_vector())
            .expect("A-variables match the source matrix")
    }
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, v| acc * BigInt::from(v))
}

/// The volume polynomial obtained by integrating `[D]^(n-1)` for `D = sum a_ij D_ij`.
pub fn volume_polynomial(w: &WeightMatrix) -> Result<VolumePolynomial> {
    let ring = CohomologyRing::new(w)?;
    volume_polynomial_in(&ring, w)
}

/// As [`volume_polynomial`], reusing an already computed ring.
pub fn volume_polynomial_in(ring: &CohomologyRing, w: &WeightMatrix) -> Result<VolumePolynomial> {
    let n = w.n();
    let q = divisor_class(n).pow((n - 1) as u32);
    let normalized = ring.integrate(&q)?;
    if let Some((m, c)) = normalized.terms().find(|(_, c)| !c.is_integer()) {
        return Err(Error::Consistency(format!(
            "volume polynomial has non-integer coefficient {c} at {}",
            crate::poly::render_monomial(normalized.vars(), m)
        )));
    }
    let euclidean = normalized.scale(&BigRational::from_integer(factorial(n - 1)).recip());
    Ok(VolumePolynomial {
        normalized,
        euclidean,
        source_weight: w.clone(),
        tie_flag: ring.initial().tie,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{frac, parse_qpoly, rat, PolyCtx};

    const HEX_VOL: &str = "-a_12^2 + 2*a_12*a_13 - a_13^2 - a_21^2 + 2*a_13*a_23 + 2*a_21*a_23 \
        - a_23^2 + 2*a_21*a_31 - a_31^2 + 2*a_12*a_32 + 2*a_31*a_32 - a_32^2";

    fn hexagon() -> WeightMatrix {
        WeightMatrix::from_vector(3, &[3, 2, 3, 4, 5, 6]).unwrap()
    }

    #[test]
    fn hexagon_algorithm_one() {
        let ring = CohomologyRing::new(&hexagon()).unwrap();
        assert_eq!(ring.gamma(), &rat(-1));
        let x = VarSet::x(3);
        assert_eq!(crate::poly::render_monomial(x, ring.top_monomial()), "x_13^2");
        let names: Vec<String> = ring.vertex_facets().iter().map(|&v| x.name(v)).collect();
        assert_eq!(names, ["x_31", "x_32"]);

        let v = volume_polynomial(&hexagon()).unwrap();
        assert_eq!(v.normalized, parse_qpoly(VarSet::a(3), HEX_VOL).unwrap());
        assert_eq!(v.euclidean, v.normalized.scale(&frac(1, 2)));
        assert_eq!(v.normalized_at_source(), rat(79));
        assert!(!v.tie_flag);
    }

    #[test]
    fn degree_zero_integrates_to_zero() {
        let one = NestedPoly::one(VarSet::x(3), PolyCtx { vars: VarSet::a(3), inner: () });
        assert!(integrate_cohomology(&one, &hexagon()).unwrap().is_zero());
    }

    #[test]
    fn segment_length() {
        for c in [[0, 0], [3, 2], [1, -1], [7, 0]] {
            let w = WeightMatrix::from_vector(2, &c).unwrap();
            let v = volume_polynomial(&w).unwrap();
            assert_eq!(v.normalized, parse_qpoly(VarSet::a(2), "a_12 + a_21").unwrap());
        }
    }

    fn example_3d() -> WeightMatrix {
        WeightMatrix::from_rows(&[
            vec![0, 11, 20, 29],
            vec![21, 0, 19, 20],
            vec![20, 29, 0, 11],
            vec![19, 20, 21, 0],
        ])
        .unwrap()
    }

    fn named_coefficients(v: &VolumePolynomial) -> Vec<BigRational> {
        let a = VarSet::a(4);
        ["a_12^3", "a_12^2*a_14", "a_32^2*a_42", "a_31*a_32*a_41"]
            .iter()
            .map(|s| {
                let m = parse_qpoly(a, s).unwrap().terms().next().unwrap().0.clone();
                v.normalized.coefficient_or_zero(&m)
            })
            .collect()
    }

    #[test]
    fn named_coefficients_after_relabelling() {
        // As printed, both squares at e_1 - e_2 pick a diagonal through it, so
        // the a_12^3 coefficient is 7 - 7 = 0.
        let v = volume_polynomial(&example_3d()).unwrap();
        assert_eq!(named_coefficients(&v), [rat(0), rat(0), rat(-3), rat(0)]);
        assert_eq!(v.normalized_at_source(), rat(137664));
        assert!(v.normalized.is_homogeneous());
        assert_eq!(v.normalized.total_degree(), Some(3));

        // with vertices 1 and 3 swapped the values are 2, -3, 0, 6
        let swapped = volume_polynomial(&example_3d().permute(&[2, 1, 0, 3])).unwrap();
        assert_eq!(named_coefficients(&swapped), [rat(2), rat(-3), rat(0), rat(6)]);
    }

    #[test]
    fn non_kleene_is_rejected() {
        let w = WeightMatrix::from_vector(3, &[1, 5, 1, 1, 1, 1]).unwrap();
        assert!(matches!(volume_polynomial(&w), Err(Error::NotKleene(_))));
    }
}

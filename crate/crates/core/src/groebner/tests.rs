use proptest::prelude::*;

use super::*;
use crate::poly::{divisor_class, frac, parse_qpoly, Monomial, QPoly, VarSet};
use crate::tropical::WeightMatrix;

const HEX: [i64; 6] = [3, 2, 3, 4, 5, 6];

fn example_3d() -> WeightMatrix {
    WeightMatrix::from_rows(&[
        vec![0, 11, 20, 29],
        vec![21, 0, 19, 20],
        vec![20, 29, 0, 11],
        vec![19, 20, 21, 0],
    ])
    .unwrap()
}

fn x(n: usize, text: &str) -> QPoly {
    parse_qpoly(VarSet::x(n), text).unwrap()
}

fn mono(n: usize, text: &str) -> Monomial {
    x(n, text).terms().next().unwrap().0.clone()
}

fn hexagon_ml_basis() -> GroebnerBasis {
    let w = WeightMatrix::from_vector(3, &HEX).unwrap();
    let init = initial_ideal(&w).unwrap();
    let mut gens = init.ideal.to_polys();
    gens.extend(linear_ideal_generators(3));
    buchberger(&gens, &init.order).unwrap()
}

#[test]
fn toric_generator_counts() {
    assert_eq!(toric_ideal_generators(2).len(), 1);
    assert_eq!(toric_ideal_generators(3).len(), 9);
    assert_eq!(toric_ideal_generators(4).len(), 30);
    assert_eq!(toric_ideal_generators(2)[0].to_string(), "x_12*x_21 - 1");
}

#[test]
fn toric_ideal_contains_reduced_presentation() {
    // the four binomials listed for n = 3 lie in the ideal of our generators
    let g = buchberger(&toric_ideal_generators(3), &TermOrder::grevlex(6)).unwrap();
    for b in [
        "x_12*x_23*x_31 - 1",
        "x_13*x_31 - 1",
        "x_21*x_13*x_32 - 1",
        "x_23*x_32 - 1",
    ] {
        assert!(g.normal_form(&x(3, b)).unwrap().is_zero(), "{b}");
    }
}

#[test]
fn linear_generators() {
    let l = linear_ideal_generators(3);
    assert_eq!(l[0], x(3, "x_12 + x_13 - x_21 - x_31"));
    assert_eq!(l[1], x(3, "x_21 + x_23 - x_12 - x_32"));
    assert_eq!(l[2], x(3, "x_31 + x_32 - x_13 - x_23"));
    let l2 = linear_ideal_generators(2);
    assert_eq!(l2[0], x(2, "x_12 - x_21"));
    assert_eq!(l2[1], x(2, "x_21 - x_12"));
    for n in 2..6 {
        let sum = linear_ideal_generators(n)
            .into_iter()
            .fold(QPoly::zero(VarSet::x(n), ()), |a, b| &a + &b);
        assert!(sum.is_zero());
    }
}

#[test]
fn hexagon_initial_ideal() {
    let w = WeightMatrix::from_vector(3, &HEX).unwrap();
    let init = initial_ideal(&w).unwrap();
    let expected = MonomialIdeal::new(
        VarSet::x(3),
        [
            "x_12*x_21",
            "x_13*x_21",
            "x_12*x_23",
            "x_12*x_31",
            "x_13*x_31",
            "x_23*x_31",
            "x_13*x_32",
            "x_21*x_32",
            "x_23*x_32",
        ]
        .map(|s| mono(3, s)),
    );
    assert_eq!(init.ideal, expected);
    assert!(!init.tie);
    init.basis.verify_s_pairs().unwrap();
    init.basis.verify_reduced().unwrap();
    assert!(is_maximal_type(&w, true).unwrap());
}

#[test]
fn single_binomial_is_its_own_basis() {
    let g = toric_ideal_generators(2);
    for weight in [vec![0, 0], vec![1, 1], vec![5, 0]] {
        let basis = buchberger(&g, &TermOrder::new(weight)).unwrap();
        assert_eq!(basis.generators(), g);
        basis.verify_s_pairs().unwrap();
    }
    let w = WeightMatrix::from_vector(2, &[1, 1]).unwrap();
    let init = initial_ideal(&w).unwrap();
    assert_eq!(init.ideal.generators(), &[mono(2, "x_12*x_21")]);
    assert!(!init.tie);
    assert!(is_maximal_type(&w, true).unwrap());
}

#[test]
fn square_has_a_weight_tie() {
    let w = WeightMatrix::from_vector(3, &[2, 1, 2, 1, 1, 1]).unwrap();
    let init = initial_ideal(&w).unwrap();
    assert!(init.tie);
    let forms = init.weight_forms();
    assert!(forms.contains(&x(3, "x_13*x_32 - x_12")));
    assert!(!is_maximal_type(&w, true).unwrap());
    // the refined order still gives a triangulation, with fewer vertices counted by the weight
    assert!(init.ideal.is_squarefree());
}

#[test]
fn hexagon_normal_forms() {
    let g = hexagon_ml_basis();
    g.verify_s_pairs().unwrap();
    assert_eq!(g.normal_form(&x(3, "x_31*x_32")).unwrap(), x(3, "-x_13^2"));
    assert_eq!(g.normal_form(&x(3, "1")).unwrap(), x(3, "1"));

    let q2 = divisor_class(3).pow(2);
    let nf = g.normal_form(&q2).unwrap();
    assert_eq!(nf.len(), 1);
    let coef = nf.coefficient(&mono(3, "x_13^2")).unwrap();
    let expected = parse_qpoly(
        VarSet::a(3),
        "a_12^2 - 2*a_12*a_13 + a_13^2 + a_21^2 - 2*a_13*a_23 - 2*a_21*a_23 + a_23^2 \
         - 2*a_21*a_31 + a_31^2 - 2*a_12*a_32 - 2*a_31*a_32 + a_32^2",
    )
    .unwrap();
    assert_eq!(coef, &expected);

    let mut r = g.reducer();
    assert_eq!(r.normal_form(&q2).unwrap(), nf);
    assert_eq!(r.coefficient_of(&q2, &mono(3, "x_13^2")).unwrap(), expected);
    assert_eq!(g.standard_monomials_of_degree(2), vec![mono(3, "x_13^2")]);
}

#[test]
fn minimal_primes_hexagon_and_segment() {
    let w = WeightMatrix::from_vector(3, &HEX).unwrap();
    let init = initial_ideal(&w).unwrap();
    let prime = minimal_prime(&init.ideal, &init.order.variables_descending()).unwrap();
    let x3 = VarSet::x(3);
    let names: Vec<String> = prime.iter().map(|&v| x3.name(v)).collect();
    assert_eq!(names, ["x_12", "x_13", "x_21", "x_23"]);
    assert_eq!(minimal_primes_all(&init.ideal).unwrap().len(), 6);

    let seg = MonomialIdeal::new(VarSet::x(2), [mono(2, "x_12*x_21")]);
    let order = TermOrder::new(vec![1, 1]);
    assert_eq!(minimal_prime(&seg, &order.variables_descending()).unwrap(), vec![1]);
    assert_eq!(minimal_primes_all(&seg).unwrap(), vec![vec![0], vec![1]]);
}

#[test]
fn example_3d_is_maximal_with_twenty_vertices() {
    let w = example_3d();
    let init = initial_ideal(&w).unwrap();
    assert!(!init.tie);
    assert_eq!(minimal_primes_all(&init.ideal).unwrap().len(), 20);
    assert!(is_maximal_type(&w, true).unwrap());
    let prime = minimal_prime(&init.ideal, &init.order.variables_descending()).unwrap();
    assert_eq!(prime.len(), 12 - 3);
}

#[test]
fn division_cofactors_reconstruct_input() {
    let g = hexagon_ml_basis();
    let gens = g.generators();
    for text in ["x_31*x_32", "x_12^3 + 2*x_21*x_13 - 1/3*x_32", "x_23^2*x_31 - 7"] {
        let p = x(3, text);
        let (quots, rem) = g.division(&p).unwrap();
        let mut total = rem.clone();
        for (qt, gi) in quots.iter().zip(&gens) {
            total = &total + &(qt * gi);
        }
        assert_eq!(total, p);
        assert_eq!(rem, g.normal_form(&p).unwrap());
    }
}

#[test]
fn truncated_basis_agrees_in_low_degree() {
    let w = example_3d();
    let init = initial_ideal(&w).unwrap();
    let mut gens = init.ideal.to_polys();
    gens.extend(linear_ideal_generators(4));
    let full = buchberger(&gens, &init.order).unwrap();
    let trunc = buchberger_truncated(&gens, &init.order, Some(3)).unwrap();
    trunc.verify_s_pairs().unwrap();
    let q3 = divisor_class(4).pow(3);
    assert_eq!(full.normal_form(&q3).unwrap(), trunc.normal_form(&q3).unwrap());
    assert_eq!(full.standard_monomials_of_degree(3).len(), 1);
}

#[test]
fn mismatched_variables_are_rejected() {
    let g = hexagon_ml_basis();
    assert!(g.normal_form(&x(4, "x_12")).is_err());
    assert!(buchberger(&[], &TermOrder::grevlex(6)).is_err());
    assert!(buchberger(&[x(3, "x_12"), x(4, "x_12")], &TermOrder::grevlex(6)).is_err());
}

fn small_poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((prop::collection::vec(0u16..3, 6), -4i64..5), 0..6).prop_map(|terms| {
        QPoly::from_terms(
            VarSet::x(3),
            (),
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_exponents(e), frac(c, 1))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_idempotent_and_in_ideal(p in small_poly()) {
        let g = hexagon_ml_basis();
        let nf = g.normal_form(&p).unwrap();
        prop_assert_eq!(&g.normal_form(&nf).unwrap(), &nf);
        for (m, _) in nf.terms() {
            prop_assert!(g.is_standard(m));
        }
        let (quots, rem) = g.division(&p).unwrap();
        prop_assert_eq!(&rem, &nf);
        let mut total = rem;
        for (qt, gi) in quots.iter().zip(g.generators().iter()) {
            total = &total + &(qt * gi);
        }
        prop_assert_eq!(total, p.clone());
        prop_assert_eq!(g.reducer().normal_form(&p).unwrap(), nf);
    }

    #[test]
    fn random_kleene_star_bases_are_reduced(c in prop::collection::vec(0i64..12, 6)) {
        let w = crate::tropical::kleene_star(&WeightMatrix::from_vector(3, &c).unwrap()).unwrap();
        let init = initial_ideal(&w).unwrap();
        init.basis.verify_s_pairs().unwrap();
        init.basis.verify_reduced().unwrap();
        prop_assert!(init.ideal.is_squarefree());
        let primes = minimal_primes_all(&init.ideal).unwrap();
        if !init.tie {
            prop_assert_eq!(primes.len(), 6);
        }
    }
}

use num_rational::BigRational;
use polytropes::data::{representatives_3d, representatives_4d};
use polytropes::oracle::{count_lattice_points, hstar_bruteforce};
use polytropes::pipeline::polynomial_triple;
use polytropes::poly::rat;
use polytropes::tropical::{is_kleene, kleene_star, WeightMatrix};
use polytropes::verify::{verify, Depth};
use proptest::prelude::*;

#[test]
fn bundled_data_is_maximal_and_kleene() {
    let three = representatives_3d();
    let four = representatives_4d();
    assert_eq!(three.len(), 6);
    assert!(four.len() >= 3);
    for w in three.iter().chain(&four) {
        assert!(is_kleene(w), "{w:?}");
    }
    for w in &three {
        let r = verify(w, Depth::Quick, &Default::default()).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn scaling_keeps_the_type() {
    let w = representatives_3d()[1].clone();
    let t = polynomial_triple(&w).unwrap();
    let t3 = polynomial_triple(&w.scale(3)).unwrap();
    assert_eq!(t.volume.normalized, t3.volume.normalized);
    // Vol(3c) = 27 Vol(c)
    assert_eq!(t3.volume.normalized_at_source(), t.volume.normalized_at_source() * rat(27));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pipeline_matches_enumeration(c in prop::collection::vec(1i64..=9, 6), k in 1i64..=3) {
        let w = kleene_star(&WeightMatrix::from_vector(3, &c).unwrap()).unwrap();
        let t = polynomial_triple(&w).unwrap();
        let count = count_lattice_points(&w, k as u64).unwrap();
        prop_assert_eq!(t.ehrhart.count(&w, k).unwrap(), rat(count as i64));
        let h: Vec<BigRational> = hstar_bruteforce(&w).unwrap().into_iter().map(BigRational::from_integer).collect();
        prop_assert_eq!(t.hstar.at(&w).unwrap(), h);
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use twistalg::catalog::{standard_algebra, AlgebraType};
use twistalg::curve::HesseCurve;
use twistalg::json::{element_from_json, element_to_json, tower_from_json, tower_to_json};
use twistalg::quadalg::truncation::{truncation_dims, verify_twisting_system, GradedTruncation, TwistingSystem};
use twistalg::quadalg::RelationSpace;
use twistalg::{FieldElement, FieldTower, Matrix3, ProjMap, ProjPoint};

fn tower() -> FieldTower {
    FieldTower::rationals()
        .extend_rational("w", &[1, 1, 1])
        .unwrap()
        .extend_rational("c", &[-2, 0, 0, 1])
        .unwrap()
}

fn element(t: &FieldTower, coords: &[(i64, i64)]) -> FieldElement {
    let q: Vec<BigRational> = coords
        .iter()
        .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
        .collect();
    FieldElement::from_rationals(t, &q)
}

fn coords(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-9i64..10, 1i64..6), n)
}

fn small_matrix() -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(-4i64..5))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn field_ring_axioms(a in coords(6), b in coords(6), c in coords(6)) {
        let t = tower();
        let (a, b, c) = (element(&t, &a), element(&t, &b), element(&t, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn elements_survive_json_and_text(a in coords(6)) {
        let t = tower();
        let a = element(&t, &a);
        prop_assert_eq!(element_from_json(&t, &element_to_json(&a)).unwrap(), a.clone());
        prop_assert_eq!(FieldElement::parse(&t, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn adjugate_identity(m in small_matrix()) {
        let t = FieldTower::rationals();
        let a = Matrix3::from_ints(&t, m);
        let d = a.det();
        prop_assert_eq!(a.mul(&a.adjugate()), Matrix3::diag(d.clone(), d.clone(), d.clone()));
        if let Ok(inv) = a.inverse() {
            prop_assert_eq!(a.mul(&inv), Matrix3::identity(&t));
        }
    }

    #[test]
    fn fitting_recovers_a_map(m in small_matrix()) {
        let t = FieldTower::rationals();
        let Ok(f) = ProjMap::from_ints(&t, m) else { return Ok(()) };
        let src: Vec<ProjPoint> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
            .iter()
            .map(|c| ProjPoint::from_ints(&t, *c).unwrap())
            .collect();
        let pairs: [(ProjPoint, ProjPoint); 4] = std::array::from_fn(|i| (src[i].clone(), f.apply(&src[i])));
        prop_assert_eq!(ProjMap::fit(&pairs).unwrap(), Some(f));
    }

    #[test]
    fn multiplication_is_additive(a in -6i64..7, b in -6i64..7) {
        let t = FieldTower::rationals().extend_rational("w", &[1, 1, 1]).unwrap()
            .extend_rational("c", &[-9, 0, 0, 1]).unwrap();
        let curve = HesseCurve::new(t.zero()).unwrap();
        let p = curve.point_from([t.one(), t.int(2), t.generator_by_name("c").unwrap().neg()]).unwrap();
        let q = curve.point_from([t.one(), t.zero(), t.one().neg()]).unwrap();
        prop_assert_eq!(p.mul(a + b), p.mul(a).add(&p.mul(b)).unwrap());
        let (x, y) = (p.mul(a).add(&q).unwrap(), p.mul(b));
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
    }

    #[test]
    fn twists_compose(d1 in 1i64..5, d2 in 1i64..5, e1 in -3i64..4, e2 in 1i64..4) {
        let q = FieldTower::rationals();
        let (r, _) = standard_algebra(&AlgebraType::s(q.int(3)).unwrap()).unwrap();
        let phi = Matrix3::diag(q.one(), q.int(d1), q.int(d2));
        let psi = Matrix3::diag(q.one(), q.int(e2), q.int(e1 * e1 + 1));
        let two_steps = r.twist(&phi).unwrap().twist(&psi).unwrap();
        prop_assert!(two_steps.same_subspace(&r.twist(&psi.mul(&phi)).unwrap()));
        prop_assert!(r.twist(&phi).unwrap().twist(&phi.inverse().unwrap()).unwrap().same_subspace(&r));
        prop_assert_eq!(truncation_dims(&r.twist(&phi).unwrap(), 3).unwrap(), vec![1, 3, 6, 10]);
    }

    #[test]
    fn relation_strings_parse_back(n in -5i64..6, d in 1i64..4) {
        let t = FieldTower::rationals().extend_rational("w", &[1, 1, 1]).unwrap();
        let alpha = &t.frac(n, d) + &t.generator_by_name("w").unwrap();
        let Ok(ty) = AlgebraType::s_prime(alpha) else { return Ok(()) };
        let (r, _) = standard_algebra(&ty).unwrap();
        let strings = r.relation_strings();
        let refs: Vec<&str> = strings.iter().map(String::as_str).collect();
        prop_assert!(RelationSpace::parse(&t, &refs).unwrap().same_subspace(&r));
    }

    #[test]
    fn diagonal_powers_form_twisting_systems(a in 1i64..5, b in -4i64..5) {
        prop_assume!(b != 0);
        let q = FieldTower::rationals();
        let (r, _) = standard_algebra(&AlgebraType::P(q.clone())).unwrap();
        let trunc = GradedTruncation::new(&r, 3).unwrap();
        let phi = Matrix3::diag(q.one(), q.int(a), q.int(b));
        let theta = TwistingSystem::algebraic(&trunc, &phi, &[-1, 0, 1, 2]).unwrap();
        prop_assert!(verify_twisting_system(&trunc, &theta, true).is_ok());
    }
}

#[test]
fn tower_json_round_trip() {
    let t = tower();
    assert_eq!(tower_from_json(&tower_to_json(&t)).unwrap(), t);
}

use twistalg::catalog::{standard_algebra, table2_groups, AlgebraType};
use twistalg::curve::HesseCurve;
use twistalg::quadalg::{reconstruct_g2, verify_g1};
use twistalg::{FieldElement, FieldTower, ProjPoint};

fn omega() -> FieldTower {
    FieldTower::rationals().extend_rational("w", &[1, 1, 1]).unwrap()
}

fn omega_cbrt2() -> FieldTower {
    omega().extend_rational("c", &[-2, 0, 0, 1]).unwrap()
}

fn all_types() -> Vec<AlgebraType> {
    let w = omega();
    let two = w.int(2);
    let wc = omega_cbrt2();
    let c = wc.generator_by_name("c").unwrap();
    let curve = HesseCurve::new(wc.zero()).unwrap();
    let p = ProjPoint::new([wc.one(), wc.one(), c.neg()]).unwrap();
    vec![
        AlgebraType::P(w.clone()),
        AlgebraType::s(two.clone()).unwrap(),
        AlgebraType::s_prime(two.clone()).unwrap(),
        AlgebraType::T(w.clone()),
        AlgebraType::TPrime(w.clone()),
        AlgebraType::nc(two).unwrap(),
        AlgebraType::CC(w),
        AlgebraType::ec(curve, p).unwrap(),
    ]
}

#[test]
fn every_standard_pair_satisfies_g1_and_g2() {
    for ty in all_types() {
        let (r, pair) = standard_algebra(&ty).unwrap();
        let cert = verify_g1(&r, &pair);
        assert!(cert.holds(), "{ty}: {cert:?}");
        let rebuilt = reconstruct_g2(&pair).unwrap();
        assert!(rebuilt.same_subspace(&r), "{ty}");
    }
}

#[test]
fn table2_generators_preserve_the_variety() {
    for ty in all_types() {
        let (_, pair) = standard_algebra(&ty).unwrap();
        let (z, g) = table2_groups(&ty).unwrap();
        for k in 0..4 {
            for grp in [&z, &g] {
                let m = grp.sample(ty.tower(), k).unwrap();
                assert!(pair.component_permutation(&m).is_some(), "{ty} {grp} {m}");
                assert!(grp.contains(&m), "{ty} {grp} {m}");
            }
        }
    }
}

#[test]
fn alpha_constraint_rejected() {
    let q = FieldTower::rationals();
    assert!(AlgebraType::s(q.one()).is_err());
    assert!(AlgebraType::s(q.zero()).is_err());
    let _ = FieldElement::parse(&q, "2").unwrap();
}

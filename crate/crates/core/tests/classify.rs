use twistalg::catalog::{standard_algebra, table2_groups, AlgebraType, Family, GroupDesc};
use twistalg::classify::{brute_force_mn_oracle, classify, in_m, in_n, in_z, MVerdict};
use twistalg::curve::HesseCurve;
use twistalg::{FieldTower, ProjMap, ProjPoint};

fn omega() -> FieldTower {
    FieldTower::rationals().extend_rational("w", &[1, 1, 1]).unwrap()
}

fn zeta() -> FieldTower {
    FieldTower::rationals().extend_rational("z", &[1, -1, 1]).unwrap()
}

fn swap_xy(t: &FieldTower) -> ProjMap {
    ProjMap::from_ints(t, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]).unwrap()
}

#[test]
fn type_s_branches() {
    let q = FieldTower::rationals();
    let s2 = AlgebraType::s(q.int(2)).unwrap();
    let r = classify(&s2).unwrap();
    assert!(r.all_certified(), "{:?}", r.certificates);
    let (ze, _) = table2_groups(&s2).unwrap();
    assert_eq!(r.z_group, ze);
    assert_eq!(r.m_group, ze);
    let (_, pair) = standard_algebra(&s2).unwrap();
    assert_eq!(in_m(&swap_xy(&q), &pair, 12).unwrap(), MVerdict::False { failing: None });

    let t = zeta();
    let s6 = AlgebraType::s(t.generator_by_name("z").unwrap()).unwrap();
    let r = classify(&s6).unwrap();
    assert!(r.all_certified(), "{:?}", r.certificates);
    assert_eq!(r.sigma_order, Some(6));
    assert!(!r.flags.z_equals_m);
    let (_, pair) = standard_algebra(&s6).unwrap();
    assert!(in_m(&swap_xy(&t), &pair, 12).unwrap().holds());
    assert!(!in_z(&swap_xy(&t), &pair).unwrap());
}

#[test]
fn types_t_tprime_cc() {
    let w = omega();
    for ty in [AlgebraType::T(w.clone()), AlgebraType::TPrime(w.clone()), AlgebraType::CC(w.clone())] {
        let r = classify(&ty).unwrap();
        assert!(r.all_certified(), "{ty}: {:?}", r.certificates);
        assert!(r.flags.z_equals_m);
        let (_, g) = table2_groups(&ty).unwrap();
        let (_, pair) = standard_algebra(&ty).unwrap();
        for k in 0..3 {
            let m = g.sample(&w, k).unwrap();
            assert!(!in_n(&m, &pair).unwrap(), "{ty} {m}");
        }
    }
    let cc = classify(&AlgebraType::CC(w)).unwrap();
    assert_eq!(cc.z_group, GroupDesc::Trivial);
}

#[test]
fn type_t_rejects_minus_one() {
    let w = omega();
    let (_, pair) = standard_algebra(&AlgebraType::T(w.clone())).unwrap();
    let m = ProjMap::from_ints(&w, [[1, 0, 0], [0, 1, 0], [0, 0, -1]]).unwrap();
    assert!(!in_z(&m, &pair).unwrap());
    let e2 = ProjMap::from_ints(&w, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
    assert!(in_z(&e2, &pair).unwrap());
    let _ = Family::TypeT;
}

#[test]
fn ec_two_torsion_point() {
    let t = omega().extend_rational("c", &[-2, 0, 0, 1]).unwrap();
    let c = t.generator_by_name("c").unwrap();
    let curve = HesseCurve::new(t.zero()).unwrap();
    let ty = AlgebraType::ec(curve, ProjPoint::new([t.one(), t.one(), c.neg()]).unwrap()).unwrap();
    let r = classify(&ty).unwrap();
    assert!(r.all_certified(), "{:?}", r.certificates);
    assert!(r.z_group.same_group(&r.m_group, &t));
    assert_eq!(r.z_group.order(&t), Some(18));
    let (_, pair) = standard_algebra(&ty).unwrap();
    let rows = brute_force_mn_oracle(&pair, 0..6).unwrap();
    assert_eq!(rows.len(), 54);
    assert!(rows.iter().all(|r| r.agrees()));
}

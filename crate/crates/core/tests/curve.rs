use twistalg::curve::{EllipticAut, HesseCurve, JClass};
use twistalg::{Error, FieldTower, ProjPoint};

fn omega() -> FieldTower {
    FieldTower::rationals().extend_rational("w", &[1, 1, 1]).unwrap()
}

#[test]
fn j_classes() {
    let w = omega();
    assert_eq!(HesseCurve::new(w.zero()).unwrap().j_class().unwrap(), JClass::Zero);
    assert_eq!(HesseCurve::new(w.frac(5, 3)).unwrap().j_class().unwrap(), JClass::Generic);
    // λ = ω is singular as well as λ = 1.
    assert!(matches!(HesseCurve::new(w.generator_by_name("w").unwrap()), Err(Error::SingularCurve)));
}

#[test]
fn three_torsion_is_the_flexes() {
    let w = omega();
    let curve = HesseCurve::new(w.frac(5, 3)).unwrap();
    let e3 = curve.torsion_points(3).unwrap();
    assert_eq!(e3.points.len(), 9);
    for p in curve.flexes().unwrap() {
        assert!(e3.contains(&p));
        assert!(p.mul(3).is_zero());
    }
    assert!(matches!(
        HesseCurve::new(FieldTower::rationals().int(2)).unwrap().torsion_points(3),
        Err(Error::TowerTooSmall { .. })
    ));
}

#[test]
fn negation_swaps_x_and_y() {
    let q = FieldTower::rationals();
    let curve = HesseCurve::new(q.frac(5, 3)).unwrap();
    let p = curve.point(ProjPoint::from_ints(&q, [1, 2, 1]).unwrap()).unwrap();
    assert_eq!(p.neg().point(), &ProjPoint::from_ints(&q, [2, 1, 1]).unwrap());
    assert_eq!(p.order(12), Some(6));
}

#[test]
fn translations_are_linear_exactly_on_three_torsion() {
    let t = omega().extend_rational("c", &[-9, 0, 0, 1]).unwrap();
    let curve = HesseCurve::new(t.zero()).unwrap();
    let c = t.generator_by_name("c").unwrap();
    let generic = curve.point_from([t.one(), t.int(2), c.neg()]).unwrap();
    let samples = curve.sample_points(std::slice::from_ref(&generic), 16).unwrap();
    let flex = curve.point_from([t.one(), t.zero(), t.one().neg()]).unwrap();
    let lin = EllipticAut::translation(flex.clone()).as_linear(&samples).unwrap().expect("flex translation is linear");
    for s in &samples {
        assert_eq!(s.apply_map(&lin).unwrap(), s.add(&flex).unwrap());
    }
    assert!(EllipticAut::translation(generic).as_linear(&samples).unwrap().is_none());
}

#[test]
fn tau_fixes_the_origin() {
    let w = omega();
    for lambda in [w.zero(), w.frac(5, 3)] {
        let curve = HesseCurve::new(lambda).unwrap();
        let tau = curve.tau_generator().unwrap();
        assert_eq!(curve.zero().apply_map(&tau).unwrap(), curve.zero());
        let order = curve.tau_order().unwrap();
        assert_eq!(tau.order(12), Some(order));
    }
}

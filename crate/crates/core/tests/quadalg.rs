use twistalg::catalog::{standard_algebra, AlgebraType};
use twistalg::quadalg::maps::MapWord;
use twistalg::quadalg::{reconstruct_g2, RelationSpace};
use twistalg::{Error, FieldTower, Matrix3};

fn omega() -> FieldTower {
    FieldTower::rationals().extend_rational("w", &[1, 1, 1]).unwrap()
}

#[test]
fn pencil_sigma_matches_the_pair() {
    let w = omega();
    let types = [
        AlgebraType::s(w.int(2)).unwrap(),
        AlgebraType::s_prime(w.int(3)).unwrap(),
        AlgebraType::T(w.clone()),
        AlgebraType::TPrime(w.clone()),
    ];
    for ty in &types {
        let (r, pair) = standard_algebra(ty).unwrap();
        let mut checked = 0;
        for p in pair.sample_points() {
            let Ok(expected) = pair.sigma.apply_point(&p) else { continue };
            match r.sigma_from_pencil(&p) {
                Ok(q) => {
                    assert_eq!(q, expected, "{ty} at {p}");
                    checked += 1;
                }
                Err(Error::SigmaUndetermined { .. }) => {}
                Err(e) => panic!("{ty} at {p}: {e}"),
            }
        }
        assert!(checked >= 8, "{ty}: only {checked} points");
    }
}

#[test]
fn polynomial_ring_has_identity_sigma() {
    let q = FieldTower::rationals();
    let (r, pair) = standard_algebra(&AlgebraType::P(q.clone())).unwrap();
    assert!(r.pencil_determinant().is_zero());
    for p in pair.sample_points() {
        assert_eq!(r.sigma_from_pencil(&p).unwrap(), p);
    }
    let degenerate = RelationSpace::parse(&q, &["xx", "xy", "xz"]).unwrap();
    let p = twistalg::ProjPoint::from_ints(&q, [0, 1, 0]).unwrap();
    assert!(matches!(degenerate.sigma_from_pencil(&p), Err(Error::SigmaUndetermined { rank: 0 })));
}

#[test]
fn twisting_moves_sigma() {
    let w = omega();
    let (r, pair) = standard_algebra(&AlgebraType::s(w.int(2)).unwrap()).unwrap();
    let phi = Matrix3::diag(w.one(), w.int(5), w.int(7));
    let tau = RelationSpace::dual_map(&phi).unwrap();
    let twisted = r.twist(&phi).unwrap();
    let sigma = MapWord::linear(tau).compose(&pair.sigma).unwrap();
    let rebuilt = reconstruct_g2(&pair.with_sigma(sigma.clone())).unwrap();
    assert!(rebuilt.same_subspace(&twisted));
    assert!(!twisted.same_subspace(&r));
    assert!(twisted.pencil_determinant().proportional(&r.pencil_determinant()));
}

#[test]
fn dependent_relations_are_rejected() {
    let q = FieldTower::rationals();
    assert!(RelationSpace::parse(&q, &["xy - yx", "2*xy - 2*yx", "zx"]).is_err());
    assert!(RelationSpace::parse(&q, &["xy - yx", "zx"]).is_err());
}

//! Plane cubics in Hesse form `x³ + y³ + z³ − 3λxyz` with the chord–tangent
//! group law (zero `o = (1, −1, 0)`), torsion subgroups, the generator of the
//! automorphisms fixing `o`, and translations.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{primitive_cube_root, roots_in_tower, FieldElement, FieldTower};
use crate::linalg::{cross, dot, Matrix3, ProjMap, ProjPoint};
use crate::poly::Poly;

/// Which of the three automorphism regimes a curve falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JClass {
    Generic,
    /// j = 0.
    Zero,
    /// j = 1728.
    Twelve3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HesseCurve {
    lambda: FieldElement,
}

impl HesseCurve {
    pub fn new(lambda: FieldElement) -> Result<Self> {
        if lambda.pow(3)?.is_one() {
            return Err(Error::SingularCurve);
        }
        Ok(HesseCurve { lambda })
    }

    pub fn lambda(&self) -> &FieldElement {
        &self.lambda
    }

    pub fn tower(&self) -> &FieldTower {
        self.lambda.tower()
    }

    /// The defining cubic.
    pub fn form(&self) -> Poly {
        let t = self.tower();
        let [x, y, z] = Poly::xyz(t);
        x.pow(3)
            .add(&y.pow(3))
            .add(&z.pow(3))
            .sub(&x.mul(&y).mul(&z).scale(&(&self.lambda * &t.int(3))))
    }

    fn f(&self, v: &[FieldElement; 3]) -> FieldElement {
        let t = self.tower();
        let cubes = &(&v[0].pow(3).unwrap() + &v[1].pow(3).unwrap()) + &v[2].pow(3).unwrap();
        &cubes - &(&(&t.int(3) * &self.lambda) * &(&(&v[0] * &v[1]) * &v[2]))
    }

    fn grad(&self, v: &[FieldElement; 3]) -> [FieldElement; 3] {
        let t3 = self.tower().int(3);
        let l = &self.lambda;
        let g = |a: &FieldElement, b: &FieldElement, c: &FieldElement| {
            &t3 * &(&(a * a) - &(l * &(b * c)))
        };
        [g(&v[0], &v[1], &v[2]), g(&v[1], &v[0], &v[2]), g(&v[2], &v[0], &v[1])]
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.f(p.coords()).is_zero()
    }

    pub fn point(&self, p: ProjPoint) -> Result<CurvePoint> {
        if p.tower() != self.tower() {
            return Err(Error::TowerMismatch);
        }
        if !self.contains(&p) {
            return Err(Error::NotOnCurve);
        }
        Ok(CurvePoint {
            curve: self.clone(),
            p,
        })
    }

    pub fn point_from(&self, c: [FieldElement; 3]) -> Result<CurvePoint> {
        self.point(ProjPoint::new(c)?)
    }

    pub fn zero(&self) -> CurvePoint {
        let t = self.tower();
        CurvePoint {
            curve: self.clone(),
            p: ProjPoint::from_ints(t, [1, -1, 0]).unwrap(),
        }
    }

    /// `27λ³(λ³+8)³ / (λ³−1)³`.
    pub fn j_invariant(&self) -> Result<FieldElement> {
        let t = self.tower();
        let l3 = self.lambda.pow(3)?;
        let num = &(&t.int(27) * &l3) * &(&l3 + &t.int(8)).pow(3)?;
        let den = (&l3 - &t.one()).pow(3)?;
        num.try_div(&den).map_err(|_| Error::SingularCurve)
    }

    pub fn j_class(&self) -> Result<JClass> {
        let j = self.j_invariant()?;
        let t = self.tower();
        Ok(if j.is_zero() {
            JClass::Zero
        } else if j == t.int(1728) {
            JClass::Twelve3
        } else {
            JClass::Generic
        })
    }

    /// The generator `τ_E` of the automorphisms fixing `o`, as a linear map.
    pub fn tau_generator(&self) -> Result<ProjMap> {
        let t = self.tower();
        match self.j_class()? {
            JClass::Generic => ProjMap::from_ints(t, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
            JClass::Zero => {
                if !self.lambda.is_zero() {
                    return Err(Error::NotFixedForm {
                        j: "0".into(),
                        expected: "0".into(),
                    });
                }
                let e = primitive_cube_root(t)?;
                let (z, o) = (t.zero(), t.one());
                ProjMap::new(Matrix3 {
                    m: [
                        [z.clone(), o.clone(), z.clone()],
                        [o, z.clone(), z.clone()],
                        [z.clone(), z, e],
                    ],
                })
            }
            JClass::Twelve3 => {
                let d = &self.lambda - &t.one();
                if &d * &d != t.int(3) {
                    return Err(Error::NotFixedForm {
                        j: "1728".into(),
                        expected: "1 + sqrt(3)".into(),
                    });
                }
                let e = primitive_cube_root(t)?;
                let e2 = &e * &e;
                let o = t.one();
                ProjMap::new(Matrix3 {
                    m: [
                        [e2.clone(), e.clone(), o.clone()],
                        [e, e2, o.clone()],
                        [o.clone(), o.clone(), o],
                    ],
                })
            }
        }
    }

    /// Order of `τ_E`: 2, 6 or 4 according to the j-class.
    pub fn tau_order(&self) -> Result<u32> {
        Ok(match self.j_class()? {
            JClass::Generic => 2,
            JClass::Zero => 6,
            JClass::Twelve3 => 4,
        })
    }

    /// The nine flexes, which form `E[3]` since `o` is a flex.
    pub fn flexes(&self) -> Result<Vec<CurvePoint>> {
        let t = self.tower();
        let w = primitive_cube_root(t)?;
        let mut out = Vec::with_capacity(9);
        for k in 0..3 {
            let m = -w.pow(k)?;
            for c in [
                [t.zero(), t.one(), m.clone()],
                [t.one(), t.zero(), m.clone()],
                [t.one(), m.clone(), t.zero()],
            ] {
                out.push(self.point_from(c)?);
            }
        }
        Ok(out)
    }

    /// Roots of `c³ − 3λc + 2` available in the tower; each gives the
    /// 2-torsion point `(1, 1, c)`.
    fn two_torsion_roots(&self) -> Result<Vec<FieldElement>> {
        let t = self.tower();
        roots_in_tower(&[t.int(2), -(&t.int(3) * &self.lambda), t.zero(), t.one()])
    }

    fn two_torsion_poly(&self) -> String {
        format!("x^3 - 3*({})*x + 2", self.lambda)
    }

    /// `E[n]` for `n ∈ {1, 2, 3, 6}`; errors if the tower lacks some point.
    pub fn torsion_points(&self, n: u32) -> Result<TorsionSet> {
        let points = match n {
            1 => vec![self.zero()],
            2 => {
                let roots = self.two_torsion_roots()?;
                if roots.len() != 3 {
                    return Err(Error::TowerTooSmall {
                        what: "E[2]".into(),
                        missing: self.two_torsion_poly(),
                    });
                }
                let t = self.tower();
                let mut v = vec![self.zero()];
                for c in roots {
                    v.push(self.point_from([t.one(), t.one(), c])?);
                }
                v
            }
            3 => self.flexes().map_err(|e| match e {
                Error::TowerTooSmall { .. } => Error::TowerTooSmall {
                    what: "E[3]".into(),
                    missing: "x^2 + x + 1".into(),
                },
                e => e,
            })?,
            6 => {
                let e2 = self.torsion_points(2)?.points;
                let e3 = self.torsion_points(3)?.points;
                let mut v = Vec::with_capacity(36);
                for a in &e2 {
                    for b in &e3 {
                        v.push(a.add(b)?);
                    }
                }
                v
            }
            _ => {
                return Err(Error::Unsupported(format!(
                    "torsion_points supports n in {{1, 2, 3, 6}}, got {n}"
                )))
            }
        };
        Ok(TorsionSet { n, points })
    }

    /// The distinguished 2-torsion point `(1, 1, λ)` of the j = 1728 form.
    pub fn special_two_torsion(&self) -> Result<CurvePoint> {
        let t = self.tower();
        self.point_from([t.one(), t.one(), self.lambda.clone()])
    }

    /// Points over the tower useful as seeds: `o`, the flexes when a cube
    /// root of unity is present (else the two rational flexes), and whatever
    /// 2-torsion the tower contains.
    pub fn default_seeds(&self) -> Vec<CurvePoint> {
        let t = self.tower();
        let mut seeds = vec![self.zero()];
        match self.flexes() {
            Ok(f) => seeds.extend(f),
            Err(_) => {
                seeds.push(self.point_from([t.zero(), t.one(), -t.one()]).unwrap());
                seeds.push(self.point_from([t.one(), t.zero(), -t.one()]).unwrap());
            }
        }
        if let Ok(roots) = self.two_torsion_roots() {
            for c in roots {
                seeds.push(self.point_from([t.one(), t.one(), c]).unwrap());
            }
        }
        seeds
    }

    /// At least `count` distinct points, obtained by closing the seeds under
    /// chords and negation in a fixed order. Fewer are returned only if the
    /// closure is finite and smaller.
    pub fn sample_points(&self, extra: &[CurvePoint], count: usize) -> Result<Vec<CurvePoint>> {
        let mut pts: Vec<CurvePoint> = Vec::new();
        let push = |p: CurvePoint, pts: &mut Vec<CurvePoint>| {
            if !pts.contains(&p) {
                pts.push(p);
            }
        };
        for p in extra {
            if p.curve != *self {
                return Err(Error::CurveMismatch);
            }
            push(p.clone(), &mut pts);
        }
        for p in self.default_seeds() {
            push(p, &mut pts);
        }
        let mut i = 0;
        while pts.len() < count && i < pts.len() {
            for j in 0..=i {
                if pts.len() >= count {
                    break;
                }
                let s = pts[i].add(&pts[j])?;
                push(s.neg(), &mut pts);
                push(s, &mut pts);
            }
            i += 1;
        }
        Ok(pts)
    }
}

impl fmt::Display for HesseCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^3 + y^3 + z^3 - 3*({})*x*y*z", self.lambda)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePoint {
    curve: HesseCurve,
    p: ProjPoint,
}

impl CurvePoint {
    pub fn curve(&self) -> &HesseCurve {
        &self.curve
    }

    pub fn point(&self) -> &ProjPoint {
        &self.p
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        self.p.coords()
    }

    pub fn is_zero(&self) -> bool {
        *self == self.curve.zero()
    }

    fn same_curve(&self, o: &CurvePoint) -> Result<()> {
        if self.curve == o.curve {
            Ok(())
        } else {
            Err(Error::CurveMismatch)
        }
    }

    /// Third intersection of the line through `self` and `o` (tangent if equal).
    pub fn third(&self, o: &CurvePoint) -> Result<CurvePoint> {
        self.same_curve(o)?;
        let e = &self.curve;
        let p = self.coords();
        let q = o.coords();
        let v: [FieldElement; 3] = if self.p != o.p {
            let b = dot(&e.grad(p), q);
            let c = dot(&e.grad(q), p);
            std::array::from_fn(|i| &(&c * &p[i]) - &(&b * &q[i]))
        } else {
            let tangent = e.grad(p);
            let t = self.p.tower();
            let r = (0..3)
                .map(|k| {
                    let mut ek = [t.zero(), t.zero(), t.zero()];
                    ek[k] = t.one();
                    cross(&tangent, &ek)
                })
                .find(|r| !cross(r, p).iter().all(FieldElement::is_zero))
                .expect("tangent line has a second point");
            let c = dot(&e.grad(&r), p);
            let d = e.f(&r);
            std::array::from_fn(|i| &(&d * &p[i]) - &(&c * &r[i]))
        };
        Ok(CurvePoint {
            curve: e.clone(),
            p: ProjPoint::new(v)?,
        })
    }

    pub fn add(&self, o: &CurvePoint) -> Result<CurvePoint> {
        let r = self.third(o)?;
        self.curve.zero().third(&r)
    }

    pub fn sub(&self, o: &CurvePoint) -> Result<CurvePoint> {
        self.add(&o.neg())
    }

    /// `−(a, b, c) = (b, a, c)`.
    pub fn neg(&self) -> CurvePoint {
        let c = self.coords();
        CurvePoint {
            curve: self.curve.clone(),
            p: ProjPoint::new([c[1].clone(), c[0].clone(), c[2].clone()]).unwrap(),
        }
    }

    /// `n·p` by double-and-add.
    pub fn mul(&self, n: i64) -> CurvePoint {
        let base = if n < 0 { self.neg() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.curve.zero();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.add(&b).expect("same curve");
            }
            k >>= 1;
            if k > 0 {
                b = b.add(&b).expect("same curve");
            }
        }
        acc
    }

    pub fn is_torsion(&self, n: i64) -> bool {
        self.mul(n).is_zero()
    }

    /// Least `n <= bound` with `n·p = o`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let mut acc = self.clone();
        for n in 1..=bound {
            if acc.is_zero() {
                return Some(n);
            }
            acc = acc.add(self).expect("same curve");
        }
        None
    }

    /// Membership in the exceptional set `{a⁹ = b⁹ = c⁹} ∖ E[6]` of `λ = 0`.
    pub fn in_exceptional(&self) -> Result<bool> {
        if !self.curve.lambda.is_zero() {
            return Err(Error::ExceptionalNeedsLambdaZero);
        }
        let c = self.coords();
        let a9 = c[0].pow(9)?;
        let ninth = a9 == c[1].pow(9)? && a9 == c[2].pow(9)?;
        Ok(ninth && !self.is_torsion(6))
    }

    pub fn apply_map(&self, m: &ProjMap) -> Result<CurvePoint> {
        self.curve.point(m.apply(&self.p))
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.p.fmt(f)
    }
}

/// `E[n]` as an explicit list.
#[derive(Clone, Debug)]
pub struct TorsionSet {
    pub n: u32,
    pub points: Vec<CurvePoint>,
}

impl TorsionSet {
    pub fn contains(&self, p: &CurvePoint) -> bool {
        self.points.contains(p)
    }
}

/// The automorphism `σ_p ∘ τ_E^i` of a Hesse curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticAut {
    translate: CurvePoint,
    power: u32,
}

impl EllipticAut {
    pub fn new(translate: CurvePoint, power: i64) -> Result<Self> {
        let ord = translate.curve.tau_order()? as i64;
        Ok(EllipticAut {
            translate,
            power: power.rem_euclid(ord) as u32,
        })
    }

    pub fn translation(p: CurvePoint) -> Self {
        EllipticAut {
            translate: p,
            power: 0,
        }
    }

    pub fn identity(curve: &HesseCurve) -> Self {
        Self::translation(curve.zero())
    }

    pub fn translate(&self) -> &CurvePoint {
        &self.translate
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn curve(&self) -> &HesseCurve {
        &self.translate.curve
    }

    fn tau_pow(curve: &HesseCurve, i: u32, q: &CurvePoint) -> Result<CurvePoint> {
        if i == 0 {
            return Ok(q.clone());
        }
        let tau = curve.tau_generator()?;
        let mut r = q.clone();
        for _ in 0..i {
            r = r.apply_map(&tau)?;
        }
        Ok(r)
    }

    pub fn apply(&self, q: &CurvePoint) -> Result<CurvePoint> {
        if q.curve != *self.curve() {
            return Err(Error::CurveMismatch);
        }
        self.translate.add(&Self::tau_pow(self.curve(), self.power, q)?)
    }

    /// `self ∘ other`: `σ_p τ^i σ_q τ^j = σ_{p + τ^i q} τ^{i+j}`.
    pub fn compose(&self, other: &EllipticAut) -> Result<EllipticAut> {
        if self.curve() != other.curve() {
            return Err(Error::CurveMismatch);
        }
        let moved = Self::tau_pow(self.curve(), self.power, &other.translate)?;
        EllipticAut::new(
            self.translate.add(&moved)?,
            self.power as i64 + other.power as i64,
        )
    }

    /// `(σ_p τ^i)⁻¹ = σ_{−τ^{−i} p} τ^{−i}`.
    pub fn inverse(&self) -> Result<EllipticAut> {
        let ord = self.curve().tau_order()?;
        let back = (ord - self.power) % ord;
        let moved = Self::tau_pow(self.curve(), back, &self.translate)?;
        EllipticAut::new(moved.neg(), back as i64)
    }

    /// The linear map inducing this automorphism, if there is one. Fitted on
    /// four samples in general position and confirmed on every sample.
    pub fn as_linear(&self, samples: &[CurvePoint]) -> Result<Option<ProjMap>> {
        let imgs: Vec<CurvePoint> = samples.iter().map(|s| self.apply(s)).collect::<Result<_>>()?;
        let Some(idx) = general_quadruple(samples) else {
            return Err(Error::Sampling("no four samples in general position".into()));
        };
        let pairs: [(ProjPoint, ProjPoint); 4] =
            std::array::from_fn(|k| (samples[idx[k]].p.clone(), imgs[idx[k]].p.clone()));
        let Some(m) = ProjMap::fit(&pairs)? else {
            return Ok(None);
        };
        for (s, i) in samples.iter().zip(&imgs) {
            if m.apply(&s.p) != i.p {
                return Ok(None);
            }
        }
        Ok(Some(m))
    }
}

/// Indices of four points in general position, chosen greedily.
pub fn general_quadruple(pts: &[CurvePoint]) -> Option<[usize; 4]> {
    let coords: Vec<&[FieldElement; 3]> = pts.iter().map(|p| p.coords()).collect();
    crate::linalg::general_quadruple(&coords)
}

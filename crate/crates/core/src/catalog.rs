//! The eight standard algebras and the decompositions `Aut(ℙ² ↓ E) = Z(E) ⋊ G(E)`.

use std::fmt;

use crate::curve::{EllipticAut, HesseCurve};
use crate::error::{Error, Result};
use crate::field::{primitive_cube_root, FieldElement, FieldTower};
use crate::linalg::{Matrix3, ProjMap, ProjPoint};
use crate::poly::Poly;
use crate::quadalg::maps::{Atom, MapWord, Piece};
use crate::quadalg::pair::{Component, ComponentKind, GeometricPair};
use crate::quadalg::RelationSpace;

/// Number of curve points kept on an elliptic component.
pub const CUBIC_SAMPLES: usize = 24;
/// Fewest samples accepted when the curve has few points over the tower.
pub const MIN_CUBIC_SAMPLES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeTag {
    P,
    S,
    SPrime,
    T,
    TPrime,
    NC,
    CC,
    EC,
}

impl TypeTag {
    pub const ALL: [TypeTag; 8] = [
        TypeTag::P,
        TypeTag::S,
        TypeTag::SPrime,
        TypeTag::T,
        TypeTag::TPrime,
        TypeTag::NC,
        TypeTag::CC,
        TypeTag::EC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TypeTag::P => "P",
            TypeTag::S => "S",
            TypeTag::SPrime => "S'",
            TypeTag::T => "T",
            TypeTag::TPrime => "T'",
            TypeTag::NC => "NC",
            TypeTag::CC => "CC",
            TypeTag::EC => "EC",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace(['′', '’'], "'");
        let norm = norm.strip_suffix("PRIME").map(|b| format!("{b}'")).unwrap_or(norm);
        TypeTag::ALL
            .into_iter()
            .find(|t| t.name() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown algebra type '{s}'")))
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A standard algebra together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraType {
    P(FieldTower),
    S(FieldElement),
    SPrime(FieldElement),
    T(FieldTower),
    TPrime(FieldTower),
    NC(FieldElement),
    CC(FieldTower),
    /// `σ_p` on a Hesse curve; the relation coefficients are the coordinates of `p`.
    EC { curve: HesseCurve, point: ProjPoint },
}

fn check_alpha(alpha: &FieldElement) -> Result<()> {
    let c = alpha.pow(3).unwrap_or_else(|_| alpha.tower().zero());
    if alpha.is_zero() || c.is_one() {
        return Err(Error::Constraint(format!("alpha^3 must avoid 0 and 1, got alpha = {alpha}")));
    }
    Ok(())
}

impl AlgebraType {
    pub fn s(alpha: FieldElement) -> Result<Self> {
        check_alpha(&alpha)?;
        Ok(AlgebraType::S(alpha))
    }

    pub fn s_prime(alpha: FieldElement) -> Result<Self> {
        check_alpha(&alpha)?;
        Ok(AlgebraType::SPrime(alpha))
    }

    pub fn nc(alpha: FieldElement) -> Result<Self> {
        check_alpha(&alpha)?;
        Ok(AlgebraType::NC(alpha))
    }

    pub fn ec(curve: HesseCurve, point: ProjPoint) -> Result<Self> {
        if !curve.contains(&point) {
            return Err(Error::NotOnCurve);
        }
        if point.coords().iter().any(FieldElement::is_zero) {
            return Err(Error::Constraint("EC needs alpha*beta*gamma != 0".into()));
        }
        Ok(AlgebraType::EC { curve, point })
    }

    /// Builds a type from a tag and parameter list: `α` for S, S′ and NC;
    /// `λ` followed by the three coordinates of `p` for EC.
    pub fn from_params(tag: TypeTag, tower: &FieldTower, params: &[FieldElement]) -> Result<Self> {
        let want = match tag {
            TypeTag::S | TypeTag::SPrime | TypeTag::NC => 1,
            TypeTag::EC => 4,
            _ => 0,
        };
        if params.len() != want {
            return Err(Error::Constraint(format!(
                "type {tag} takes {want} parameters, got {}",
                params.len()
            )));
        }
        match tag {
            TypeTag::P => Ok(AlgebraType::P(tower.clone())),
            TypeTag::T => Ok(AlgebraType::T(tower.clone())),
            TypeTag::TPrime => Ok(AlgebraType::TPrime(tower.clone())),
            TypeTag::CC => Ok(AlgebraType::CC(tower.clone())),
            TypeTag::S => Self::s(params[0].clone()),
            TypeTag::SPrime => Self::s_prime(params[0].clone()),
            TypeTag::NC => Self::nc(params[0].clone()),
            TypeTag::EC => {
                let curve = HesseCurve::new(params[0].clone())?;
                let p = ProjPoint::new([params[1].clone(), params[2].clone(), params[3].clone()])?;
                Self::ec(curve, p)
            }
        }
    }

    pub fn tag(&self) -> TypeTag {
        match self {
            AlgebraType::P(_) => TypeTag::P,
            AlgebraType::S(_) => TypeTag::S,
            AlgebraType::SPrime(_) => TypeTag::SPrime,
            AlgebraType::T(_) => TypeTag::T,
            AlgebraType::TPrime(_) => TypeTag::TPrime,
            AlgebraType::NC(_) => TypeTag::NC,
            AlgebraType::CC(_) => TypeTag::CC,
            AlgebraType::EC { .. } => TypeTag::EC,
        }
    }

    pub fn tower(&self) -> &FieldTower {
        match self {
            AlgebraType::P(t) | AlgebraType::T(t) | AlgebraType::TPrime(t) | AlgebraType::CC(t) => t,
            AlgebraType::S(a) | AlgebraType::SPrime(a) | AlgebraType::NC(a) => a.tower(),
            AlgebraType::EC { curve, .. } => curve.tower(),
        }
    }

    pub fn alpha(&self) -> Option<&FieldElement> {
        match self {
            AlgebraType::S(a) | AlgebraType::SPrime(a) | AlgebraType::NC(a) => Some(a),
            _ => None,
        }
    }

    /// Named parameters as strings, for reports.
    pub fn params(&self) -> Vec<(&'static str, String)> {
        match self {
            AlgebraType::S(a) | AlgebraType::SPrime(a) | AlgebraType::NC(a) => vec![("alpha", a.to_string())],
            AlgebraType::EC { curve, point } => vec![
                ("lambda", curve.lambda().to_string()),
                ("p", point.to_string()),
            ],
            _ => vec![],
        }
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())?;
        let ps = self.params();
        if !ps.is_empty() {
            let body: Vec<String> = ps.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", body.join(", "))?;
        }
        Ok(())
    }
}

fn piece(domain: Poly, map: [Poly; 3]) -> Piece {
    Piece { domain, map }
}

fn piecewise(forward: Vec<Piece>, backward: Vec<Piece>) -> MapWord {
    MapWord::atom(Atom::Piecewise { forward, backward })
}

/// `(s, t) ↦ (c₀, c₁, c₂)` with each entry a binary form.
fn binary(t: &FieldTower, forms: [&str; 3]) -> Result<[Poly; 3]> {
    let v: Vec<Poly> = forms
        .iter()
        .map(|f| Poly::parse(t, &["s", "t"], f))
        .collect::<Result<_>>()?;
    Ok([v[0].clone(), v[1].clone(), v[2].clone()])
}

fn ternary(t: &FieldTower, forms: [&str; 3]) -> Result<[Poly; 3]> {
    let v: Vec<Poly> = forms
        .iter()
        .map(|f| Poly::parse(t, &["x", "y", "z"], f))
        .collect::<Result<_>>()?;
    Ok([v[0].clone(), v[1].clone(), v[2].clone()])
}

fn scaled_xyz(t: &FieldTower, c: [&FieldElement; 3]) -> [Poly; 3] {
    let v = Poly::xyz(t);
    std::array::from_fn(|i| v[i].scale(c[i]))
}

/// The relations and geometric pair of a standard algebra.
pub fn standard_algebra(ty: &AlgebraType) -> Result<(RelationSpace, GeometricPair)> {
    let t = ty.tower().clone();
    let [x, y, z] = Poly::xyz(&t);
    let one = t.one();
    let (rels, components, sigma) = match ty {
        AlgebraType::P(_) => (
            RelationSpace::parse(&t, &["yz - zy", "zx - xz", "xy - yx"])?,
            vec![Component::plane(&t)],
            MapWord::identity(),
        ),
        AlgebraType::S(a) => {
            let ai = a.inv()?;
            let na = format!("({a})");
            let rels = RelationSpace::parse(
                &t,
                &[
                    &format!("yz - {na}*zy"),
                    &format!("zx - {na}*xz"),
                    &format!("xy - {na}*yx"),
                ],
            )?;
            let comps = vec![
                Component::rational(ComponentKind::Line, x.clone(), binary(&t, ["0", "s", "t"])?)?,
                Component::rational(ComponentKind::Line, y.clone(), binary(&t, ["s", "0", "t"])?)?,
                Component::rational(ComponentKind::Line, z.clone(), binary(&t, ["s", "t", "0"])?)?,
            ];
            let fwd = |a: &FieldElement| {
                vec![
                    piece(x.clone(), scaled_xyz(&t, [&one, &one, a])),
                    piece(y.clone(), scaled_xyz(&t, [a, &one, &one])),
                    piece(z.clone(), scaled_xyz(&t, [&one, a, &one])),
                ]
            };
            (rels, comps, piecewise(fwd(a), fwd(&ai)))
        }
        AlgebraType::SPrime(a) => {
            let na = format!("({a})");
            let rels = RelationSpace::parse(
                &t,
                &[
                    &format!("yz - {na}*zy + x^2"),
                    &format!("zx - {na}*xz"),
                    &format!("xy - {na}*yx"),
                ],
            )?;
            let lam = (&a.pow(3)? - &one).try_div(a)?;
            let conic = x.mul(&x).sub(&y.mul(&z).scale(&lam));
            let [s, tt] = [Poly::var(&t, 2, 0), Poly::var(&t, 2, 1)];
            let conic_param = [
                s.mul(&tt).scale(&lam),
                s.mul(&s).scale(&lam),
                tt.mul(&tt),
            ];
            let comps = vec![
                Component::rational(ComponentKind::Line, x.clone(), binary(&t, ["0", "s", "t"])?)?,
                Component::rational(ComponentKind::Conic, conic.clone(), conic_param)?,
            ];
            let a2 = a * a;
            let forward = vec![
                piece(x.clone(), scaled_xyz(&t, [&one, &one, a])),
                piece(conic.clone(), scaled_xyz(&t, [a, &a2, &one])),
            ];
            let backward = vec![
                piece(x.clone(), scaled_xyz(&t, [&one, a, &one])),
                piece(conic, scaled_xyz(&t, [a, &one, &a2])),
            ];
            (rels, comps, piecewise(forward, backward))
        }
        AlgebraType::T(_) => {
            let eps = primitive_cube_root(&t)?;
            let rels = RelationSpace::parse(&t, &["yz - zy + x^2", "zx - xz + y^2", "xy - yx"])?;
            let mut comps = Vec::new();
            let (mut forward, mut backward) = (Vec::new(), Vec::new());
            for k in 0..3 {
                let ek = eps.pow(k)?;
                let e2k = eps.pow(2 * k)?;
                let line = x.scale(&ek).add(&y);
                let [s, tt] = [Poly::var(&t, 2, 0), Poly::var(&t, 2, 1)];
                comps.push(Component::rational(
                    ComponentKind::Line,
                    line.clone(),
                    [s.clone(), s.scale(&ek).neg(), tt],
                )?);
                forward.push(piece(line.clone(), [x.clone(), y.clone(), z.add(&x.scale(&e2k))]));
                backward.push(piece(line, [x.clone(), y.clone(), z.sub(&x.scale(&e2k))]));
            }
            (rels, comps, piecewise(forward, backward))
        }
        AlgebraType::TPrime(_) => {
            // Printed E and σ, with the relations written in the matching
            // coordinates (x and y exchanged relative to the printed list).
            let rels = RelationSpace::parse(
                &t,
                &["xz - zx + xy + yx", "zy - yz + y^2 - xz - zx + x^2", "yx - xy - x^2"],
            )?;
            let conic = y.mul(&y).sub(&x.mul(&z));
            let comps = vec![
                Component::rational(ComponentKind::Line, x.clone(), binary(&t, ["0", "s", "t"])?)?,
                Component::rational(ComponentKind::Conic, conic.clone(), binary(&t, ["s^2", "s*t", "t^2"])?)?,
            ];
            let forward = vec![
                piece(x.clone(), ternary(&t, ["x", "y", "y + z"])?),
                piece(conic.clone(), ternary(&t, ["x", "-x + y", "x - 2*y + z"])?),
            ];
            let backward = vec![
                piece(x.clone(), ternary(&t, ["x", "y", "z - y"])?),
                piece(conic, ternary(&t, ["x", "x + y", "x + 2*y + z"])?),
            ];
            (rels, comps, piecewise(forward, backward))
        }
        AlgebraType::NC(a) => {
            let na = format!("({a})");
            let rels = RelationSpace::parse(
                &t,
                &[
                    &format!("yz - {na}*zy + x^2"),
                    &format!("zx - {na}*xz + y^2"),
                    &format!("xy - {na}*yx"),
                ],
            )?;
            let lam = (&a.pow(3)? - &one).try_div(a)?;
            let cubic = x.pow(3).add(&y.pow(3)).sub(&x.mul(&y).mul(&z).scale(&lam));
            let [s, tt] = [Poly::var(&t, 2, 0), Poly::var(&t, 2, 1)];
            let param = [
                tt.mul(&s).mul(&s).scale(&lam),
                tt.mul(&tt).mul(&s).scale(&lam),
                s.pow(3).add(&tt.pow(3)),
            ];
            let comps = vec![Component::rational(ComponentKind::Cubic, cubic.clone(), param)?];
            let a2 = a * a;
            let forward = vec![piece(
                cubic.clone(),
                [
                    x.mul(&y),
                    y.mul(&y).scale(a),
                    x.mul(&x).neg().add(&y.mul(&z).scale(&a2)),
                ],
            )];
            let backward = vec![piece(
                cubic,
                [
                    x.mul(&y).scale(&a2),
                    y.mul(&y).scale(a),
                    y.mul(&z).add(&x.mul(&x).scale(a)),
                ],
            )];
            (rels, comps, piecewise(forward, backward))
        }
        AlgebraType::CC(_) => {
            let rels = RelationSpace::parse(
                &t,
                &["yz - zy + y^2 + 3*x^2", "zx - xz + yx + xy - yz - zy", "xy - yx - y^2"],
            )?;
            let cubic = x.pow(3).sub(&y.mul(&y).mul(&z));
            let comps = vec![Component::rational(
                ComponentKind::Cubic,
                cubic.clone(),
                binary(&t, ["s*t^2", "t^3", "s^3"])?,
            )?];
            let forward = vec![piece(
                cubic.clone(),
                ternary(&t, ["x*y - y^2", "y^2", "-3*x^2 + 3*x*y - y^2 + y*z"])?,
            )];
            let backward = vec![piece(
                cubic,
                ternary(&t, ["x*y + y^2", "y^2", "y*z + 3*x^2 + 3*x*y + y^2"])?,
            )];
            (rels, comps, piecewise(forward, backward))
        }
        AlgebraType::EC { curve, point } => {
            let [al, be, ga] = point.coords().clone();
            let rel = |i: usize, j: usize, k: usize| {
                let mut m = Matrix3::new(std::array::from_fn(|_| std::array::from_fn(|_| t.zero())))?;
                m.m[i][j] = al.clone();
                m.m[j][i] = be.clone();
                m.m[k][k] = ga.clone();
                Ok::<_, Error>(m)
            };
            let rels = RelationSpace::new([rel(1, 2, 0)?, rel(2, 0, 1)?, rel(0, 1, 2)?])?;
            let p = curve.point(point.clone())?;
            let samples = curve.sample_points(std::slice::from_ref(&p), CUBIC_SAMPLES)?;
            if samples.len() < MIN_CUBIC_SAMPLES {
                return Err(Error::Sampling(format!("only {} points on {curve}", samples.len())));
            }
            let comps = vec![Component::elliptic(
                curve,
                samples.iter().map(|s| s.point().clone()).collect(),
            )];
            let sigma = MapWord::atom(Atom::Elliptic(EllipticAut::translation(p)));
            (rels, comps, sigma)
        }
    };
    let mut pair = GeometricPair::new(&t, components, sigma);
    pair.origin = Some(ty.clone());
    Ok((rels, pair))
}

/// One-parameter and two-parameter matrix families used in the tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `diag(1, e, i)`, `ei ≠ 0`.
    DiagTorus2,
    /// `diag(1, e, e⁻¹)`.
    DiagTorus1,
    /// `[[1,0,0],[0,e,0],[g,h,e²]]` with `e³ = 1`.
    TypeT,
    /// `[[1,0,0],[d,1,0],[d²,2d,1]]`.
    UnipotentD,
    /// `diag(1, 1, i)`.
    DiagLastFree,
    /// `diag(1, e, e²)`.
    DiagSquare,
    /// `diag(1, e, e⁻²)`.
    DiagCusp,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::DiagTorus2 => "DiagTorus2",
            Family::DiagTorus1 => "DiagTorus1",
            Family::TypeT => "TypeTFamily",
            Family::UnipotentD => "UnipotentD",
            Family::DiagLastFree => "DiagLastFree",
            Family::DiagSquare => "DiagSquare",
            Family::DiagCusp => "DiagCusp",
        }
    }

    pub fn shape(self) -> &'static str {
        match self {
            Family::DiagTorus2 => "diag(1,e,i), e*i != 0",
            Family::DiagTorus1 => "diag(1,e,1/e), e != 0",
            Family::TypeT => "[[1,0,0],[0,e,0],[g,h,e^2]], e^3 = 1",
            Family::UnipotentD => "[[1,0,0],[d,1,0],[d^2,2d,1]]",
            Family::DiagLastFree => "diag(1,1,i), i != 0",
            Family::DiagSquare => "diag(1,e,e^2), e != 0",
            Family::DiagCusp => "diag(1,e,e^-2), e != 0",
        }
    }

    pub fn contains(self, g: &ProjMap) -> bool {
        let m = &g.matrix().m;
        let d = &m[0][0];
        if d.is_zero() {
            return false;
        }
        let di = d.inv().expect("nonzero");
        let e = |i: usize, j: usize| &m[i][j] * &di;
        let zero = |i: usize, j: usize| m[i][j].is_zero();
        let diagonal = zero(0, 1) && zero(0, 2) && zero(1, 0) && zero(1, 2) && zero(2, 0) && zero(2, 1);
        match self {
            Family::DiagTorus2 => diagonal,
            Family::DiagTorus1 => diagonal && (&e(1, 1) * &e(2, 2)).is_one(),
            Family::DiagLastFree => diagonal && e(1, 1).is_one(),
            Family::DiagSquare => diagonal && &e(1, 1) * &e(1, 1) == e(2, 2),
            Family::DiagCusp => diagonal && (&(&e(1, 1) * &e(1, 1)) * &e(2, 2)).is_one(),
            Family::TypeT => {
                let ev = e(1, 1);
                zero(0, 1) && zero(0, 2) && zero(1, 0) && zero(1, 2) && ev.pow(3).is_ok_and(|c| c.is_one()) && e(2, 2) == &ev * &ev
            }
            Family::UnipotentD => {
                let dv = e(1, 0);
                zero(0, 1)
                    && zero(0, 2)
                    && zero(1, 2)
                    && e(1, 1).is_one()
                    && e(2, 2).is_one()
                    && e(2, 0) == &dv * &dv
                    && e(2, 1) == &dv * &dv.tower().int(2)
            }
        }
    }

    /// A deterministic member indexed by `k`; distinct `k` give distinct
    /// non-identity members wherever the family is infinite.
    pub fn sample(self, tower: &FieldTower, k: usize) -> Result<ProjMap> {
        let c = |n: i64| tower.int(n);
        let kk = k as i64;
        let (one, zero) = (tower.one(), tower.zero());
        let m = match self {
            Family::DiagTorus2 => Matrix3::diag(one, c(kk + 2), c(-(kk + 1))),
            Family::DiagTorus1 => Matrix3::diag(one, c(kk + 2), tower.frac(1, kk + 2)),
            Family::DiagLastFree => Matrix3::diag(one.clone(), one, c(-(kk + 2))),
            Family::DiagSquare => Matrix3::diag(one, c(kk + 2), c((kk + 2) * (kk + 2))),
            Family::DiagCusp => Matrix3::diag(one, c(kk + 2), tower.frac(1, (kk + 2) * (kk + 2))),
            Family::TypeT => {
                let e = primitive_cube_root(tower)?.pow(kk % 3)?;
                Matrix3::new([
                    [one, zero.clone(), zero.clone()],
                    [zero.clone(), e.clone(), zero],
                    [c(kk + 1), c(2 - kk), &e * &e],
                ])?
            }
            Family::UnipotentD => {
                let d = c(kk + 1);
                Matrix3::new([
                    [one.clone(), zero.clone(), zero.clone()],
                    [d.clone(), one.clone(), zero],
                    [&d * &d, &d * &c(2), one],
                ])?
            }
        };
        ProjMap::new(m)
    }
}

/// Symbolic description of a subgroup of `PGL₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDesc {
    Trivial,
    FullPGL3,
    Family(Family),
    /// The translations by 3-torsion points, as linear maps.
    TranslationTorsion(Vec<ProjMap>),
    /// The cyclic group generated by a matrix of the given order.
    FiniteCyclic { generator: ProjMap, order: u32 },
    /// `N ⋊ H`.
    Semidirect(Box<GroupDesc>, Box<GroupDesc>),
}

impl GroupDesc {
    pub fn cyclic(generator: ProjMap) -> Result<Self> {
        let order = generator
            .order(24)
            .ok_or_else(|| Error::Unsupported("generator has order above 24".into()))?;
        Ok(if order == 1 {
            GroupDesc::Trivial
        } else {
            GroupDesc::FiniteCyclic { generator, order }
        })
    }

    pub fn semidirect(n: GroupDesc, h: GroupDesc) -> Self {
        match h {
            GroupDesc::Trivial => n,
            h => GroupDesc::Semidirect(Box::new(n), Box::new(h)),
        }
    }

    /// All elements, when the group is finite.
    pub fn elements(&self, tower: &FieldTower) -> Option<Vec<ProjMap>> {
        match self {
            GroupDesc::Trivial => Some(vec![ProjMap::identity(tower)]),
            GroupDesc::FullPGL3 | GroupDesc::Family(_) => None,
            GroupDesc::TranslationTorsion(v) => Some(v.clone()),
            GroupDesc::FiniteCyclic { generator, order } => {
                Some((0..*order as i64).map(|k| generator.pow(k)).collect())
            }
            GroupDesc::Semidirect(n, h) => {
                let (n, h) = (n.elements(tower)?, h.elements(tower)?);
                let mut out: Vec<ProjMap> = Vec::new();
                for a in &n {
                    for b in &h {
                        let c = a.compose(b);
                        if !out.contains(&c) {
                            out.push(c);
                        }
                    }
                }
                Some(out)
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            GroupDesc::FullPGL3 | GroupDesc::Family(_) => false,
            GroupDesc::Semidirect(n, h) => n.is_finite() && h.is_finite(),
            _ => true,
        }
    }

    pub fn order(&self, tower: &FieldTower) -> Option<usize> {
        self.elements(tower).map(|v| v.len())
    }

    pub fn contains(&self, g: &ProjMap) -> bool {
        match self {
            GroupDesc::Trivial => g.is_identity(),
            GroupDesc::FullPGL3 => true,
            GroupDesc::Family(f) => f.contains(g),
            GroupDesc::TranslationTorsion(v) => v.contains(g),
            GroupDesc::FiniteCyclic { .. } => self.elements(g.tower()).is_some_and(|v| v.contains(g)),
            GroupDesc::Semidirect(n, h) => {
                if let Some(hs) = h.elements(g.tower()) {
                    hs.iter().any(|x| n.contains(&g.compose(&x.inverse())))
                } else if let Some(ns) = n.elements(g.tower()) {
                    ns.iter().any(|x| h.contains(&x.inverse().compose(g)))
                } else {
                    false
                }
            }
        }
    }

    /// Explicit generators of the finite parts.
    pub fn generators(&self) -> Vec<ProjMap> {
        match self {
            GroupDesc::Trivial | GroupDesc::FullPGL3 | GroupDesc::Family(_) => vec![],
            GroupDesc::TranslationTorsion(v) => v.iter().filter(|m| !m.is_identity()).cloned().collect(),
            GroupDesc::FiniteCyclic { generator, .. } => vec![generator.clone()],
            GroupDesc::Semidirect(n, h) => {
                let mut v = n.generators();
                v.extend(h.generators());
                v
            }
        }
    }

    /// Deterministic members: finite parts enumerated, families sampled.
    /// Index `k` selects which member.
    pub fn sample(&self, tower: &FieldTower, k: usize) -> Result<ProjMap> {
        if let Some(v) = self.elements(tower) {
            return Ok(v[k % v.len()].clone());
        }
        match self {
            GroupDesc::FullPGL3 => {
                let kk = k as i64;
                ProjMap::new(Matrix3::from_ints(
                    tower,
                    [[1, kk + 1, 0], [0, 2, kk], [kk + 2, 0, 1 + 2 * kk]],
                ))
            }
            GroupDesc::Family(f) => f.sample(tower, k),
            GroupDesc::Semidirect(n, h) => {
                let a = n.sample(tower, k)?;
                let b = h.sample(tower, k / 2 + 1)?;
                Ok(a.compose(&b))
            }
            _ => unreachable!("finite groups are enumerated"),
        }
    }

    /// Whether both descriptions denote the same set: equal structure for
    /// families, equal element sets when finite.
    pub fn same_group(&self, other: &GroupDesc, tower: &FieldTower) -> bool {
        match (self.elements(tower), other.elements(tower)) {
            (Some(a), Some(b)) => a.len() == b.len() && a.iter().all(|x| b.contains(x)),
            (None, None) => self == other,
            _ => false,
        }
    }
}

impl fmt::Display for GroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDesc::Trivial => f.write_str("Trivial"),
            GroupDesc::FullPGL3 => f.write_str("FullPGL3"),
            GroupDesc::Family(fam) => f.write_str(fam.name()),
            GroupDesc::TranslationTorsion(_) => f.write_str("T[3]"),
            GroupDesc::FiniteCyclic { generator, order } => write!(f, "<{generator}> (order {order})"),
            GroupDesc::Semidirect(n, h) => write!(f, "{n} x| {h}"),
        }
    }
}

fn int_map(t: &FieldTower, rows: [[i64; 3]; 3]) -> ProjMap {
    ProjMap::from_ints(t, rows).expect("invertible constant matrix")
}

/// `T[3]` on a Hesse curve, each translation fitted as a linear map.
pub fn translation_torsion(curve: &HesseCurve) -> Result<GroupDesc> {
    let samples = curve.sample_points(&[], 16)?;
    let mut maps = Vec::with_capacity(9);
    for q in curve.torsion_points(3)?.points {
        let m = EllipticAut::translation(q)
            .as_linear(&samples)?
            .ok_or_else(|| Error::Unsupported("3-torsion translation is not linear".into()))?;
        maps.push(m);
    }
    Ok(GroupDesc::TranslationTorsion(maps))
}

/// `(Z(E), G(E))` with `Aut(ℙ² ↓ E) = Z(E) ⋊ G(E)`.
pub fn table2_groups(ty: &AlgebraType) -> Result<(GroupDesc, GroupDesc)> {
    let t = ty.tower();
    Ok(match ty {
        AlgebraType::P(_) => (GroupDesc::FullPGL3, GroupDesc::Trivial),
        AlgebraType::S(_) => (
            GroupDesc::semidirect(
                GroupDesc::Family(Family::DiagTorus2),
                GroupDesc::cyclic(int_map(t, [[0, 1, 0], [0, 0, 1], [1, 0, 0]]))?,
            ),
            GroupDesc::cyclic(int_map(t, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]))?,
        ),
        AlgebraType::SPrime(_) => (
            GroupDesc::Family(Family::DiagTorus1),
            GroupDesc::cyclic(int_map(t, [[1, 0, 0], [0, 0, 1], [0, 1, 0]]))?,
        ),
        AlgebraType::T(_) => (
            GroupDesc::semidirect(
                GroupDesc::Family(Family::TypeT),
                GroupDesc::cyclic(int_map(t, [[0, 1, 0], [1, 0, 0], [0, 0, -1]]))?,
            ),
            GroupDesc::Family(Family::DiagLastFree),
        ),
        AlgebraType::TPrime(_) => (GroupDesc::Family(Family::UnipotentD), GroupDesc::Family(Family::DiagSquare)),
        AlgebraType::NC(_) => {
            let e = primitive_cube_root(t)?;
            let d = ProjMap::new(Matrix3::diag(t.one(), e.clone(), &e * &e))?;
            (GroupDesc::cyclic(d)?, GroupDesc::cyclic(int_map(t, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]))?)
        }
        AlgebraType::CC(_) => (GroupDesc::Trivial, GroupDesc::Family(Family::DiagCusp)),
        AlgebraType::EC { curve, .. } => (translation_torsion(curve)?, GroupDesc::cyclic(curve.tau_generator()?)?),
    })
}

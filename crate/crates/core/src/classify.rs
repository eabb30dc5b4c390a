//! Membership in `Z(E,σ) ⊂ M(E,σ) ⊂ N(E,σ)` and the closed-form tables for
//! the standard algebras.

use crate::catalog::{standard_algebra, table2_groups, translation_torsion, AlgebraType, GroupDesc};
use crate::curve::{CurvePoint, EllipticAut, HesseCurve, JClass};
use crate::error::{Error, Result};
use crate::field::root_of_unity_order;
use crate::linalg::ProjMap;
use crate::quadalg::maps::{Atom, MapWord};
use crate::quadalg::pair::GeometricPair;

/// Default window for checks that quantify over all powers.
pub const DEFAULT_BOUND: u32 = 12;

/// A linear map restricted to `E`, with the induced permutation of components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedAut {
    pub ambient: ProjMap,
    pub permutation: Vec<usize>,
}

impl RestrictedAut {
    pub fn word(&self) -> MapWord {
        MapWord::linear(self.ambient.clone())
    }
}

/// `τ|_E` if `τ` maps every component of `E` onto a component of `E`.
pub fn restricts_to_e(tau: &ProjMap, pair: &GeometricPair) -> Option<RestrictedAut> {
    let perm = pair.component_permutation(tau)?;
    Some(RestrictedAut {
        ambient: tau.clone(),
        permutation: perm,
    })
}

/// The linear map agreeing with `f` on `E`, if any.
pub fn extends_to_p2(f: &MapWord, pair: &GeometricPair) -> Result<Option<ProjMap>> {
    pair.extend(f)
}

/// `στσ⁻¹ = τ` on `E`.
pub fn in_z(tau: &ProjMap, pair: &GeometricPair) -> Result<bool> {
    let Some(r) = restricts_to_e(tau, pair) else {
        return Ok(false);
    };
    let t = r.word();
    pair.maps_agree(&pair.sigma.compose(&t)?, &t.compose(&pair.sigma)?)
}

/// `στσ⁻¹` extends to the plane, tested as `στ = Lσ` for a fitted `L`.
pub fn in_n(tau: &ProjMap, pair: &GeometricPair) -> Result<bool> {
    let Some(r) = restricts_to_e(tau, pair) else {
        return Ok(false);
    };
    let after = pair.sigma.compose(&r.word())?;
    Ok(pair.linear_factor(&pair.sigma, &after)?.is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MVerdict {
    True,
    False {
        /// The first power at which the condition fails, when known.
        failing: Option<i64>,
    },
    TrueWithinBound(u32),
}

impl MVerdict {
    pub fn holds(self) -> bool {
        !matches!(self, MVerdict::False { .. })
    }
}

/// Checks `(τσ)^i σ^{-i}` extends to the plane for `0 < |i| ≤ bound`.
pub fn in_m_bounded(tau: &ProjMap, pair: &GeometricPair, bound: u32) -> Result<MVerdict> {
    let Some(r) = restricts_to_e(tau, pair) else {
        return Ok(MVerdict::False { failing: None });
    };
    let ts = r.word().compose(&pair.sigma)?;
    for i in 1..=bound as i64 {
        for sign in [1, -1] {
            let k = sign * i;
            let lhs = ts.pow(k)?;
            let rhs = pair.sigma.pow(k)?;
            if pair.linear_factor(&rhs, &lhs)?.is_none() {
                return Ok(MVerdict::False { failing: Some(k) });
            }
        }
    }
    Ok(MVerdict::TrueWithinBound(bound))
}

/// Membership in `M(E,σ)`: exact for catalog pairs, bounded otherwise.
pub fn in_m(tau: &ProjMap, pair: &GeometricPair, bound: u32) -> Result<MVerdict> {
    match &pair.origin {
        Some(ty) => {
            if restricts_to_e(tau, pair).is_none() {
                return Ok(MVerdict::False { failing: None });
            }
            let groups = closed_form_groups(ty)?;
            Ok(if groups.m.contains(tau) {
                MVerdict::True
            } else {
                MVerdict::False { failing: None }
            })
        }
        None => in_m_bounded(tau, pair, bound),
    }
}

/// `Z(E,σ)`, `M(E,σ)`, `N(E,σ)` for a standard algebra.
#[derive(Clone, Debug)]
pub struct ClassGroups {
    pub z: GroupDesc,
    pub m: GroupDesc,
    pub n: GroupDesc,
    pub sigma_order: Option<u32>,
    pub exceptional: bool,
}

/// The translation point of an EC pair.
fn ec_point(ty: &AlgebraType) -> Option<(HesseCurve, CurvePoint)> {
    match ty {
        AlgebraType::EC { curve, point } => Some((curve.clone(), curve.point(point.clone()).ok()?)),
        _ => None,
    }
}

/// `⟨(1,1,λ)⟩ ⊕ E[3]`, the 18 points singled out at j = 1728.
pub fn special_set_f(curve: &HesseCurve) -> Result<Vec<CurvePoint>> {
    let s = curve.special_two_torsion()?;
    if !s.mul(2).is_zero() {
        return Err(Error::Constraint(format!("{s} is not 2-torsion")));
    }
    let mut out = Vec::with_capacity(18);
    for k in [curve.zero(), s] {
        for q in curve.torsion_points(3)?.points {
            let r = k.add(&q)?;
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// The groups as stated in the classification theorems.
pub fn closed_form_groups(ty: &AlgebraType) -> Result<ClassGroups> {
    let (ze, ge) = table2_groups(ty)?;
    let aut = GroupDesc::semidirect(ze.clone(), ge);
    let (z, m, sigma_order, exceptional) = match ty {
        AlgebraType::P(_) => (GroupDesc::FullPGL3, GroupDesc::FullPGL3, Some(1), false),
        AlgebraType::S(a) | AlgebraType::SPrime(a) | AlgebraType::NC(a) => {
            let ord = root_of_unity_order(a, DEFAULT_BOUND)?;
            let divides = |k: u32| ord.is_some_and(|o| k.is_multiple_of(o));
            let z = if divides(2) { aut.clone() } else { ze.clone() };
            let m = if divides(6) { aut.clone() } else { ze.clone() };
            (z, m, ord, false)
        }
        AlgebraType::T(_) | AlgebraType::TPrime(_) | AlgebraType::CC(_) => (ze.clone(), ze.clone(), None, false),
        AlgebraType::EC { .. } => {
            let (curve, p) = ec_point(ty).expect("EC type");
            let tau = curve.tau_generator()?;
            let t3 = translation_torsion(&curve)?;
            let with = |k: i64| -> Result<GroupDesc> {
                Ok(GroupDesc::semidirect(t3.clone(), GroupDesc::cyclic(tau.pow(k))?))
            };
            let in2 = p.mul(2).is_zero();
            let in6 = p.mul(6).is_zero();
            let ord = p.order(DEFAULT_BOUND);
            match curve.j_class()? {
                JClass::Generic => {
                    let z = if in2 { aut.clone() } else { t3.clone() };
                    let m = if in6 { aut.clone() } else { t3.clone() };
                    (z, m, ord, false)
                }
                JClass::Zero => {
                    let exc = p.in_exceptional()?;
                    let z = if in2 { with(3)? } else { t3.clone() };
                    let m = if exc {
                        with(2)?
                    } else if in6 {
                        with(3)?
                    } else {
                        t3.clone()
                    };
                    (z, m, ord, exc)
                }
                JClass::Twelve3 => {
                    let special = curve.special_two_torsion()?;
                    let z = if !in2 {
                        t3.clone()
                    } else if p == special {
                        aut.clone()
                    } else {
                        with(2)?
                    };
                    let m = if !in6 {
                        t3.clone()
                    } else if special_set_f(&curve)?.contains(&p) {
                        aut.clone()
                    } else {
                        with(2)?
                    };
                    (z, m, ord, false)
                }
            }
        }
    };
    Ok(ClassGroups {
        n: m.clone(),
        z,
        m,
        sigma_order,
        exceptional,
    })
}

/// One self-check recorded in a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub subject: String,
    pub check: &'static str,
    pub ok: bool,
}

/// A member of `Twist(A)`, or a whole family of them.
#[derive(Clone, Debug)]
pub enum TwistMember {
    /// `(E, τ|_E σ)` for an explicit `τ`.
    Pair { tau: ProjMap, pair: GeometricPair },
    /// `(E, τ|_E σ)` for `τ` ranging over a continuous family.
    Family { group: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportFlags {
    pub z_equals_m: bool,
    pub m_equals_n: bool,
    pub twist_alg_equals_twist: bool,
    pub exceptional: bool,
}

#[derive(Clone, Debug)]
pub struct TwistReport {
    pub algebra: AlgebraType,
    pub z_group: GroupDesc,
    pub m_group: GroupDesc,
    pub n_group: GroupDesc,
    pub sigma_order: Option<u32>,
    pub flags: ReportFlags,
    pub twist_family: Vec<TwistMember>,
    pub certificates: Vec<Certificate>,
}

impl TwistReport {
    pub fn all_certified(&self) -> bool {
        self.certificates.iter().all(|c| c.ok)
    }
}

/// Continuous factors of a group: the family parts, sampled.
fn family_samples(g: &GroupDesc, pair: &GeometricPair, n: usize) -> Result<Vec<ProjMap>> {
    if g.is_finite() {
        return Ok(vec![]);
    }
    (0..n).map(|k| g.sample(pair.tower(), k + 1)).collect()
}

fn certify(
    out: &mut Vec<Certificate>,
    what: &str,
    g: &GroupDesc,
    pair: &GeometricPair,
    check: &'static str,
) -> Result<()> {
    let mut maps = g.generators();
    maps.extend(family_samples(g, pair, 3)?);
    for m in maps {
        let ok = match check {
            "in_z" => in_z(&m, pair)?,
            "in_n" => in_n(&m, pair)?,
            _ => in_m_bounded(&m, pair, 6)?.holds(),
        };
        out.push(Certificate {
            subject: format!("{what} element {m}"),
            check,
            ok,
        });
    }
    Ok(())
}

/// The full report for a standard algebra.
pub fn classify(ty: &AlgebraType) -> Result<TwistReport> {
    let (_, pair) = standard_algebra(ty)?;
    let groups = closed_form_groups(ty)?;
    let tower = ty.tower();
    let z_equals_m = groups.z.same_group(&groups.m, tower);
    let m_equals_n = groups.m.same_group(&groups.n, tower);

    let mut certificates = Vec::new();
    certify(&mut certificates, "Z", &groups.z, &pair, "in_z")?;
    certify(&mut certificates, "M", &groups.m, &pair, "in_n")?;
    if groups.m.is_finite() || matches!(ty, AlgebraType::P(_)) {
        certify(&mut certificates, "M", &groups.m, &pair, "in_m")?;
    }

    let twist_family = twist_family_of(&groups.m, &pair)?;
    Ok(TwistReport {
        algebra: ty.clone(),
        flags: ReportFlags {
            z_equals_m,
            m_equals_n,
            twist_alg_equals_twist: z_equals_m && !groups.exceptional,
            exceptional: groups.exceptional,
        },
        z_group: groups.z,
        m_group: groups.m,
        n_group: groups.n,
        sigma_order: groups.sigma_order,
        twist_family,
        certificates,
    })
}

fn twist_family_of(m: &GroupDesc, pair: &GeometricPair) -> Result<Vec<TwistMember>> {
    let mut out = vec![TwistMember::Pair {
        tau: ProjMap::identity(pair.tower()),
        pair: pair.clone(),
    }];
    if !m.is_finite() {
        out.push(TwistMember::Family { group: m.to_string() });
    }
    for tau in m.generators() {
        let sigma = MapWord::linear(tau.clone()).compose(&pair.sigma)?;
        out.push(TwistMember::Pair {
            tau,
            pair: pair.with_sigma(sigma),
        });
    }
    Ok(out)
}

/// Generators of `Twist(A)`: the pairs `(E, τ|_E σ)` for `τ` among the
/// generators of `M(E,σ)`, plus symbolic entries for continuous families.
pub fn twist_family(ty: &AlgebraType) -> Result<Vec<TwistMember>> {
    let (_, pair) = standard_algebra(ty)?;
    twist_family_of(&closed_form_groups(ty)?.m, &pair)
}

/// One candidate `σ_q τ_E^i` checked both ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRow {
    pub q: CurvePoint,
    pub i: u32,
    pub z_definition: bool,
    pub z_criterion: bool,
    pub n_definition: bool,
    pub n_criterion: bool,
}

impl OracleRow {
    pub fn agrees(&self) -> bool {
        self.z_definition == self.z_criterion && self.n_definition == self.n_criterion
    }
}

/// For every `q ∈ E[3]` and `i` in `powers`, membership of `σ_q τ_E^i` in
/// `Z` and `N` by the definitions and by the torsion criteria on
/// `p − τ_E^i(p)`.
pub fn brute_force_mn_oracle(pair: &GeometricPair, powers: std::ops::Range<u32>) -> Result<Vec<OracleRow>> {
    let p = match pair.sigma.atoms() {
        [Atom::Elliptic(a)] if a.power() == 0 => a.translate().clone(),
        _ => return Err(Error::Unsupported("oracle needs a pair (E, σ_p)".into())),
    };
    let curve = p.curve().clone();
    let samples: Vec<CurvePoint> = pair
        .sample_points()
        .into_iter()
        .filter_map(|s| curve.point(s).ok())
        .collect();
    let e3 = curve.torsion_points(3)?;
    let tau = curve.tau_generator()?;
    let mut rows = Vec::new();
    for q in &e3.points {
        for i in powers.clone() {
            let aut = EllipticAut::new(q.clone(), i as i64)?;
            let lin = aut
                .as_linear(&samples)?
                .ok_or_else(|| Error::Unsupported(format!("σ_q τ^{i} is not linear")))?;
            let diff = p.sub(&p.apply_map(&tau.pow(i as i64))?)?;
            rows.push(OracleRow {
                q: q.clone(),
                i,
                z_definition: in_z(&lin, pair)?,
                z_criterion: diff.is_zero(),
                n_definition: in_n(&lin, pair)?,
                n_criterion: e3.contains(&diff),
            });
        }
    }
    Ok(rows)
}

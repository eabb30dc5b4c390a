//! Quadratic algebras `T(V)/(R)` on three generators and their point varieties.
//!
//! A relation `g = Σ c_ij x_i ⊗ x_j` is stored as the matrix `(c_ij)`, so that
//! `g(p, q) = pᵀ C q` for points `p, q` of the dual plane.

pub mod maps;
pub mod pair;
pub mod truncation;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::linalg::{kernel, rank, same_span, Matrix3, ProjMap, ProjPoint};
use crate::poly::Poly;

use maps::{same_rational_map, MapWord};
use pair::{ComponentCheck, ComponentKind, GeometricPair, Parametrization};

const GENERATORS: [char; 3] = ['x', 'y', 'z'];

/// A three-dimensional space of quadratic relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSpace {
    basis: [Matrix3; 3],
}

impl RelationSpace {
    pub fn new(basis: [Matrix3; 3]) -> Result<Self> {
        let t = basis[0].tower().clone();
        if basis.iter().any(|b| *b.tower() != t) {
            return Err(Error::TowerMismatch);
        }
        let r = RelationSpace { basis };
        if rank(&r.vectors(), &t) != 3 {
            return Err(Error::Constraint("relations are linearly dependent".into()));
        }
        Ok(r)
    }

    /// Builds the space from relation strings such as `"yz - a*zy + x^2"`.
    pub fn parse(tower: &FieldTower, rels: &[&str]) -> Result<Self> {
        if rels.len() != 3 {
            return Err(Error::Parse(format!("expected 3 relations, got {}", rels.len())));
        }
        let m: Vec<Matrix3> = rels
            .iter()
            .map(|s| parse_relation(tower, s))
            .collect::<Result<_>>()?;
        Self::new([m[0].clone(), m[1].clone(), m[2].clone()])
    }

    pub fn basis(&self) -> &[Matrix3; 3] {
        &self.basis
    }

    pub fn tower(&self) -> &FieldTower {
        self.basis[0].tower()
    }

    /// Each relation flattened to its 9 coefficients, row-major.
    pub fn vectors(&self) -> Vec<Vec<FieldElement>> {
        self.basis
            .iter()
            .map(|c| c.m.iter().flatten().cloned().collect())
            .collect()
    }

    fn from_vectors(v: &[Vec<FieldElement>]) -> Result<Self> {
        if v.len() != 3 {
            return Err(Error::KernelDimension(v.len()));
        }
        let mats: Vec<Matrix3> = v
            .iter()
            .map(|r| Matrix3::new(std::array::from_fn(|i| std::array::from_fn(|j| r[3 * i + j].clone()))))
            .collect::<Result<_>>()?;
        Self::new([mats[0].clone(), mats[1].clone(), mats[2].clone()])
    }

    /// Equality as subspaces of `V ⊗ V`.
    pub fn same_subspace(&self, other: &RelationSpace) -> bool {
        self.tower() == other.tower() && same_span(&self.vectors(), &other.vectors(), self.tower())
    }

    /// `M(p)`: row `k` is `pᵀ C_k`, so `M(p) q = 0` iff every relation
    /// vanishes at `(p, q)`.
    pub fn pencil_at(&self, p: &[FieldElement; 3]) -> Matrix3 {
        Matrix3 {
            m: std::array::from_fn(|k| {
                std::array::from_fn(|j| {
                    (0..3).fold(self.tower().zero(), |acc, i| acc + &p[i] * &self.basis[k].m[i][j])
                })
            }),
        }
    }

    fn pencil_symbolic(&self, p: &[Poly; 3]) -> [[Poly; 3]; 3] {
        std::array::from_fn(|k| {
            std::array::from_fn(|j| {
                (0..3).fold(Poly::zero(self.tower(), p[0].nvars()), |acc, i| {
                    acc.add(&p[i].scale(&self.basis[k].m[i][j]))
                })
            })
        })
    }

    /// `det M(p)` as a cubic in `x, y, z`; zero when every point lies on `E`.
    pub fn pencil_determinant(&self) -> Poly {
        poly_det(&self.pencil_symbolic(&Poly::xyz(self.tower())))
    }

    /// The point `σ(p)` read off the kernel of `M(p)`.
    pub fn sigma_from_pencil(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let m = self.pencil_at(p.coords());
        match m.rank() {
            3 => Err(Error::NotOnVariety),
            2 => {
                let adj = m.adjugate();
                (0..3)
                    .map(|j| adj.column(j))
                    .find(|c| c.iter().any(|e| !e.is_zero()))
                    .map(ProjPoint::new)
                    .expect("rank-2 matrix has a nonzero adjugate column")
            }
            r => Err(Error::SigmaUndetermined { rank: r }),
        }
    }

    /// The relations of the twist by a graded automorphism `φ` of `V`:
    /// `(1 ⊗ φ⁻¹)(R)`, i.e. each `C` becomes `C (φ⁻¹)ᵀ`.
    pub fn twist(&self, phi: &Matrix3) -> Result<RelationSpace> {
        let inv_t = phi.inverse()?.transpose();
        Self::new(std::array::from_fn(|k| self.basis[k].mul(&inv_t)))
    }

    /// Whether `φ ⊗ φ` maps `R` to itself, so that `φ` is a graded
    /// automorphism of the algebra.
    pub fn preserved_by(&self, phi: &Matrix3) -> bool {
        let pt = phi.transpose();
        match Self::new(std::array::from_fn(|k| phi.mul(&self.basis[k]).mul(&pt))) {
            Ok(image) => image.same_subspace(self),
            Err(_) => false,
        }
    }

    /// `τ = P(φ*)`, the map of the dual plane induced by `φ`.
    pub fn dual_map(phi: &Matrix3) -> Result<ProjMap> {
        ProjMap::new(phi.transpose())
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.basis.iter().map(format_relation).collect()
    }
}

impl fmt::Display for RelationSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.relation_strings().join(", "))
    }
}

fn poly_det(m: &[[Poly; 3]; 3]) -> Poly {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        m[r1][c1].mul(&m[r2][c2]).sub(&m[r1][c2].mul(&m[r2][c1]))
    };
    m[0][0]
        .mul(&minor(1, 2, 1, 2))
        .sub(&m[0][1].mul(&minor(1, 2, 0, 2)))
        .add(&m[0][2].mul(&minor(1, 2, 0, 1)))
}

/// Column `j` of the adjugate of a polynomial matrix.
fn poly_adj_column(m: &[[Poly; 3]; 3], j: usize) -> [Poly; 3] {
    std::array::from_fn(|i| {
        let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
        let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
        let d = m[rows[0]][cols[0]]
            .mul(&m[rows[1]][cols[1]])
            .sub(&m[rows[0]][cols[1]].mul(&m[rows[1]][cols[0]]));
        if (i + j).is_multiple_of(2) {
            d
        } else {
            d.neg()
        }
    })
}

fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    let mut prev_op = true;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') && !prev_op {
            out.push((neg, cur.trim().to_string()));
            cur.clear();
            neg = ch == '-';
            prev_op = true;
            continue;
        }
        if depth == 0 && (ch == '+' || ch == '-') && cur.trim().is_empty() {
            if ch == '-' {
                neg = !neg;
            }
            continue;
        }
        if !ch.is_whitespace() {
            prev_op = matches!(ch, '*' | '/' | '^' | '(');
        }
        cur.push(ch);
    }
    out.push((neg, cur.trim().to_string()));
    out
}

fn word_indices(w: &str) -> Option<(usize, usize)> {
    let w: Vec<char> = w.chars().filter(|c| !c.is_whitespace()).collect();
    let idx = |c: char| GENERATORS.iter().position(|&g| g == c);
    match w.as_slice() {
        [a, b] => Some((idx(*a)?, idx(*b)?)),
        [a, '^', '2'] => idx(*a).map(|i| (i, i)),
        _ => None,
    }
}

/// Parses one relation: a sum of terms `coeff*uv`, `uv` or `u^2`.
pub fn parse_relation(tower: &FieldTower, s: &str) -> Result<Matrix3> {
    let mut m = Matrix3 {
        m: std::array::from_fn(|_| std::array::from_fn(|_| tower.zero())),
    };
    for (neg, term) in split_terms(s) {
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in '{s}'")));
        }
        let (coeff, word) = match term.rfind('*') {
            Some(k) if word_indices(&term[k + 1..]).is_some() => {
                (FieldElement::parse(tower, &term[..k])?, &term[k + 1..])
            }
            _ => (tower.one(), term.as_str()),
        };
        let (i, j) = word_indices(word)
            .ok_or_else(|| Error::Parse(format!("'{term}' is not a quadratic monomial")))?;
        let c = if neg { coeff.neg() } else { coeff };
        m.m[i][j] = &m.m[i][j] + &c;
    }
    Ok(m)
}

/// Inverse of [`parse_relation`].
pub fn format_relation(c: &Matrix3) -> String {
    let mut out = String::new();
    for i in 0..3 {
        for j in 0..3 {
            let e = &c.m[i][j];
            if e.is_zero() {
                continue;
            }
            let word = format!("{}{}", GENERATORS[i], GENERATORS[j]);
            let text = e.to_string();
            let (neg, body) = if e.neg().is_one() {
                (true, String::new())
            } else if e.is_one() {
                (false, String::new())
            } else if let Some(r) = e.as_rational() {
                let neg = r < num_rational::BigRational::from_integer(0.into());
                let abs = if neg { e.neg() } else { e.clone() };
                (neg, format!("{abs}*"))
            } else {
                (false, format!("({text})*"))
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
            out.push_str(&word);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Evidence behind a (G1) verdict.
#[derive(Clone, Debug)]
pub struct G1Certificate {
    pub determinant: Poly,
    pub variety_matches: bool,
    pub components: Vec<ComponentCheck>,
}

impl G1Certificate {
    pub fn holds(&self) -> bool {
        self.variety_matches && self.components.iter().all(|c| c.ok)
    }
}

/// Checks that the zero set of `R` is the graph of `σ` on `E`.
pub fn verify_g1(r: &RelationSpace, pair: &GeometricPair) -> G1Certificate {
    let det = r.pencil_determinant();
    let variety_matches = if pair.is_plane() {
        det.is_zero()
    } else {
        !det.is_zero() && det.proportional(&pair.variety_form())
    };
    let mut components = Vec::new();
    for (i, c) in pair.components.iter().enumerate() {
        let check = match &c.param {
            Parametrization::Rational(p) if pair.sigma.is_symbolic() => {
                let m = r.pencil_symbolic(p);
                let col = (0..3)
                    .map(|j| poly_adj_column(&m, j))
                    .find(|v| v.iter().any(|e| !e.is_zero()));
                let ok = match (col, pair.sigma.apply_symbolic(p)) {
                    (Some(col), Ok(img)) => same_rational_map(&col, &img),
                    _ => false,
                };
                ComponentCheck {
                    component: i,
                    method: "symbolic",
                    ok,
                }
            }
            _ => {
                let pts = c.points();
                let ok = pts.len() >= 10
                    && pts.iter().all(|p| {
                        matches!(
                            (r.sigma_from_pencil(p), pair.sigma.apply_point(p)),
                            (Ok(a), Ok(b)) if a == b
                        )
                    });
                ComponentCheck {
                    component: i,
                    method: "samples",
                    ok,
                }
            }
        };
        components.push(check);
    }
    G1Certificate {
        determinant: det,
        variety_matches,
        components,
    }
}

fn tensor_row(p: &[FieldElement; 3], q: &[FieldElement; 3]) -> Vec<FieldElement> {
    let mut v = Vec::with_capacity(9);
    for a in p {
        for b in q {
            v.push(a * b);
        }
    }
    v
}

/// Rows expressing that `Σ c_ij P_i Q_j` vanishes identically in the
/// parameters: one row per monomial.
fn symbolic_rows(p: &[Poly; 3], q: &[Poly; 3]) -> Vec<Vec<FieldElement>> {
    let prods: Vec<Poly> = (0..9).map(|k| p[k / 3].mul(&q[k % 3])).collect();
    let mut monomials: Vec<Vec<u32>> = prods
        .iter()
        .flat_map(|f| f.terms().map(|(e, _)| e.clone()))
        .collect();
    monomials.sort();
    monomials.dedup();
    monomials
        .iter()
        .map(|e| prods.iter().map(|f| f.coeff(e)).collect())
        .collect()
}

/// Minimum number of curve samples feeding the kernel on a cubic component.
/// A bilinear form restricts to a section of degree 6 on the graph of `σ`,
/// so vanishing at 7 distinct graph points forces it to vanish on all of it.
pub const CUBIC_SPANNING_SAMPLES: usize = 7;
/// Up to this many further cubic samples are held out and checked against
/// the reconstructed relations.
pub const CUBIC_HELDOUT_SAMPLES: usize = 10;

/// All `g ∈ V ⊗ V` with `g(p, σ(p)) = 0` for every `p ∈ E`.
pub fn reconstruct_g2(pair: &GeometricPair) -> Result<RelationSpace> {
    let tower = pair.tower();
    let mut rows = Vec::new();
    let mut heldout = Vec::new();
    for c in &pair.components {
        match &c.param {
            Parametrization::Rational(p) if pair.sigma.is_symbolic() => {
                let q = pair.sigma.apply_symbolic(p)?;
                rows.extend(symbolic_rows(p, &q));
            }
            _ => {
                let pts = c.points();
                if pts.len() < CUBIC_SPANNING_SAMPLES {
                    return Err(Error::Sampling(format!(
                        "{} points on a {} component, need {CUBIC_SPANNING_SAMPLES}",
                        pts.len(),
                        c.kind.name(),
                    )));
                }
                let split = pts.len().saturating_sub(CUBIC_HELDOUT_SAMPLES).max(CUBIC_SPANNING_SAMPLES);
                for (k, p) in pts.iter().enumerate() {
                    let q = pair.sigma.apply_point(p)?;
                    let row = tensor_row(p.coords(), q.coords());
                    if k < split {
                        rows.push(row);
                    } else {
                        heldout.push(row);
                    }
                }
            }
        }
    }
    let ker = kernel(&rows, 9, tower);
    if ker.len() != 3 {
        return Err(Error::KernelDimension(ker.len()));
    }
    for h in &heldout {
        for v in &ker {
            let s = h.iter().zip(v).fold(tower.zero(), |acc, (a, b)| acc + a * b);
            if !s.is_zero() {
                return Err(Error::Sampling("held-out point violates reconstructed relations".into()));
            }
        }
    }
    RelationSpace::from_vectors(&ker)
}

/// Whether twisting `R` by `φ` agrees with reconstructing the relations of
/// `(E, τ|_E σ)` where `τ = P(φ*)`.
pub fn geometric_twist_check(r: &RelationSpace, phi: &Matrix3, pair: &GeometricPair) -> Result<bool> {
    let twisted = r.twist(phi)?;
    let tau = RelationSpace::dual_map(phi)?;
    let sigma = MapWord::linear(tau).compose(&pair.sigma)?;
    let rebuilt = reconstruct_g2(&pair.with_sigma(sigma))?;
    Ok(twisted.same_subspace(&rebuilt))
}

/// Whether a component kind admits a polynomial parametrization.
pub fn is_rational(kind: ComponentKind) -> bool {
    kind != ComponentKind::Cubic
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_strings_round_trip() {
        let t = FieldTower::rationals().extend_rational("w", &[1, 1, 1]).unwrap();
        let m = parse_relation(&t, "yz - 2*zy + x^2 - (1+w)*xy + 1/2*zz").unwrap();
        assert_eq!(m.m[1][2], t.one());
        assert_eq!(m.m[2][1], t.int(-2));
        assert_eq!(m.m[0][0], t.one());
        assert_eq!(m.m[2][2], t.frac(1, 2));
        assert_eq!(parse_relation(&t, &format_relation(&m)).unwrap(), m);
        assert!(parse_relation(&t, "xw").is_err());
    }

    #[test]
    fn pencil_of_skew_polynomial_ring() {
        let q = FieldTower::rationals();
        let r = RelationSpace::parse(&q, &["yz-2*zy", "zx-2*xz", "xy-2*yx"]).unwrap();
        let [x, y, z] = Poly::xyz(&q);
        assert!(r.pencil_determinant().proportional(&x.mul(&y).mul(&z)));
        let p = ProjPoint::from_ints(&q, [0, 1, 1]).unwrap();
        assert_eq!(r.sigma_from_pencil(&p).unwrap(), ProjPoint::from_ints(&q, [0, 1, 2]).unwrap());
        let off = ProjPoint::from_ints(&q, [1, 1, 1]).unwrap();
        assert!(matches!(r.sigma_from_pencil(&off), Err(Error::NotOnVariety)));
    }
}

//! Automorphisms of a point variety, written as words in three kinds of atom.
//!
//! A word `a_0 a_1 … a_k` acts as the composite `a_0 ∘ a_1 ∘ … ∘ a_k`, so the
//! last atom is applied first.

use crate::curve::EllipticAut;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::{ProjMap, ProjPoint};
use crate::poly::{remove_common_factor, Poly};

/// A polynomial formula valid on the zero set of `domain` (the zero form
/// means the whole plane).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub domain: Poly,
    pub map: [Poly; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Linear(ProjMap),
    /// Componentwise formulas together with formulas for the inverse.
    Piecewise {
        forward: Vec<Piece>,
        backward: Vec<Piece>,
    },
    Elliptic(EllipticAut),
}

impl Atom {
    pub fn inverse(&self) -> Result<Atom> {
        Ok(match self {
            Atom::Linear(m) => Atom::Linear(m.inverse()),
            Atom::Piecewise { forward, backward } => Atom::Piecewise {
                forward: backward.clone(),
                backward: forward.clone(),
            },
            Atom::Elliptic(a) => Atom::Elliptic(a.inverse()?),
        })
    }

    fn apply_point(&self, p: &ProjPoint) -> Result<ProjPoint> {
        match self {
            Atom::Linear(m) => Ok(m.apply(p)),
            Atom::Piecewise { forward, .. } => {
                for piece in forward {
                    if !piece.domain.eval(p.coords()).is_zero() {
                        continue;
                    }
                    let v: [FieldElement; 3] =
                        std::array::from_fn(|i| piece.map[i].eval(p.coords()));
                    if let Ok(q) = ProjPoint::new(v) {
                        return Ok(q);
                    }
                }
                Err(Error::MapUndefined)
            }
            Atom::Elliptic(a) => {
                let q = a.curve().point(p.clone())?;
                Ok(a.apply(&q)?.point().clone())
            }
        }
    }

    fn apply_symbolic(&self, v: &[Poly; 3]) -> Result<[Poly; 3]> {
        match self {
            Atom::Linear(m) => {
                let mm = &m.matrix().m;
                Ok(std::array::from_fn(|i| {
                    (0..3).fold(Poly::zero(v[0].tower(), v[0].nvars()), |acc, k| {
                        acc.add(&v[k].scale(&mm[i][k]))
                    })
                }))
            }
            Atom::Piecewise { forward, .. } => {
                for piece in forward {
                    if !piece.domain.substitute(v).is_zero() {
                        continue;
                    }
                    let img: [Poly; 3] = std::array::from_fn(|i| piece.map[i].substitute(v));
                    if img.iter().all(Poly::is_zero) {
                        continue;
                    }
                    let r = remove_common_factor(&img)?;
                    return Ok([r[0].clone(), r[1].clone(), r[2].clone()]);
                }
                Err(Error::MapUndefined)
            }
            Atom::Elliptic(_) => Err(Error::Unsupported(
                "translations have no polynomial formula".into(),
            )),
        }
    }
}

/// A composite of atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapWord {
    atoms: Vec<Atom>,
}

impl MapWord {
    pub fn identity() -> Self {
        MapWord { atoms: Vec::new() }
    }

    pub fn atom(a: Atom) -> Self {
        MapWord { atoms: vec![a] }
    }

    pub fn linear(m: ProjMap) -> Self {
        Self::atom(Atom::Linear(m))
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_symbolic(&self) -> bool {
        !self.atoms.iter().any(|a| matches!(a, Atom::Elliptic(_)))
    }

    /// `self ∘ other`, merging adjacent linear or elliptic atoms.
    pub fn compose(&self, other: &MapWord) -> Result<MapWord> {
        let mut atoms = self.atoms.clone();
        for a in &other.atoms {
            match (atoms.last_mut(), a) {
                (Some(Atom::Linear(m)), Atom::Linear(n)) => *m = m.compose(n),
                (Some(Atom::Elliptic(x)), Atom::Elliptic(y)) => *x = x.compose(y)?,
                _ => atoms.push(a.clone()),
            }
        }
        atoms.retain(|a| match a {
            Atom::Linear(m) => !m.is_identity(),
            Atom::Elliptic(e) => *e != EllipticAut::identity(e.curve()),
            _ => true,
        });
        Ok(MapWord { atoms })
    }

    pub fn inverse(&self) -> Result<MapWord> {
        let atoms = self
            .atoms
            .iter()
            .rev()
            .map(Atom::inverse)
            .collect::<Result<Vec<_>>>()?;
        Ok(MapWord { atoms })
    }

    pub fn pow(&self, n: i64) -> Result<MapWord> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = MapWord::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base)?;
        }
        Ok(acc)
    }

    pub fn apply_point(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let mut q = p.clone();
        for a in self.atoms.iter().rev() {
            q = a.apply_point(&q)?;
        }
        Ok(q)
    }

    /// Image of a parametrization, with common factors removed after each
    /// non-linear step.
    pub fn apply_symbolic(&self, v: &[Poly; 3]) -> Result<[Poly; 3]> {
        let mut q = v.clone();
        for a in self.atoms.iter().rev() {
            q = a.apply_symbolic(&q)?;
        }
        Ok(q)
    }
}

/// Whether two triples of polynomials define the same rational map, i.e.
/// every 2x2 minor vanishes identically.
pub fn same_rational_map(a: &[Poly; 3], b: &[Poly; 3]) -> bool {
    if a.iter().all(Poly::is_zero) || b.iter().all(Poly::is_zero) {
        return false;
    }
    (0..3).all(|i| {
        let j = (i + 1) % 3;
        a[i].mul(&b[j]).sub(&a[j].mul(&b[i])).is_zero()
    })
}

//! Low-degree pieces of `T(V)/(R)` and twisting-system checks on them.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::linalg::{rref, Matrix3};
use crate::quadalg::RelationSpace;

/// Highest degree a truncation may be built to.
pub const MAX_DEGREE: usize = 6;

/// Degree `n` of the quotient: the ideal part `I_n ⊂ V^⊗n` in reduced
/// echelon form, and the words (base-3 indices) that form a basis of `A_n`.
#[derive(Clone, Debug)]
struct Level {
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
    basis: Vec<usize>,
}

/// `A_0, …, A_d` with exact normal forms.
#[derive(Clone, Debug)]
pub struct GradedTruncation {
    tower: FieldTower,
    levels: Vec<Level>,
}

impl GradedTruncation {
    pub fn new(r: &RelationSpace, d: usize) -> Result<Self> {
        if d > MAX_DEGREE {
            return Err(Error::Unsupported(format!("truncation degree {d} exceeds {MAX_DEGREE}")));
        }
        let tower = r.tower().clone();
        let rel = r.vectors();
        let mut levels = vec![
            Level {
                rows: vec![],
                pivots: vec![],
                basis: vec![0],
            },
            Level {
                rows: vec![],
                pivots: vec![],
                basis: vec![0, 1, 2],
            },
        ];
        for n in 2..=d {
            let width = 3usize.pow(n as u32);
            let mut rows: Vec<Vec<FieldElement>> = Vec::new();
            for row in &levels[n - 1].rows {
                for l in 0..3 {
                    let mut v = vec![tower.zero(); width];
                    for (w, c) in row.iter().enumerate() {
                        if !c.is_zero() {
                            v[3 * w + l] = c.clone();
                        }
                    }
                    rows.push(v);
                }
            }
            for prefix in 0..3usize.pow(n as u32 - 2) {
                for g in &rel {
                    let mut v = vec![tower.zero(); width];
                    for (k, c) in g.iter().enumerate() {
                        v[9 * prefix + k] = c.clone();
                    }
                    rows.push(v);
                }
            }
            let (rows, pivots) = rref(&rows, &tower);
            let basis = (0..width).filter(|w| !pivots.contains(w)).collect();
            levels.push(Level { rows, pivots, basis });
        }
        levels.truncate(d + 1);
        Ok(GradedTruncation { tower, levels })
    }

    pub fn degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.basis.len()).collect()
    }

    /// Coordinates in the basis of `A_n` of a tensor in `V^⊗n`.
    pub fn reduce(&self, n: usize, v: &[FieldElement]) -> Vec<FieldElement> {
        let lvl = &self.levels[n];
        let mut v = v.to_vec();
        for (row, &p) in lvl.rows.iter().zip(&lvl.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a = &*a - &(&f * b);
                }
            }
        }
        lvl.basis.iter().map(|&w| v[w].clone()).collect()
    }

    fn lift(&self, n: usize, a: &[FieldElement]) -> Vec<FieldElement> {
        let mut v = vec![self.tower.zero(); 3usize.pow(n as u32)];
        for (c, &w) in a.iter().zip(&self.levels[n].basis) {
            v[w] = c.clone();
        }
        v
    }

    /// Product `A_n × A_m → A_{n+m}` on coordinate vectors.
    pub fn multiply(&self, n: usize, a: &[FieldElement], m: usize, b: &[FieldElement]) -> Vec<FieldElement> {
        let (la, lb) = (self.lift(n, a), self.lift(m, b));
        let shift = 3usize.pow(m as u32);
        let mut v = vec![self.tower.zero(); 3usize.pow((n + m) as u32)];
        for (i, x) in la.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in lb.iter().enumerate() {
                if !y.is_zero() {
                    v[i * shift + j] = x * y;
                }
            }
        }
        self.reduce(n + m, &v)
    }

    /// The map induced on `A_m` by `g^{⊗m}`, where `g` acts on `V` by columns.
    /// Assumes `g ⊗ g` preserves `R`.
    pub fn induced(&self, g: &Matrix3, m: usize) -> Vec<Vec<FieldElement>> {
        let cols: Vec<Vec<FieldElement>> = self.levels[m]
            .basis
            .iter()
            .map(|&w| {
                let mut v = vec![self.tower.one()];
                let letters = word_letters(w, m);
                for &l in &letters {
                    let col = g.column(l);
                    let mut next = Vec::with_capacity(v.len() * 3);
                    for a in &v {
                        for c in &col {
                            next.push(a * c);
                        }
                    }
                    v = next;
                }
                self.reduce(m, &v)
            })
            .collect();
        transpose(&cols, self.levels[m].basis.len(), &self.tower)
    }
}

fn word_letters(mut w: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = w % 3;
        w /= 3;
    }
    out
}

fn transpose(cols: &[Vec<FieldElement>], rows: usize, tower: &FieldTower) -> Vec<Vec<FieldElement>> {
    (0..rows)
        .map(|i| cols.iter().map(|c| c.get(i).cloned().unwrap_or_else(|| tower.zero())).collect())
        .collect()
}

fn apply(m: &[Vec<FieldElement>], v: &[FieldElement], tower: &FieldTower) -> Vec<FieldElement> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(tower.zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

/// `(dim A_0, …, dim A_d)`.
pub fn truncation_dims(r: &RelationSpace, d: usize) -> Result<Vec<usize>> {
    Ok(GradedTruncation::new(r, d)?.dims())
}

/// Finitely many maps `θ_n` of a twisting system, each given by its
/// matrices on `A_0, …, A_d`.
#[derive(Clone, Debug)]
pub struct TwistingSystem {
    /// Indices `n` for which `θ_n` is known, ascending.
    pub window: Vec<i64>,
    /// `maps[k][m]` is the matrix of `θ_{window[k]}` on `A_m`.
    pub maps: Vec<Vec<Vec<Vec<FieldElement>>>>,
}

impl TwistingSystem {
    /// `θ_n = φ^n` for a graded automorphism `φ` of `A`.
    pub fn algebraic(trunc: &GradedTruncation, phi: &Matrix3, window: &[i64]) -> Result<Self> {
        let inv = phi.inverse()?;
        let maps = window
            .iter()
            .map(|&n| {
                let base = if n < 0 { &inv } else { phi };
                let g = (0..n.unsigned_abs()).fold(Matrix3::identity(&trunc.tower), |acc, _| acc.mul(base));
                (0..=trunc.degree()).map(|m| trunc.induced(&g, m)).collect()
            })
            .collect();
        Ok(TwistingSystem {
            window: window.to_vec(),
            maps,
        })
    }

    fn get(&self, n: i64) -> Option<&Vec<Vec<Vec<FieldElement>>>> {
        self.window.iter().position(|&k| k == n).map(|k| &self.maps[k])
    }

    /// Adds `1` to the first entry of `θ_n` on `A_m`.
    pub fn perturbed(&self, n: i64, m: usize) -> Self {
        let mut out = self.clone();
        if let Some(k) = self.window.iter().position(|&j| j == n) {
            let e = &mut out.maps[k][m][0][0];
            *e = &*e + &e.tower().one();
        }
        out
    }
}

/// The first `(n, m, a, b)` at which `θ_n(a θ_m(b)) ≠ θ_n(a) θ_{n+m}(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistWitness {
    pub n: i64,
    pub m: i64,
    /// Degree and basis index of `a`.
    pub a: (usize, usize),
    /// Degree and basis index of `b`.
    pub b: (usize, usize),
    /// Set when the failure is `θ_0 ≠ id` on `A_a.0`.
    pub normalization: bool,
}

/// Checks the twisting-system identity on all basis pairs of total degree
/// at most `d` and all `n, m` with `n, m, n+m` in the window.
pub fn verify_twisting_system(
    trunc: &GradedTruncation,
    theta: &TwistingSystem,
    require_normalized: bool,
) -> std::result::Result<(), TwistWitness> {
    let t = &trunc.tower;
    let dims = trunc.dims();
    let unit = |deg: usize, i: usize| {
        let mut v = vec![t.zero(); dims[deg]];
        v[i] = t.one();
        v
    };
    if require_normalized {
        match theta.get(0) {
            Some(th0) => {
                for (deg, mat) in th0.iter().enumerate() {
                    for i in 0..dims[deg] {
                        if apply(mat, &unit(deg, i), t) != unit(deg, i) {
                            return Err(TwistWitness {
                                n: 0,
                                m: 0,
                                a: (deg, i),
                                b: (0, 0),
                                normalization: true,
                            });
                        }
                    }
                }
            }
            None => {
                return Err(TwistWitness {
                    n: 0,
                    m: 0,
                    a: (0, 0),
                    b: (0, 0),
                    normalization: true,
                })
            }
        }
    }
    for &n in &theta.window {
        for &m in &theta.window {
            let (Some(tn), Some(tm), Some(tnm)) = (theta.get(n), theta.get(m), theta.get(n + m)) else {
                continue;
            };
            for p in 0..dims.len() {
                for q in 0..dims.len() - p {
                    for i in 0..dims[p] {
                        let a = unit(p, i);
                        let ta = apply(&tn[p], &a, t);
                        for j in 0..dims[q] {
                            let b = unit(q, j);
                            let lhs = apply(&tn[p + q], &trunc.multiply(p, &a, q, &apply(&tm[q], &b, t)), t);
                            let rhs = trunc.multiply(p, &ta, q, &apply(&tnm[q], &b, t));
                            if lhs != rhs {
                                return Err(TwistWitness {
                                    n,
                                    m,
                                    a: (p, i),
                                    b: (q, j),
                                    normalization: false,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_ring_growth() {
        let q = FieldTower::rationals();
        let r = RelationSpace::parse(&q, &["yz-zy", "zx-xz", "xy-yx"]).unwrap();
        assert_eq!(truncation_dims(&r, 4).unwrap(), vec![1, 3, 6, 10, 15]);
    }

    #[test]
    fn degenerate_relations_are_detected() {
        let q = FieldTower::rationals();
        let r = RelationSpace::parse(&q, &["xx", "xy", "yx"]).unwrap();
        assert_ne!(truncation_dims(&r, 3).unwrap(), vec![1, 3, 6, 10]);
    }
}

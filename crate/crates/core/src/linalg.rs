//! Dense exact linear algebra, 3x3 matrices, and the projective plane.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};

/// Reduced row echelon form of the rows, returning the nonzero rows and
/// their pivot columns.
pub fn rref(rows: &[Vec<FieldElement>], tower: &FieldTower) -> (Vec<Vec<FieldElement>>, Vec<usize>) {
    let mut m: Vec<Vec<FieldElement>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    let _ = tower;
    (m, pivots)
}

pub fn rank(rows: &[Vec<FieldElement>], tower: &FieldTower) -> usize {
    rref(rows, tower).1.len()
}

/// Basis of the right null space `{v : rows . v = 0}`.
pub fn kernel(rows: &[Vec<FieldElement>], ncols: usize, tower: &FieldTower) -> Vec<Vec<FieldElement>> {
    let (red, pivots) = rref(rows, tower);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![tower.zero(); ncols];
            v[f] = tower.one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span(a: &[Vec<FieldElement>], b: &[Vec<FieldElement>], tower: &FieldTower) -> bool {
    rref(a, tower).0 == rref(b, tower).0
}

pub fn cross(u: &[FieldElement; 3], v: &[FieldElement; 3]) -> [FieldElement; 3] {
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

pub fn dot(u: &[FieldElement; 3], v: &[FieldElement; 3]) -> FieldElement {
    &(&(&u[0] * &v[0]) + &(&u[1] * &v[1])) + &(&u[2] * &v[2])
}

/// A 3x3 matrix over a tower.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix3 {
    pub m: [[FieldElement; 3]; 3],
}

impl Matrix3 {
    pub fn new(m: [[FieldElement; 3]; 3]) -> Result<Self> {
        let t = m[0][0].tower();
        if m.iter().flatten().any(|x| x.tower() != t) {
            return Err(Error::TowerMismatch);
        }
        Ok(Matrix3 { m })
    }

    pub fn from_ints(tower: &FieldTower, rows: [[i64; 3]; 3]) -> Self {
        Matrix3 {
            m: rows.map(|r| r.map(|x| tower.int(x))),
        }
    }

    pub fn identity(tower: &FieldTower) -> Self {
        Self::from_ints(tower, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn diag(a: FieldElement, b: FieldElement, c: FieldElement) -> Self {
        let z = a.tower().zero();
        Matrix3 {
            m: [
                [a, z.clone(), z.clone()],
                [z.clone(), b, z.clone()],
                [z.clone(), z, c],
            ],
        }
    }

    pub fn tower(&self) -> &FieldTower {
        self.m[0][0].tower()
    }

    pub fn mul(&self, o: &Matrix3) -> Matrix3 {
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(self.tower().zero(), |acc, k| &acc + &(&self.m[i][k] * &o.m[k][j]))
            })
        });
        Matrix3 { m }
    }

    pub fn mul_vec(&self, v: &[FieldElement; 3]) -> [FieldElement; 3] {
        std::array::from_fn(|i| {
            (0..3).fold(self.tower().zero(), |acc, k| &acc + &(&self.m[i][k] * &v[k]))
        })
    }

    pub fn transpose(&self) -> Matrix3 {
        Matrix3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[j][i].clone())),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix3 {
        Matrix3 {
            m: self.m.clone().map(|r| r.map(|x| &x * c)),
        }
    }

    pub fn det(&self) -> FieldElement {
        let m = &self.m;
        let t1 = &m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]));
        let t2 = &m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]));
        let t3 = &m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]));
        &(&t1 - &t2) + &t3
    }

    /// Classical adjugate: `self * adj = det * I`.
    pub fn adjugate(&self) -> Matrix3 {
        let m = &self.m;
        let cof = |r: usize, c: usize| {
            let rs: Vec<usize> = (0..3).filter(|&i| i != r).collect();
            let cs: Vec<usize> = (0..3).filter(|&i| i != c).collect();
            let d = &(&m[rs[0]][cs[0]] * &m[rs[1]][cs[1]]) - &(&m[rs[0]][cs[1]] * &m[rs[1]][cs[0]]);
            if (r + c).is_multiple_of(2) {
                d
            } else {
                -d
            }
        };
        // adj[i][j] is the (j, i) cofactor.
        Matrix3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i))),
        }
    }

    pub fn inverse(&self) -> Result<Matrix3> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(self.adjugate().scale(&d.inv()?))
    }

    pub fn rank(&self) -> usize {
        rank(&self.m.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), self.tower())
    }

    pub fn column(&self, j: usize) -> [FieldElement; 3] {
        std::array::from_fn(|i| self.m[i][j].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(FieldElement::is_zero)
    }
}

impl fmt::Display for Matrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| format!("[{}, {}, {}]", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// A point of the projective plane, scaled so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    c: [FieldElement; 3],
}

impl ProjPoint {
    pub fn new(c: [FieldElement; 3]) -> Result<Self> {
        let t = c[0].tower();
        if c[1].tower() != t || c[2].tower() != t {
            return Err(Error::TowerMismatch);
        }
        let k = c
            .iter()
            .position(|x| !x.is_zero())
            .ok_or_else(|| Error::Constraint("the zero vector is not a projective point".into()))?;
        let inv = c[k].inv()?;
        Ok(ProjPoint {
            c: c.map(|x| if x.is_zero() { x } else { &x * &inv }),
        })
    }

    pub fn from_ints(tower: &FieldTower, c: [i64; 3]) -> Result<Self> {
        Self::new(c.map(|x| tower.int(x)))
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.c
    }

    pub fn tower(&self) -> &FieldTower {
        self.c[0].tower()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c[0], self.c[1], self.c[2])
    }
}

/// Whether vectors `u` and `v` are proportional (both assumed nonzero).
pub fn proportional(u: &[FieldElement; 3], v: &[FieldElement; 3]) -> bool {
    cross(u, v).iter().all(FieldElement::is_zero)
}

/// Whether three points are collinear.
pub fn collinear(a: &[FieldElement; 3], b: &[FieldElement; 3], c: &[FieldElement; 3]) -> bool {
    dot(&cross(a, b), c).is_zero()
}

/// An element of PGL(3), normalized so the first nonzero entry (row-major) is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjMap {
    m: Matrix3,
}

impl ProjMap {
    pub fn new(m: Matrix3) -> Result<Self> {
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let first = m.m.iter().flatten().find(|x| !x.is_zero()).unwrap().clone();
        let inv = first.inv()?;
        Ok(ProjMap { m: m.scale(&inv) })
    }

    pub fn identity(tower: &FieldTower) -> Self {
        ProjMap {
            m: Matrix3::identity(tower),
        }
    }

    pub fn from_ints(tower: &FieldTower, rows: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(Matrix3::from_ints(tower, rows))
    }

    pub fn matrix(&self) -> &Matrix3 {
        &self.m
    }

    pub fn tower(&self) -> &FieldTower {
        self.m.tower()
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(self.m.mul_vec(p.coords())).expect("invertible map sends points to points")
    }

    pub fn apply_vec(&self, v: &[FieldElement; 3]) -> [FieldElement; 3] {
        self.m.mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ProjMap) -> ProjMap {
        ProjMap::new(self.m.mul(&other.m)).expect("product of invertible maps")
    }

    pub fn inverse(&self) -> ProjMap {
        ProjMap::new(self.m.adjugate()).expect("adjugate of invertible map")
    }

    pub fn pow(&self, n: i64) -> ProjMap {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = ProjMap::identity(self.tower());
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == ProjMap::identity(self.tower())
    }

    /// Least `n <= bound` with `self^n` the identity.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let mut acc = self.clone();
        for n in 1..=bound {
            if acc.is_identity() {
                return Some(n);
            }
            acc = acc.compose(self);
        }
        None
    }

    /// The unique map sending each source point to its target. Sources must
    /// be in general position; returns `Ok(None)` if the targets are not.
    pub fn fit(pairs: &[(ProjPoint, ProjPoint); 4]) -> Result<Option<ProjMap>> {
        let src: Vec<&[FieldElement; 3]> = pairs.iter().map(|(s, _)| s.coords()).collect();
        let dst: Vec<&[FieldElement; 3]> = pairs.iter().map(|(_, d)| d.coords()).collect();
        if !general_position(&src) {
            return Err(Error::NotGeneralPosition);
        }
        if !general_position(&dst) {
            return Ok(None);
        }
        let a = frame_map(&src)?;
        let b = frame_map(&dst)?;
        Ok(Some(ProjMap::new(b.mul(&a.inverse()?))?))
    }
}

/// No three of the four points are collinear.
pub fn general_position(p: &[&[FieldElement; 3]]) -> bool {
    p.len() == 4
        && [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
            .iter()
            .all(|&(i, j, k)| !collinear(p[i], p[j], p[k]))
}

/// Indices of four points in general position, searched in lexicographic order.
pub fn general_quadruple(pts: &[&[FieldElement; 3]]) -> Option<[usize; 4]> {
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            if proportional(pts[i], pts[j]) {
                continue;
            }
            for k in j + 1..n {
                if collinear(pts[i], pts[j], pts[k]) {
                    continue;
                }
                for l in k + 1..n {
                    if !collinear(pts[i], pts[j], pts[l])
                        && !collinear(pts[i], pts[k], pts[l])
                        && !collinear(pts[j], pts[k], pts[l])
                    {
                        return Some([i, j, k, l]);
                    }
                }
            }
        }
    }
    None
}

/// Matrix sending e1, e2, e3, (1,1,1) to the four given points.
fn frame_map(p: &[&[FieldElement; 3]]) -> Result<Matrix3> {
    let base = Matrix3 {
        m: std::array::from_fn(|i| std::array::from_fn(|j| p[j][i].clone())),
    };
    let lam = base.inverse()?.mul_vec(p[3]);
    Ok(Matrix3 {
        m: std::array::from_fn(|i| std::array::from_fn(|j| &base.m[i][j] * &lam[j])),
    })
}

impl fmt::Display for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.m.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldTower {
        FieldTower::rationals()
    }

    #[test]
    fn adjugate_examples() {
        let t = q();
        let i = Matrix3::identity(&t);
        assert_eq!(i.adjugate(), i);
        let d = Matrix3::diag(t.int(2), t.int(3), t.int(5));
        assert_eq!(d.adjugate(), Matrix3::diag(t.int(15), t.int(10), t.int(6)));
        let m = Matrix3::diag(t.one(), t.one(), t.zero());
        let adj = m.adjugate();
        assert_eq!(adj, Matrix3::diag(t.zero(), t.zero(), t.one()));
        let k = adj.column(2);
        assert!(m.mul_vec(&k).iter().all(FieldElement::is_zero));
    }

    #[test]
    fn fit_examples() {
        let t = q();
        let p = |c| ProjPoint::from_ints(&t, c).unwrap();
        let frame = [p([1, 0, 0]), p([0, 1, 0]), p([0, 0, 1]), p([1, 1, 1])];
        let id = ProjMap::fit(&std::array::from_fn(|i| (frame[i].clone(), frame[i].clone())))
            .unwrap()
            .unwrap();
        assert!(id.is_identity());
        let swapped = [p([0, 1, 0]), p([1, 0, 0]), p([0, 0, 1]), p([1, 1, 1])];
        let sw = ProjMap::fit(&std::array::from_fn(|i| (frame[i].clone(), swapped[i].clone())))
            .unwrap()
            .unwrap();
        assert_eq!(sw, ProjMap::from_ints(&t, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]).unwrap());
        let scaled = [p([1, 0, 0]), p([0, 1, 0]), p([0, 0, 1]), p([1, 2, 3])];
        let d = ProjMap::fit(&std::array::from_fn(|i| (frame[i].clone(), scaled[i].clone())))
            .unwrap()
            .unwrap();
        assert_eq!(d, ProjMap::new(Matrix3::diag(t.int(1), t.int(2), t.int(3))).unwrap());
    }

    #[test]
    fn fit_rejects_collinear_sources() {
        let t = q();
        let p = |c| ProjPoint::from_ints(&t, c).unwrap();
        let bad = [p([1, 0, 0]), p([0, 1, 0]), p([1, 1, 0]), p([1, 1, 1])];
        let r = ProjMap::fit(&std::array::from_fn(|i| (bad[i].clone(), bad[i].clone())));
        assert!(matches!(r, Err(Error::NotGeneralPosition)));
        let good = [p([1, 0, 0]), p([0, 1, 0]), p([0, 0, 1]), p([1, 1, 1])];
        let r = ProjMap::fit(&std::array::from_fn(|i| (good[i].clone(), bad[i].clone())));
        assert_eq!(r, Ok(None));
    }

    #[test]
    fn orders() {
        let t = q();
        assert_eq!(ProjMap::identity(&t).order(12), Some(1));
        let sw = ProjMap::from_ints(&t, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]).unwrap();
        assert_eq!(sw.order(12), Some(2));
        let w = t.extend_rational("w", &[1, 1, 1]).unwrap();
        let e = w.generator(0);
        let z = w.zero();
        let o = w.one();
        let m = Matrix3 {
            m: [
                [z.clone(), o.clone(), z.clone()],
                [o, z.clone(), z.clone()],
                [z.clone(), z, e],
            ],
        };
        assert_eq!(ProjMap::new(m).unwrap().order(12), Some(6));
    }

    #[test]
    fn kernel_and_span() {
        let t = q();
        let rows = vec![vec![t.int(1), t.int(2), t.int(3)], vec![t.int(2), t.int(4), t.int(6)]];
        let k = kernel(&rows, 3, &t);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s = (0..3).fold(t.zero(), |a, i| &a + &(&rows[0][i] * &v[i]));
            assert!(s.is_zero());
        }
        assert!(same_span(&rows[..1], &rows, &t));
    }

    #[test]
    fn normalization() {
        let t = q();
        let a = ProjPoint::from_ints(&t, [0, 2, 4]).unwrap();
        assert_eq!(a, ProjPoint::from_ints(&t, [0, 1, 2]).unwrap());
        assert!(ProjPoint::from_ints(&t, [0, 0, 0]).is_err());
        let m = ProjMap::from_ints(&t, [[2, 0, 0], [0, 4, 0], [0, 0, 6]]).unwrap();
        assert_eq!(m, ProjMap::from_ints(&t, [[1, 0, 0], [0, 2, 0], [0, 0, 3]]).unwrap());
        assert!(ProjMap::from_ints(&t, [[1, 0, 0], [0, 0, 0], [0, 0, 1]]).is_err());
    }
}

//! Exact arithmetic in finite towers of algebraic extensions of the rationals.
//!
//! A tower `Q = K_0 ⊂ K_1 ⊂ … ⊂ K_n` is declared level by level; level `k`
//! adjoins a root `g_k` of a monic polynomial with coefficients in `K_{k-1}`.
//! Elements are stored as rational coordinate vectors in the monomial basis
//! `g_1^{e_1} ⋯ g_n^{e_n}` (`e_k < deg_k`), with the lowest level varying
//! fastest. This is exactly the nested coefficient form, flattened, so the
//! representation is canonical and equality is a syntactic comparison.
//!
//! Irreducibility of the declared minimal polynomials is trusted, not checked.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
struct Level {
    name: String,
    /// Coefficients over the previous level, low to high, monic.
    minpoly: Vec<Vec<BigRational>>,
}

#[derive(Debug)]
struct TowerData {
    levels: Vec<Level>,
    /// `dims[k]` is the degree of `K_k` over `Q`.
    dims: Vec<usize>,
    /// Structure constants: `basis_i * basis_j = sum_k table[i][j][k] / table_den * basis_k`.
    table: Vec<Vec<Vec<(usize, BigInt)>>>,
    table_den: BigInt,
}

/// A declared tower of number fields. Cheap to clone.
#[derive(Clone, Debug)]
pub struct FieldTower(Arc<TowerData>);

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.levels == other.0.levels
    }
}
impl Eq for FieldTower {}

impl FieldTower {
    /// The rationals.
    pub fn rationals() -> Self {
        Self::from_levels(Vec::new()).expect("empty tower is valid")
    }

    fn from_levels(levels: Vec<Level>) -> Result<Self> {
        let mut dims = vec![1usize];
        for lv in &levels {
            let d = lv.minpoly.len() - 1;
            dims.push(dims.last().unwrap() * d);
        }
        let total = *dims.last().unwrap();
        let mut raw = vec![vec![Vec::new(); total]; total];
        let mut den = BigInt::one();
        for i in 0..total {
            for j in i..total {
                let mut a = vec![BigRational::zero(); total];
                let mut b = vec![BigRational::zero(); total];
                a[i] = BigRational::one();
                b[j] = BigRational::one();
                let prod = mul_nested(&levels, &dims, levels.len(), &a, &b);
                for q in &prod {
                    den = den.lcm(q.denom());
                }
                raw[i][j] = prod.clone();
                raw[j][i] = prod;
            }
        }
        let table = raw
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        v.into_iter()
                            .enumerate()
                            .filter(|(_, q)| !q.is_zero())
                            .map(|(k, q)| (k, q.numer() * (&den / q.denom())))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(FieldTower(Arc::new(TowerData {
            levels,
            dims,
            table,
            table_den: den,
        })))
    }

    /// Adjoins a root of `minpoly` (coefficients low to high, in this tower).
    pub fn extend(&self, name: &str, minpoly: &[FieldElement]) -> Result<FieldTower> {
        if minpoly.len() < 3 {
            return Err(Error::InvalidTower(format!(
                "minimal polynomial of {name} must have degree at least 2"
            )));
        }
        if !minpoly.last().unwrap().is_one() {
            return Err(Error::InvalidTower(format!(
                "minimal polynomial of {name} must be monic"
            )));
        }
        if !valid_name(name) || self.generator_index(name).is_some() {
            return Err(Error::InvalidTower(format!("bad or duplicate generator name '{name}'")));
        }
        for c in minpoly {
            if c.tower != *self {
                return Err(Error::TowerMismatch);
            }
        }
        let mut levels: Vec<Level> = self
            .0
            .levels
            .iter()
            .map(|l| Level {
                name: l.name.clone(),
                minpoly: l.minpoly.clone(),
            })
            .collect();
        levels.push(Level {
            name: name.to_string(),
            minpoly: minpoly.iter().map(|c| c.to_rationals()).collect(),
        });
        Self::from_levels(levels)
    }

    /// Convenience: adjoin a root of a polynomial with rational coefficients.
    pub fn extend_rational(&self, name: &str, minpoly: &[i64]) -> Result<FieldTower> {
        let coeffs: Vec<FieldElement> = minpoly.iter().map(|&c| self.int(c)).collect();
        self.extend(name, &coeffs)
    }

    pub fn degree(&self) -> usize {
        *self.0.dims.last().unwrap()
    }

    pub fn num_levels(&self) -> usize {
        self.0.levels.len()
    }

    pub fn level_name(&self, k: usize) -> &str {
        &self.0.levels[k].name
    }

    pub fn level_degree(&self, k: usize) -> usize {
        self.0.levels[k].minpoly.len() - 1
    }

    /// Minimal polynomial of level `k`, coefficients as elements of this tower.
    pub fn level_minpoly(&self, k: usize) -> Vec<FieldElement> {
        self.0.levels[k]
            .minpoly
            .iter()
            .map(|c| {
                let mut v = c.clone();
                v.resize(self.degree(), BigRational::zero());
                FieldElement::from_rationals(self, &v)
            })
            .collect()
    }

    fn prefix_dim(&self, k: usize) -> usize {
        self.0.dims[k]
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.0.levels.iter().position(|l| l.name == name)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            tower: self.clone(),
            num: vec![BigInt::zero(); self.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> FieldElement {
        self.rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(&self, n: i64, d: i64) -> FieldElement {
        self.rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn rational(&self, q: BigRational) -> FieldElement {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = q.numer().clone();
        FieldElement::normalized(self.clone(), num, q.denom().clone())
    }

    /// The generator adjoined at level `k`.
    pub fn generator(&self, k: usize) -> FieldElement {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[self.prefix_dim(k)] = BigInt::one();
        FieldElement::normalized(self.clone(), num, BigInt::one())
    }

    pub fn generator_by_name(&self, name: &str) -> Result<FieldElement> {
        self.generator_index(name)
            .map(|k| self.generator(k))
            .ok_or_else(|| Error::Parse(format!("unknown generator '{name}'")))
    }

    /// Exponent vector of basis element `idx`.
    fn basis_exponents(&self, mut idx: usize) -> Vec<usize> {
        let mut e = Vec::with_capacity(self.num_levels());
        for k in 0..self.num_levels() {
            let d = self.level_degree(k);
            e.push(idx % d);
            idx /= d;
        }
        e
    }

    /// Every complex embedding of the tower, as the images of the generators.
    pub fn embeddings(&self) -> Vec<Vec<Complex64>> {
        let mut embs: Vec<Vec<Complex64>> = vec![Vec::new()];
        for k in 0..self.num_levels() {
            let mut next = Vec::new();
            for emb in &embs {
                let coeffs: Vec<Complex64> = self.0.levels[k]
                    .minpoly
                    .iter()
                    .map(|c| eval_flat(self, k, c, emb))
                    .collect();
                for r in complex_roots(&coeffs) {
                    let mut e = emb.clone();
                    e.push(r);
                    next.push(e);
                }
            }
            embs = next;
        }
        embs
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Multiplies two flat vectors of the prefix tower with `k` levels.
fn mul_nested(
    levels: &[Level],
    dims: &[usize],
    k: usize,
    a: &[BigRational],
    b: &[BigRational],
) -> Vec<BigRational> {
    if k == 0 {
        return vec![&a[0] * &b[0]];
    }
    let lower = dims[k - 1];
    let d = levels[k - 1].minpoly.len() - 1;
    let chunk = |v: &[BigRational], e: usize| v[e * lower..(e + 1) * lower].to_vec();
    let mut coef = vec![vec![BigRational::zero(); lower]; 2 * d - 1];
    for i in 0..d {
        let ai = chunk(a, i);
        if ai.iter().all(Zero::is_zero) {
            continue;
        }
        for j in 0..d {
            let bj = chunk(b, j);
            if bj.iter().all(Zero::is_zero) {
                continue;
            }
            let p = mul_nested(levels, dims, k - 1, &ai, &bj);
            for (t, x) in coef[i + j].iter_mut().zip(p) {
                *t += x;
            }
        }
    }
    let minpoly = &levels[k - 1].minpoly;
    for e in (d..2 * d - 1).rev() {
        let c = std::mem::replace(&mut coef[e], vec![BigRational::zero(); lower]);
        if c.iter().all(Zero::is_zero) {
            continue;
        }
        for (m, mc) in minpoly.iter().enumerate().take(d) {
            let p = mul_nested(levels, dims, k - 1, &c, mc);
            for (t, x) in coef[e - d + m].iter_mut().zip(p) {
                *t -= x;
            }
        }
    }
    coef.truncate(d);
    coef.into_iter().flatten().collect()
}

/// Evaluates a flat vector of the prefix tower with `k` levels at an embedding.
fn eval_flat(tower: &FieldTower, k: usize, v: &[BigRational], emb: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (idx, q) in v.iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let mut term = Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0);
        let mut rest = idx;
        for (lvl, g) in emb.iter().enumerate().take(k) {
            let d = tower.level_degree(lvl);
            term *= g.powu((rest % d) as u32);
            rest /= d;
        }
        acc += term;
    }
    acc
}

/// All complex roots of a polynomial (coefficients low to high), by
/// Durand–Kerner iteration followed by Newton polishing.
pub(crate) fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().norm() == 0.0 {
        c.pop();
    }
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = *c.last().unwrap();
    let c: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a);
    let deriv = |z: Complex64| {
        c.iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (i, a)| acc * z + a * i as f64)
    };
    let radius = 1.0 + c.iter().take(n).map(|x| x.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32) * radius).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-12, 0.0);
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * radius {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..5 {
            let d = deriv(*zi);
            if d.norm() == 0.0 {
                break;
            }
            *zi -= eval(*zi) / d;
        }
    }
    z
}

/// An exact element of a [`FieldTower`], in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    tower: FieldTower,
    /// Numerators of the coordinates, over the common positive denominator.
    num: Vec<BigInt>,
    den: BigInt,
}

impl std::hash::Hash for FieldTower {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.degree().hash(state);
    }
}

impl FieldElement {
    fn normalized(tower: FieldTower, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if num.iter().all(Zero::is_zero) {
            return FieldElement {
                tower,
                num,
                den: BigInt::one(),
            };
        }
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|n| *n = -&*n);
        }
        let mut g = den.clone();
        for n in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(n);
        }
        if !g.is_one() {
            num.iter_mut().for_each(|n| *n = &*n / &g);
            den /= g;
        }
        FieldElement { tower, num, den }
    }

    pub fn from_rationals(tower: &FieldTower, coords: &[BigRational]) -> Self {
        assert_eq!(coords.len(), tower.degree());
        let mut den = BigInt::one();
        for q in coords {
            den = den.lcm(q.denom());
        }
        let num = coords.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Self::normalized(tower.clone(), num, den)
    }

    /// Coordinates in the flat monomial basis.
    pub fn to_rationals(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, if the element lies in the base field.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.tower == other.tower {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let l = a * &other.den;
                let r = b * &self.den;
                if negate {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        Self::normalized(self.tower.clone(), num, &self.den * &other.den)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let data = &self.tower.0;
        let n = self.num.len();
        if n == 1 {
            return Self::normalized(
                self.tower.clone(),
                vec![&self.num[0] * &other.num[0]],
                &self.den * &other.den,
            );
        }
        let mut acc = vec![BigInt::zero(); n];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, t) in &data.table[i][j] {
                    acc[*k] += &ab * t;
                }
            }
        }
        Self::normalized(
            self.tower.clone(),
            acc,
            &self.den * &other.den * &data.table_den,
        )
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            tower: self.tower.clone(),
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse, by solving `self * x = 1` over the rationals.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.num.len();
        if n == 1 {
            return Ok(Self::normalized(
                self.tower.clone(),
                vec![self.den.clone()],
                self.num[0].clone(),
            ));
        }
        // Column j of the multiplication matrix is self * basis_j.
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n + 1]; n];
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            let col = self.mul_unchecked(&FieldElement {
                tower: self.tower.clone(),
                num: e,
                den: BigInt::one(),
            });
            for (i, q) in col.to_rationals().into_iter().enumerate() {
                m[i][j] = q;
            }
        }
        m[0][n] = BigRational::one();
        let sol = solve_rational(m).ok_or(Error::DivisionByZero)?;
        Ok(Self::from_rationals(&self.tower, &sol))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.tower.one();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul_unchecked(&b);
            }
        }
        Ok(acc)
    }

    /// Complex value under an embedding from [`FieldTower::embeddings`].
    pub fn to_complex(&self, emb: &[Complex64]) -> Complex64 {
        eval_flat(&self.tower, self.tower.num_levels(), &self.to_rationals(), emb)
    }

    /// Nested coefficient form: at the top level a list of `deg` entries, each
    /// in the nested form of the level below; at level 0 a rational.
    pub fn nested(&self) -> Nested {
        fn go(tower: &FieldTower, k: usize, v: &[BigRational]) -> Nested {
            if k == 0 {
                return Nested::Rat(v[0].clone());
            }
            let lower = tower.prefix_dim(k - 1);
            Nested::List(v.chunks(lower).map(|c| go(tower, k - 1, c)).collect())
        }
        go(&self.tower, self.tower.num_levels(), &self.to_rationals())
    }

    pub fn from_nested(tower: &FieldTower, n: &Nested) -> Result<Self> {
        fn go(tower: &FieldTower, k: usize, n: &Nested, out: &mut Vec<BigRational>) -> Result<()> {
            match (k, n) {
                (0, Nested::Rat(q)) => {
                    out.push(q.clone());
                    Ok(())
                }
                (0, Nested::List(_)) => Err(Error::Parse("nesting deeper than tower".into())),
                (_, Nested::Rat(_)) => Err(Error::Parse("nesting shallower than tower".into())),
                (k, Nested::List(items)) => {
                    if items.len() != tower.level_degree(k - 1) {
                        return Err(Error::Parse(format!(
                            "expected {} coefficients at level {}",
                            tower.level_degree(k - 1),
                            k
                        )));
                    }
                    for it in items {
                        go(tower, k - 1, it, out)?;
                    }
                    Ok(())
                }
            }
        }
        let mut v = Vec::new();
        go(tower, tower.num_levels(), n, &mut v)?;
        Ok(Self::from_rationals(tower, &v))
    }

    /// Parses an expression over the tower's generators, e.g. `1/2 + w*c^2`.
    pub fn parse(tower: &FieldTower, s: &str) -> Result<Self> {
        crate::parse::parse_element(tower, s)
    }
}

/// Nested coefficient representation used by the JSON form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nested {
    Rat(BigRational),
    List(Vec<Nested>),
}

/// Solves an `n x (n+1)` augmented rational system; `None` if singular.
fn solve_rational(mut m: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (top, rest) = if r < col {
                    let (a, b) = m.split_at_mut(col);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[col], &mut b[0])
                };
                for (x, y) in rest.iter_mut().zip(top.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, n) in self.num.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let q = BigRational::new(n.clone(), self.den.clone());
            let neg = q.is_negative();
            let a = q.abs();
            let exps = self.tower.basis_exponents(idx);
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(k, e)| {
                    if *e == 1 {
                        self.tower.level_name(k).to_string()
                    } else {
                        format!("{}^{}", self.tower.level_name(k), e)
                    }
                })
                .collect();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let coeff = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            };
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics if the operands live in different towers.
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$f(rhs).expect("field elements from different towers")
            }
        }
        impl std::ops::$tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl std::ops::$tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}
impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(&self)
    }
}

/// Smallest `n <= bound` with `a^n = 1`.
pub fn root_of_unity_order(a: &FieldElement, bound: u32) -> Result<Option<u32>> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut p = a.clone();
    for n in 1..=bound {
        if p.is_one() {
            return Ok(Some(n));
        }
        p = &p * a;
    }
    Ok(None)
}

/// Distinct roots in the tower of a polynomial with coefficients in the tower
/// (low to high).
///
/// Candidates come from complex embeddings: for every assignment of complex
/// roots to a set of embeddings that determines rational coordinates, the
/// coordinates are solved numerically, rounded to nearby rationals and then
/// verified exactly. Only exactly verified roots are returned, so the result
/// is always sound; it is complete whenever its size equals the degree of a
/// squarefree input.
pub fn roots_in_tower(coeffs: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(FieldElement::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Ok(Vec::new());
    }
    let tower = coeffs[0].tower().clone();
    for c in &coeffs {
        if *c.tower() != tower {
            return Err(Error::TowerMismatch);
        }
    }
    let deg = coeffs.len() - 1;
    let dim = tower.degree();
    let embs = tower.embeddings();
    let is_real = |e: &Vec<Complex64>| e.iter().all(|z| z.im.abs() < 1e-9);
    // Pick one representative per complex-conjugate pair.
    let mut reps: Vec<(usize, bool)> = Vec::new();
    let mut used = vec![false; embs.len()];
    for (i, e) in embs.iter().enumerate() {
        if used[i] {
            continue;
        }
        used[i] = true;
        if is_real(e) {
            reps.push((i, true));
        } else {
            if let Some(j) = (0..embs.len()).find(|&j| {
                !used[j] && embs[j].iter().zip(e).all(|(a, b)| (a - b.conj()).norm() < 1e-7)
            }) {
                used[j] = true;
            }
            reps.push((i, false));
        }
    }
    let basis: Vec<Vec<Complex64>> = embs
        .iter()
        .map(|e| {
            (0..dim)
                .map(|idx| {
                    let exps = tower.basis_exponents(idx);
                    exps.iter()
                        .zip(e)
                        .fold(Complex64::new(1.0, 0.0), |acc, (k, g)| acc * g.powu(*k as u32))
                })
                .collect()
        })
        .collect();
    let root_sets: Vec<Vec<Complex64>> = reps
        .iter()
        .map(|(i, real)| {
            let c: Vec<Complex64> = coeffs.iter().map(|x| x.to_complex(&embs[*i])).collect();
            let rs = complex_roots(&c);
            if *real {
                rs.into_iter().filter(|z| z.im.abs() < 1e-7).collect()
            } else {
                rs
            }
        })
        .collect();
    let mut found: Vec<FieldElement> = Vec::new();
    let mut choice = vec![0usize; reps.len()];
    if root_sets.iter().any(Vec::is_empty) {
        return Ok(found);
    }
    loop {
        // Assemble the real linear system.
        let mut a: Vec<Vec<f64>> = Vec::with_capacity(dim);
        for (r, (ei, real)) in reps.iter().enumerate() {
            let z = root_sets[r][choice[r]];
            let row = &basis[*ei];
            a.push(row.iter().map(|b| b.re).chain(std::iter::once(z.re)).collect());
            if !*real {
                a.push(row.iter().map(|b| b.im).chain(std::iter::once(z.im)).collect());
            }
        }
        if let Some(sol) = solve_f64(a) {
            let q: Option<Vec<BigRational>> = sol.iter().map(|x| approx_rational(*x)).collect();
            if let Some(q) = q {
                let cand = FieldElement::from_rationals(&tower, &q);
                if !found.contains(&cand) && horner(&coeffs, &cand).is_zero() {
                    found.push(cand);
                }
            }
        }
        if found.len() == deg {
            break;
        }
        // Next choice (odometer).
        let mut k = 0;
        loop {
            if k == choice.len() {
                found.sort_by_key(|x| x.to_string());
                return Ok(found);
            }
            choice[k] += 1;
            if choice[k] < root_sets[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
    found.sort_by_key(|x| x.to_string());
    Ok(found)
}

pub(crate) fn horner(coeffs: &[FieldElement], x: &FieldElement) -> FieldElement {
    let tower = x.tower();
    coeffs
        .iter()
        .rev()
        .fold(tower.zero(), |acc, c| &(&acc * x) + c)
}

fn solve_f64(mut m: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let n = m.len();
    if n == 0 || m[0].len() != n + 1 {
        return None;
    }
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = m[r][col] / m[col][col];
                if f != 0.0 {
                    for c in col..=n {
                        m[r][c] -= f * m[col][c];
                    }
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

/// Continued-fraction reconstruction of a small-height rational.
fn approx_rational(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let tol = 1e-7 * x.abs().max(1.0);
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e12 {
            return None;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if k1 > 1_000_000 {
            return None;
        }
        if ((h1 as f64) / (k1 as f64) - x).abs() < tol {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

/// A primitive cube root of unity in the tower, chosen deterministically.
pub fn primitive_cube_root(tower: &FieldTower) -> Result<FieldElement> {
    for k in 0..tower.num_levels() {
        let g = tower.generator(k);
        if (&(&g * &g) + &g + tower.one()).is_zero() {
            return Ok(g);
        }
    }
    roots_in_tower(&[tower.one(), tower.one(), tower.one()])?
        .into_iter()
        .next()
        .ok_or_else(|| Error::TowerTooSmall {
            what: "a primitive cube root of unity".into(),
            missing: "x^2 + x + 1".into(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega() -> FieldTower {
        FieldTower::rationals().extend_rational("w", &[1, 1, 1]).unwrap()
    }

    #[test]
    fn rational_sum() {
        let q = FieldTower::rationals();
        assert_eq!(&q.frac(1, 2) + &q.frac(1, 3), q.frac(5, 6));
    }

    #[test]
    fn omega_squared_reduces() {
        let t = omega();
        let w = t.generator(0);
        assert_eq!(&w * &w, -&w - t.one());
    }

    #[test]
    fn cube_root_of_two_cubed() {
        let t = FieldTower::rationals().extend_rational("c", &[-2, 0, 0, 1]).unwrap();
        let c = t.generator(0);
        assert_eq!(&(&c * &c) * &c, t.int(2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let t = omega();
        assert!(matches!(t.one().try_div(&t.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn mismatched_towers_are_rejected() {
        let a = omega().one();
        let b = FieldTower::rationals().one();
        assert!(matches!(a.try_add(&b), Err(Error::TowerMismatch)));
    }

    #[test]
    fn two_level_inverse() {
        let t = omega().extend_rational("c", &[-2, 0, 0, 1]).unwrap();
        let w = t.generator(0);
        let c = t.generator(1);
        let x = &(&w * &c) + &(&c * &c) + t.int(3);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn root_of_unity_orders() {
        let q = FieldTower::rationals();
        assert_eq!(root_of_unity_order(&q.one(), 12).unwrap(), Some(1));
        assert_eq!(root_of_unity_order(&q.int(2), 12).unwrap(), None);
        assert_eq!(root_of_unity_order(&q.int(-1), 12).unwrap(), Some(2));
        let t = FieldTower::rationals().extend_rational("z", &[1, -1, 1]).unwrap();
        // Oracle: multiply until the identity appears.
        let z = t.generator(0);
        let mut p = z.clone();
        let mut n = 1;
        while !p.is_one() {
            p = &p * &z;
            n += 1;
        }
        assert_eq!(n, 6);
        assert_eq!(root_of_unity_order(&z, 12).unwrap(), Some(6));
        assert!(root_of_unity_order(&t.zero(), 12).is_err());
    }

    #[test]
    fn display_and_parse_agree() {
        let t = omega().extend_rational("c", &[-2, 0, 0, 1]).unwrap();
        let x = FieldElement::parse(&t, "1/2 - 3*w*c^2 + c").unwrap();
        let s = x.to_string();
        assert_eq!(FieldElement::parse(&t, &s).unwrap(), x);
    }

    #[test]
    fn nested_form_shape() {
        let t = omega().extend_rational("c", &[-2, 0, 0, 1]).unwrap();
        let c = t.generator(1);
        match c.nested() {
            Nested::List(items) => {
                assert_eq!(items.len(), 3);
                assert!(matches!(&items[0], Nested::List(v) if v.len() == 2));
            }
            _ => panic!("expected nested list"),
        }
        assert_eq!(FieldElement::from_nested(&t, &c.nested()).unwrap(), c);
    }

    #[test]
    fn finds_cube_roots_of_minus_two() {
        let t = omega().extend_rational("c", &[-2, 0, 0, 1]).unwrap();
        let roots = roots_in_tower(&[t.int(2), t.zero(), t.zero(), t.one()]).unwrap();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert_eq!(r.pow(3).unwrap(), t.int(-2));
        }
    }

    #[test]
    fn no_roots_reported_when_absent() {
        let t = omega();
        let roots = roots_in_tower(&[t.int(-2), t.zero(), t.one()]).unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn real_tower_roots() {
        let t = FieldTower::rationals().extend_rational("r", &[-3, 0, 1]).unwrap();
        // (x - (1 + r)) (x - (1 - r)) = x^2 - 2x - 2
        let roots = roots_in_tower(&[t.int(-2), t.int(-2), t.one()]).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn cube_root_of_unity_lookup() {
        let t = FieldTower::rationals().extend_rational("z", &[1, -1, 1]).unwrap();
        let e = primitive_cube_root(&t).unwrap();
        assert_eq!(root_of_unity_order(&e, 12).unwrap(), Some(3));
        assert!(primitive_cube_root(&FieldTower::rationals()).is_err());
    }
}

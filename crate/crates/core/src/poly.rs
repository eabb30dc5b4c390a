//! Sparse multivariate polynomials over a field tower.
//!
//! Used for ternary forms in (x, y, z), for binary forms in the parameters
//! (s, t) of rational components, and for symbolic substitution between them.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    tower: FieldTower,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl Poly {
    pub fn zero(tower: &FieldTower, nvars: usize) -> Self {
        Poly {
            tower: tower.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement, nvars: usize) -> Self {
        let mut p = Self::zero(c.tower(), nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(tower: &FieldTower, nvars: usize, i: usize) -> Self {
        Self::monomial(tower.one(), {
            let mut e = vec![0; nvars];
            e[i] = 1;
            e
        })
    }

    pub fn monomial(c: FieldElement, exps: Vec<u32>) -> Self {
        let mut p = Self::zero(c.tower(), exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Linear form `a x_0 + b x_1 + c x_2 + …`.
    pub fn linear(coeffs: &[FieldElement]) -> Self {
        let n = coeffs.len();
        let tower = coeffs[0].tower().clone();
        coeffs
            .iter()
            .enumerate()
            .fold(Self::zero(&tower, n), |acc, (i, c)| {
                acc.add(&Self::var(&tower, n, i).scale(c))
            })
    }

    /// `x, y, z` as ternary forms.
    pub fn xyz(tower: &FieldTower) -> [Poly; 3] {
        std::array::from_fn(|i| Self::var(tower, 3, i))
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> FieldElement {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.tower.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn insert_add(terms: &mut BTreeMap<Vec<u32>, FieldElement>, e: Vec<u32>, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            Self::insert_add(&mut r.terms, e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            tower: self.tower.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &FieldElement) -> Poly {
        if k.is_zero() {
            return Self::zero(&self.tower, self.nvars);
        }
        Poly {
            tower: self.tower.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                Self::insert_add(&mut terms, e, c1 * c2);
            }
        }
        Poly {
            tower: self.tower.clone(),
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Self::constant(self.tower.one(), self.nvars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, pt: &[FieldElement]) -> FieldElement {
        let mut acc = self.tower.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, k) in pt.iter().zip(e) {
                if *k > 0 {
                    term = &term * &x.pow(*k as i64).expect("nonnegative power");
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Substitutes `subs[i]` for variable `i`.
    pub fn substitute(&self, subs: &[Poly]) -> Poly {
        let nv = subs[0].nvars;
        let mut acc = Self::zero(&self.tower, nv);
        // Cache powers of each substituted polynomial.
        let mut cache: Vec<Vec<Poly>> = subs
            .iter()
            .map(|s| vec![Self::constant(self.tower.one(), nv), s.clone()])
            .collect();
        for (e, c) in &self.terms {
            let mut term = Self::constant(c.clone(), nv);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap().mul(&subs[i]);
                    cache[i].push(next);
                }
                term = term.mul(&cache[i][k as usize]);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            Self::insert_add(&mut terms, e2, c * &self.tower.int(e[i] as i64));
        }
        Poly {
            tower: self.tower.clone(),
            nvars: self.nvars,
            terms,
        }
    }

    /// The leading coefficient in the term order, if any.
    pub fn leading(&self) -> Option<(&Vec<u32>, &FieldElement)> {
        self.terms.iter().next_back()
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Whether `self = k * other` for a nonzero scalar `k` (both nonzero).
    pub fn proportional(&self, other: &Poly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.monic() == other.monic()
    }

    /// The scalar `k` with `self = k * other`, if one exists.
    pub fn ratio(&self, other: &Poly) -> Option<FieldElement> {
        let (e, c) = other.leading()?;
        let k = self.coeff(e).try_div(c).ok()?;
        if k.is_zero() {
            return None;
        }
        (other.scale(&k) == *self).then_some(k)
    }

    pub fn fmt_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| {
                    if *k == 1 {
                        names[i].to_string()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            let cs = c.to_string();
            let simple = !cs.contains(' ');
            let term = if mono.is_empty() {
                if simple {
                    cs
                } else {
                    format!("({cs})")
                }
            } else if c.is_one() {
                mono.join("*")
            } else if (-c).is_one() {
                format!("-{}", mono.join("*"))
            } else if simple {
                format!("{}*{}", cs, mono.join("*"))
            } else {
                format!("({})*{}", cs, mono.join("*"))
            };
            parts.push(term);
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
        s
    }

    /// Parses a polynomial written over the named variables and the tower's
    /// generators, e.g. `x^2 - w*y*z`.
    pub fn parse(tower: &FieldTower, names: &[&str], s: &str) -> Result<Poly> {
        crate::parse::parse_poly(tower, names, s)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: &[&str] = match self.nvars {
            2 => &["s", "t"],
            3 => &["x", "y", "z"],
            _ => &["u0", "u1", "u2", "u3", "u4", "u5", "u6", "u7", "u8"],
        };
        write!(f, "{}", self.fmt_with(names))
    }
}

/// Dense univariate polynomial helpers, coefficients low to high.
mod uni {
    use crate::field::FieldElement;

    pub fn trim(mut p: Vec<FieldElement>) -> Vec<FieldElement> {
        while p.last().is_some_and(FieldElement::is_zero) {
            p.pop();
        }
        p
    }

    /// Quotient and remainder.
    pub fn divrem(a: &[FieldElement], b: &[FieldElement]) -> (Vec<FieldElement>, Vec<FieldElement>) {
        let tower = b[0].tower();
        let mut r = trim(a.to_vec());
        let b = trim(b.to_vec());
        let db = b.len() - 1;
        let lead_inv = b[db].inv().expect("nonzero divisor");
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![tower.zero(); r.len() - db];
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1 - db;
            let c = &r[r.len() - 1] * &lead_inv;
            for (i, bi) in b.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&c * bi);
            }
            q[k] = c;
            r = trim(r);
        }
        (q, r)
    }

    pub fn gcd(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let (_, r) = divrem(&a, &b);
            a = b;
            b = r;
        }
        if let Some(l) = a.last() {
            let inv = l.inv().expect("nonzero");
            a = a.iter().map(|x| x * &inv).collect();
        }
        a
    }
}

/// Binary form (in s, t) as (degree, dehomogenized coefficients in s).
fn dehomogenize(p: &Poly) -> (u32, Vec<FieldElement>) {
    let d = p.total_degree().unwrap_or(0);
    let mut v = vec![p.tower().zero(); d as usize + 1];
    for (e, c) in p.terms() {
        v[e[0] as usize] = c.clone();
    }
    (d, uni::trim(v))
}

fn homogenize(tower: &FieldTower, coeffs: &[FieldElement], degree: u32) -> Poly {
    let mut p = Poly::zero(tower, 2);
    for (i, c) in coeffs.iter().enumerate() {
        p = p.add(&Poly::monomial(c.clone(), vec![i as u32, degree - i as u32]));
    }
    p
}

/// Divides a tuple of binary forms by their common factor (the greatest
/// common divisor of the nonzero entries). All entries must be homogeneous of
/// the same degree.
pub fn remove_common_factor(forms: &[Poly]) -> Result<Vec<Poly>> {
    let nonzero: Vec<&Poly> = forms.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::MapUndefined);
    }
    if nonzero[0].nvars() != 2 {
        return Ok(forms.to_vec());
    }
    let tower = nonzero[0].tower().clone();
    let data: Vec<(u32, Vec<FieldElement>)> = nonzero.iter().map(|p| dehomogenize(p)).collect();
    let t_mult = data
        .iter()
        .map(|(d, u)| d - (u.len() as u32 - 1))
        .min()
        .unwrap();
    let mut g = data[0].1.clone();
    for (_, u) in &data[1..] {
        g = uni::gcd(&g, u);
    }
    let gdeg = g.len() as u32 - 1 + t_mult;
    if gdeg == 0 {
        return Ok(forms.to_vec());
    }
    forms
        .iter()
        .map(|p| {
            if p.is_zero() {
                return Ok(p.clone());
            }
            let (d, u) = dehomogenize(p);
            let (q, r) = uni::divrem(&u, &g);
            debug_assert!(r.is_empty());
            Ok(homogenize(&tower, &q, d - gdeg))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_composes() {
        let t = FieldTower::rationals();
        let [x, y, z] = Poly::xyz(&t);
        let f = x.pow(3).add(&y.pow(3)).sub(&y.mul(&y).mul(&z));
        let s = Poly::var(&t, 2, 0);
        let u = Poly::var(&t, 2, 1);
        // (s t^2, t^3, s^3) lies on x^3 = y^2 z.
        let g = x.pow(3).sub(&y.pow(2).mul(&z));
        let param = [s.mul(&u).mul(&u), u.pow(3), s.pow(3)];
        assert!(g.substitute(&param).is_zero());
        assert!(!f.substitute(&param).is_zero());
    }

    #[test]
    fn common_factor_removed() {
        let t = FieldTower::rationals();
        let s = Poly::var(&t, 2, 0);
        let u = Poly::var(&t, 2, 1);
        let k = s.add(&u).mul(&u);
        let forms = [s.mul(&k), u.mul(&k), s.add(&u).mul(&k)];
        let r = remove_common_factor(&forms).unwrap();
        assert_eq!(r[0], s);
        assert_eq!(r[1], u);
        assert_eq!(r[2], s.add(&u));
    }

    #[test]
    fn proportional_forms() {
        let t = FieldTower::rationals();
        let [x, y, _] = Poly::xyz(&t);
        let f = x.add(&y);
        assert!(f.scale(&t.int(-3)).proportional(&f));
        assert_eq!(f.scale(&t.int(-3)).ratio(&f), Some(t.int(-3)));
        assert!(!x.proportional(&y));
    }

    #[test]
    fn derivative_of_cube() {
        let t = FieldTower::rationals();
        let [x, y, _] = Poly::xyz(&t);
        let f = x.pow(3).mul(&y);
        assert_eq!(f.derivative(0), x.pow(2).mul(&y).scale(&t.int(3)));
    }
}

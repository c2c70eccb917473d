//! Multivariate Laurent polynomials over an exact field.
//!
//! Ordinary polynomials are the special case with non-negative exponents;
//! gcd, exact division and differentiation require that case.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{fmt_term, Field};

pub type Exponent = Vec<i32>;

#[derive(Clone)]
pub struct MLaurent<S> {
    nvars: usize,
    terms: BTreeMap<Exponent, S>,
    prefix: &'static str,
}

impl<S: Field> PartialEq for MLaurent<S> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<S: Field> Eq for MLaurent<S> {}

impl<S: Field + Hash> Hash for MLaurent<S> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        for (e, c) in &self.terms {
            e.hash(state);
            c.hash(state);
        }
    }
}

impl<S: Field> MLaurent<S> {
    pub fn zero(nvars: usize) -> Self {
        MLaurent {
            nvars,
            terms: BTreeMap::new(),
            prefix: "x",
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, S::one())
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exp: Exponent, c: S) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        MLaurent {
            nvars,
            terms,
            prefix: "x",
        }
    }

    /// The variable `v_i` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, S::one())
    }

    /// Builds from `(exponent, coefficient)` pairs, summing duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, S)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    /// Sets the display prefix for variables (`h` prints `h1, h2, ...`).
    pub fn named(mut self, prefix: &'static str) -> Self {
        self.prefix = prefix;
        self
    }

    pub fn prefix(&self) -> &'static str {
        self.prefix
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, S> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i32]) -> S {
        self.terms.get(e).cloned().unwrap_or_else(S::zero)
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().all(|e| e.iter().all(|&x| x == 0)))
    }

    /// The constant value if the polynomial is constant.
    pub fn constant_value(&self) -> Option<S> {
        if self.is_constant() {
            Some(self.coeff(&vec![0; self.nvars]))
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Single term `c * v^e`.
    pub fn as_monomial(&self) -> Option<(&Exponent, &S)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Largest exponent of variable `i` (lowest for Laurent negatives is
    /// `min_degree_in`). `None` for zero.
    pub fn degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn min_degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[i]).min()
    }

    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lex-largest term (the leading term for lex order with `v1 > v2 > ...`).
    pub fn leading(&self) -> Option<(&Exponent, &S)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars).named(self.prefix);
        }
        MLaurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x.clone() * c.clone()))
                .collect(),
            prefix: self.prefix,
        }
    }

    /// Multiplies by the monomial `v^e`.
    pub fn shift_exponents(&self, e: &[i32]) -> Self {
        MLaurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
            prefix: self.prefix,
        }
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Self::one(self.nvars).named(self.prefix);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a single-term Laurent polynomial.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        let inv = c.inv()?;
        Some(Self::monomial(e.iter().map(|x| -x).collect(), inv).named(self.prefix))
    }

    /// Formal partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars).named(self.prefix);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c.clone() * S::from_i64(e[i] as i64));
        }
        out
    }

    /// Substitutes `v_i := images[i]`. Requires non-negative exponents unless
    /// the images are invertible monomials.
    pub fn compose(&self, images: &[MLaurent<S>]) -> Option<MLaurent<S>> {
        assert_eq!(images.len(), self.nvars);
        let target_vars = images.first().map_or(0, |p| p.nvars);
        let prefix = images.first().map_or(self.prefix, |p| p.prefix);
        let mut cache: BTreeMap<(usize, i32), MLaurent<S>> = BTreeMap::new();
        let mut out = MLaurent::zero(target_vars).named(prefix);
        for (e, c) in &self.terms {
            let mut term = MLaurent::constant(target_vars, c.clone()).named(prefix);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let factor = match cache.get(&(i, k)) {
                    Some(f) => f.clone(),
                    None => {
                        let base = if k < 0 {
                            images[i].monomial_inverse()?
                        } else {
                            images[i].clone()
                        };
                        let f = base.pow(k.unsigned_abs());
                        cache.insert((i, k), f.clone());
                        f
                    }
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        Some(out)
    }

    /// Splits into coefficients of powers of variable `v`
    /// (non-negative exponents only).
    pub(crate) fn to_univariate(&self, v: usize) -> Vec<MLaurent<S>> {
        let deg = self.degree_in(v).unwrap_or(0).max(0) as usize;
        let mut out = vec![MLaurent::zero(self.nvars).named(self.prefix); deg + 1];
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut ne = e.clone();
            ne[v] = 0;
            out[k].add_term(ne, c.clone());
        }
        while out.len() > 1 && out.last().is_some_and(|p| p.is_zero()) {
            out.pop();
        }
        out
    }

    pub(crate) fn from_univariate(v: usize, nvars: usize, coeffs: &[MLaurent<S>]) -> Self {
        let mut out = MLaurent::zero(nvars);
        if let Some(p) = coeffs.first() {
            out.prefix = p.prefix;
        }
        for (k, p) in coeffs.iter().enumerate() {
            for (e, c) in &p.terms {
                let mut ne = e.clone();
                ne[v] += k as i32;
                out.add_term(ne, c.clone());
            }
        }
        out
    }

    /// Exact quotient `self / d` for polynomials; `None` when `d` does not
    /// divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (de, dc) = d.leading()?;
        let dc_inv = dc.inv()?;
        let de = de.clone();
        let mut rem = self.clone();
        let mut quot = MLaurent::zero(self.nvars).named(self.prefix);
        while let Some((re, rc)) = rem.leading() {
            let qe: Exponent = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let qc = rc.clone() * dc_inv.clone();
            let step = MLaurent::monomial(qe, qc);
            rem = &rem - &(&step * d);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Monic greatest common divisor of two polynomials (non-negative
    /// exponents), computed by recursive primitive remainder sequences.
    pub fn gcd(&self, other: &Self) -> Self {
        debug_assert!(self.is_polynomial() && other.is_polynomial());
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one(self.nvars).named(self.prefix);
        }
        if let Some(g) = monomial_gcd(self, other) {
            return g;
        }
        let v = (0..self.nvars)
            .find(|&i| self.degree_in(i).unwrap_or(0) > 0 || other.degree_in(i).unwrap_or(0) > 0)
            .expect("non-constant polynomial has a variable");
        let ua = self.to_univariate(v);
        let ub = other.to_univariate(v);
        let ca = content(&ua);
        let cb = content(&ub);
        let c = ca.gcd(&cb);
        if ua.len() == 1 || ub.len() == 1 {
            // one side does not involve v
            return c.monic();
        }
        let mut a = primitive(&ua, &ca);
        let mut b = primitive(&ub, &cb);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while b.len() > 1 {
            let r = prem(&a, &b);
            if r.iter().all(|p| p.is_zero()) {
                break;
            }
            let r = trim(r);
            let cr = content(&r);
            a = b;
            b = scalar_normalize(primitive(&r, &cr));
        }
        let g = if b.len() == 1 {
            Self::one(self.nvars).named(self.prefix)
        } else {
            let cbp = content(&b);
            Self::from_univariate(v, self.nvars, &primitive(&b, &cbp))
        };
        (&g * &c).monic()
    }

    pub fn map_coeffs<T: Field>(&self, f: impl Fn(&S) -> T) -> MLaurent<T> {
        let mut out = MLaurent::zero(self.nvars).named(self.prefix);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn fmt_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let body = monomial_body(e, names);
            out.push_str(&fmt_term(c, &body, out.is_empty()));
        }
        out
    }
}

fn monomial_body(e: &[i32], names: &dyn Fn(usize) -> String) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names(i)),
            _ => parts.push(format!("{}^{}", names(i), k)),
        }
    }
    parts.join("*")
}

/// gcd when one side is a single term.
fn monomial_gcd<S: Field>(a: &MLaurent<S>, b: &MLaurent<S>) -> Option<MLaurent<S>> {
    let (mono, other) = if a.terms.len() == 1 {
        (a, b)
    } else if b.terms.len() == 1 {
        (b, a)
    } else {
        return None;
    };
    let (me, _) = mono.as_monomial()?;
    let mut e = me.clone();
    for k in other.terms.keys() {
        for (x, y) in e.iter_mut().zip(k) {
            *x = (*x).min(*y);
        }
    }
    Some(MLaurent::monomial(e, S::one()).named(a.prefix))
}

fn trim<S: Field>(mut v: Vec<MLaurent<S>>) -> Vec<MLaurent<S>> {
    while v.len() > 1 && v.last().is_some_and(|p| p.is_zero()) {
        v.pop();
    }
    v
}

fn content<S: Field>(u: &[MLaurent<S>]) -> MLaurent<S> {
    let mut it = u.iter().filter(|p| !p.is_zero());
    let Some(first) = it.next() else {
        return MLaurent::zero(u.first().map_or(0, |p| p.nvars));
    };
    let mut g = first.monic();
    for p in it {
        if g.is_one() {
            break;
        }
        g = g.gcd(p);
    }
    g
}

/// Divides by the leading scalar so remainder coefficients stay small.
fn scalar_normalize<S: Field>(u: Vec<MLaurent<S>>) -> Vec<MLaurent<S>> {
    let Some(lc) = u.last().and_then(|p| p.leading()).map(|(_, c)| c.clone()) else {
        return u;
    };
    if lc.is_one() {
        return u;
    }
    let inv = lc.inv().expect("nonzero leading coefficient");
    u.into_iter().map(|p| p.scale(&inv)).collect()
}

fn primitive<S: Field>(u: &[MLaurent<S>], c: &MLaurent<S>) -> Vec<MLaurent<S>> {
    if c.is_one() || c.is_zero() {
        return u.to_vec();
    }
    u.iter()
        .map(|p| p.div_exact(c).expect("content divides coefficient"))
        .collect()
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients.
fn prem<S: Field>(a: &[MLaurent<S>], b: &[MLaurent<S>]) -> Vec<MLaurent<S>> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.to_vec();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let mut next: Vec<MLaurent<S>> = r.iter().map(|p| p * &lb).collect();
        for (j, bj) in b.iter().enumerate() {
            let t = bj * &lr;
            next[j + dr - db] = &next[j + dr - db] - &t;
        }
        next.pop();
        r = trim(next);
        if r.is_empty() {
            break;
        }
    }
    r
}

impl<S: Field> Add<&MLaurent<S>> for &MLaurent<S> {
    type Output = MLaurent<S>;
    fn add(self, rhs: &MLaurent<S>) -> MLaurent<S> {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        out.prefix = self.prefix;
        for (e, c) in &small.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<S: Field> Sub<&MLaurent<S>> for &MLaurent<S> {
    type Output = MLaurent<S>;
    fn sub(self, rhs: &MLaurent<S>) -> MLaurent<S> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<S: Field> Neg for &MLaurent<S> {
    type Output = MLaurent<S>;
    fn neg(self) -> MLaurent<S> {
        MLaurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
            prefix: self.prefix,
        }
    }
}

impl<S: Field> Mul<&MLaurent<S>> for &MLaurent<S> {
    type Output = MLaurent<S>;
    fn mul(self, rhs: &MLaurent<S>) -> MLaurent<S> {
        let mut out = MLaurent::zero(self.nvars).named(self.prefix);
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<S: Field> $tr for MLaurent<S> {
            type Output = MLaurent<S>;
            fn $m(self, rhs: MLaurent<S>) -> MLaurent<S> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<S: Field> Neg for MLaurent<S> {
    type Output = MLaurent<S>;
    fn neg(self) -> MLaurent<S> {
        -&self
    }
}

impl<S: Field> fmt::Display for MLaurent<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = self.prefix;
        f.write_str(&self.fmt_with(&|i| format!("{prefix}{}", i + 1)))
    }
}

impl<S: Field> fmt::Debug for MLaurent<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MLaurent({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::{int, Rational};
    use crate::exact::QScalar;

    type P = MLaurent<Rational>;

    fn h(i: usize) -> P {
        P::var(2, i)
    }

    fn c(v: i64) -> P {
        P::constant(2, int(v))
    }

    #[test]
    fn commutative_base() {
        assert!((&(&h(0) * &h(1)) - &(&h(1) * &h(0))).is_zero());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let common = &(&h(0) + &h(1)) + &c(1);
        let a = &common * &(&h(0) - &c(2));
        let b = &common * &(&(&h(1) * &h(1)) + &h(0));
        assert_eq!(a.gcd(&b), common.monic());
        assert!(a.gcd(&(&h(0) - &c(3))).is_one());
    }

    #[test]
    fn gcd_with_monomial() {
        let a = &(&h(0) * &h(0)) * &h(1);
        let b = &(&h(0) * &h(1)) + &(&h(0) * &h(0));
        assert_eq!(a.gcd(&b), h(0));
    }

    #[test]
    fn exact_division() {
        let a = &(&h(0) * &h(0)) - &c(1);
        assert_eq!(a.div_exact(&(&h(0) - &c(1))), Some(&h(0) + &c(1)));
        assert_eq!(a.div_exact(&h(1)), None);
    }

    #[test]
    fn derivative_of_square() {
        let f = &h(0) * &h(0);
        assert_eq!(f.derivative(0), &h(0) * &c(2));
        assert!(f.derivative(1).is_zero());
    }

    #[test]
    fn laurent_monomial_inverse() {
        let k = MLaurent::<QScalar>::monomial(vec![-1, 2], QScalar::q());
        let inv = k.monomial_inverse().unwrap();
        assert!((&k * &inv).is_one());
    }

    #[test]
    fn display() {
        let f = &(&h(0) * &h(0)) - &h(1);
        assert_eq!(f.clone().named("h").to_string(), "h1^2 - h2");
    }
}

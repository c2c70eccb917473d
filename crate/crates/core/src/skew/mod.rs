//! The skew Laurent model `Frac(A) # T^n`: finite sums `sum f_m t^m` with
//! `t^m f = sigma^m(f) t^m`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cartan::CartanMatrix;
use crate::error::{Error, Result};
use crate::exact::{
    ClassicalCoeff, Coefficient, EndoSpec, Field, MLaurent, QScalar, QuantumCoeff, Rational,
};

pub type TorusExp = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Classical,
    Quantum,
}

/// Torus rank, coefficient ring and the commuting automorphisms `sigma_i`.
#[derive(Debug, PartialEq)]
pub struct ModelContext<C: Coefficient> {
    n: usize,
    nvars: usize,
    flavor: Flavor,
    sigma: Vec<EndoSpec<C::Scalar>>,
}

impl<C: Coefficient> ModelContext<C> {
    /// Validates that the automorphisms are invertible and commute on the
    /// generators of the coefficient ring.
    pub fn new(nvars: usize, flavor: Flavor, sigma: Vec<EndoSpec<C::Scalar>>) -> Result<Arc<Self>> {
        for s in &sigma {
            if s.len() != nvars {
                return Err(Error::Shape("automorphism arity differs from variable count".into()));
            }
            s.inverse()?;
        }
        for (i, si) in sigma.iter().enumerate() {
            for sj in &sigma[i + 1..] {
                for v in 0..nvars {
                    let x = MLaurent::<C::Scalar>::var(nvars, v);
                    if si.apply(&sj.apply(&x)?)? != sj.apply(&si.apply(&x)?)? {
                        return Err(Error::EndoMismatch(format!(
                            "automorphisms do not commute on variable {}",
                            v + 1
                        )));
                    }
                }
            }
        }
        Ok(Arc::new(ModelContext {
            n: sigma.len(),
            nvars,
            flavor,
            sigma,
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn sigma(&self, i: usize) -> &EndoSpec<C::Scalar> {
        &self.sigma[i]
    }

    /// `sigma^m = prod sigma_i^{m_i}`.
    pub fn sigma_power(&self, m: &[i64]) -> Result<EndoSpec<C::Scalar>> {
        if m.len() != self.n {
            return Err(Error::Shape(format!("torus exponent of length {} in rank {}", m.len(), self.n)));
        }
        let mut acc = match self.sigma.first() {
            Some(EndoSpec::Scale(_)) => EndoSpec::identity_scale(self.nvars),
            _ => EndoSpec::identity_shift(self.nvars),
        };
        for (s, &k) in self.sigma.iter().zip(m) {
            if k != 0 {
                acc = acc.compose(&s.power(k)?)?;
            }
        }
        Ok(acc)
    }

    pub fn apply_sigma(&self, m: &[i64], f: &C) -> Result<C> {
        if m.iter().all(|&k| k == 0) {
            return Ok(f.clone());
        }
        f.apply_endo(&self.sigma_power(m)?)
    }

    pub fn unit(&self, i: usize) -> TorusExp {
        (0..self.n).map(|j| i64::from(i == j)).collect()
    }

    /// Twisted differential `D_i(f) = sigma_i(f) - f`.
    pub fn twisted_diff(&self, i: usize, f: &C) -> Result<C> {
        if i >= self.n {
            return Err(Error::Shape(format!("index {} out of range", i + 1)));
        }
        Ok(f.apply_endo(&self.sigma[i])?.minus(f))
    }

    /// `D_m(f) = sigma^m(f) - f` along an arbitrary torus direction.
    pub fn twisted_diff_along(&self, m: &[i64], f: &C) -> Result<C> {
        Ok(self.apply_sigma(m, f)?.minus(f))
    }

    /// `prod_{l=0}^{m-1} (sigma_i - q^{2 l d_i})` applied to `f`.
    pub fn q_divided_diff(&self, i: usize, m: u32, f: &C, d: &[i64]) -> Result<C> {
        if self.flavor != Flavor::Quantum {
            return Err(Error::NotQuantum);
        }
        let mut cur = f.clone();
        for l in 0..m as i64 {
            let c = C::Scalar::q_power(2 * l * d[i]).ok_or(Error::NotQuantum)?;
            cur = cur.apply_endo(&self.sigma[i])?.minus(&cur.scaled(&c));
        }
        Ok(cur)
    }
}

impl ModelContext<ClassicalCoeff> {
    /// `sigma_i(h_j) = h_j + a_ji`.
    pub fn classical(c: &CartanMatrix) -> Result<Arc<Self>> {
        let n = c.n();
        let sigma = (0..n)
            .map(|i| EndoSpec::Shift((0..n).map(|j| Rational::from_i64(c.a(j, i))).collect()))
            .collect();
        Self::new(n, Flavor::Classical, sigma)
    }
}

impl ModelContext<QuantumCoeff> {
    /// `sigma_i(K_j) = q^{-d_i a_ij} K_j`.
    pub fn quantum(c: &CartanMatrix, d: &[i64]) -> Result<Arc<Self>> {
        let n = c.n();
        let sigma = (0..n)
            .map(|i| EndoSpec::Scale((0..n).map(|j| QScalar::q_pow(-d[i] * c.a(i, j))).collect()))
            .collect();
        Self::new(n, Flavor::Quantum, sigma)
    }
}

/// Coefficients inverted during a computation, in order.
#[derive(Clone, Debug, PartialEq)]
pub struct DenomLog<C> {
    pub entries: Vec<C>,
}

impl<C> Default for DenomLog<C> {
    fn default() -> Self {
        DenomLog { entries: Vec::new() }
    }
}

impl<C: Clone> DenomLog<C> {
    pub fn merge(mut self, other: DenomLog<C>) -> Self {
        self.entries.extend(other.entries);
        self
    }

    pub fn push(&mut self, c: C) {
        self.entries.push(c);
    }
}

/// An element `sum_m f_m t^m` of the model.
#[derive(Clone)]
pub struct SkewElem<C: Coefficient> {
    ctx: Arc<ModelContext<C>>,
    terms: BTreeMap<TorusExp, C>,
}

impl<C: Coefficient> PartialEq for SkewElem<C> {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

fn same_context<C: Coefficient>(a: &Arc<ModelContext<C>>, b: &Arc<ModelContext<C>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<C: Coefficient> SkewElem<C> {
    pub fn zero(ctx: &Arc<ModelContext<C>>) -> Self {
        SkewElem {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<ModelContext<C>>) -> Self {
        Self::coeff(ctx, C::one_in(ctx.nvars))
    }

    pub fn coeff(ctx: &Arc<ModelContext<C>>, f: C) -> Self {
        Self::term(ctx, f, vec![0; ctx.n])
    }

    pub fn scalar(ctx: &Arc<ModelContext<C>>, c: C::Scalar) -> Self {
        Self::coeff(ctx, C::scalar_in(ctx.nvars, c))
    }

    pub fn torus(ctx: &Arc<ModelContext<C>>, m: TorusExp) -> Self {
        Self::term(ctx, C::one_in(ctx.nvars), m)
    }

    /// `t_i^{k}`.
    pub fn t(ctx: &Arc<ModelContext<C>>, i: usize, k: i64) -> Self {
        let mut m = vec![0; ctx.n];
        m[i] = k;
        Self::torus(ctx, m)
    }

    pub fn term(ctx: &Arc<ModelContext<C>>, f: C, m: TorusExp) -> Self {
        assert_eq!(m.len(), ctx.n, "torus exponent length");
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(m, f);
        }
        SkewElem {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn context(&self) -> &Arc<ModelContext<C>> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<TorusExp, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, f)| m.iter().all(|&k| k == 0) && f.is_one())
    }

    pub fn single_term(&self) -> Option<(&TorusExp, &C)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn add_term(&mut self, m: TorusExp, f: C) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(g) => {
                let s = g.plus(&f);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *g = s;
                }
            }
            None => {
                self.terms.insert(m, f);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, f) in &other.terms {
            out.add_term(m.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        SkewElem {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, f)| (m.clone(), f.negated())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C::Scalar) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, f) in &self.terms {
            out.add_term(m.clone(), f.scaled(c));
        }
        out
    }

    /// `(f t^m)(g t^{m'}) = f sigma^m(g) t^{m+m'}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.ctx);
        for (m, f) in &self.terms {
            let sigma = if m.iter().all(|&k| k == 0) {
                None
            } else {
                Some(self.ctx.sigma_power(m)?)
            };
            for (m2, g) in &other.terms {
                let shifted = match &sigma {
                    Some(s) => g.apply_endo(s)?,
                    None => g.clone(),
                };
                let exp: TorusExp = m.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(exp, f.times(&shifted));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Inverse of a unit monomial `f t^m`: `sigma^{-m}(f^{-1}) t^{-m}`.
    /// The inverted coefficient `f` is returned in the log.
    pub fn invert(&self) -> Result<(Self, DenomLog<C>)> {
        let (m, f) = self.single_term().ok_or_else(|| {
            Error::NotUnitMonomial(if self.is_zero() {
                "zero".into()
            } else {
                format!("{} terms", self.terms.len())
            })
        })?;
        let finv = f.inverse()?;
        let neg: TorusExp = m.iter().map(|k| -k).collect();
        let coeff = self.ctx.apply_sigma(&neg, &finv)?;
        let mut log = DenomLog::default();
        if !f.is_one() {
            log.push(f.clone());
        }
        Ok((Self::term(&self.ctx, coeff, neg), log))
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `ad(self)^p (y)`.
    pub fn ad_power(&self, y: &Self, p: u32) -> Result<Self> {
        let mut cur = y.clone();
        for _ in 0..p {
            cur = self.commutator(&cur)?;
        }
        Ok(cur)
    }

    /// `xy - twist * yx`; quantum contexts only.
    pub fn ad_q(&self, y: &Self, twist: &C::Scalar) -> Result<Self> {
        if self.ctx.flavor != Flavor::Quantum {
            return Err(Error::NotQuantum);
        }
        self.mul(y)?.sub(&y.mul(self)?.scale(twist))
    }

    /// Iterated `ad_q` with one twist per step, innermost first.
    pub fn ad_q_power(&self, y: &Self, twists: &[C::Scalar]) -> Result<Self> {
        let mut cur = y.clone();
        for t in twists {
            cur = self.ad_q(&cur, t)?;
        }
        Ok(cur)
    }

    /// `Ad(self)(v) = self * v * self^{-1}` for a unit monomial `self`.
    pub fn conjugate(&self, v: &Self) -> Result<(Self, DenomLog<C>)> {
        let (inv, log) = self.invert()?;
        Ok((self.mul(v)?.mul(&inv)?, log))
    }
}

/// Renders a torus monomial as `t1^-1*t2`.
pub fn fmt_torus(m: &[i64]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| if k == 1 { format!("t{}", i + 1) } else { format!("t{}^{}", i + 1, k) })
        .collect();
    parts.join("*")
}

impl<C: Coefficient> fmt::Display for SkewElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let t = fmt_torus(m);
                let cs = c.to_string();
                if t.is_empty() {
                    format!("({cs})")
                } else if c.is_one() {
                    t
                } else {
                    format!("({cs})*{t}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<C: Coefficient> fmt::Debug for SkewElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewElem({self})")
    }
}

#[cfg(test)]
mod tests;

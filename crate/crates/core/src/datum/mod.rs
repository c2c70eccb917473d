//! Cartan data: the canonical classical datum with its correction terms,
//! and the quantum datum over the torus.

mod quantum;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanAux, CartanMatrix};
use crate::error::{Error, Result};
use crate::exact::{
    determinant, int, jacobian, rat, solve_linear, ClassicalCoeff, Exponent,
    MLaurent, One, PolyFrac, Rational, Zero,
};
use crate::report::Entry;
use crate::skew::{ModelContext, TorusExp};

pub use quantum::{
    build_omega, build_quantum_datum, check_bound_quantum, k_monomial, localized_conditions, Omega,
    OmegaScaling, QuantumBoundReport, QuantumDatum,
};

pub type Poly = MLaurent<Rational>;

/// The linear forms `z = Q h`: pairing elements `alpha_i` and central
/// elements `gamma_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Alpha {
    pub alpha: Vec<Poly>,
    pub gamma: Vec<Poly>,
    /// Torus direction `m_i` paired with `alpha_i`.
    pub directions: Vec<TorusExp>,
}

impl Alpha {
    /// All coordinates `z`, pairing block first.
    pub fn coordinates(&self) -> Vec<Poly> {
        self.alpha.iter().chain(&self.gamma).cloned().collect()
    }
}

fn linear_form(q: &[Rational]) -> Poly {
    let n = q.len();
    Poly::from_terms(
        n,
        q.iter().enumerate().map(|(u, c)| {
            let mut e = vec![0; n];
            e[u] = 1;
            (e, c.clone())
        }),
    )
    .named("h")
}

pub fn build_alpha(_c: &CartanMatrix, aux: &CartanAux) -> Alpha {
    Alpha {
        alpha: aux.dual_pairs.iter().map(|p| linear_form(&p.q)).collect(),
        gamma: aux.left_kernel.iter().map(|w| linear_form(w)).collect(),
        directions: aux.dual_pairs.iter().map(|p| p.m.clone()).collect(),
    }
}

/// Checks `D_{m_j}(alpha_i) = delta_ij` and that every `gamma_k` is fixed by
/// all `sigma_i`.
pub fn check_alpha(ctx: &Arc<ModelContext<ClassicalCoeff>>, alpha: &Alpha) -> Result<Vec<Entry>> {
    let n = ctx.nvars();
    let mut out = Vec::new();
    for (i, a) in alpha.alpha.iter().enumerate() {
        for (j, m) in alpha.directions.iter().enumerate() {
            let d = ctx.twisted_diff_along(m, &PolyFrac::from_poly(a.clone()))?;
            let want = if i == j { PolyFrac::one(n) } else { PolyFrac::zero(n) };
            let res = d.minus(&want);
            out.push(Entry::new(
                format!("D along m{}(alpha{}) = {}", j + 1, i + 1, u8::from(i == j)),
                &res,
                res.is_zero(),
            ));
        }
    }
    for (k, g) in alpha.gamma.iter().enumerate() {
        for i in 0..ctx.n() {
            let d = ctx.twisted_diff(i, &PolyFrac::from_poly(g.clone()))?;
            out.push(Entry::new(
                format!("D{}(gamma{}) = 0", i + 1, k + 1),
                &d,
                d.is_zero(),
            ));
        }
    }
    Ok(out)
}

/// How the correction terms were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BetaMethod {
    /// Monomial selection by the degree bounds in pairing coordinates.
    DegreeBound,
    /// Exact linear solve over quadratic polynomials.
    Linear,
    /// Supplied by the caller (test hook).
    Override,
}

#[derive(Clone, Debug)]
pub struct ClassicalDatum {
    pub cartan: CartanMatrix,
    pub aux: CartanAux,
    pub ctx: Arc<ModelContext<ClassicalCoeff>>,
    pub alpha: Alpha,
    /// `beta_j` in the coordinates `z = Q h` (printed `a1, a2, ...`).
    pub beta_coords: Vec<Poly>,
    /// `beta_j` in the `h` variables.
    pub beta: Vec<Poly>,
    pub b: Vec<Poly>,
    pub method: BetaMethod,
}

/// `1/4 h_j (h_j - 2)`.
pub fn leading_part(n: usize, j: usize) -> Poly {
    let h = Poly::var(n, j).named("h");
    let shifted = &h - &Poly::constant(n, int(2));
    (&h * &shifted).scale(&rat(1, 4))
}

fn rational_inverse(m: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rational> = (0..n).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect();
        cols.push(solve_linear(m, &e).ok_or_else(|| Error::Internal("quasi-inverse is singular".into()))?);
    }
    Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

fn z_to_h(alpha: &Alpha) -> Vec<Poly> {
    alpha.coordinates()
}

pub(crate) fn h_to_z(aux: &CartanAux) -> Result<Vec<Poly>> {
    let inv = rational_inverse(&aux.q_matrix)?;
    Ok(inv.iter().map(|row| linear_form(row).named("a")).collect())
}

fn apply_d_power(
    ctx: &ModelContext<ClassicalCoeff>,
    i: usize,
    k: u32,
    f: &ClassicalCoeff,
) -> Result<ClassicalCoeff> {
    let mut cur = f.clone();
    for _ in 0..k {
        cur = ctx.twisted_diff(i, &cur)?;
    }
    Ok(cur)
}

fn as_poly(f: &ClassicalCoeff) -> Result<Poly> {
    f.as_poly()
        .cloned()
        .ok_or_else(|| Error::Internal(format!("expected a polynomial, got {f}")))
}

/// Correction terms `beta_j` and bound elements `b_j`.
///
/// Corank 0: rewrite `1/4 h_j(h_j - 2)` in the coordinates `alpha`; since
/// `D_i` is the unit shift in `alpha_i`, `D_i^{1-a_ij}` kills exactly the
/// monomials of `alpha_i`-degree at most `-a_ij`, so `beta_j` is minus the
/// monomials breaking some bound. Positive corank: linear solve.
pub fn solve_beta(c: &CartanMatrix, aux: &CartanAux, alpha: &Alpha) -> Result<ClassicalDatum> {
    let ctx = ModelContext::classical(c)?;
    let n = c.n();
    if aux.corank > 0 {
        return solve_beta_linear(c, aux, alpha, ctx);
    }
    let h_in_z = h_to_z(aux)?;
    let z_in_h = z_to_h(alpha);
    let mut beta_coords = Vec::with_capacity(n);
    for j in 0..n {
        let p = leading_part(n, j)
            .compose(&h_in_z)
            .ok_or_else(|| Error::Internal("substitution failed".into()))?
            .named("a");
        let mut beta = Poly::zero(n).named("a");
        for (e, coeff) in p.terms() {
            let violates = (0..n).any(|i| i != j && i64::from(e[i]) > -c.a(i, j));
            if violates {
                if e[j] > 0 {
                    return Err(Error::DatumUnsolvable(format!(
                        "monomial {} of b{} involves its own coordinate",
                        Poly::monomial(e.clone(), coeff.clone()).named("a"),
                        j + 1
                    )));
                }
                beta = &beta - &Poly::monomial(e.clone(), coeff.clone()).named("a");
            }
        }
        beta_coords.push(beta);
    }
    let beta: Vec<Poly> = beta_coords
        .iter()
        .map(|bz| {
            bz.compose(&z_in_h)
                .map(|p| p.named("h"))
                .ok_or_else(|| Error::Internal("substitution failed".into()))
        })
        .collect::<Result<_>>()?;
    let b = (0..n).map(|j| &leading_part(n, j) + &beta[j]).collect();
    Ok(ClassicalDatum {
        cartan: c.clone(),
        aux: aux.clone(),
        ctx,
        alpha: alpha.clone(),
        beta_coords,
        beta,
        b,
        method: BetaMethod::DegreeBound,
    })
}

/// Exponent vectors of total degree at most `deg` in `n` variables.
pub fn monomials_up_to(n: usize, deg: i32) -> Vec<Exponent> {
    fn rec(n: usize, deg: i32, prefix: &mut Vec<i32>, out: &mut Vec<Exponent>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=deg {
            prefix.push(k);
            rec(n, deg - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, deg, &mut Vec::new(), &mut out);
    out
}

/// Quadratic `beta_j` with `D_j(beta_j) = 0` and
/// `D_i^{1-a_ij}(P_j + beta_j) = 0`, as the reduced-echelon solution with
/// free coefficients zero.
pub fn linear_beta(c: &CartanMatrix, ctx: &ModelContext<ClassicalCoeff>, j: usize) -> Result<Poly> {
    let n = c.n();
    let basis = monomials_up_to(n, 2);
    let basis_polys: Vec<ClassicalCoeff> = basis
        .iter()
        .map(|e| PolyFrac::from_poly(Poly::monomial(e.clone(), Rational::one()).named("h")))
        .collect();
    let p = PolyFrac::from_poly(leading_part(n, j));
    // each constraint is (operator on the unknowns, image of P_j)
    let mut blocks: Vec<(Vec<Poly>, Poly)> = Vec::new();
    for i in 0..n {
        if i == j {
            let imgs = basis_polys
                .iter()
                .map(|m| as_poly(&ctx.twisted_diff(j, m)?))
                .collect::<Result<Vec<_>>>()?;
            blocks.push((imgs, Poly::zero(n)));
        } else {
            let k = (1 - c.a(i, j)) as u32;
            let imgs = basis_polys
                .iter()
                .map(|m| as_poly(&apply_d_power(ctx, i, k, m)?))
                .collect::<Result<Vec<_>>>()?;
            blocks.push((imgs, as_poly(&apply_d_power(ctx, i, k, &p)?)?));
        }
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (imgs, target) in &blocks {
        let mut exps: Vec<&Exponent> = imgs.iter().flat_map(|p| p.terms().keys()).collect();
        exps.extend(target.terms().keys());
        exps.sort();
        exps.dedup();
        for e in exps {
            rows.push(imgs.iter().map(|p| p.coeff(e)).collect());
            rhs.push(-target.coeff(e));
        }
    }
    let sol = solve_linear(&rows, &rhs)
        .ok_or_else(|| Error::DatumUnsolvable(format!("no quadratic correction for b{}", j + 1)))?;
    Ok(Poly::from_terms(n, basis.into_iter().zip(sol)).named("h"))
}

fn solve_beta_linear(
    c: &CartanMatrix,
    aux: &CartanAux,
    alpha: &Alpha,
    ctx: Arc<ModelContext<ClassicalCoeff>>,
) -> Result<ClassicalDatum> {
    let n = c.n();
    let beta: Vec<Poly> = (0..n).map(|j| linear_beta(c, &ctx, j)).collect::<Result<_>>()?;
    let h_in_z = h_to_z(aux)?;
    let beta_coords = beta
        .iter()
        .map(|p| {
            p.compose(&h_in_z)
                .map(|q| q.named("a"))
                .ok_or_else(|| Error::Internal("substitution failed".into()))
        })
        .collect::<Result<_>>()?;
    let b = (0..n).map(|j| &leading_part(n, j) + &beta[j]).collect();
    Ok(ClassicalDatum {
        cartan: c.clone(),
        aux: aux.clone(),
        ctx,
        alpha: alpha.clone(),
        beta_coords,
        beta,
        b,
        method: BetaMethod::Linear,
    })
}

impl ClassicalDatum {
    /// Canonical datum of `c`.
    pub fn canonical(c: &CartanMatrix, aux: &CartanAux) -> Result<Self> {
        let alpha = build_alpha(c, aux);
        solve_beta(c, aux, &alpha)
    }

    /// Same datum with caller-chosen corrections (for negative controls).
    pub fn with_beta(&self, beta: Vec<Poly>) -> Result<Self> {
        let n = self.cartan.n();
        if beta.len() != n {
            return Err(Error::Shape("one correction per index".into()));
        }
        let h_in_z = h_to_z(&self.aux)?;
        let beta_coords = beta
            .iter()
            .map(|p| {
                p.compose(&h_in_z)
                    .map(|q| q.named("a"))
                    .ok_or_else(|| Error::Internal("substitution failed".into()))
            })
            .collect::<Result<_>>()?;
        let b = (0..n).map(|j| &leading_part(n, j) + &beta[j]).collect();
        Ok(ClassicalDatum {
            beta_coords,
            beta,
            b,
            method: BetaMethod::Override,
            ..self.clone()
        })
    }

    /// All corrections set to zero.
    pub fn with_zero_beta(&self) -> Result<Self> {
        let n = self.cartan.n();
        self.with_beta(vec![Poly::zero(n).named("h"); n])
    }

    pub fn b_coeff(&self, j: usize) -> ClassicalCoeff {
        PolyFrac::from_poly(self.b[j].clone())
    }
}

/// Evaluates `D_j(b_j) = h_j`, `D_i D_j(b_j) = a_ji` and
/// `D_i^{1-a_ij}(b_j) = 0` for `i != j`.
pub fn check_bound_classical(datum: &ClassicalDatum) -> Result<Vec<Entry>> {
    let c = &datum.cartan;
    let ctx = &datum.ctx;
    let n = c.n();
    let mut out = Vec::new();
    for j in 0..n {
        let bj = datum.b_coeff(j);
        let dj = ctx.twisted_diff(j, &bj)?;
        let res = dj.minus(&PolyFrac::var(n, j).named("h"));
        out.push(Entry::new(
            format!("D{j1}(b{j1}) = h{j1}", j1 = j + 1),
            &res,
            res.is_zero(),
        ));
        for i in 0..n {
            let v = ctx.twisted_diff(i, &dj)?;
            let res = v.minus(&PolyFrac::constant(n, int(c.a(j, i))));
            out.push(Entry::new(
                format!("D{}D{}(b{}) = a{}{}", i + 1, j + 1, j + 1, j + 1, i + 1),
                &res,
                res.is_zero(),
            ));
        }
    }
    for j in 0..n {
        for i in 0..n {
            if i == j {
                continue;
            }
            let k = (1 - c.a(i, j)) as u32;
            let res = apply_d_power(ctx, i, k, &datum.b_coeff(j))?;
            out.push(Entry::new(
                format!("D{}^{}(b{}) = 0", i + 1, k, j + 1),
                &res,
                res.is_zero(),
            ));
        }
    }
    Ok(out)
}

/// Outcome of the algebraic-independence test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullRank {
    pub independent: bool,
    pub jacobian_determinant: String,
    /// `witnessed` when the system is the coordinate system itself.
    pub birational_generation: String,
}

/// Jacobian criterion on a square polynomial system (characteristic 0).
pub fn full_rank_of_system(fs: &[Poly]) -> Result<FullRank> {
    let j = jacobian(fs)?;
    let det = determinant(&j)?;
    let n = fs.len();
    let identity = fs
        .iter()
        .enumerate()
        .all(|(i, f)| *f == Poly::var(n, i));
    Ok(FullRank {
        independent: !det.is_zero(),
        jacobian_determinant: det.named("h").to_string(),
        birational_generation: if identity { "witnessed" } else { "not decided" }.into(),
    })
}

/// Full-rank test for the datum's system `(D_1(b_1), ..., D_n(b_n))`.
pub fn check_full_rank(datum: &ClassicalDatum) -> Result<FullRank> {
    let fs = (0..datum.cartan.n())
        .map(|i| as_poly(&datum.ctx.twisted_diff(i, &datum.b_coeff(i))?))
        .collect::<Result<Vec<_>>>()?;
    full_rank_of_system(&fs)
}

#[cfg(test)]
mod tests;

//! The quantum datum `b_i = K_i^{-1}` over the torus, its binding conditions
//! under both readings of the divided differences, and the weights `omega_i`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanAux, CartanMatrix};
use crate::error::{Error, Result};
use crate::exact::{Coefficient, Field, MLaurent, One, QScalar, QuantumCoeff, Rational};
use crate::report::Entry;
use crate::skew::{ModelContext, SkewElem};

#[derive(Clone, Debug)]
pub struct QuantumDatum {
    pub cartan: CartanMatrix,
    pub aux: CartanAux,
    pub d: Vec<i64>,
    pub ctx: Arc<ModelContext<QuantumCoeff>>,
    pub b: Vec<QuantumCoeff>,
}

/// `K^e` with coefficient 1.
pub fn k_monomial(e: Vec<i32>) -> QuantumCoeff {
    MLaurent::monomial(e, QScalar::one()).named("K")
}

fn unit(n: usize, i: usize, k: i32) -> Vec<i32> {
    (0..n).map(|j| if i == j { k } else { 0 }).collect()
}

pub fn build_quantum_datum(c: &CartanMatrix, aux: &CartanAux) -> Result<QuantumDatum> {
    let n = c.n();
    let ctx = ModelContext::quantum(c, &aux.d)?;
    Ok(QuantumDatum {
        cartan: c.clone(),
        aux: aux.clone(),
        d: aux.d.clone(),
        ctx,
        b: (0..n).map(|i| k_monomial(unit(n, i, -1))).collect(),
    })
}

/// Both readings of the binding conditions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumBoundReport {
    /// `sigma_i(b_j) = q^{d_i a_ij} b_j`.
    pub scaling: Vec<Entry>,
    /// Divided differences built from `sigma_i`, for `i != j`.
    pub plain: Vec<Entry>,
    /// Operator products of `Ad(K_i^{-1} X_i)` on the image generators.
    pub localized: Vec<Entry>,
}

pub fn check_bound_quantum(
    datum: &QuantumDatum,
    e_images: &[SkewElem<QuantumCoeff>],
    f_images: Option<&[SkewElem<QuantumCoeff>]>,
) -> Result<QuantumBoundReport> {
    let c = &datum.cartan;
    let n = c.n();
    let d = &datum.d;
    let ctx = &datum.ctx;
    let mut rep = QuantumBoundReport::default();
    for i in 0..n {
        for j in 0..n {
            let lhs = datum.b[j].apply_endo(ctx.sigma(i))?;
            let rhs = datum.b[j].scale(&QScalar::q_pow(d[i] * c.a(i, j)));
            let res = &lhs - &rhs;
            rep.scaling.push(Entry::new(
                format!("sigma{}(b{}) = q^({}) b{}", i + 1, j + 1, d[i] * c.a(i, j), j + 1),
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
            let m = (1 - c.a(i, j)) as u32;
            let res = ctx.q_divided_diff(i, m, &datum.b[j], d)?;
            rep.plain.push(Entry::new(
                format!("D{}^[{}](b{}) = 0  (a{}{} = {})", i + 1, m, j + 1, i + 1, j + 1, c.a(i, j)),
                &res,
                res.is_zero(),
            ));
        }
    }
    rep.localized = localized_conditions(datum, e_images, "E", -1)?;
    if let Some(f) = f_images {
        rep.localized.extend(localized_conditions(datum, f, "F", 1)?);
    }
    Ok(rep)
}

/// `Ad(K_j^{-1} X_j)(K_i) = q^{sign d_i a_ij} K_i` for all `i, j` and
/// `prod_{l=0}^{-a_ij} (Ad(K_i^{-1} X_i) - q^{2 l d_i})(X_j) = 0` for `i != j`.
pub fn localized_conditions(
    datum: &QuantumDatum,
    images: &[SkewElem<QuantumCoeff>],
    family: &str,
    sign: i64,
) -> Result<Vec<Entry>> {
    let c = &datum.cartan;
    let n = c.n();
    let d = &datum.d;
    let ctx = &datum.ctx;
    if images.len() != n {
        return Err(Error::Shape(format!("{} images for rank {n}", images.len())));
    }
    let twisted: Vec<SkewElem<QuantumCoeff>> = (0..n)
        .map(|j| SkewElem::coeff(ctx, k_monomial(unit(n, j, -1))).mul(&images[j]))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let ki = SkewElem::coeff(ctx, k_monomial(unit(n, i, 1)));
            let (lhs, _) = twisted[j].conjugate(&ki)?;
            let rhs = ki.scale(&QScalar::q_pow(sign * d[i] * c.a(i, j)));
            let res = lhs.sub(&rhs)?;
            out.push(Entry::new(
                format!(
                    "Ad(K{j1}^-1 {family}{j1})(K{i1}) = q^({}) K{i1}",
                    sign * d[i] * c.a(i, j),
                    j1 = j + 1,
                    i1 = i + 1
                ),
                &res,
                res.is_zero(),
            ));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut cur = images[j].clone();
            for l in 0..=(-c.a(i, j)) {
                let (ad, _) = twisted[i].conjugate(&cur)?;
                cur = ad.sub(&cur.scale(&QScalar::q_pow(2 * l * d[i])))?;
            }
            out.push(Entry::new(
                format!(
                    "prod_(l=0..{}) (Ad(K{i1}^-1 {family}{i1}) - q^(2l*{})) ({family}{}) = 0",
                    -c.a(i, j),
                    d[i],
                    j + 1,
                    i1 = i + 1
                ),
                &cur,
                cur.is_zero(),
            ));
        }
    }
    Ok(out)
}

/// Scaling exponents `e_ij` with `sigma_(m_j)(omega_i) = q^(e_ij) omega_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaScaling {
    pub observed: Vec<Vec<i64>>,
    /// `g_i delta_ij` on the pairing block, 0 elsewhere.
    pub stated: Vec<Vec<i64>>,
    /// `d_i g_i delta_ij` on the pairing block, 0 elsewhere.
    pub corrected: Vec<Vec<i64>>,
}

impl OmegaScaling {
    pub fn stated_holds(&self) -> bool {
        self.observed == self.stated
    }

    pub fn corrected_holds(&self) -> bool {
        self.observed == self.corrected
    }

    pub fn entries(&self, corrected: bool) -> Vec<Entry> {
        let table = if corrected { &self.corrected } else { &self.stated };
        let mut out = Vec::new();
        for (i, row) in self.observed.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                let want = table[i][j];
                out.push(Entry::new(
                    format!("sigma along m{}(omega{}) = q^({want}) omega{}", j + 1, i + 1, i + 1),
                    if e == want { "0".to_string() } else { format!("observed q^({e})") },
                    e == want,
                ));
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Omega {
    pub omega: Vec<QuantumCoeff>,
    /// `omega_i = prod_u b_u^(exponents[i][u])`.
    pub exponents: Vec<Vec<i64>>,
    pub scaling: OmegaScaling,
}

/// `omega_i = prod_u b_u^{c_ui g_i}` on the pairing block (in general
/// `g_i d_i D^{-1} q_i`, which is column `i` of `Q` times `g_i` at corank 0);
/// central `K^{-m'}` for each complement direction `m'`.
pub fn build_omega(datum: &QuantumDatum) -> Result<Omega> {
    let aux = &datum.aux;
    let n = datum.cartan.n();
    let r = aux.rank;
    let mut exponents = Vec::with_capacity(n);
    for i in 0..n {
        if i < r {
            let q = &aux.dual_pairs[i].q;
            let mut e = Vec::with_capacity(n);
            for u in 0..n {
                let v = &q[u] * Rational::from_i64(aux.g[i] * aux.d[i]) / Rational::from_i64(aux.d[u]);
                if !v.is_integer() {
                    return Err(Error::Internal(format!(
                        "non-integer exponent {v} for b{} in omega{}",
                        u + 1,
                        i + 1
                    )));
                }
                e.push(i64::try_from(v.to_integer()).map_err(|_| Error::Internal("exponent overflow".into()))?);
            }
            exponents.push(e);
        } else {
            exponents.push(aux.torus_complement[i - r].clone());
        }
    }
    let omega: Vec<QuantumCoeff> = exponents
        .iter()
        .map(|e| k_monomial(e.iter().map(|&x| -(x as i32)).collect()))
        .collect();
    let mut observed = vec![vec![0i64; n]; n];
    for (i, w) in omega.iter().enumerate() {
        for (j, row) in observed[i].iter_mut().enumerate().take(n) {
            let img = datum.ctx.apply_sigma(aux.direction(j), w)?;
            let ratio = (&img * &w.monomial_inverse().expect("monomial"))
                .constant_value()
                .and_then(|s| s.as_monomial())
                .ok_or_else(|| Error::Internal("omega scaling is not a power of q".into()))?;
            if !ratio.0.is_one() {
                return Err(Error::Internal("omega scaling has a non-unit coefficient".into()));
            }
            *row = ratio.1;
        }
    }
    let table = |scale: &dyn Fn(usize) -> i64| -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j && i < r { scale(i) } else { 0 }).collect())
            .collect()
    };
    let scaling = OmegaScaling {
        observed,
        stated: table(&|i| aux.g[i]),
        corrected: table(&|i| aux.g[i] * aux.d[i]),
    };
    Ok(Omega {
        omega,
        exponents,
        scaling,
    })
}

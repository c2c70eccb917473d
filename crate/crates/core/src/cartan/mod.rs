//! Generalized Cartan matrices and the matrix-side data derived from them.

mod catalog;
mod smith;

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, Field, Rational};

pub use catalog::{catalog, catalog_names, FINITE_TYPE};
pub use smith::{smith_normal_form, Smith};

/// A validated generalized Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// `C m` for an integer vector `m`.
    pub fn apply(&self, m: &[i64]) -> Vec<i64> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(m).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `q^T C m`.
    pub fn pair(&self, q: &[Rational], m: &[i64]) -> Rational {
        let cm = self.apply(m);
        q.iter()
            .zip(&cm)
            .fold(Rational::zero(), |acc, (x, y)| acc + x * int(*y))
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        f.write_str(&rows.join("; "))
    }
}

/// Checks the generalized Cartan matrix axioms.
pub fn validate_gcm(m: Vec<Vec<i64>>) -> Result<CartanMatrix> {
    let n = m.len();
    if n == 0 {
        return Err(Error::InvalidMatrix("empty matrix".into()));
    }
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidMatrix(format!(
                "not square: row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
    }
    for i in 0..n {
        if m[i][i] != 2 {
            return Err(Error::InvalidMatrix(format!(
                "diagonal entry ({},{}) is {}, must be 2",
                i + 1,
                i + 1,
                m[i][i]
            )));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if m[i][j] > 0 {
                return Err(Error::InvalidMatrix(format!(
                    "positive off-diagonal entry {} at ({},{})",
                    m[i][j],
                    i + 1,
                    j + 1
                )));
            }
            if (m[i][j] == 0) != (m[j][i] == 0) {
                let (r, c) = if m[i][j] == 0 { (i, j) } else { (j, i) };
                return Err(Error::InvalidMatrix(format!(
                    "zero-symmetry violated at ({},{}): a({},{}) = 0 but a({},{}) = {}",
                    r + 1,
                    c + 1,
                    r + 1,
                    c + 1,
                    c + 1,
                    r + 1,
                    m[c][r]
                )));
            }
        }
    }
    Ok(CartanMatrix { entries: m })
}

/// Minimal positive integer `d` with `d_i a_ij = d_j a_ji`, per connected
/// component of the Dynkin graph.
pub fn symmetrize(c: &CartanMatrix) -> Result<Vec<i64>> {
    let n = c.n();
    let mut ratio: Vec<Option<Rational>> = vec![None; n];
    let mut d = vec![0i64; n];
    for root in 0..n {
        if ratio[root].is_some() {
            continue;
        }
        let mut component = vec![root];
        ratio[root] = Some(Rational::one());
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let ri = ratio[i].clone().expect("visited");
            for j in 0..n {
                if j == i || c.a(i, j) == 0 {
                    continue;
                }
                // d_j = d_i a_ij / a_ji
                let rj = &ri * Rational::new(BigInt::from(c.a(i, j)), BigInt::from(c.a(j, i)));
                match &ratio[j] {
                    Some(existing) if *existing != rj => {
                        return Err(Error::NotSymmetrizable(format!(
                            "inconsistent ratio around index {}",
                            j + 1
                        )));
                    }
                    Some(_) => {}
                    None => {
                        ratio[j] = Some(rj);
                        component.push(j);
                        queue.push_back(j);
                    }
                }
            }
        }
        let l = component
            .iter()
            .fold(BigInt::one(), |acc, &i| acc.lcm(ratio[i].as_ref().unwrap().denom()));
        let scaled: Vec<BigInt> = component
            .iter()
            .map(|&i| (ratio[i].as_ref().unwrap() * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&i, v) in component.iter().zip(scaled) {
            d[i] = (v / &g)
                .to_i64()
                .ok_or_else(|| Error::NotSymmetrizable("symmetrizer overflows i64".into()))?;
        }
    }
    Ok(d)
}

/// Checks `d_i a_ij = d_j a_ji` and positivity.
pub fn check_symmetrizer(c: &CartanMatrix, d: &[i64]) -> Result<()> {
    if d.len() != c.n() || d.iter().any(|&x| x <= 0) {
        return Err(Error::NotSymmetrizable(format!(
            "symmetrizer must be {} positive integers",
            c.n()
        )));
    }
    for i in 0..c.n() {
        for j in 0..c.n() {
            if d[i] * c.a(i, j) != d[j] * c.a(j, i) {
                return Err(Error::NotSymmetrizable(format!(
                    "d_{} a_{}{} != d_{} a_{}{}",
                    i + 1,
                    i + 1,
                    j + 1,
                    j + 1,
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    Ok(())
}

/// Rank by fraction-free elimination, pivoting on the first entry of
/// maximal absolute value in each column.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let mut best: Option<usize> = None;
        for i in r..nrows {
            if !a[i][col].is_zero() && best.is_none_or(|b| a[i][col].abs() > a[b][col].abs()) {
                best = Some(i);
            }
        }
        let Some(p) = best else { continue };
        a.swap(r, p);
        for i in r + 1..nrows {
            for j in col + 1..ncols {
                let v = &a[r][col] * &a[i][j] - &a[i][col] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    r
}

pub fn rank_corank(c: &CartanMatrix) -> (usize, usize) {
    let r = rank(c.rows());
    (r, c.n() - r)
}

/// Exact inverse over Q by Gauss-Jordan; `None` if singular.
pub fn inverse(rows: &[Vec<i64>]) -> Option<Vec<Vec<Rational>>> {
    let n = rows.len();
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v: Vec<Rational> = r.iter().map(|&x| int(x)).collect();
            v.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            v
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot = a[col].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// One element of the dual pairing `q_i^T C m_j = delta_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPair {
    pub q: Vec<Rational>,
    pub m: Vec<i64>,
}

/// Quasi-inverse data of a Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiInverse {
    /// Pairing rows followed by left-kernel rows.
    pub q_matrix: Vec<Vec<Rational>>,
    pub left_kernel: Vec<Vec<Rational>>,
    pub dual_pairs: Vec<DualPair>,
    pub torus_complement: Vec<Vec<i64>>,
}

/// Corank 0: `C^{-1}` with the standard basis. Otherwise the pairing comes
/// from a Smith form `P C R = S`: `q_i = P_i / s_i`, `m_j = R e_j`, kernel
/// rows of `P` and kernel columns of `R`.
pub fn quasi_inverse(c: &CartanMatrix) -> QuasiInverse {
    let n = c.n();
    if let Some(inv) = inverse(c.rows()) {
        let dual_pairs = (0..n)
            .map(|i| DualPair {
                q: inv[i].clone(),
                m: (0..n).map(|j| i64::from(i == j)).collect(),
            })
            .collect();
        return QuasiInverse {
            q_matrix: inv,
            left_kernel: Vec::new(),
            dual_pairs,
            torus_complement: Vec::new(),
        };
    }
    let s = smith_normal_form(c.rows());
    let r = s.rank;
    let col = |j: usize| -> Vec<i64> { (0..n).map(|u| s.right[u][j]).collect() };
    let dual_pairs: Vec<DualPair> = (0..r)
        .map(|i| DualPair {
            q: s.left[i]
                .iter()
                .map(|&x| Rational::new(BigInt::from(x), BigInt::from(s.diagonal[i])))
                .collect(),
            m: col(i),
        })
        .collect();
    let left_kernel: Vec<Vec<Rational>> = (r..n)
        .map(|i| s.left[i].iter().map(|&x| int(x)).collect())
        .collect();
    let torus_complement = (r..n).map(col).collect();
    let q_matrix = dual_pairs
        .iter()
        .map(|p| p.q.clone())
        .chain(left_kernel.iter().cloned())
        .collect();
    QuasiInverse {
        q_matrix,
        left_kernel,
        dual_pairs,
        torus_complement,
    }
}

/// `g_j = lcm` of the denominators in column `j`.
pub fn lattice_scaling(q: &[Vec<Rational>]) -> Vec<i64> {
    let n = q.first().map_or(0, |r| r.len());
    (0..n)
        .map(|j| {
            q.iter()
                .fold(BigInt::one(), |acc, row| acc.lcm(row[j].denom()))
                .to_i64()
                .expect("lattice scaling fits i64")
        })
        .collect()
}

/// Everything the constructions need from `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanAux {
    pub d: Vec<i64>,
    pub rank: usize,
    pub corank: usize,
    pub q_matrix: Vec<Vec<Rational>>,
    pub left_kernel: Vec<Vec<Rational>>,
    pub dual_pairs: Vec<DualPair>,
    pub torus_complement: Vec<Vec<i64>>,
    pub g: Vec<i64>,
}

impl CartanAux {
    pub fn derive(c: &CartanMatrix) -> Result<Self> {
        Self::derive_with(c, None)
    }

    /// Derives the data, optionally with a user-supplied symmetrizer.
    pub fn derive_with(c: &CartanMatrix, d: Option<Vec<i64>>) -> Result<Self> {
        let d = match d {
            Some(d) => {
                check_symmetrizer(c, &d)?;
                d
            }
            None => symmetrize(c)?,
        };
        let (rank, corank) = rank_corank(c);
        let qi = quasi_inverse(c);
        let g = lattice_scaling(&qi.q_matrix);
        Ok(CartanAux {
            d,
            rank,
            corank,
            q_matrix: qi.q_matrix,
            left_kernel: qi.left_kernel,
            dual_pairs: qi.dual_pairs,
            torus_complement: qi.torus_complement,
            g,
        })
    }

    /// Torus direction paired with index `i` (pairing block first, then the
    /// complement directions).
    pub fn direction(&self, i: usize) -> &[i64] {
        if i < self.rank {
            &self.dual_pairs[i].m
        } else {
            &self.torus_complement[i - self.rank]
        }
    }
}

//! Factoring logged denominators into the localizing set: shifts of the
//! bound elements `b_j`, of the Cartan variables `h_i`, and torus units.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::datum::{ClassicalDatum, Poly};
use crate::error::Result;
use crate::exact::{ClassicalCoeff, PolyFrac, QuantumCoeff};
use crate::skew::{fmt_torus, DenomLog, TorusExp};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Distinct factors found, e.g. `b2` or `sigma^(t1)(h1)`.
    pub factors: Vec<String>,
    /// Logged elements with a factor outside the localizing set.
    pub unresolved: Vec<String>,
    pub complete: bool,
}

fn shift_box(n: usize, radius: i64) -> Vec<TorusExp> {
    let mut out: Vec<TorusExp> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|m| {
                (-radius..=radius).map(move |k| {
                    let mut m = m.clone();
                    m.push(k);
                    m
                })
            })
            .collect();
    }
    out.sort_by_key(|m| (m.iter().map(|k| k.abs()).sum::<i64>(), m.clone()));
    out
}

fn shifted_name(base: &str, m: &[i64]) -> String {
    if m.iter().all(|&k| k == 0) {
        base.to_string()
    } else {
        format!("sigma^({})({base})", fmt_torus(m))
    }
}

/// Trial division of every logged element by `sigma^m(b_j)` and
/// `sigma^m(h_i)` for `m` in a box of the given radius.
pub fn classical_witness(
    log: &DenomLog<ClassicalCoeff>,
    datum: &ClassicalDatum,
    radius: i64,
) -> Result<Witness> {
    let n = datum.cartan.n();
    let ctx = &datum.ctx;
    let mut candidates: Vec<(String, Poly)> = Vec::new();
    let mut seen: Vec<Poly> = Vec::new();
    let bases: Vec<(String, ClassicalCoeff)> = (0..n)
        .map(|j| (format!("b{}", j + 1), datum.b_coeff(j)))
        .chain((0..n).map(|i| (format!("h{}", i + 1), PolyFrac::var(n, i).named("h"))))
        .collect();
    for (name, f) in &bases {
        for m in shift_box(n, radius) {
            let g = ctx.apply_sigma(&m, f)?;
            let p = g.numerator().monic();
            if p.is_constant() || seen.contains(&p) {
                continue;
            }
            seen.push(p.clone());
            candidates.push((shifted_name(name, &m), p));
        }
    }
    let mut factors = BTreeSet::new();
    let mut unresolved = Vec::new();
    for f in &log.entries {
        for part in [f.numerator(), f.denominator()] {
            let mut p = part.clone();
            'outer: while !p.is_constant() {
                for (name, c) in &candidates {
                    if let Some(q) = p.div_exact(c) {
                        factors.insert(name.clone());
                        p = q;
                        continue 'outer;
                    }
                }
                unresolved.push(format!("{p} (in {f})"));
                break;
            }
        }
    }
    Ok(Witness {
        complete: unresolved.is_empty(),
        factors: factors.into_iter().collect(),
        unresolved,
    })
}

/// Quantum logs must consist of torus units `K^e`.
pub fn quantum_witness(log: &DenomLog<QuantumCoeff>) -> Witness {
    let mut factors = BTreeSet::new();
    let mut unresolved = Vec::new();
    for f in &log.entries {
        match f.as_monomial() {
            Some(_) => {
                factors.insert(format!("unit {}", f));
            }
            None => unresolved.push(f.to_string()),
        }
    }
    Witness {
        complete: unresolved.is_empty(),
        factors: factors.into_iter().collect(),
        unresolved,
    }
}

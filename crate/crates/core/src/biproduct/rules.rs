//! Rule sets for the classical and quantum enveloping algebras, oriented by
//! the graded order with letter precedence `E < H/K < F`.

use crate::cartan::{check_symmetrizer, CartanMatrix};
use crate::error::Result;
use crate::exact::{int, Field, QScalar, Rational};
use crate::morphisms::serre_element;
use crate::ncpoly::{Alphabet, Letter, NCPoly, Word};

use super::{Mode, RewriteSystem, Rule};

fn e_name(i: usize) -> String {
    format!("E{}", i + 1)
}

fn f_name(i: usize) -> String {
    format!("F{}", i + 1)
}

/// Turns `poly = 0` into a rule rewriting its largest word.
pub(super) fn orient<S: Field>(label: String, poly: &NCPoly<S>) -> Rule<S> {
    let (lead, c) = poly.leading().expect("nonzero relation");
    let lead = lead.clone();
    let inv = c.inv().expect("nonzero leading coefficient");
    let mut rhs = NCPoly::zero();
    for (w, x) in poly.terms() {
        if *w != lead {
            rhs.add_term(w.clone(), -(x.clone() * inv.clone()));
        }
    }
    Rule { label, lhs: lead, rhs }
}

fn w(ls: &[Letter]) -> Word {
    Word(ls.to_vec())
}

fn serre_rules<S: Field>(
    c: &CartanMatrix,
    ab: &Alphabet,
    name: fn(usize) -> String,
    twist: impl Fn(usize, usize, i64) -> S,
) -> Vec<Rule<S>> {
    let n = c.n();
    let mut out: Vec<Rule<S>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let steps = 1 - c.a(i, j);
            let twists: Vec<S> = (0..steps).map(|k| twist(i, j, k)).collect();
            let x = NCPoly::letters(&[ab.letter(&name(i))]);
            let y = NCPoly::letters(&[ab.letter(&name(j))]);
            let rule = orient(
                format!("serre({},{})", name(i), name(j)),
                &serre_element(&x, &y, &twists),
            );
            if !out.iter().any(|r| r.lhs == rule.lhs) {
                out.push(rule);
            }
        }
    }
    out
}

/// `H_j H_i -> H_i H_j`, `H_i E_j -> E_j H_i + a_ij E_j`,
/// `F_j H_i -> H_i F_j + a_ij F_j`, `F_j E_i -> E_i F_j - delta_ij H_i`,
/// and both Serre families.
pub fn classical_rules(c: &CartanMatrix) -> RewriteSystem<Rational> {
    let n = c.n();
    let ab = Alphabet::new(
        (0..n)
            .map(e_name)
            .chain((1..=n).map(|i| format!("H{i}")))
            .chain((0..n).map(f_name))
            .collect(),
    );
    let e = |i: usize| ab.letter(&e_name(i));
    let h = |i: usize| ab.letter(&format!("H{}", i + 1));
    let f = |i: usize| ab.letter(&f_name(i));
    let mut rules = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            rules.push(Rule::new(w(&[h(j), h(i)]), NCPoly::letters(&[h(i), h(j)])));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let a = int(c.a(i, j));
            rules.push(Rule::new(
                w(&[h(i), e(j)]),
                NCPoly::letters(&[e(j), h(i)]).plus(&NCPoly::letters(&[e(j)]).scaled(&a)),
            ));
            rules.push(Rule::new(
                w(&[f(j), h(i)]),
                NCPoly::letters(&[h(i), f(j)]).plus(&NCPoly::letters(&[f(j)]).scaled(&a)),
            ));
        }
    }
    let cartan: Vec<NCPoly<Rational>> = (0..n).map(|i| NCPoly::letters(&[h(i)])).collect();
    for i in 0..n {
        for j in 0..n {
            let mut rhs = NCPoly::letters(&[e(i), f(j)]);
            if i == j {
                rhs = rhs.minus(&cartan[i]);
            }
            rules.push(Rule::new(w(&[f(j), e(i)]), rhs));
        }
    }
    let one = |_: usize, _: usize, _: i64| int(1);
    rules.extend(serre_rules(c, &ab, e_name, one));
    rules.extend(serre_rules(c, &ab, f_name, one));
    let rules = rules.into_iter().map(|r| r.labelled(&ab)).collect();
    RewriteSystem::new(Mode::Classical, c.clone(), vec![1; n], ab, rules, cartan)
}

/// `K^{+-1}` inverse and commutation rules, `K_i E_j -> q^(d_i a_ij) E_j K_i`,
/// `F_j K_i -> q^(d_i a_ij) K_i F_j` (and the `K^-1` versions),
/// `F_j E_i -> E_i F_j - delta_ij (K_i - K_i^-1)/(q^d_i - q^-d_i)`, and both
/// q-Serre families.
pub fn quantum_rules(c: &CartanMatrix, d: &[i64]) -> Result<RewriteSystem<QScalar>> {
    check_symmetrizer(c, d)?;
    let n = c.n();
    let ab = Alphabet::new(
        (0..n)
            .map(e_name)
            .chain((1..=n).flat_map(|i| [format!("K{i}"), format!("K{i}^-1")]))
            .chain((0..n).map(f_name))
            .collect(),
    );
    let e = |i: usize| ab.letter(&e_name(i));
    let f = |i: usize| ab.letter(&f_name(i));
    // (letter, index, power)
    let ks: Vec<(Letter, usize, i64)> = (0..n)
        .flat_map(|i| {
            [
                (ab.letter(&format!("K{}", i + 1)), i, 1),
                (ab.letter(&format!("K{}^-1", i + 1)), i, -1),
            ]
        })
        .collect();
    let mut rules = Vec::new();
    for &(x, i, _) in &ks {
        for &(y, j, _) in &ks {
            if i == j && x != y {
                rules.push(Rule::new(w(&[x, y]), NCPoly::one()));
            } else if i != j && x > y {
                rules.push(Rule::new(w(&[x, y]), NCPoly::letters(&[y, x])));
            }
        }
    }
    for &(k, i, p) in &ks {
        for j in 0..n {
            let s = QScalar::q_pow(p * d[i] * c.a(i, j));
            rules.push(Rule::new(w(&[k, e(j)]), NCPoly::letters(&[e(j), k]).scaled(&s)));
            rules.push(Rule::new(w(&[f(j), k]), NCPoly::letters(&[k, f(j)]).scaled(&s)));
        }
    }
    let cartan: Vec<NCPoly<QScalar>> = (0..n)
        .map(|i| {
            let denom = QScalar::q_pow(d[i]) - QScalar::q_pow(-d[i]);
            NCPoly::letters(&[ab.letter(&format!("K{}", i + 1))])
                .minus(&NCPoly::letters(&[ab.letter(&format!("K{}^-1", i + 1))]))
                .scaled(&denom.inv().expect("q^d - q^-d is nonzero"))
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            let mut rhs = NCPoly::letters(&[e(i), f(j)]);
            if i == j {
                rhs = rhs.minus(&cartan[i]);
            }
            rules.push(Rule::new(w(&[f(j), e(i)]), rhs));
        }
    }
    rules.extend(serre_rules(c, &ab, e_name, |i, j, k| {
        QScalar::q_pow(d[i] * (c.a(i, j) + 2 * k))
    }));
    rules.extend(serre_rules(c, &ab, f_name, |i, j, k| {
        QScalar::q_pow(-d[i] * (c.a(i, j) + 2 * k))
    }));
    let rules = rules.into_iter().map(|r| r.labelled(&ab)).collect();
    Ok(RewriteSystem::new(Mode::Quantum, c.clone(), d.to_vec(), ab, rules, cartan))
}

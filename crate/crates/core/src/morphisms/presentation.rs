//! Finite presentations: an alphabet of generators plus defining relations.

use serde::{Deserialize, Serialize};

use crate::cartan::CartanMatrix;
use crate::exact::{int, Field, QScalar, Rational};
use crate::ncpoly::{Alphabet, Letter, NCPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    /// Generators of one family commute.
    Commutation,
    /// Torus or Cartan part acting on root vectors.
    Weight,
    /// (q-)Serre relations.
    Serre,
    /// `K K^-1 = 1`.
    Inverse,
    /// `[x_i, y_j] = delta_ij` and its q-analogue.
    Heisenberg,
    /// Central generators.
    Central,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Relation<S> {
    pub label: String,
    pub kind: RelationKind,
    /// The relation reads `poly = 0`.
    pub poly: NCPoly<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation<S> {
    pub name: String,
    pub alphabet: Alphabet,
    pub relations: Vec<Relation<S>>,
}

impl<S: Field> Presentation<S> {
    pub fn letter(&self, name: &str) -> Letter {
        self.alphabet.letter(name)
    }

    fn gen(&self, name: &str) -> NCPoly<S> {
        NCPoly::letters(&[self.letter(name)])
    }

    fn push(&mut self, label: String, kind: RelationKind, poly: NCPoly<S>) {
        self.relations.push(Relation { label, kind, poly });
    }

    pub fn relations_of(&self, kind: RelationKind) -> impl Iterator<Item = &Relation<S>> {
        self.relations.iter().filter(move |r| r.kind == kind)
    }
}

/// `x y - c_0 y x`, then `x (.) - c_1 (.) x`, and so on, one twist per step.
pub fn serre_element<S: Field>(x: &NCPoly<S>, y: &NCPoly<S>, twists: &[S]) -> NCPoly<S> {
    twists
        .iter()
        .fold(y.clone(), |cur, t| x.twisted_commutator(&cur, t))
}

fn names(prefix: &str, n: usize) -> impl Iterator<Item = String> + '_ {
    (1..=n).map(move |i| format!("{prefix}{i}"))
}

fn classical_borel(c: &CartanMatrix, root: &str, sign: i64) -> Presentation<Rational> {
    let n = c.n();
    let alphabet = Alphabet::new(names("H", n).chain(names(root, n)).collect());
    let mut p = Presentation {
        name: format!("classical {} Borel", if sign > 0 { "upper" } else { "lower" }),
        alphabet,
        relations: Vec::new(),
    };
    let h = |i: usize| format!("H{}", i + 1);
    let x = |i: usize| format!("{root}{}", i + 1);
    for i in 0..n {
        for j in i + 1..n {
            let rel = p.gen(&h(i)).commutator(&p.gen(&h(j)));
            p.push(format!("[H{}, H{}] = 0", i + 1, j + 1), RelationKind::Commutation, rel);
        }
    }
    for i in 0..n {
        for j in 0..n {
            let w = sign * c.a(i, j);
            let rel = p
                .gen(&h(i))
                .commutator(&p.gen(&x(j)))
                .minus(&p.gen(&x(j)).scaled(&int(w)));
            p.push(
                format!("[H{}, {root}{}] = {w} {root}{}", i + 1, j + 1, j + 1),
                RelationKind::Weight,
                rel,
            );
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let k = (1 - c.a(i, j)) as usize;
            let rel = serre_element(&p.gen(&x(i)), &p.gen(&x(j)), &vec![int(1); k]);
            p.push(
                format!("ad({root}{})^{k}({root}{}) = 0", i + 1, j + 1),
                RelationKind::Serre,
                rel,
            );
        }
    }
    p
}

/// Generators `H_i, E_i`.
pub fn borel_upper(c: &CartanMatrix) -> Presentation<Rational> {
    classical_borel(c, "E", 1)
}

/// Generators `H_i, F_i`.
pub fn borel_lower(c: &CartanMatrix) -> Presentation<Rational> {
    classical_borel(c, "F", -1)
}

/// Commutation and centrality relations shared by both Weyl algebras.
fn weyl_skeleton<S: Field>(name: String, r: usize, n: usize, ell: usize) -> Presentation<S> {
    let alphabet = Alphabet::new(names("x", r).chain(names("y", n)).chain(names("z", ell)).collect());
    let mut p = Presentation {
        name,
        alphabet,
        relations: Vec::new(),
    };
    for (fam, len) in [("x", r), ("y", n)] {
        for i in 1..=len {
            for j in i + 1..=len {
                let rel = p.gen(&format!("{fam}{i}")).commutator(&p.gen(&format!("{fam}{j}")));
                p.push(format!("[{fam}{i}, {fam}{j}] = 0"), RelationKind::Commutation, rel);
            }
        }
    }
    let all: Vec<String> = p.alphabet.names().to_vec();
    for k in 1..=ell {
        let z = format!("z{k}");
        for g in &all {
            if *g == z || (g.starts_with('z') && g[1..].parse::<usize>().unwrap_or(0) < k) {
                continue;
            }
            let rel = p.gen(&z).commutator(&p.gen(g));
            p.push(format!("[{z}, {g}] = 0"), RelationKind::Central, rel);
        }
    }
    p
}

/// `A_{r,n}` with `ell` central generators: `[x_i, y_j] = delta_ij`.
pub fn weyl(r: usize, n: usize, ell: usize) -> Presentation<Rational> {
    let mut p = weyl_skeleton(format!("Weyl algebra A({r},{n}) with {ell} central"), r, n, ell);
    for i in 1..=r {
        for j in 1..=n {
            let x = p.gen(&format!("x{i}"));
            let y = p.gen(&format!("y{j}"));
            let mut rel = x.commutator(&y);
            if i == j {
                rel = rel.minus(&NCPoly::one());
            }
            p.push(format!("[x{i}, y{j}] = {}", u8::from(i == j)), RelationKind::Heisenberg, rel);
        }
    }
    p
}

/// Quantum Weyl algebra: `y_j x_i = q^(e_i delta_ij) x_i y_j`.
pub fn quantum_weyl(r: usize, n: usize, ell: usize, exponents: &[i64]) -> Presentation<QScalar> {
    let mut p = weyl_skeleton(
        format!("quantum Weyl algebra A({r},{n}) with {ell} central"),
        r,
        n,
        ell,
    );
    for i in 1..=r {
        for j in 1..=n {
            let e = if i == j { exponents[i - 1] } else { 0 };
            let x = p.gen(&format!("x{i}"));
            let y = p.gen(&format!("y{j}"));
            let rel = y.times(&x).minus(&x.times(&y).scaled(&QScalar::q_pow(e)));
            p.push(format!("y{j} x{i} = q^({e}) x{i} y{j}"), RelationKind::Heisenberg, rel);
        }
    }
    p
}

fn quantum_borel(c: &CartanMatrix, d: &[i64], root: &str, sign: i64) -> Presentation<QScalar> {
    let n = c.n();
    let alphabet = Alphabet::new(
        names("K", n)
            .chain((1..=n).map(|i| format!("K{i}^-1")))
            .chain(names(root, n))
            .collect(),
    );
    let mut p = Presentation {
        name: format!("quantum {} Borel", if sign > 0 { "upper" } else { "lower" }),
        alphabet,
        relations: Vec::new(),
    };
    for i in 1..=n {
        for j in i + 1..=n {
            let rel = p.gen(&format!("K{i}")).commutator(&p.gen(&format!("K{j}")));
            p.push(format!("[K{i}, K{j}] = 0"), RelationKind::Commutation, rel);
        }
        let k = p.gen(&format!("K{i}"));
        let kinv = p.gen(&format!("K{i}^-1"));
        p.push(format!("K{i} K{i}^-1 = 1"), RelationKind::Inverse, k.times(&kinv).minus(&NCPoly::one()));
        p.push(format!("K{i}^-1 K{i} = 1"), RelationKind::Inverse, kinv.times(&k).minus(&NCPoly::one()));
    }
    for i in 0..n {
        for j in 0..n {
            let e = sign * d[i] * c.a(i, j);
            let k = p.gen(&format!("K{}", i + 1));
            let x = p.gen(&format!("{root}{}", j + 1));
            let rel = k.times(&x).minus(&x.times(&k).scaled(&QScalar::q_pow(e)));
            p.push(
                format!("K{} {root}{} = q^({e}) {root}{} K{}", i + 1, j + 1, j + 1, i + 1),
                RelationKind::Weight,
                rel,
            );
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let steps = 1 - c.a(i, j);
            let twists: Vec<QScalar> = (0..steps)
                .map(|k| QScalar::q_pow(sign * d[i] * (c.a(i, j) + 2 * k)))
                .collect();
            let rel = serre_element(
                &p.gen(&format!("{root}{}", i + 1)),
                &p.gen(&format!("{root}{}", j + 1)),
                &twists,
            );
            p.push(
                format!("ad_q({root}{})^{steps}({root}{}) = 0", i + 1, j + 1),
                RelationKind::Serre,
                rel,
            );
        }
    }
    p
}

/// Generators `K_i^{+-1}, E_i`.
pub fn quantum_borel_upper(c: &CartanMatrix, d: &[i64]) -> Presentation<QScalar> {
    quantum_borel(c, d, "E", 1)
}

/// Generators `K_i^{+-1}, F_i`.
pub fn quantum_borel_lower(c: &CartanMatrix, d: &[i64]) -> Presentation<QScalar> {
    quantum_borel(c, d, "F", -1)
}

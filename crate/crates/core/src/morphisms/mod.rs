//! Maps from Borel and Weyl algebras into the skew model, with relation
//! checks and denominator witnesses.

mod assign;
mod presentation;
mod witness;

use serde::{Deserialize, Serialize};

use crate::datum::{h_to_z, ClassicalDatum, Omega, QuantumDatum};
use crate::error::Result;
use crate::exact::{
    ClassicalCoeff, Coefficient, PolyFrac, QScalar, QuantumCoeff, Rational,
};
use crate::ncpoly::NCPoly;
use crate::report::{all_pass, Entry};
use crate::skew::{DenomLog, SkewElem};

pub use assign::{check_relations, fix_orientation, Assignment, Orientation};
pub use presentation::{
    borel_lower, borel_upper, quantum_borel_lower, quantum_borel_upper, quantum_weyl,
    serre_element, weyl, Presentation, Relation, RelationKind,
};
pub use witness::{classical_witness, quantum_witness, Witness};

/// Radius of the shift box used when factoring denominators.
pub const WITNESS_RADIUS: i64 = 1;

/// Outcome of checking one map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismReport {
    pub name: String,
    /// `(generator, image)` pairs.
    pub images: Vec<(String, String)>,
    pub relations: Vec<Entry>,
    pub witness: Witness,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orientation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub pass: bool,
}

impl MorphismReport {
    fn assemble<C: Coefficient>(
        p: &Presentation<C::Scalar>,
        a: &Assignment<C>,
        relations: Vec<Entry>,
        witness: Witness,
    ) -> Self {
        let pass = all_pass(&relations) && witness.complete;
        MorphismReport {
            name: p.name.clone(),
            images: a.assigned().map(|(g, im)| (g.to_string(), im.to_string())).collect(),
            relations,
            witness,
            orientation: None,
            notes: Vec::new(),
            pass,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.relations.iter().filter(|e| !e.pass)
    }
}

/// `H_i -> h_i`; `E_i -> b_i t_i^-1` (upper) or `F_i -> b_i t_i` (lower).
pub fn classical_borel_assignment(
    datum: &ClassicalDatum,
    upper: bool,
) -> Result<(Presentation<Rational>, Assignment<ClassicalCoeff>)> {
    let c = &datum.cartan;
    let n = c.n();
    let ctx = &datum.ctx;
    let p = if upper { borel_upper(c) } else { borel_lower(c) };
    let mut a = Assignment::new(ctx, &p.alphabet);
    let (root, k) = if upper { ("E", -1) } else { ("F", 1) };
    for i in 0..n {
        a.set(&format!("H{}", i + 1), SkewElem::coeff(ctx, PolyFrac::var(n, i).named("h")))?;
        let t = SkewElem::t(ctx, i, k);
        a.set(&format!("{root}{}", i + 1), SkewElem::coeff(ctx, datum.b_coeff(i)).mul(&t)?)?;
    }
    Ok((p, a))
}

pub fn verify_classical_borel(datum: &ClassicalDatum, upper: bool) -> Result<MorphismReport> {
    let (p, a) = classical_borel_assignment(datum, upper)?;
    let rel = check_relations(&p, &a, None)?;
    let witness = classical_witness(&a.unit_log()?, datum, WITNESS_RADIUS)?;
    Ok(MorphismReport::assemble(&p, &a, rel, witness))
}

/// `x_i -> alpha_i t^(-m_i)`, `y_j -> -t^(m_j)`, complement `y -> -t^(m')`,
/// `z_k -> gamma_k`.
pub fn weyl_assignment(
    datum: &ClassicalDatum,
) -> Result<(Presentation<Rational>, Assignment<ClassicalCoeff>)> {
    let aux = &datum.aux;
    let n = datum.cartan.n();
    let (r, ell) = (aux.rank, aux.corank);
    let ctx = &datum.ctx;
    let p = weyl(r, n, ell);
    let mut a = Assignment::new(ctx, &p.alphabet);
    for i in 0..r {
        let m: Vec<i64> = aux.dual_pairs[i].m.iter().map(|k| -k).collect();
        let f = PolyFrac::from_poly(datum.alpha.alpha[i].clone());
        a.set(&format!("x{}", i + 1), SkewElem::term(ctx, f, m))?;
    }
    for j in 0..n {
        a.set(
            &format!("y{}", j + 1),
            SkewElem::torus(ctx, aux.direction(j).to_vec()).neg(),
        )?;
    }
    for k in 0..ell {
        let g = PolyFrac::from_poly(datum.alpha.gamma[k].clone());
        a.set(&format!("z{}", k + 1), SkewElem::coeff(ctx, g))?;
    }
    Ok((p, a))
}

/// Recovers each `h_u` from the Weyl images via `alpha_i = -x_i y_i` and the
/// central `z_k`, checks it, and logs its inverse.
fn recover_cartan(
    datum: &ClassicalDatum,
    a: &Assignment<ClassicalCoeff>,
) -> Result<(Vec<Entry>, DenomLog<ClassicalCoeff>)> {
    let n = datum.cartan.n();
    let r = datum.aux.rank;
    let alphabet = a.alphabet();
    let coord = |v: usize| -> NCPoly<Rational> {
        if v < r {
            NCPoly::letters(&[
                alphabet.letter(&format!("x{}", v + 1)),
                alphabet.letter(&format!("y{}", v + 1)),
            ])
            .scaled(&Rational::from_integer((-1).into()))
        } else {
            NCPoly::letters(&[alphabet.letter(&format!("z{}", v - r + 1))])
        }
    };
    let mut entries = Vec::new();
    let mut log = DenomLog::default();
    for (u, form) in h_to_z(&datum.aux)?.iter().enumerate() {
        let mut expr = NCPoly::zero();
        for v in 0..n {
            let mut e = vec![0; n];
            e[v] = 1;
            expr = expr.plus(&coord(v).scaled(&form.coeff(&e)));
        }
        let img = a.evaluate(&expr)?;
        let want = SkewElem::coeff(&datum.ctx, PolyFrac::var(n, u).named("h"));
        let res = img.sub(&want)?;
        entries.push(Entry::new(format!("h{} recovered from images", u + 1), &res, res.is_zero()));
        if let Ok((_, l)) = img.invert() {
            log = log.merge(l);
        }
    }
    Ok((entries, log))
}

pub fn verify_weyl_embedding(datum: &ClassicalDatum) -> Result<MorphismReport> {
    let (p, a) = weyl_assignment(datum)?;
    let mut rel = check_relations(&p, &a, None)?;
    let (rec, log) = recover_cartan(datum, &a)?;
    rel.extend(rec);
    let witness = classical_witness(&log, datum, WITNESS_RADIUS)?;
    let mut rep = MorphismReport::assemble(&p, &a, rel, witness);
    if datum.aux.corank > 0 {
        rep.notes.push(format!(
            "corank {}: the pairing D_i(alpha_j) = delta_ij is taken along the dual directions m_i, \
             since coordinate directions cannot realize it when the matrix is singular",
            datum.aux.corank
        ));
    }
    Ok(rep)
}

fn k_elem(datum: &QuantumDatum, i: usize, k: i32) -> SkewElem<QuantumCoeff> {
    let n = datum.cartan.n();
    let e = (0..n).map(|j| if i == j { k } else { 0 }).collect();
    SkewElem::coeff(&datum.ctx, crate::datum::k_monomial(e))
}

/// `K_i^(+-1) -> K_i^(+-1)`, root vectors `-> K_i^-1 t_i^(s_i)`.
pub fn quantum_borel_assignment(
    datum: &QuantumDatum,
    upper: bool,
    signs: &[i64],
) -> Result<(Presentation<QScalar>, Assignment<QuantumCoeff>)> {
    let c = &datum.cartan;
    let n = c.n();
    let p = if upper {
        quantum_borel_upper(c, &datum.d)
    } else {
        quantum_borel_lower(c, &datum.d)
    };
    let root = if upper { "E" } else { "F" };
    let mut a = Assignment::new(&datum.ctx, &p.alphabet);
    for i in 0..n {
        a.set(&format!("K{}", i + 1), k_elem(datum, i, 1))?;
        a.set(&format!("K{}^-1", i + 1), k_elem(datum, i, -1))?;
        let t = SkewElem::t(&datum.ctx, i, signs[i]);
        a.set(&format!("{root}{}", i + 1), k_elem(datum, i, -1).mul(&t)?)?;
    }
    Ok((p, a))
}

/// Fixes the orientation from the weight relations, then checks everything.
pub fn verify_quantum_borel(datum: &QuantumDatum, upper: bool) -> Result<MorphismReport> {
    let n = datum.cartan.n();
    let (p, _) = quantum_borel_assignment(datum, upper, &vec![1; n])?;
    let orientation = fix_orientation(n, &p, |s| Ok(quantum_borel_assignment(datum, upper, s)?.1))?;
    let signs = orientation
        .chosen
        .clone()
        .unwrap_or_else(|| vec![if upper { 1 } else { -1 }; n]);
    let (p, a) = quantum_borel_assignment(datum, upper, &signs)?;
    let rel = check_relations(&p, &a, None)?;
    let witness = quantum_witness(&a.unit_log()?);
    let mut rep = MorphismReport::assemble(&p, &a, rel, witness);
    if orientation.chosen.is_none() {
        rep.pass = false;
        rep.notes.push("no unique orientation satisfies the weight relations".into());
    }
    rep.notes.push(format!(
        "q-Serre step k uses the twist q^({}d_i(a_ij + 2k))",
        if upper { "" } else { "-" }
    ));
    rep.orientation = Some(orientation);
    Ok(rep)
}

/// `x_i -> omega_i t^(-m_i)`, `y_j -> t^(m_j)`, `z_k -> omega_(r+k)`, checked
/// against the quantum Weyl algebra with exponents `g_i` (`corrected =
/// false`) or `d_i g_i`.
pub fn verify_quantum_weyl(
    datum: &QuantumDatum,
    omega: &Omega,
    corrected: bool,
) -> Result<MorphismReport> {
    let aux = &datum.aux;
    let n = datum.cartan.n();
    let (r, ell) = (aux.rank, aux.corank);
    let exps: Vec<i64> = (0..r)
        .map(|i| if corrected { aux.g[i] * aux.d[i] } else { aux.g[i] })
        .collect();
    let mut p = quantum_weyl(r, n, ell, &exps);
    if corrected {
        p.name.push_str(" (exponents d_i g_i)");
    } else {
        p.name.push_str(" (exponents g_i)");
    }
    let ctx = &datum.ctx;
    let mut a = Assignment::new(ctx, &p.alphabet);
    for i in 0..r {
        let m: Vec<i64> = aux.dual_pairs[i].m.iter().map(|k| -k).collect();
        a.set(&format!("x{}", i + 1), SkewElem::term(ctx, omega.omega[i].clone(), m))?;
    }
    for j in 0..n {
        a.set(&format!("y{}", j + 1), SkewElem::torus(ctx, aux.direction(j).to_vec()))?;
    }
    for k in 0..ell {
        a.set(&format!("z{}", k + 1), SkewElem::coeff(ctx, omega.omega[r + k].clone()))?;
    }
    let rel = check_relations(&p, &a, None)?;
    let witness = quantum_witness(&a.unit_log()?);
    Ok(MorphismReport::assemble(&p, &a, rel, witness))
}

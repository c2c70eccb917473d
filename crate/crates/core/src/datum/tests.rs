use super::*;
use crate::cartan::{catalog, validate_gcm, FINITE_TYPE};
use crate::exact::{QScalar, QuantumCoeff};
use crate::report::all_pass;
use crate::skew::SkewElem;

fn canonical(name: &str) -> ClassicalDatum {
    let c = catalog(name).unwrap();
    let aux = CartanAux::derive(&c).unwrap();
    ClassicalDatum::canonical(&c, &aux).unwrap()
}

fn h(n: usize, i: usize) -> Poly {
    Poly::var(n, i)
}

fn a(n: usize, i: usize) -> Poly {
    Poly::var(n, i).named("a")
}

#[test]
fn alpha_a2_and_a1() {
    let d = canonical("A2");
    let third = rat(1, 3);
    assert_eq!(d.alpha.alpha[0], (&h(2, 0).scale(&int(2)) + &h(2, 1)).scale(&third));
    assert_eq!(d.alpha.alpha[1], (&h(2, 0) + &h(2, 1).scale(&int(2))).scale(&third));
    assert!(all_pass(&check_alpha(&d.ctx, &d.alpha).unwrap()));
    let d1 = canonical("A1");
    assert_eq!(d1.alpha.alpha[0], h(1, 0).scale(&rat(1, 2)));
}

#[test]
fn affine_central_element() {
    let c = catalog("A1^(1)").unwrap();
    let aux = CartanAux::derive(&c).unwrap();
    let alpha = build_alpha(&c, &aux);
    assert_eq!(alpha.gamma.len(), 1);
    let g = &alpha.gamma[0];
    assert_eq!(g.coeff(&[1, 0]), g.coeff(&[0, 1]));
    assert!(g.constant_value().is_none());
    let ctx = ModelContext::classical(&c).unwrap();
    assert!(all_pass(&check_alpha(&ctx, &alpha).unwrap()));
}

#[test]
fn beta_a2_is_minus_quarter_square() {
    let d = canonical("A2");
    assert_eq!(d.beta_coords[1], (&a(2, 0) * &a(2, 0)).scale(&rat(-1, 4)));
    assert_eq!(d.beta_coords[0], (&a(2, 1) * &a(2, 1)).scale(&rat(-1, 4)));
    // D_1^2(b_2) by applying the unit shift sigma_1(h) = h + (a_11, a_21) twice
    let shift = crate::exact::EndoSpec::Shift(vec![int(2), int(-1)]);
    let b2 = &d.b[1];
    let s1 = shift.apply(b2).unwrap();
    let s2 = shift.apply(&s1).unwrap();
    let second = &(&s2 - &s1.scale(&int(2))) + b2;
    assert!(second.is_zero());
}

#[test]
fn beta_trivial_cases() {
    let d = canonical("A1");
    assert!(d.beta[0].is_zero());
    assert_eq!(d.b[0], leading_part(1, 0));
    let d = canonical("A1xA1");
    assert!(d.beta.iter().all(|b| b.is_zero()));
}

#[test]
fn beta_g2_by_hand() {
    // h2 = -3 a1 + 2 a2, so P2 carries 9/4 a1^2 while the bound allows degree 1
    let d = canonical("G2");
    assert!(d.beta[0].is_zero());
    assert_eq!(d.beta_coords[1], (&a(2, 0) * &a(2, 0)).scale(&rat(-9, 4)));
}

#[test]
fn finite_catalog_bound_conditions() {
    for name in FINITE_TYPE {
        let d = canonical(name);
        let rep = check_bound_classical(&d).unwrap();
        let bad: Vec<_> = rep.iter().filter(|e| !e.pass).collect();
        assert!(bad.is_empty(), "{name}: {bad:?}");
        for (j, bz) in d.beta_coords.iter().enumerate() {
            assert_eq!(bz.degree_in(j).unwrap_or(0), 0, "{name}: beta{} has own coordinate", j + 1);
        }
    }
}

#[test]
fn linear_solver_agrees_on_validity() {
    // the degree-bound choice must satisfy the linear system the solver uses
    for name in FINITE_TYPE {
        let d = canonical(name);
        for j in 0..d.cartan.n() {
            let lin = linear_beta(&d.cartan, &d.ctx, j).unwrap();
            let mut beta = d.beta.clone();
            beta[j] = lin;
            let alt = d.with_beta(beta).unwrap();
            assert!(all_pass(&check_bound_classical(&alt).unwrap()), "{name} j={j}");
        }
    }
}

#[test]
fn beta_minimality() {
    for name in ["A2", "G2", "B2", "A3"] {
        let d = canonical(name);
        let n = d.cartan.n();
        for j in 0..n {
            for (e, c) in d.beta_coords[j].terms() {
                let mut trimmed = d.beta_coords[j].clone();
                trimmed = &trimmed - &Poly::monomial(e.clone(), c.clone());
                let beta_h = trimmed.compose(&d.alpha.coordinates()).unwrap();
                let mut beta = d.beta.clone();
                beta[j] = beta_h;
                let rep = check_bound_classical(&d.with_beta(beta).unwrap()).unwrap();
                assert!(
                    rep.iter().any(|x| !x.pass && x.label.contains('^')),
                    "{name}: dropping {e:?} from beta{} kept every bound",
                    j + 1
                );
            }
        }
    }
}

#[test]
fn zero_beta_breaks_exactly_the_serre_bounds() {
    let d = canonical("A2").with_zero_beta().unwrap();
    let rep = check_bound_classical(&d).unwrap();
    let failing: Vec<_> = rep.iter().filter(|e| !e.pass).collect();
    assert_eq!(failing.len(), 2);
    for e in failing {
        assert!(e.label.starts_with("D1^2(b2)") || e.label.starts_with("D2^2(b1)"), "{}", e.label);
        assert_eq!(e.residual, "1/2");
    }
}

#[test]
fn affine_datum_linear() {
    let d = canonical("A1^(1)");
    assert_eq!(d.method, BetaMethod::Linear);
    assert!(all_pass(&check_bound_classical(&d).unwrap()));
}

#[test]
fn full_rank_examples() {
    let d = canonical("A2");
    let fr = check_full_rank(&d).unwrap();
    assert!(fr.independent);
    assert_eq!(fr.birational_generation, "witnessed");
    let s = &h(2, 0) + &h(2, 1);
    assert!(!full_rank_of_system(&[s.clone(), s]).unwrap().independent);
    let fr = full_rank_of_system(&[&h(2, 0) * &h(2, 0), h(2, 1)]).unwrap();
    assert!(fr.independent);
    assert_eq!(fr.jacobian_determinant, "2*h1");
    assert_eq!(fr.birational_generation, "not decided");
}

fn qdatum(name: &str) -> QuantumDatum {
    let c = catalog(name).unwrap();
    build_quantum_datum(&c, &CartanAux::derive(&c).unwrap()).unwrap()
}

fn e_images(d: &QuantumDatum, s: i64) -> Vec<SkewElem<QuantumCoeff>> {
    let n = d.cartan.n();
    (0..n)
        .map(|i| {
            SkewElem::coeff(&d.ctx, d.b[i].clone())
                .mul(&SkewElem::t(&d.ctx, i, s))
                .unwrap()
        })
        .collect()
}

#[test]
fn quantum_scaling_and_plain_reading() {
    for name in FINITE_TYPE {
        let d = qdatum(name);
        let rep = check_bound_quantum(&d, &e_images(&d, 1), None).unwrap();
        assert!(all_pass(&rep.scaling), "{name}");
        let mut k = 0;
        for j in 0..d.cartan.n() {
            for i in 0..d.cartan.n() {
                if i == j {
                    continue;
                }
                assert_eq!(rep.plain[k].pass, d.cartan.a(i, j) == 0, "{name} {}", rep.plain[k].label);
                k += 1;
            }
        }
    }
}

#[test]
fn quantum_plain_residual_a2() {
    let d = qdatum("A2");
    let rep = check_bound_quantum(&d, &e_images(&d, 1), None).unwrap();
    let coeff = (QScalar::q_pow(-1) - QScalar::q_pow(0)) * (QScalar::q_pow(-1) - QScalar::q_pow(2));
    let expect = k_monomial(vec![0, -1]).scale(&coeff);
    // D_1^[2](b_2) is the first plain entry for j = 2
    let entry = rep.plain.iter().find(|e| e.label.starts_with("D1^[2](b2)")).unwrap();
    assert_eq!(entry.residual, expect.to_string());
}

#[test]
fn localized_reading_depends_on_parity() {
    // the eigenvalue of Ad(K_i^-2 t_i) on E_j is q^(-d_i a_ij): a root of the
    // operator product only for even a_ij
    for name in FINITE_TYPE {
        let d = qdatum(name);
        let loc = localized_conditions(&d, &e_images(&d, 1), "E", -1).unwrap();
        for e in &loc {
            if e.label.starts_with("Ad(") {
                assert!(e.pass, "{name}: {}", e.label);
            }
        }
        let n = d.cartan.n();
        let products: Vec<_> = loc.iter().filter(|e| e.label.starts_with("prod")).collect();
        let mut k = 0;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                assert_eq!(products[k].pass, d.cartan.a(i, j) % 2 == 0, "{name}: {}", products[k].label);
                k += 1;
            }
        }
    }
}

#[test]
fn omega_a2_and_a1() {
    let d = qdatum("A2");
    let om = build_omega(&d).unwrap();
    assert_eq!(om.omega[0], k_monomial(vec![-2, -1]));
    assert_eq!(om.omega[1], k_monomial(vec![-1, -2]));
    assert_eq!(om.scaling.observed, vec![vec![3, 0], vec![0, 3]]);
    assert!(om.scaling.stated_holds());
    let d = qdatum("A1");
    let om = build_omega(&d).unwrap();
    assert_eq!(om.omega[0], k_monomial(vec![-1]));
    assert_eq!(om.scaling.observed, vec![vec![2]]);
}

#[test]
fn omega_scaling_carries_symmetrizer() {
    // oracle: sigma_j(K^-e) = q^(d_j (C e)_j) K^-e, computed directly
    for name in catalog_all() {
        let d = qdatum(name);
        let om = build_omega(&d).unwrap();
        let c = &d.cartan;
        let n = c.n();
        for i in 0..n {
            for j in 0..n {
                let m = d.aux.direction(j);
                let ce = c.apply(&om.exponents[i]);
                let expect: i64 = (0..n).map(|k| m[k] * d.d[k] * ce[k]).sum();
                assert_eq!(om.scaling.observed[i][j], expect, "{name} ({i},{j})");
            }
        }
        assert!(om.scaling.corrected_holds(), "{name}");
        let symmetric_d = d.d.iter().all(|&x| x == 1);
        assert_eq!(om.scaling.stated_holds(), symmetric_d, "{name}");
    }
}

fn catalog_all() -> Vec<&'static str> {
    crate::cartan::catalog_names()
}

#[test]
fn unsymmetrizable_rejected() {
    let c = validate_gcm(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-2, -1, 2]]).unwrap();
    assert!(CartanAux::derive(&c).is_err());
}

use super::*;
use num_traits::One;
use crate::cartan::catalog;
use crate::exact::{int, rat, PolyFrac};

fn sl2() -> Arc<ModelContext<ClassicalCoeff>> {
    ModelContext::classical(&catalog("A1").unwrap()).unwrap()
}

fn qsl2() -> Arc<ModelContext<QuantumCoeff>> {
    ModelContext::quantum(&catalog("A1").unwrap(), &[1]).unwrap()
}

fn h(ctx: &Arc<ModelContext<ClassicalCoeff>>, i: usize) -> SkewElem<ClassicalCoeff> {
    SkewElem::coeff(ctx, PolyFrac::var(ctx.nvars(), i).named("h"))
}

fn k(ctx: &Arc<ModelContext<QuantumCoeff>>, e: Vec<i32>, c: QScalar) -> SkewElem<QuantumCoeff> {
    SkewElem::coeff(ctx, MLaurent::monomial(e, c).named("K"))
}

fn b_sl2(ctx: &Arc<ModelContext<ClassicalCoeff>>) -> SkewElem<ClassicalCoeff> {
    let hh = h(ctx, 0);
    let two = SkewElem::scalar(ctx, int(2));
    hh.mul(&hh.sub(&two).unwrap()).unwrap().scale(&rat(1, 4))
}

#[test]
fn classical_t_moves_past_h() {
    let ctx = sl2();
    let t = SkewElem::t(&ctx, 0, 1);
    let lhs = t.mul(&h(&ctx, 0)).unwrap();
    let rhs = h(&ctx, 0).add(&SkewElem::scalar(&ctx, int(2))).unwrap().mul(&t).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(SkewElem::one(&ctx).mul(&lhs).unwrap(), lhs);
}

#[test]
fn quantum_t_moves_past_k() {
    let ctx = qsl2();
    let t = SkewElem::t(&ctx, 0, 1);
    let lhs = t.mul(&k(&ctx, vec![1], QScalar::one())).unwrap();
    let rhs = k(&ctx, vec![1], QScalar::q_pow(-2)).mul(&t).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn inverse_of_h_t() {
    let ctx = sl2();
    let a = h(&ctx, 0).mul(&SkewElem::t(&ctx, 0, 1)).unwrap();
    let (inv, log) = a.invert().unwrap();
    let hm2 = h(&ctx, 0).sub(&SkewElem::scalar(&ctx, int(2))).unwrap();
    let (hm2_inv, _) = hm2.invert().unwrap();
    assert_eq!(inv, hm2_inv.mul(&SkewElem::t(&ctx, 0, -1)).unwrap());
    assert!(a.mul(&inv).unwrap().is_one());
    assert!(inv.mul(&a).unwrap().is_one());
    assert_eq!(log.entries, vec![PolyFrac::var(1, 0).named("h")]);
    let t = SkewElem::t(&ctx, 0, 1);
    assert_eq!(t.invert().unwrap().0, SkewElem::t(&ctx, 0, -1));
}

#[test]
fn quantum_inverse() {
    let ctx = qsl2();
    let a = k(&ctx, vec![-1], QScalar::one()).mul(&SkewElem::t(&ctx, 0, -1)).unwrap();
    let (inv, _) = a.invert().unwrap();
    let expect = k(&ctx, vec![1], QScalar::q_pow(-2)).mul(&SkewElem::t(&ctx, 0, 1)).unwrap();
    assert_eq!(inv, expect);
    assert!(a.mul(&inv).unwrap().is_one() && inv.mul(&a).unwrap().is_one());
}

#[test]
fn multi_term_inverse_rejected() {
    let ctx = sl2();
    let a = SkewElem::t(&ctx, 0, 1).add(&SkewElem::one(&ctx)).unwrap();
    assert!(matches!(a.invert(), Err(Error::NotUnitMonomial(_))));
    assert!(matches!(SkewElem::zero(&ctx).invert(), Err(Error::NotUnitMonomial(_))));
}

#[test]
fn twisted_differentials() {
    let ctx = ModelContext::classical(&catalog("A2").unwrap()).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let d = ctx.twisted_diff(i, &PolyFrac::var(2, j)).unwrap();
            assert_eq!(d, PolyFrac::constant(2, int(catalog("A2").unwrap().a(j, i))));
        }
        assert!(ctx.twisted_diff(i, &PolyFrac::one(2)).unwrap().is_zero());
    }
    let c1 = sl2();
    let b = b_sl2(&c1);
    let bf = b.terms().values().next().unwrap().clone();
    assert_eq!(c1.twisted_diff(0, &bf).unwrap(), PolyFrac::var(1, 0).named("h"));
}

#[test]
fn divided_differences() {
    let c = catalog("A2").unwrap();
    let ctx = ModelContext::quantum(&c, &[1, 1]).unwrap();
    let kinv2: QuantumCoeff = MLaurent::monomial(vec![0, -1], QScalar::one()).named("K");
    assert_eq!(ctx.q_divided_diff(0, 0, &kinv2, &[1, 1]).unwrap(), kinv2);
    let one = ctx.q_divided_diff(0, 1, &kinv2, &[1, 1]).unwrap();
    assert_eq!(one, kinv2.scale(&(QScalar::q_pow(-1) - QScalar::one())));
    let two = ctx.q_divided_diff(0, 2, &kinv2, &[1, 1]).unwrap();
    let coeff = (QScalar::q_pow(-1) - QScalar::one()) * (QScalar::q_pow(-1) - QScalar::q_pow(2));
    assert_eq!(two, kinv2.scale(&coeff));
    assert!(!two.is_zero());
    assert_eq!(
        sl2().q_divided_diff(0, 1, &PolyFrac::one(1), &[1]),
        Err(Error::NotQuantum)
    );
}

#[test]
fn commutator_with_bound_element() {
    let ctx = sl2();
    let bt = b_sl2(&ctx).mul(&SkewElem::t(&ctx, 0, -1)).unwrap();
    let c = h(&ctx, 0).commutator(&bt).unwrap();
    assert_eq!(c, bt.scale(&int(2)));
    assert!(bt.commutator(&bt).unwrap().is_zero());
    assert_eq!(bt.ad_power(&h(&ctx, 0), 0).unwrap(), h(&ctx, 0));
}

#[test]
fn q_commutator() {
    let ctx = qsl2();
    let x = k(&ctx, vec![-1], QScalar::one()).mul(&SkewElem::t(&ctx, 0, 1)).unwrap();
    let y = SkewElem::t(&ctx, 0, -1);
    assert_eq!(x.ad_q(&y, &QScalar::one()).unwrap(), x.commutator(&y).unwrap());
    assert!(x.ad_q(&x, &QScalar::one()).unwrap().is_zero());
    let c = sl2();
    assert_eq!(
        SkewElem::t(&c, 0, 1).ad_q(&SkewElem::t(&c, 0, 1), &int(1)),
        Err(Error::NotQuantum)
    );
}

#[test]
fn conjugation() {
    let ctx = qsl2();
    let kk = k(&ctx, vec![1], QScalar::one());
    for s in [1i64, -1] {
        let u = k(&ctx, vec![-2], QScalar::one()).mul(&SkewElem::t(&ctx, 0, s)).unwrap();
        let (img, _) = u.conjugate(&kk).unwrap();
        assert_eq!(img, k(&ctx, vec![1], QScalar::q_pow(-2 * s)));
        assert_eq!(u.conjugate(&u).unwrap().0, u);
    }
    let c = sl2();
    let t = SkewElem::t(&c, 0, 1);
    let (img, _) = t.conjugate(&h(&c, 0)).unwrap();
    assert_eq!(img, h(&c, 0).add(&SkewElem::scalar(&c, int(2))).unwrap());
}

#[test]
fn context_mismatch() {
    let a = SkewElem::one(&sl2());
    let b = SkewElem::one(&ModelContext::classical(&catalog("A2").unwrap()).unwrap());
    assert_eq!(a.mul(&b), Err(Error::ContextMismatch));
}

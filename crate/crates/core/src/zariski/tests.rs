use super::*;
use crate::arith::{rat, ratio};
use crate::poly::Monomial;

fn x(i: usize) -> Poly {
    Poly::var(3, i)
}

fn h() -> Poly {
    &(&x(0) * &x(0)) + &(&x(1) * &x(1))
}

fn zm(fs: Vec<Poly>) -> ZMonomial {
    ZMonomial::from_factors(fs)
}

fn z(fs: Vec<Poly>) -> ZElem {
    ZElem::monomial(zm(fs), rat(1))
}

fn ctx() -> Zariski {
    Zariski::for_dimension(3).unwrap()
}

#[test]
fn alpha_examples() {
    let zk = ctx();
    let d = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
    let a = zk.alpha(&NuObject::from_poly(d)).unwrap().unwrap();
    assert_eq!(a, zm(vec![&x(0) - &x(1), &x(0) + &x(1)]));
    assert_eq!(zk.alpha(&NuObject::monomial(1, x(0))).unwrap(), None);
    assert_eq!(
        zk.alpha(&NuObject::from_poly(h())).unwrap().unwrap(),
        zm(vec![h()])
    );
    let err = zk
        .alpha(&NuObject::from_poly(x(0).scale(&rat(2))))
        .unwrap_err();
    assert!(err.to_string().contains('2'));
}

#[test]
fn evaluation_examples() {
    let zk = ctx();
    assert_eq!(
        zk.eval_t(&zm(vec![x(0)])).unwrap(),
        NuObject::from_poly(x(0))
    );
    let mut hh = NuObject::from_poly(&h() * &h());
    hh.add_at(2, &Poly::constant(3, rat(4)));
    assert_eq!(zk.eval_t(&zm(vec![h(), h()])).unwrap(), hh);
    assert_eq!(
        zk.eval_t(&zm(vec![x(0), x(1)])).unwrap(),
        NuObject::from_poly(&x(0) * &x(1))
    );
    assert_eq!(zk.eval_t(&ZMonomial::one()).unwrap(), NuObject::one(3));
}

#[test]
fn symmetrization_matches_brute_force() {
    let zk = ctx();
    let fs = vec![h(), x(0), &x(1) + &x(2), x(0)];
    let mut brute = NuObject::zero(3);
    let perms = crate::poly::permutations(fs.len());
    for p in &perms {
        let mut acc = NuObject::one(3);
        for &i in p {
            acc = zk
                .star()
                .mul(&acc, &NuObject::from_poly(fs[i].clone()))
                .unwrap();
        }
        brute += &acc;
    }
    let brute = brute.scale(&ratio(1, perms.len() as i64));
    assert_eq!(zk.eval_t(&zm(fs)).unwrap(), brute);
}

#[test]
fn times_alpha_ignores_quantum_part() {
    let zk = ctx();
    let mut p = NuObject::from_poly(x(0));
    p.add_at(1, &x(1));
    let q = NuObject::from_poly(x(0));
    assert_eq!(
        zk.times_alpha(&p, &q).unwrap(),
        NuObject::from_poly(&x(0) * &x(0))
    );
    assert_eq!(
        zk.times_alpha(&NuObject::from_poly(x(0)), &NuObject::from_poly(x(1)))
            .unwrap(),
        NuObject::from_poly(&x(0) * &x(1))
    );
}

#[test]
fn deformed_product_examples() {
    let zk = ctx();
    let a = ZNu::from_elem(z(vec![x(0)]));
    assert_eq!(
        zk.z_mul_nu(&a, &a).unwrap(),
        ZNu::from_elem(z(vec![x(0), x(0)]))
    );
    let zh = ZNu::from_elem(z(vec![h()]));
    let mut want = ZNu::from_elem(z(vec![h(), h()]));
    want.add_at(2, &ZElem::unit().scale(&rat(4)));
    assert_eq!(zk.z_mul_nu(&zh, &zh).unwrap(), want);
    let shifted = ZNu::monomial(1, z(vec![x(0)]));
    assert!(zk
        .z_mul_nu(&shifted, &ZNu::from_elem(z(vec![x(1)])))
        .unwrap()
        .is_zero());
}

#[test]
fn zeta_is_multiplicative_not_additive() {
    let zeta = Zeta::new();
    let u = &x(0) + &x(1);
    let v = x(2);
    let zu = zeta.of_poly(&u).unwrap();
    let zv = zeta.of_poly(&v).unwrap();
    assert_eq!(zeta.of_poly(&(&u * &v)).unwrap(), zu.mul(&zv));
    assert_ne!(zeta.of_poly(&(&u + &v)).unwrap(), &zu + &zv);
    assert_eq!(
        zeta.of_poly(&x(0).scale(&rat(-3))).unwrap(),
        z(vec![x(0)]).scale(&rat(-3))
    );
    assert!(zeta.of_poly(&Poly::zero(3)).unwrap().is_zero());
}

#[test]
fn delta_examples() {
    let zeta = Zeta::new();
    assert_eq!(zeta.delta(0, &z(vec![x(0)])).unwrap(), ZElem::unit());
    let pair = z(vec![&x(0) - &x(1), &x(0) + &x(1)]);
    let want = &z(vec![&x(0) + &x(1)]) + &z(vec![&x(0) - &x(1)]);
    assert_eq!(zeta.delta(0, &pair).unwrap(), want);
    assert!(zeta.delta(0, &z(vec![x(1)])).unwrap().is_zero());
}

#[test]
fn delta_is_a_derivation() {
    let zeta = Zeta::new();
    let a = &z(vec![h(), x(2)]) + &z(vec![&x(0) + &x(2)]).scale(&rat(2));
    let b = z(vec![&(&x(0) * &x(1)) + &x(2), x(1)]);
    for i in 0..3 {
        let lhs = zeta.delta(i, &a.mul(&b)).unwrap();
        let rhs = &zeta.delta(i, &a).unwrap().mul(&b) + &a.mul(&zeta.delta(i, &b).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn frobenius_failure_witness() {
    assert_eq!(frobenius_search(3, 1).unwrap(), None);
    let w = frobenius_search(3, 4)
        .unwrap()
        .expect("a witness within degree 4");
    assert!(w.verify().unwrap());
    assert_ne!(w.ij, w.ji);
}

#[test]
fn j_examples() {
    let zk = ctx();
    let y = |e: &[u32]| Monomial::from_exponents(e);
    let j = zk.jmap(&z(vec![x(0)])).unwrap();
    let mut want = TaylorElem::zero(3);
    want.add_at(y(&[0, 0, 0]), &z(vec![x(0)]).into());
    want.add_at(y(&[1, 0, 0]), &ZElem::unit().into());
    assert_eq!(j, want);

    let j = zk.jmap(&z(vec![x(0), x(1)])).unwrap();
    let mut want = TaylorElem::zero(3);
    want.add_at(y(&[0, 0, 0]), &z(vec![x(0), x(1)]).into());
    want.add_at(y(&[1, 0, 0]), &z(vec![x(1)]).into());
    want.add_at(y(&[0, 1, 0]), &z(vec![x(0)]).into());
    want.add_at(y(&[1, 1, 0]), &ZElem::unit().into());
    assert_eq!(j, want);

    let mut unit = TaylorElem::zero(3);
    unit.add_at(Monomial::one(), &ZElem::unit().into());
    assert_eq!(zk.jmap(&ZElem::unit()).unwrap(), unit);
}

#[test]
fn j_commutes_with_derivatives() {
    let zk = ctx();
    let u = &(&h() * &x(2)) + &x(0);
    let zu = zk.zeta().of_poly(&u).unwrap();
    let j = zk.jmap(&zu).unwrap();
    for a in 0..3 {
        let over = zk.jmap(&zk.zeta().of_poly(&u.diff(a)).unwrap()).unwrap();
        assert_eq!(j.delta(a), over);
    }
    let v = z(vec![h()]);
    let sum = zk.jmap(&(&zu + &v)).unwrap();
    assert_eq!(sum, zk.jmap(&zu).unwrap().add(&zk.jmap(&v).unwrap()));
}

#[test]
fn taylor_products() {
    let zk = ctx();
    let j1 = zk.jmap(&z(vec![x(0)])).unwrap();
    let j2 = zk.jmap(&z(vec![x(1)])).unwrap();
    let p = zk.a_mul_nu(&j1, &j2).unwrap();
    assert!(p.terms().all(|(_, c)| c.iter().all(|(k, _)| k == 0)));
    assert_eq!(p, zk.a_mul(&j1, &j2).unwrap());

    let jh = zk.jmap(&z(vec![h()])).unwrap();
    let hh = zk.a_mul_nu(&jh, &jh).unwrap();
    let mut want = ZNu::from_elem(z(vec![h(), h()]));
    want.add_at(2, &ZElem::unit().scale(&rat(4)));
    assert_eq!(hh.coeff(&Monomial::one()), want);

    let one = zk.jmap(&ZElem::unit()).unwrap();
    assert_eq!(zk.a_mul_nu(&jh, &one).unwrap(), jh);

    let raw = TaylorElem::from_terms(3, [(Monomial::one(), ZNu::from_elem(z(vec![x(0)])))]);
    assert!(zk.a_mul_nu(&raw, &jh).is_err());
}

#[test]
fn quantum_bracket_of_coordinates() {
    let zk = ctx();
    let js: Vec<TaylorElem> = (0..3).map(|i| zk.jmap(&z(vec![x(i)])).unwrap()).collect();
    let mut unit = TaylorElem::zero(3);
    unit.add_at(Monomial::one(), &ZElem::unit().into());
    assert_eq!(zk.quantum_nambu(&js).unwrap(), unit);
    let rep = [js[0].clone(), js[0].clone(), js[2].clone()];
    assert!(zk.quantum_nambu(&rep).unwrap().is_zero());
}

#[test]
fn quantum_bracket_limits_and_identity() {
    let zk = ctx();
    let gens = [
        z(vec![h()]),
        z(vec![&x(0) + &x(2)]),
        z(vec![&(&x(1) * &x(2)) + &x(0)]),
        z(vec![x(1)]),
        z(vec![&x(2) * &x(2) + &x(1) * &x(1) - &x(0) * &x(0)]),
    ];
    let js: Vec<TaylorElem> = gens.iter().map(|g| zk.jmap(g).unwrap()).collect();
    let q = zk.quantum_nambu(&js[..3]).unwrap();
    assert_eq!(q.classical(), zk.classical_nambu(&js[..3]).unwrap());
    let swapped = [js[1].clone(), js[0].clone(), js[2].clone()];
    assert_eq!(zk.quantum_nambu(&swapped).unwrap(), q.scale(&rat(-1)));
    assert!(zk.quantum_fi(&js).unwrap().is_zero());
}

#[test]
fn powers_match_star_powers() {
    let zk = ctx();
    let zh = ZNu::from_elem(z(vec![h()]));
    for m in 0..=4 {
        let star =
            crate::star::star_power(zk.star().as_ref(), &NuObject::from_poly(h()), m).unwrap();
        assert_eq!(
            zk.power(&zh, m).unwrap(),
            zk.zeta().of_nu(&star).unwrap(),
            "m = {m}"
        );
    }
    let e = zk.exponential(&h(), 2).unwrap();
    assert_eq!(e[1], zh.shift(-1).scale(&ratio(1, 2)));
}

#[test]
fn moyal_in_the_plane() {
    let zk = Zariski::for_dimension(2).unwrap();
    assert_eq!(zk.star().name(), "moyal");
    let u = ZMonomial::from_factors(vec![Poly::var(2, 0), Poly::var(2, 0), Poly::var(2, 1)]);
    let t = zk.eval_t(&u).unwrap();
    assert_eq!(t.classical(), u.expand(2));
    assert_eq!(
        Zariski::for_dimension(5).unwrap().star().name(),
        "partial-moyal"
    );
}

#[test]
fn text_forms() {
    let s = VarSpace::euclidean(3);
    let e = &z(vec![h(), x(0)]).scale(&ratio(3, 2)) - &ZElem::unit();
    assert_eq!(e.to_text(&s), "3/2 * Z[x1^2 + x2^2; x1] - Z[]");
    let mut n = ZNu::from_elem(z(vec![x(0)]));
    n.add_at(2, &ZElem::unit().scale(&rat(4)));
    assert_eq!(n.to_text(&s), "Z[x1] + 4 * nu^2 * Z[]");
    let zk = ctx();
    let j = zk.jmap(&z(vec![x(0), x(1)])).unwrap();
    assert_eq!(
        j.to_text(&s),
        "Z[x1; x2] + y2 * Z[x1] + y1 * Z[x2] + y1*y2 * Z[]"
    );
}

use hecke_forge::exactalg::{q, qr, Mono, Poly, RatFunc, Q};
use hecke_forge::nilhecke::{
    canonical_degree, degree_bound, demazure, demazure_simple, from_theta_coeffs, iota, iota_poly, theta_coeffs,
    theta_elem, NilOp,
};
use hecke_forge::rootdata::{build_root_system, AffineRoot, Orbit, RootSystem, RootType};
use hecke_forge::Error;
use proptest::prelude::*;

fn rs(ty: RootType, n: usize) -> RootSystem {
    build_root_system(ty, n).unwrap()
}

fn k(v: i64) -> Poly {
    Poly::constant(q(v))
}

fn word_theta(r: &RootSystem, word: &[usize]) -> NilOp {
    word.iter()
        .fold(NilOp::identity(r), |acc, &i| acc.compose(r, &demazure_simple(r, i)))
}

#[test]
fn a1_demazure_values() {
    let r = rs(RootType::A, 1);
    let x = Poly::var(r.x_var(0));
    assert_eq!(demazure_simple(&r, 1).apply(&r, &x).unwrap(), k(1));
    assert_eq!(demazure_simple(&r, 0).apply(&r, &x).unwrap(), k(-1));
    let x2 = &x * &x;
    assert_eq!(demazure_simple(&r, 1).apply(&r, &x2).unwrap(), Poly::zero());
    assert_eq!(demazure_simple(&r, 0).apply(&r, &x2).unwrap(), k(-1));
}

#[test]
fn a1_anticommutator() {
    let r = rs(RootType::A, 1);
    let x = NilOp::mul_poly(&r, Poly::var(r.x_var(0)));
    let t = demazure_simple(&r, 1);
    let sum = t.compose(&r, &x).add(&x.compose(&r, &t));
    assert_eq!(sum, NilOp::identity(&r));
}

#[test]
fn a1_theta_coordinates_of_reflection() {
    let r = rs(RootType::A, 1);
    let s1 = NilOp::weyl(r.s(1).clone());
    let (coeffs, integral) = theta_coeffs(&r, &s1).unwrap();
    assert!(integral);
    assert_eq!(coeffs.len(), 2);
    assert_eq!(coeffs[&r.identity()], RatFunc::constant(q(-1)));
    let two_x = Poly::monomial(Mono::var(r.x_var(0)), q(2));
    assert_eq!(coeffs[r.s(1)], RatFunc::from_poly(two_x));
    assert_eq!(from_theta_coeffs(&r, &coeffs), s1);
}

#[test]
fn reflection_via_demazure() {
    for (ty, n) in [(RootType::A, 2), (RootType::B, 2), (RootType::BC, 1), (RootType::G, 2)] {
        let r = rs(ty, n);
        for i in 0..=n {
            let a = &r.affine_simple[i];
            let th = demazure_simple(&r, i);
            let lhs = NilOp::weyl(r.s(i).clone());
            let rhs = NilOp::identity(&r).sub(&th.scale_left(&RatFunc::from_poly(r.root_poly(a))));
            assert_eq!(lhs, rhs, "{ty}{n} s{i}");
        }
    }
}

#[test]
fn nil_and_braid_relations() {
    for (ty, n) in [
        (RootType::A, 1),
        (RootType::A, 2),
        (RootType::B, 2),
        (RootType::C, 2),
        (RootType::BC, 1),
        (RootType::G, 2),
    ] {
        let r = rs(ty, n);
        for i in 0..=n {
            let th = demazure_simple(&r, i);
            assert!(th.compose(&r, &th).is_zero(), "{ty}{n} nil {i}");
            for j in (i + 1)..=n {
                if let Some(m) = r.coxeter[i][j] {
                    let w1: Vec<usize> = (0..m).map(|t| if t % 2 == 0 { i } else { j }).collect();
                    let w2: Vec<usize> = (0..m).map(|t| if t % 2 == 0 { j } else { i }).collect();
                    assert_eq!(word_theta(&r, &w1), word_theta(&r, &w2), "{ty}{n} braid {i}{j}");
                }
            }
        }
    }
}

#[test]
fn theta_of_non_reduced_word_vanishes() {
    let r = rs(RootType::A, 2);
    assert!(word_theta(&r, &[1, 2, 1, 1]).is_zero());
    assert!(word_theta(&r, &[0, 1, 0, 1]).is_zero());
}

#[test]
fn theta_elem_support_is_bruhat_interval() {
    let r = rs(RootType::A, 2);
    for w in r.enumerate_weyl(3) {
        let th = theta_elem(&r, &w);
        assert!(!th.coeff(&w).is_zero());
        for u in th.support() {
            assert!(r.bruhat_leq(&u, &w));
        }
    }
}

#[test]
fn theta_coeffs_roundtrip_and_integrality() {
    let r = rs(RootType::A, 2);
    let elems = r.enumerate_weyl(2);
    let x1 = Poly::var(r.x_var(0));
    let mut a = NilOp::zero();
    for (t, w) in elems.iter().enumerate() {
        let f = &x1 + &k(t as i64);
        a = a.add(&NilOp::weyl(w.clone()).scale_left(&RatFunc::from_poly(f)));
    }
    let (coeffs, integral) = theta_coeffs(&r, &a).unwrap();
    assert!(integral);
    assert_eq!(from_theta_coeffs(&r, &coeffs), a);

    let inv = RatFunc::inv_linear(&x1).unwrap();
    let b = NilOp::scalar(&r, inv);
    let (coeffs, integral) = theta_coeffs(&r, &b).unwrap();
    assert!(!integral);
    assert_eq!(from_theta_coeffs(&r, &coeffs), b);
}

#[test]
fn non_polynomial_image_is_reported() {
    let r = rs(RootType::A, 1);
    let x = Poly::var(r.x_var(0));
    let b = NilOp::scalar(&r, RatFunc::inv_linear(&x).unwrap());
    assert!(matches!(b.apply(&r, &k(1)), Err(Error::NonPolynomialImage)));
}

#[test]
fn zero_functional_rejected() {
    let r = rs(RootType::A, 1);
    let z = AffineRoot::new(vec![q(0)], q(0), Orbit::Nat);
    assert!(matches!(demazure(&r, &z), Err(Error::ZeroFunctional)));
}

#[test]
fn canonical_degrees() {
    let r = rs(RootType::A, 1);
    let x = Poly::var(r.x_var(0));
    assert_eq!(canonical_degree(&r, &demazure_simple(&r, 1)).unwrap(), -1);
    assert_eq!(canonical_degree(&r, &demazure_simple(&r, 0)).unwrap(), -1);
    assert_eq!(canonical_degree(&r, &NilOp::mul_poly(&r, x.clone())).unwrap(), 1);
    assert_eq!(canonical_degree(&r, &NilOp::weyl(r.s(0).clone())).unwrap(), 0);
    let t10 = word_theta(&r, &[1, 0]);
    let d = canonical_degree(&r, &t10).unwrap();
    assert!(d <= degree_bound(&t10).unwrap());
    assert_eq!(d, -3);
    assert_eq!(canonical_degree(&r, &NilOp::zero()).unwrap(), i64::MIN);
}

fn iota_generators(r: &RootSystem, d: &[Q]) -> Vec<NilOp> {
    iota(r, d).s
}

#[test]
fn iota_relations() {
    for (ty, n, d) in [
        (RootType::A, 1, vec![q(0)]),
        (RootType::A, 1, vec![qr(1, 3)]),
        (RootType::A, 2, vec![q(1)]),
        (RootType::B, 2, vec![q(0), q(1)]),
        (RootType::BC, 1, vec![q(1), qr(1, 2)]),
    ] {
        let r = rs(ty, n);
        assert_eq!(d.len(), r.n_orb());
        let gens = iota_generators(&r, &d);
        let one = NilOp::identity(&r);
        for i in 0..=n {
            assert_eq!(gens[i].compose(&r, &gens[i]), one, "{ty}{n} square {i}");
            for j in (i + 1)..=n {
                if let Some(m) = r.coxeter[i][j] {
                    let w1 = (0..m).fold(one.clone(), |acc, t| {
                        acc.compose(&r, &gens[if t % 2 == 0 { i } else { j }])
                    });
                    let w2 = (0..m).fold(one.clone(), |acc, t| {
                        acc.compose(&r, &gens[if t % 2 == 0 { j } else { i }])
                    });
                    assert_eq!(w1, w2, "{ty}{n} braid {i}{j}");
                }
            }
            // Cross relation: ι(s)∘ι(f) − ι(ˢf)∘ι(s) = ι(𝐜_α)·ι(ϑ_α f).
            let a = &r.affine_simple[i];
            let ci = r.orbit_var(a.orbit);
            for f in [
                Poly::var(r.x_var(0)),
                &Poly::var(r.x_var(n - 1)) * &Poly::var(r.x_var(0)),
            ] {
                let sf = r.act_on_poly(r.s(i), &f);
                let lhs = gens[i]
                    .compose(&r, &iota_poly(&r, &d, &f))
                    .sub(&iota_poly(&r, &d, &sf).compose(&r, &gens[i]));
                let thf = demazure_simple(&r, i).apply(&r, &f).unwrap();
                let rhs = iota_poly(&r, &d, &(&Poly::var(ci) * &thf));
                assert_eq!(lhs, rhs, "{ty}{n} cross {i}");
            }
        }
        let base = iota_generators(&r, &vec![q(0); r.n_orb()]);
        for i in 0..=n {
            assert_eq!(base[i].pushforward(&r, &d), gens[i]);
        }
    }
}

fn arb_poly2() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..3, 3), -3i64..=3), 0..4).prop_map(|ts| {
        let mut p = Poly::zero();
        for (e, c) in ts {
            p.add_assign_ref(&Poly::monomial(Mono::from_exps(&e), q(c)));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn twisted_leibniz(f in arb_poly2(), g in arb_poly2(), i in 0usize..3) {
        let r = rs(RootType::A, 2);
        let th = demazure_simple(&r, i);
        let fg = &f * &g;
        let lhs = th.apply(&r, &fg).unwrap();
        let sf = r.act_on_poly(r.s(i), &f);
        let rhs = &(&th.apply(&r, &f).unwrap() * &g) + &(&sf * &th.apply(&r, &g).unwrap());
        prop_assert_eq!(lhs, rhs);
        let op_lhs = th.compose(&r, &NilOp::mul_poly(&r, f.clone()));
        let op_rhs = NilOp::mul_poly(&r, sf).compose(&r, &th).add(&NilOp::mul_poly(&r, th.apply(&r, &f).unwrap()));
        prop_assert_eq!(op_lhs, op_rhs);
    }

    #[test]
    fn compose_is_associative(f in arb_poly2(), i in 0usize..3, j in 0usize..3) {
        let r = rs(RootType::A, 2);
        let a = demazure_simple(&r, i);
        let b = NilOp::mul_poly(&r, f);
        let c = NilOp::weyl(r.s(j).clone());
        prop_assert_eq!(a.compose(&r, &b).compose(&r, &c), a.compose(&r, &b.compose(&r, &c)));
    }
}

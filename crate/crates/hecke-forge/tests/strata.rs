use std::collections::BTreeSet;

use hecke_forge::exactalg::{q, qr, ParamPoint, ParamValue, Q};
use hecke_forge::rootdata::{build_root_system, Orbit, RootSystem, RootType};
use hecke_forge::strata::{circuits, expected_classes, m_c, mclass, psi_bar, stratum_compare, MClass};
use hecke_forge::Error;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rs(ty: RootType, n: usize) -> RootSystem {
    build_root_system(ty, n).unwrap()
}

/// Kernel of the matrix whose columns are `cols`, by Gaussian elimination.
fn kernel(cols: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let m = cols[0].len();
    let n = cols.len();
    let mut a: Vec<Vec<Q>> = (0..m).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    let v = &a[row][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); n];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -a[i][f].clone();
            }
            v
        })
        .collect()
}

/// Brute force over all subsets of size `<= rank + 1`.
fn oracle(r: &RootSystem) -> Vec<MClass> {
    let psi = psi_bar(r);
    let n = psi.len();
    let mut out = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while let Some(s) = stack.pop() {
        if s.len() >= 2 {
            let cols: Vec<Vec<Q>> = s.iter().map(|&i| psi[i].bar.clone()).collect();
            let k = kernel(&cols);
            if k.len() == 1 && k[0].iter().all(|x| !x.is_zero()) {
                let mut mu = vec![Q::zero(); r.n_orb()];
                for (d, &i) in k[0].iter().zip(&s) {
                    mu[r.orbit_var(psi[i].orbit)] -= d;
                }
                if let Some(c) = MClass::from_rational(&mu) {
                    out.insert(c);
                }
            }
        }
        if s.len() <= r.rank {
            for j in s.last().unwrap() + 1..n {
                let mut s2 = s.clone();
                s2.push(j);
                stack.push(s2);
            }
        }
    }
    out.into_iter().collect()
}

#[test]
fn psi_bar_examples() {
    let r = rs(RootType::BC, 1);
    let p = psi_bar(&r);
    assert_eq!(p.len(), 4);
    let sharp: Vec<_> = p
        .iter()
        .filter(|x| x.orbit == Orbit::Sharp)
        .map(|x| x.bar.clone())
        .collect();
    let flat: Vec<_> = p
        .iter()
        .filter(|x| x.orbit == Orbit::Flat)
        .map(|x| x.bar.clone())
        .collect();
    assert_eq!(sharp, vec![vec![q(-1)], vec![q(1)]]);
    assert_eq!(flat, vec![vec![q(-1)], vec![q(1)]]);
    let r = rs(RootType::A, 1);
    let p = psi_bar(&r);
    assert_eq!(
        p.iter().map(|x| x.bar.clone()).collect::<Vec<_>>(),
        vec![vec![q(-2)], vec![q(2)]]
    );
    assert_eq!(psi_bar(&rs(RootType::G, 2)).len(), 12);
    assert_eq!(psi_bar(&rs(RootType::F, 4)).len(), 48);
}

#[test]
fn circuits_match_brute_force() {
    for (ty, n) in [
        (RootType::A, 2),
        (RootType::A, 3),
        (RootType::BC, 1),
        (RootType::BC, 2),
        (RootType::B, 2),
        (RootType::G, 2),
    ] {
        let r = rs(ty, n);
        assert_eq!(circuits(&r), oracle(&r), "{}", r.name());
    }
}

#[test]
fn simply_laced_and_bc1_lists() {
    for (ty, n) in [
        (RootType::A, 1),
        (RootType::A, 2),
        (RootType::A, 4),
        (RootType::D, 4),
        (RootType::BC, 1),
    ] {
        let r = rs(ty, n);
        assert_eq!(Some(circuits(&r)), expected_classes(&r), "{}", r.name());
    }
}

#[test]
fn printed_lists_are_contained_in_computed_sets() {
    for (ty, n) in [(RootType::BC, 2), (RootType::F, 4), (RootType::G, 2)] {
        let r = rs(ty, n);
        let got: BTreeSet<MClass> = circuits(&r).into_iter().collect();
        let printed: BTreeSet<MClass> = expected_classes(&r).unwrap().into_iter().collect();
        assert!(printed.is_subset(&got), "{}", r.name());
        assert!(printed.len() < got.len(), "{}", r.name());
    }
}

#[test]
fn unlisted_circuits_have_explicit_witnesses() {
    // BC₂: (ε₁+ε₂) + (ε₁−ε₂) − 2ε₁ = 0 over two ♮ elements and one ♯ element.
    let r = rs(RootType::BC, 2);
    let want = mclass(&r, &[(Orbit::Nat, 1), (Orbit::Sharp, -1)]);
    let cols = vec![vec![q(1), q(1)], vec![q(1), q(-1)], vec![q(1), q(0)]];
    let k = kernel(&cols);
    assert_eq!(k.len(), 1);
    let mu = vec![-(&k[0][0] + &k[0][1]), -k[0][2].clone(), q(0)];
    assert_eq!(MClass::from_rational(&mu).unwrap(), want);
    assert!(circuits(&r).contains(&want));
    // G₂: 3α₁+2α₂ = 2(α₁+α₂) + α₁ with α₁ short.
    let r = rs(RootType::G, 2);
    assert!(circuits(&r).contains(&mclass(&r, &[(Orbit::Nat, 1), (Orbit::Sharp, -3)])));
}

#[test]
fn m_c_examples() {
    let r = rs(RootType::BC, 1);
    let all = circuits(&r);
    let rational = ParamPoint::rational(&[qr(1, 3), qr(2, 5)]);
    assert_eq!(m_c(&all, &rational), all);
    let t = |v: Vec<Q>| ParamValue::new(q(0), v);
    let diag = ParamPoint {
        values: vec![t(vec![q(1)]), t(vec![q(1)])],
    };
    assert_eq!(
        m_c(&all, &diag),
        vec![mclass(&r, &[(Orbit::Sharp, 1), (Orbit::Flat, -1)])]
    );
    let indep = ParamPoint {
        values: vec![t(vec![q(1), q(0)]), t(vec![q(0), q(1)])],
    };
    assert!(m_c(&all, &indep).is_empty());
}

#[test]
fn stratum_compare_examples() {
    let r = rs(RootType::A, 1);
    let all = circuits(&r);
    let p = |x: Q| ParamPoint::rational(&[x]);
    let s = stratum_compare(&all, &p(qr(1, 3)), &p(qr(1, 3))).unwrap();
    assert!(s.same && s.open_c && s.open_c2);
    let s = stratum_compare(&all, &p(qr(1, 3)), &p(qr(-2, 3))).unwrap();
    assert!(s.antipodal && !s.same && s.open_c && s.open_c2);
    assert_eq!(s.relation(), "antipodal");
    let s = stratum_compare(&all, &p(qr(1, 2)), &p(qr(5, 2))).unwrap();
    assert!(s.same);
    let s = stratum_compare(&all, &p(q(0)), &p(q(1))).unwrap();
    assert!(!s.open_c && s.open_c2 && s.relation() == "neither");
    assert!(matches!(
        stratum_compare(&all, &p(qr(1, 3)), &p(qr(1, 2))),
        Err(Error::CosetMismatch)
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stratum_compare_laws(sys in 0usize..3, a in -20i64..20, b in -20i64..20, shift in -3i64..3, shift2 in -3i64..3, den in 1i64..6) {
        let r = match sys { 0 => rs(RootType::A, 2), 1 => rs(RootType::BC, 1), _ => rs(RootType::G, 2) };
        let all = circuits(&r);
        let c = ParamPoint::rational(&[qr(a, den), qr(b, den)][..r.n_orb()]);
        let c2 = ParamPoint::rational(&[qr(a, den) + q(shift), qr(b, den) + q(shift2)][..r.n_orb()]);
        let s = stratum_compare(&all, &c, &c).unwrap();
        prop_assert!(s.same);
        let x = stratum_compare(&all, &c, &c2).unwrap();
        let y = stratum_compare(&all, &c2, &c).unwrap();
        prop_assert_eq!(x.relation(), y.relation());
        prop_assert_eq!((x.open_c, x.open_c2), (y.open_c2, y.open_c));
        let c3 = ParamPoint::rational(&[qr(a, den) - q(shift2), qr(b, den) - q(shift)][..r.n_orb()]);
        let z = stratum_compare(&all, &c2, &c3).unwrap();
        if x.antipodal && z.antipodal && x.signs.iter().all(|(_, s, _)| *s != 0) {
            prop_assert!(stratum_compare(&all, &c, &c3).unwrap().same);
        }
    }
}

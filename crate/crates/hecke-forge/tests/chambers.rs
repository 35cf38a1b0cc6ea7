use hecke_forge::chambers::{
    act_chamber, certified_epsilon, dinv, distance, einv, fundamental_chamber, in_interval, is_interior,
    minimal_gallery, minimal_gallery_from, nearby_signs, same_chamber, separating_walls, translate_chamber, Chamber,
    Gallery, Wall,
};
use hecke_forge::exactalg::{q, qr, Poly, Q};
use hecke_forge::rootdata::{build_root_system, AffineRoot, Orbit, RootSystem, RootType};
use num_traits::Signed;
use proptest::prelude::*;

fn rs(ty: RootType, n: usize) -> RootSystem {
    build_root_system(ty, n).unwrap()
}

fn zero(r: &RootSystem) -> Vec<Q> {
    vec![q(0); r.n_orb()]
}

fn render_set(r: &RootSystem, walls: &[Wall]) -> Vec<String> {
    let mut v: Vec<String> = walls.iter().map(|w| w.render(r)).collect();
    v.sort();
    v
}

fn strs(v: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

#[test]
fn a1_fundamental_chamber_signs_match_limit() {
    let r = rs(RootType::A, 1);
    let k0 = fundamental_chamber(&r, &zero(&r));
    assert_eq!(k0.z, vec![qr(1, 4)]);
    assert!(k0.u[0].is_positive() && k0.u[0] < qr(1, 4));
    assert!(is_interior(&r, &k0));
    // Oracle: signs of ±2x+n and ±2x+n−c at (ε′, 1/4) for a much smaller ε′.
    let tiny = Chamber::new(vec![qr(1, 100_000)], vec![qr(1, 4)]);
    for n in -3..=3 {
        for s in [-2, 2] {
            let a = AffineRoot::new(vec![q(s)], q(n), Orbit::Nat);
            for w in [Wall::Phi(a.clone()), Wall::Psi(a.clone())] {
                assert_eq!(
                    w.eval(&r, &k0).is_positive(),
                    w.eval(&r, &tiny).is_positive(),
                    "{}",
                    w.render(&r)
                );
            }
        }
    }
    let near = nearby_signs(&r, &k0, &q(1));
    assert!(near.iter().all(|(w, v)| w.eval(&r, &k0) == *v && v.abs() < q(1)));
}

#[test]
fn bc1_flat_wall_sign() {
    let r = rs(RootType::BC, 1);
    let k0 = fundamental_chamber(&r, &zero(&r));
    let a0 = r.affine_simple[0].clone();
    assert_eq!(a0.orbit, Orbit::Flat);
    let v = Wall::Psi(a0).eval(&r, &k0);
    assert!(v.is_positive());
    let eps = certified_epsilon(&r);
    assert_eq!(v, qr(1, 4) - &eps * qr(1, 3));
}

#[test]
fn a1_distances_and_walls() {
    let r = rs(RootType::A, 1);
    let k0 = fundamental_chamber(&r, &[q(0)]);
    let k1 = fundamental_chamber(&r, &[q(1)]);
    let s1k0 = act_chamber(r.s(1), &k0);
    let sep = separating_walls(&r, &k0, &s1k0);
    assert_eq!(render_set(&r, &sep), strs(&["2*x1", "2*x1 - c_nat", "-2*x1 - c_nat"]));
    assert_eq!(distance(&r, &k0, &s1k0), 3);
    let sep = separating_walls(&r, &k0, &k1);
    assert_eq!(render_set(&r, &sep), strs(&["2*x1 - c_nat", "-2*x1 - c_nat + 1"]));
    assert_eq!(distance(&r, &k0, &k0), 0);
    assert!(same_chamber(&r, &k0, &translate_chamber(&[q(0)], &k0)));
}

#[test]
fn a1_gallery_and_intervals() {
    let r = rs(RootType::A, 1);
    let k0 = fundamental_chamber(&r, &[q(0)]);
    let k1 = fundamental_chamber(&r, &[q(1)]);
    let s1k0 = act_chamber(r.s(1), &k0);
    let g = minimal_gallery(&r, &k0, &s1k0).unwrap();
    assert_eq!(g.len(), 3);
    assert!(g.validate(&r));
    let order: Vec<String> = g.walls.iter().map(|w| w.render(&r)).collect();
    assert_eq!(order, vec!["2*x1 - c_nat", "2*x1", "-2*x1 - c_nat"]);
    let c_alpha = &g.chambers[1];
    assert!(in_interval(&r, c_alpha, &k0, &s1k0));
    assert!(in_interval(&r, &k0, &k0, &s1k0));
    assert!(!in_interval(&r, &s1k0, &k0, &k1));
    assert_ne!(
        distance(&r, &k0, &k1),
        distance(&r, &k0, &s1k0) + distance(&r, &s1k0, &k1)
    );
    assert_eq!(minimal_gallery(&r, &k0, &k0).unwrap().len(), 0);
}

#[test]
fn a1_dinv_values() {
    let r = rs(RootType::A, 1);
    let k0 = fundamental_chamber(&r, &[q(0)]);
    let k1 = fundamental_chamber(&r, &[q(1)]);
    let s1k0 = act_chamber(r.s(1), &k0);
    let names = &r.var_names;
    assert_eq!(dinv(&r, &k0, &s1k0).render(names), "-2*x1 - c_nat");
    assert_eq!(dinv(&r, &s1k0, &k0).render(names), "2*x1 - c_nat");
    assert_eq!(dinv(&r, &k0, &k0), Poly::one());
    // Both Ψ-walls between κ₀ and κ₁ go from + to −.
    assert_eq!(dinv(&r, &k0, &k1), Poly::one());
    assert_eq!(einv(&r, &k0, &s1k0).render(names), "2*x1");
}

#[test]
fn reflection_transports_sign_sets() {
    for (ty, n) in [(RootType::A, 2), (RootType::B, 2), (RootType::BC, 1)] {
        let r = rs(ty, n);
        let d: Vec<Q> = (0..r.n_orb()).map(|k| q(k as i64 % 2)).collect();
        let c = fundamental_chamber(&r, &d);
        for i in 0..=n {
            let w = r.s(i);
            let wc = act_chamber(w, &c);
            for (wall, v) in nearby_signs(&r, &c, &q(2)) {
                let img = wall.act(w);
                assert_eq!(img.eval(&r, &wc), v);
            }
        }
    }
}

#[test]
fn translations_compose() {
    let r = rs(RootType::B, 2);
    let k0 = fundamental_chamber(&r, &zero(&r));
    let d = vec![q(1), q(-1)];
    let e = vec![q(2), q(1)];
    let de: Vec<Q> = d.iter().zip(&e).map(|(a, b)| a + b).collect();
    let lhs = translate_chamber(&d, &translate_chamber(&e, &k0));
    assert_eq!(lhs, translate_chamber(&de, &k0));
    assert!(same_chamber(&r, &lhs, &fundamental_chamber(&r, &de)));
}

#[test]
fn alternative_galleries_are_minimal() {
    let r = rs(RootType::A, 2);
    let k0 = fundamental_chamber(&r, &[q(0)]);
    for w in r.enumerate_weyl(3) {
        let c2 = act_chamber(&w.inverse(), &fundamental_chamber(&r, &[q(1)]));
        for start in [0, 5, 11] {
            let g = minimal_gallery_from(&r, &k0, &c2, start).unwrap();
            assert!(g.validate(&r));
            assert!(g.is_minimal(&r));
        }
    }
}

fn sample_chambers(r: &RootSystem) -> Vec<Chamber> {
    let mut out = Vec::new();
    let ds: Vec<Vec<Q>> = match r.n_orb() {
        1 => vec![vec![q(-1)], vec![q(0)], vec![q(1)]],
        _ => vec![vec![q(0), q(0)], vec![q(1), q(0)], vec![q(0), q(-1)], vec![q(1), q(1)]],
    };
    let ws = r.enumerate_weyl(4);
    for d in &ds {
        let k = fundamental_chamber(r, d);
        for w in ws.iter().step_by(3) {
            out.push(act_chamber(&w.inverse(), &k));
        }
    }
    out
}

fn systems() -> Vec<RootSystem> {
    vec![
        rs(RootType::A, 1),
        rs(RootType::A, 2),
        rs(RootType::B, 2),
        rs(RootType::BC, 1),
    ]
}

fn check_gallery_subintervals(r: &RootSystem, g: &Gallery) -> bool {
    let n = g.chambers.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !in_interval(r, &g.chambers[j], &g.chambers[i], &g.chambers[k]) {
                    return false;
                }
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn interval_identity(sys in 0usize..4, i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let r = &systems()[sys];
        let cs = sample_chambers(r);
        let (a, b, m) = (&cs[i % cs.len()], &cs[j % cs.len()], &cs[k % cs.len()]);
        prop_assert_eq!(distance(r, a, b), distance(r, b, a));
        let dist_rule = distance(r, a, b) == distance(r, a, m) + distance(r, m, b);
        prop_assert_eq!(in_interval(r, m, a, b), dist_rule);
    }

    #[test]
    fn dinv_degrees(sys in 0usize..4, i in 0usize..1000, j in 0usize..1000) {
        let r = &systems()[sys];
        let cs = sample_chambers(r);
        let (a, b) = (&cs[i % cs.len()], &cs[j % cs.len()]);
        let psi = separating_walls(r, a, b).into_iter().filter(|w| !w.is_phi()).count();
        let d1 = dinv(r, a, b);
        let d2 = dinv(r, b, a);
        prop_assert_eq!(d1.degree().unwrap() + d2.degree().unwrap(), psi as u32);
        let prod = &d1 * &d2;
        let walls = separating_walls(r, a, b).into_iter().filter(|w| !w.is_phi())
            .fold(Poly::one(), |acc, w| &acc * &w.poly(r));
        prop_assert!(prod == walls || prod == -&walls);
    }

    #[test]
    fn galleries_are_minimal_with_minimal_subgalleries(sys in 0usize..4, i in 0usize..1000, j in 0usize..1000) {
        let r = &systems()[sys];
        let cs = sample_chambers(r);
        let (a, b) = (&cs[i % cs.len()], &cs[j % cs.len()]);
        let g = minimal_gallery(r, a, b).unwrap();
        prop_assert!(g.validate(r));
        prop_assert_eq!(g.len(), separating_walls(r, a, b).len());
        prop_assert!(check_gallery_subintervals(r, &g));
    }

    #[test]
    fn translation_commutes_with_separation(sys in 0usize..4, i in 0usize..1000, j in 0usize..1000, t in -2i64..=2) {
        let r = &systems()[sys];
        let cs = sample_chambers(r);
        let (a, b) = (&cs[i % cs.len()], &cs[j % cs.len()]);
        let d: Vec<Q> = (0..r.n_orb()).map(|k| q(t + k as i64)).collect();
        let mut lhs: Vec<Wall> = separating_walls(r, a, b).iter().map(|w| w.translate(r, &d)).collect();
        lhs.sort();
        let rhs = separating_walls(r, &translate_chamber(&d, a), &translate_chamber(&d, b));
        prop_assert_eq!(lhs, rhs);
    }
}

use std::collections::BTreeSet;

use hecke_forge::chambers::{act_chamber, fundamental_chamber};
use hecke_forge::clans::{
    antipodal_search, arrangement_regions, clan_regions, cone_generators, deep_coroot, is_generic_clan, kz_depth_bound,
    kz_genericity, local_chambers, phi_c_lambda, Functional, Region,
};
use hecke_forge::exactalg::rational::{dot, sign};
use hecke_forge::exactalg::{q, qr, Q};
use hecke_forge::rootdata::{build_root_system, AffineRoot, RootSystem, RootType};
use hecke_forge::Error;
use num_traits::Zero;
use proptest::prelude::*;

fn rs(ty: RootType, n: usize) -> RootSystem {
    build_root_system(ty, n).unwrap()
}

/// Scans levels `k/2` for `|k| ≤ 40` in every family.
fn phi_oracle(r: &RootSystem, c: &[Q], lambda: &[Q]) -> BTreeSet<AffineRoot> {
    let mut out = BTreeSet::new();
    for f in &r.families {
        for k in -40..=40 {
            let a = f.member(&qr(k, 2));
            if f.admits_level(&a.level) && a.eval(lambda) == c[r.orbit_var(f.orbit)] {
                out.insert(a);
            }
        }
    }
    out
}

/// Sign vectors met on a grid of step `1/den` in `[-b, b]^dim` (points on walls skipped).
fn sampled_signs(fs: &[Functional], dim: usize, b: i64, den: i64) -> BTreeSet<Vec<i8>> {
    let mut out = BTreeSet::new();
    let n = 2 * b * den + 1;
    let total = (n as usize).pow(dim as u32);
    for idx in 0..total {
        let mut rem = idx;
        let p: Vec<Q> = (0..dim)
            .map(|_| {
                let k = (rem % n as usize) as i64;
                rem /= n as usize;
                qr(k - b * den, den) + qr(1, 7 * den)
            })
            .collect();
        let s: Vec<i8> = fs.iter().map(|f| sign(&f.eval(&p))).collect();
        if s.iter().all(|&x| x != 0) {
            out.insert(s);
        }
    }
    out
}

/// Sign vectors of the computed regions.
fn region_signs(regions: &[Region]) -> BTreeSet<Vec<i8>> {
    regions.iter().map(|r| r.signs.clone()).collect()
}

/// Strict feasibility of a cone by a search over small integer directions.
fn has_interior_direction(rows: &[Vec<Q>], dim: usize, b: i64) -> bool {
    let n = (2 * b + 1) as usize;
    (0..n.pow(dim as u32)).any(|idx| {
        let mut rem = idx;
        let h: Vec<Q> = (0..dim)
            .map(|_| {
                let k = (rem % n) as i64 - b;
                rem /= n;
                q(k)
            })
            .collect();
        rows.iter().all(|r| dot(r, &h) > Q::zero())
    })
}

fn recession_rows(r: &Region) -> Vec<Vec<Q>> {
    r.arrangement
        .iter()
        .zip(&r.signs)
        .map(|(f, &s)| f.coeffs.iter().map(|x| x * q(s as i64)).collect())
        .collect()
}

#[test]
fn phi_c_lambda_examples() {
    let a1 = rs(RootType::A, 1);
    assert!(phi_c_lambda(&a1, &[qr(1, 2)], &[q(0)]).is_empty());
    let got: BTreeSet<AffineRoot> = phi_c_lambda(&a1, &[q(1)], &[q(0)]).into_iter().collect();
    let want: BTreeSet<AffineRoot> = [
        AffineRoot::new(vec![q(2)], q(1), a1.orbits[0]),
        AffineRoot::new(vec![q(-2)], q(1), a1.orbits[0]),
    ]
    .into_iter()
    .collect();
    assert_eq!(got, want);
    assert!(phi_c_lambda(&a1, &[qr(1, 3)], &[qr(1, 5)]).is_empty());
}

#[test]
fn phi_c_lambda_matches_level_scan() {
    for (ty, n) in [
        (RootType::A, 2),
        (RootType::BC, 1),
        (RootType::BC, 2),
        (RootType::B, 2),
        (RootType::G, 2),
    ] {
        let r = rs(ty, n);
        for lam in [
            vec![q(0); n],
            (0..n).map(|i| qr(i as i64 + 1, 2)).collect(),
            (0..n).map(|i| qr(1, i as i64 + 3)).collect(),
        ] {
            for cv in [q(0), q(1), qr(1, 2), qr(-3, 2), qr(1, 3)] {
                let c: Vec<Q> = (0..r.n_orb()).map(|k| &cv + qr(k as i64, 2)).collect();
                let got: BTreeSet<AffineRoot> = phi_c_lambda(&r, &c, &lam).into_iter().collect();
                assert_eq!(got, phi_oracle(&r, &c, &lam), "{} {:?} {:?}", r.name(), c, lam);
            }
        }
    }
}

#[test]
fn a1_clans() {
    let r = rs(RootType::A, 1);
    let clans = clan_regions(&r, &[q(1)], &[q(0)]);
    assert_eq!(clans.len(), 3);
    let probe = |x: Q| clans.iter().position(|c| c.contains(std::slice::from_ref(&x))).unwrap();
    let left = probe(q(-1));
    let mid = probe(q(0));
    let right = probe(q(1));
    assert!(left != mid && mid != right && left != right);
    assert!(is_generic_clan(&clans[left]));
    assert!(!is_generic_clan(&clans[mid]));
    assert!(is_generic_clan(&clans[right]));
    assert!(clans[mid].contains(&[qr(49, 100)]) && !clans[mid].contains(&[qr(1, 2)]));
    assert!(clans[mid].rays.is_empty() && clans[mid].lineality.is_empty());
    assert_eq!(clans[right].rays, vec![vec![q(1)]]);
}

#[test]
fn empty_arrangement_is_one_generic_clan() {
    for (ty, n, c) in [
        (RootType::A, 1, vec![qr(1, 3)]),
        (RootType::A, 2, vec![qr(2, 5)]),
        (RootType::BC, 1, vec![qr(1, 3), qr(1, 3)]),
    ] {
        let r = rs(ty, n);
        let clans = clan_regions(&r, &c, &vec![q(0); n]);
        assert_eq!(clans.len(), 1);
        assert!(is_generic_clan(&clans[0]));
        assert_eq!(clans[0].lineality.len(), n);
    }
}

#[test]
fn bc1_clans() {
    let r = rs(RootType::BC, 1);
    let phi = phi_c_lambda(&r, &[qr(1, 2), qr(1, 2)], &[q(0)]);
    let walls: BTreeSet<Q> = phi.iter().map(|a| -&a.level / &a.bar[0]).collect();
    assert_eq!(walls, [qr(-1, 2), qr(1, 2)].into_iter().collect());
    let clans = clan_regions(&r, &[qr(1, 2), qr(1, 2)], &[q(0)]);
    assert_eq!(clans.len(), 3);
    let generic: Vec<bool> = [q(-1), q(0), q(1)]
        .iter()
        .map(|x| is_generic_clan(clans.iter().find(|c| c.contains(std::slice::from_ref(x))).unwrap()))
        .collect();
    assert_eq!(generic, vec![true, false, true]);
}

#[test]
fn clans_match_grid_sampling_and_genericity_oracle() {
    for (ty, n) in [(RootType::A, 2), (RootType::B, 2), (RootType::BC, 2), (RootType::G, 2)] {
        let r = rs(ty, n);
        for (cv, lam) in [
            (q(1), vec![q(0), q(0)]),
            (q(0), vec![qr(1, 2), q(0)]),
            (q(1), vec![qr(1, 3), qr(1, 2)]),
        ] {
            let c = vec![cv.clone(); r.n_orb()];
            let clans = clan_regions(&r, &c, &lam);
            let fs = &clans[0].arrangement;
            assert_eq!(
                region_signs(&clans),
                sampled_signs(fs, 2, 4, 12),
                "{} {:?}",
                r.name(),
                lam
            );
            for cl in &clans {
                assert!(cl.contains(&cl.point));
                let rows = recession_rows(cl);
                assert_eq!(is_generic_clan(cl), has_interior_direction(&rows, 2, 6), "{}", r.name());
                for g in cl.rays.iter().chain(&cl.lineality) {
                    assert!(cl.in_recession_cone(g));
                }
            }
        }
    }
}

#[test]
fn generic_clans_are_stable_under_recession_shifts() {
    let r = rs(RootType::A, 2);
    for cl in clan_regions(&r, &[q(1)], &[q(0), q(0)])
        .iter()
        .filter(|c| is_generic_clan(c))
    {
        for g in &cl.rays {
            for t in 1..6 {
                let p: Vec<Q> = cl.point.iter().zip(g).map(|(x, y)| x + q(t) * y).collect();
                assert!(cl.contains(&p));
            }
        }
    }
}

#[test]
fn local_chambers_a1_at_origin() {
    let r = rs(RootType::A, 1);
    let local = local_chambers(&r, &[q(0)], &[q(0)]);
    assert_eq!(local.phi.len(), 1);
    assert_eq!(local.psi.len(), 2);
    assert_eq!(local.regions.len(), 6);
    let fs = &local.regions[0].arrangement;
    assert_eq!(fs.len(), 3);
    assert_eq!(region_signs(&local.regions), sampled_signs(fs, 2, 2, 8));
    for reg in &local.regions {
        let anti = local
            .antipode(local.regions.iter().position(|x| x == reg).unwrap())
            .unwrap();
        assert!(local.are_antipodal(anti, local.antipode(anti).unwrap()));
    }
}

#[test]
fn local_chambers_empty_and_sampled() {
    let r = rs(RootType::A, 1);
    let local = local_chambers(&r, &[qr(1, 3)], &[qr(1, 5)]);
    assert_eq!(local.regions.len(), 1);
    let z = vec![q(0)];
    let k0 = fundamental_chamber(&r, &z);
    let k1 = fundamental_chamber(&r, &[q(3)]);
    assert_eq!(local.widetilde(&k0).unwrap(), local.widetilde(&k1).unwrap());
    let r = rs(RootType::BC, 1);
    let local = local_chambers(&r, &[qr(1, 2), q(0)], &[q(0)]);
    let fs = &local.regions[0].arrangement;
    assert_eq!(region_signs(&local.regions), sampled_signs(fs, 3, 2, 6));
}

#[test]
fn widetilde_of_fundamental_chamber_follows_root_signs() {
    for (ty, n) in [(RootType::A, 1), (RootType::A, 2), (RootType::BC, 1), (RootType::B, 2)] {
        let r = rs(ty, n);
        let zero = vec![q(0); r.n_orb()];
        let local = local_chambers(&r, &zero, &vec![q(0); n]);
        let k0 = fundamental_chamber(&r, &zero);
        let reg = &local.regions[local.widetilde(&k0).unwrap()];
        let np = local.phi.len();
        for (a, s) in local.psi.iter().zip(&reg.signs[np..]) {
            assert_eq!(*s, sign(&a.eval(&r.z0)), "{}", r.name());
        }
    }
}

#[test]
fn antipodal_search_examples() {
    let r = rs(RootType::A, 1);
    let e = r.identity();
    assert_eq!(
        antipodal_search(&r, &[q(0)], &[q(0)], &[q(0)], &e, 3).unwrap(),
        r.s(1).clone()
    );
    assert_eq!(
        antipodal_search(&r, &[qr(1, 3)], &[qr(1, 5)], &[q(0)], &e, 3).unwrap(),
        e
    );
    let s0 = r.s(0).clone();
    assert!(matches!(
        antipodal_search(&r, &[q(1)], &[q(0)], &[q(-1)], &s0, 2),
        Err(Error::LengthBoundExceeded { bound: 2, .. })
    ));
    let y = antipodal_search(&r, &[q(1)], &[q(0)], &[q(-1)], &s0, 3).unwrap();
    assert_eq!(r.length(&y), 3);
    // exhaustive oracle: nothing of length ≤ 2 works
    let local = local_chambers(&r, &[q(1)], &[q(0)]);
    let src = local
        .widetilde(&act_chamber(&s0.inverse(), &fundamental_chamber(&r, &[q(0)])))
        .unwrap();
    for y2 in r.enumerate_weyl(2) {
        let t = local
            .widetilde(&act_chamber(&y2.inverse(), &fundamental_chamber(&r, &[q(-1)])))
            .unwrap();
        assert!(!local.are_antipodal(src, t));
    }
}

#[test]
fn antipodes_exist_for_antipodal_strata() {
    // c and c − d lie in antipodal open strata in each case.
    let cases: Vec<(RootSystem, Vec<Q>, Vec<Q>)> = vec![
        (rs(RootType::A, 1), vec![q(1)], vec![q(2)]),
        (rs(RootType::A, 1), vec![q(-1)], vec![q(-2)]),
        (rs(RootType::A, 2), vec![q(1)], vec![q(2)]),
        (rs(RootType::BC, 1), vec![q(1), qr(1, 2)], vec![q(2), q(1)]),
    ];
    for (r, c, d) in cases {
        let n = r.rank;
        for lam in [vec![q(0); n], vec![qr(1, 2); n]] {
            for w in r.enumerate_weyl(2) {
                let found = antipodal_search(&r, &c, &lam, &d, &w, 6);
                assert!(found.is_ok(), "{} {:?} {}", r.name(), lam, r.word_string(&w));
            }
        }
    }
}

#[test]
fn kz_examples() {
    let r = rs(RootType::A, 1);
    let e = r.identity();
    let alpha_check = r.coroot(&r.simple[0]);
    let g: Vec<Q> = alpha_check.iter().map(|x| x * q(-3)).collect();
    let rep = kz_genericity(&r, &[q(1)], &[q(0)], &g, std::slice::from_ref(&e));
    assert_eq!(rep.entries[0].point, vec![qr(1, 4) + q(3)]);
    assert!(rep.all_generic());
    let rep = kz_genericity(&r, &[q(1)], &[q(0)], &[q(0)], std::slice::from_ref(&e));
    assert_eq!(rep.entries[0].point, vec![qr(1, 4)]);
    assert!(!rep.all_generic());
    let rep = kz_genericity(&r, &[qr(1, 3)], &[q(0)], &[q(0)], &r.enumerate_weyl(3));
    assert!(rep.all_generic());
}

#[test]
fn deep_coroots_are_generic_for_all_short_words() {
    for (ty, n) in [
        (RootType::A, 1),
        (RootType::A, 2),
        (RootType::BC, 1),
        (RootType::B, 2),
        (RootType::G, 2),
    ] {
        let r = rs(ty, n);
        let ws = r.enumerate_weyl(3);
        for (cv, lam) in [(q(1), vec![q(0); n]), (q(2), vec![qr(1, 2); n])] {
            let c = vec![cv; r.n_orb()];
            let big = kz_depth_bound(&r, &c, &lam, &ws);
            let rep = kz_genericity(&r, &c, &lam, &deep_coroot(&r, &big), &ws);
            assert!(rep.all_generic(), "{}", r.name());
        }
    }
}

/// Region count of a line arrangement: `1 + n + Σ_p (m_p − 1)` over intersection points.
fn line_arrangement_regions(lines: &[Functional]) -> usize {
    let mut points: Vec<(Vec<Q>, BTreeSet<usize>)> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b) = (&lines[i], &lines[j]);
            let d = &a.coeffs[0] * &b.coeffs[1] - &a.coeffs[1] * &b.coeffs[0];
            if d.is_zero() {
                continue;
            }
            let x = (&a.coeffs[1] * &b.constant - &b.coeffs[1] * &a.constant) / &d;
            let y = (&b.coeffs[0] * &a.constant - &a.coeffs[0] * &b.constant) / &d;
            let p = vec![x, y];
            match points.iter_mut().find(|(q, _)| *q == p) {
                Some((_, s)) => {
                    s.insert(i);
                    s.insert(j);
                }
                None => points.push((p, [i, j].into_iter().collect())),
            }
        }
    }
    1 + lines.len() + points.iter().map(|(_, s)| s.len() - 1).sum::<usize>()
}

/// Extreme rays of a pointed cone by brute force over `dim − 1` subsets.
fn brute_rays(rows: &[Vec<Q>], dim: usize) -> BTreeSet<Vec<Q>> {
    let mut out = BTreeSet::new();
    let m = rows.len();
    let mut idx: Vec<usize> = (0..dim - 1).collect();
    if m < dim - 1 {
        return out;
    }
    loop {
        let sub: Vec<Vec<Q>> = idx.iter().map(|&i| rows[i].clone()).collect();
        // kernel of a (dim−1)×dim system via cofactors
        let v: Vec<Q> = (0..dim)
            .map(|j| {
                let minor: Vec<Vec<Q>> = sub
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { q(1) } else { q(-1) };
                s * det(&minor)
            })
            .collect();
        if v.iter().any(|x| !x.is_zero()) {
            for cand in [v.clone(), v.iter().map(|x| -x).collect::<Vec<Q>>()] {
                if rows.iter().all(|r| dot(r, &cand) >= Q::zero()) {
                    let lead = cand.iter().find(|x| !x.is_zero()).unwrap().clone();
                    let lead = if lead < Q::zero() { -lead } else { lead };
                    out.insert(cand.iter().map(|x| x / &lead).collect());
                }
            }
        }
        let mut k = dim - 1;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] < m - (dim - 1 - k) {
                idx[k] += 1;
                for t in k + 1..dim - 1 {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}

fn det(m: &[Vec<Q>]) -> Q {
    if m.is_empty() {
        return q(1);
    }
    let mut acc = q(0);
    for j in 0..m.len() {
        let minor: Vec<Vec<Q>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let s = if j % 2 == 0 { q(1) } else { q(-1) };
        acc += s * &m[0][j] * det(&minor);
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cone_generators_match_brute_force(entries in prop::collection::vec(-3i64..=3, 3..=18)) {
        let dim = 3;
        let mut rows: Vec<Vec<Q>> = entries.chunks(dim).filter(|c| c.len() == dim).map(|c| c.iter().map(|&x| q(x)).collect()).collect();
        // make the cone pointed
        for i in 0..dim {
            rows.push((0..dim).map(|j| if i == j { q(1) } else { q(0) }).collect());
        }
        let (lin, rays) = cone_generators(&rows, dim);
        prop_assert!(lin.is_empty());
        let got: BTreeSet<Vec<Q>> = rays.into_iter().collect();
        prop_assert_eq!(got, brute_rays(&rows, dim));
    }

    #[test]
    fn regions_realize_their_signs(ws in prop::collection::vec((-3i64..=3, -3i64..=3, -4i64..=4), 1..5)) {
        let fs: Vec<Functional> = ws.iter().filter(|(a, b, _)| *a != 0 || *b != 0).map(|&(a, b, c)| Functional::new(vec![q(a), q(b)], qr(c, 2))).collect();
        prop_assume!(!fs.is_empty());
        let regions = arrangement_regions(&fs, 2);
        let distinct: BTreeSet<Vec<i8>> = region_signs(&regions);
        prop_assert_eq!(distinct.len(), regions.len());
        for reg in &regions {
            prop_assert!(reg.contains(&reg.point));
        }
        // every sample point off the walls falls in some region's closure
        for x in -8..=8 {
            for y in -8..=8 {
                let p = vec![qr(x, 2) + qr(1, 97), qr(y, 2) + qr(1, 89)];
                prop_assert!(regions.iter().any(|r| r.closure_contains(&p)));
            }
        }
        let arr = &regions[0].arrangement;
        prop_assert!(sampled_signs(arr, 2, 6, 8).is_subset(&distinct));
        prop_assert_eq!(regions.len(), line_arrangement_regions(arr));
    }
}

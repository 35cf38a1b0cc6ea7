//! Clans of `𝔥¹` for a fixed `(c, λ)`, their salient cones and genericity,
//! the finite local arrangement `Ch^{c,λ}(𝔞)`, antipodal local chambers and
//! the genericity test behind the KZ idempotent.
//!
//! All feasibility questions are decided by Fourier–Motzkin elimination over
//! `ℚ`; recession cones are generated by the double description method.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::chambers::{act_chamber, fundamental_chamber, Chamber};
use crate::error::{Error, Result};
use crate::exactalg::rational::{dot, q_to_string, sign, Q};
use crate::rootdata::{AffineRoot, RootSystem, WeylElem};

/// An affine functional `h ↦ coeffs·h + constant`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Functional {
    pub coeffs: Vec<Q>,
    pub constant: Q,
}

impl Functional {
    pub fn new(coeffs: Vec<Q>, constant: Q) -> Self {
        Functional { coeffs, constant }
    }

    pub fn eval(&self, h: &[Q]) -> Q {
        dot(&self.coeffs, h) + &self.constant
    }

    pub fn linear_eval(&self, h: &[Q]) -> Q {
        dot(&self.coeffs, h)
    }

    /// Key identifying the hyperplane `{self = 0}` (scale-free, sign-free).
    fn hyperplane_key(&self) -> Option<(Vec<Q>, Q)> {
        let lead = self.coeffs.iter().find(|x| !x.is_zero())?.clone();
        Some((self.coeffs.iter().map(|x| x / &lead).collect(), &self.constant / &lead))
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut s = String::new();
        for (c, name) in self.coeffs.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&format!("{}*", q_to_string(&mag)));
            }
            s.push_str(name);
        }
        if !self.constant.is_zero() || s.is_empty() {
            if s.is_empty() {
                s.push_str(&q_to_string(&self.constant));
            } else {
                s.push_str(if self.constant.is_negative() { " - " } else { " + " });
                s.push_str(&q_to_string(&self.constant.abs()));
            }
        }
        s
    }
}

/// A linear inequality `coeffs·h + constant > 0` (strict) or `≥ 0`.
#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<Q>,
    constant: Q,
    strict: bool,
}

/// Keeps the tightest inequality per direction, after positive rescaling.
fn normalize(ineqs: Vec<Ineq>) -> std::result::Result<Vec<Ineq>, ()> {
    let mut best: BTreeMap<Vec<Q>, (Q, bool)> = BTreeMap::new();
    for e in ineqs {
        let Some(lead) = e.coeffs.iter().find(|x| !x.is_zero()).map(|x| x.abs()) else {
            let ok = if e.strict {
                e.constant.is_positive()
            } else {
                !e.constant.is_negative()
            };
            if !ok {
                return Err(());
            }
            continue;
        };
        let coeffs: Vec<Q> = e.coeffs.iter().map(|x| x / &lead).collect();
        let constant = &e.constant / &lead;
        match best.get_mut(&coeffs) {
            Some(slot) => {
                if constant < slot.0 || (constant == slot.0 && e.strict) {
                    let strict = e.strict || (constant == slot.0 && slot.1);
                    *slot = (constant, strict);
                }
            }
            None => {
                best.insert(coeffs, (constant, e.strict));
            }
        }
    }
    Ok(best
        .into_iter()
        .map(|(coeffs, (constant, strict))| Ineq {
            coeffs,
            constant,
            strict,
        })
        .collect())
}

/// Eliminates the last variable.
fn eliminate_last(ineqs: &[Ineq]) -> std::result::Result<Vec<Ineq>, ()> {
    let k = ineqs.first().map(|e| e.coeffs.len()).unwrap_or(0);
    if k == 0 {
        return Ok(Vec::new());
    }
    let last = k - 1;
    let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for e in ineqs {
        let a = &e.coeffs[last];
        let trunc = Ineq {
            coeffs: e.coeffs[..last].to_vec(),
            constant: e.constant.clone(),
            strict: e.strict,
        };
        if a.is_positive() {
            lower.push((a.clone(), trunc));
        } else if a.is_negative() {
            upper.push((-a.clone(), trunc));
        } else {
            rest.push(trunc);
        }
    }
    for (a, l) in &lower {
        for (b, u) in &upper {
            // a·x_k + l ≥ 0 and −b·x_k + u ≥ 0 combine to b·l + a·u ≥ 0.
            let coeffs = l.coeffs.iter().zip(&u.coeffs).map(|(x, y)| b * x + a * y).collect();
            rest.push(Ineq {
                coeffs,
                constant: b * &l.constant + a * &u.constant,
                strict: l.strict || u.strict,
            });
        }
    }
    normalize(rest)
}

/// A point satisfying all inequalities in `dim` unknowns, or `None`.
fn feasible_point(ineqs: Vec<Ineq>, dim: usize) -> Option<Vec<Q>> {
    let mut stages = vec![normalize(ineqs).ok()?];
    for _ in 0..dim {
        let next = eliminate_last(stages.last().expect("nonempty")).ok()?;
        stages.push(next);
    }
    // stages[j] involves the first dim − j variables.
    let mut x: Vec<Q> = Vec::with_capacity(dim);
    for k in 0..dim {
        let stage = &stages[dim - k - 1];
        let mut lo: Option<(Q, bool)> = None;
        let mut hi: Option<(Q, bool)> = None;
        for e in stage {
            if e.coeffs.len() <= k {
                continue;
            }
            let a = &e.coeffs[k];
            if a.is_zero() {
                continue;
            }
            let rest = dot(&e.coeffs[..k], &x) + &e.constant;
            let bound = -rest / a;
            if a.is_positive() {
                if lo
                    .as_ref()
                    .is_none_or(|(v, s)| bound > *v || (bound == *v && e.strict && !s))
                {
                    lo = Some((bound, e.strict));
                }
            } else if hi
                .as_ref()
                .is_none_or(|(v, s)| bound < *v || (bound == *v && e.strict && !s))
            {
                hi = Some((bound, e.strict));
            }
        }
        let v = match (lo, hi) {
            (Some((l, _)), Some((h, _))) => (l + h) / Q::from_integer(2.into()),
            (Some((l, _)), None) => Q::from_integer(l.floor().to_integer() + 1),
            (None, Some((h, _))) => Q::from_integer(h.ceil().to_integer() - 1),
            (None, None) => Q::zero(),
        };
        x.push(v);
    }
    Some(x)
}

/// True when some point realizes the strict sign pattern on the functionals.
fn realize(functionals: &[Functional], signs: &[i8], dim: usize) -> Option<Vec<Q>> {
    let ineqs = functionals
        .iter()
        .zip(signs)
        .map(|(f, &s)| {
            let s = Q::from_integer(s.into());
            Ineq {
                coeffs: f.coeffs.iter().map(|x| x * &s).collect(),
                constant: &f.constant * &s,
                strict: true,
            }
        })
        .collect();
    feasible_point(ineqs, dim)
}

/// Generators of the cone `{h : A h ≥ 0}`: a lineality basis and the extreme
/// rays of the pointed part, by the double description method.
pub fn cone_generators(rows: &[Vec<Q>], dim: usize) -> (Vec<Vec<Q>>, Vec<Vec<Q>>) {
    let mut lin: Vec<Vec<Q>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    let mut rays: Vec<Vec<Q>> = Vec::new();
    let mut seen: Vec<Vec<Q>> = Vec::new();
    for a in rows {
        if a.iter().all(|x| x.is_zero()) {
            continue;
        }
        if let Some(p) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lin.remove(p);
            if dot(a, &l0).is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
            }
            let al0 = dot(a, &l0);
            let project = |v: &Vec<Q>| -> Vec<Q> {
                let f = dot(a, v) / &al0;
                v.iter().zip(&l0).map(|(x, y)| x - &f * y).collect()
            };
            lin = lin.iter().map(project).collect();
            rays = rays.iter().map(project).collect();
            rays.push(l0);
        } else {
            let vals: Vec<Q> = rays.iter().map(|r| dot(a, r)).collect();
            let mut next: Vec<Vec<Q>> = Vec::new();
            for (r, v) in rays.iter().zip(&vals) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            let target = dim - lin.len();
            for (i, p) in rays.iter().enumerate() {
                if !vals[i].is_positive() {
                    continue;
                }
                for (j, n) in rays.iter().enumerate() {
                    if !vals[j].is_negative() {
                        continue;
                    }
                    let tight: Vec<Vec<Q>> = seen
                        .iter()
                        .filter(|s| dot(s, p).is_zero() && dot(s, n).is_zero())
                        .cloned()
                        .collect();
                    if rank(&tight) + 2 < target {
                        continue;
                    }
                    let comb = p.iter().zip(n).map(|(x, y)| &vals[i] * y - &vals[j] * x).collect();
                    next.push(comb);
                }
            }
            rays = next;
        }
        seen.push(a.clone());
        rays = dedup_rays(rays);
    }
    (lin.into_iter().map(|v| scale_primitive(&v)).collect(), rays)
}

fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut r = 0;
    let cols = m.first().map(|x| x.len()).unwrap_or(0);
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &piv;
                let row_r = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row_r) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

fn scale_primitive(v: &[Q]) -> Vec<Q> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let lead = lead.abs();
            v.iter().map(|x| x / &lead).collect()
        }
        None => v.to_vec(),
    }
}

fn dedup_rays(rays: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let mut out: Vec<Vec<Q>> = rays
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| scale_primitive(&r))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// A connected component of the complement of a finite hyperplane arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    /// The defining arrangement, one functional per hyperplane.
    pub arrangement: Vec<Functional>,
    /// Sign of each functional on the region.
    pub signs: Vec<i8>,
    /// A rational interior point.
    pub point: Vec<Q>,
    /// Lineality basis of the recession cone (each direction counts with both signs).
    pub lineality: Vec<Vec<Q>>,
    /// Extreme rays of the pointed part of the recession cone.
    pub rays: Vec<Vec<Q>>,
}

impl Region {
    pub fn dim(&self) -> usize {
        self.point.len()
    }

    /// True when the point lies in the open region.
    pub fn contains(&self, h: &[Q]) -> bool {
        self.arrangement
            .iter()
            .zip(&self.signs)
            .all(|(f, &s)| sign(&f.eval(h)) == s)
    }

    /// True when the point lies in the closure.
    pub fn closure_contains(&self, h: &[Q]) -> bool {
        self.arrangement.iter().zip(&self.signs).all(|(f, &s)| {
            let v = sign(&f.eval(h));
            v == 0 || v == s
        })
    }

    /// Rows `sᵢ·ᾱᵢ` cutting out the recession cone.
    fn recession_rows(&self) -> Vec<Vec<Q>> {
        self.arrangement
            .iter()
            .zip(&self.signs)
            .map(|(f, &s)| f.coeffs.iter().map(|x| x * Q::from_integer(s.into())).collect())
            .collect()
    }

    /// True when `h` lies in the recession (salient) cone.
    pub fn in_recession_cone(&self, h: &[Q]) -> bool {
        self.recession_rows().iter().all(|r| !dot(r, h).is_negative())
    }
}

/// Regions of the arrangement cut out by the distinct hyperplanes among `functionals`.
pub fn arrangement_regions(functionals: &[Functional], dim: usize) -> Vec<Region> {
    let mut arrangement: Vec<Functional> = Vec::new();
    let mut keys = Vec::new();
    for f in functionals {
        if let Some(k) = f.hyperplane_key() {
            if !keys.contains(&k) {
                keys.push(k);
                arrangement.push(f.clone());
            }
        }
    }
    let mut patterns: Vec<Vec<i8>> = vec![Vec::new()];
    for i in 0..arrangement.len() {
        let prefix = &arrangement[..=i];
        patterns = patterns
            .par_iter()
            .flat_map_iter(|p| {
                [1i8, -1].into_iter().filter_map(move |s| {
                    let mut q = p.clone();
                    q.push(s);
                    realize(prefix, &q, dim).map(|_| q)
                })
            })
            .collect();
    }
    patterns.sort();
    patterns
        .into_par_iter()
        .map(|signs| {
            let point = realize(&arrangement, &signs, dim).expect("pattern is feasible");
            let mut region = Region {
                arrangement: arrangement.clone(),
                signs,
                point,
                lineality: Vec::new(),
                rays: Vec::new(),
            };
            let (lineality, rays) = cone_generators(&region.recession_rows(), dim);
            region.lineality = lineality;
            region.rays = rays;
            region
        })
        .collect()
}

/// Index of the region containing `h`, if `h` lies on no hyperplane.
pub fn locate(regions: &[Region], h: &[Q]) -> Option<usize> {
    regions.iter().position(|r| r.contains(h))
}

/// `Φ_{c,λ} = {α ∈ Φ : α(λ) = c_α}`: one candidate level per finite covector class.
pub fn phi_c_lambda(rs: &RootSystem, c: &[Q], lambda: &[Q]) -> Vec<AffineRoot> {
    rs.families
        .iter()
        .filter_map(|f| {
            let level = &c[rs.orbit_var(f.orbit)] - dot(&f.bar, lambda);
            f.admits_level(&level)
                .then(|| AffineRoot::new(f.bar.clone(), level, f.orbit))
        })
        .collect()
}

/// `Φ_λ = {α ∈ Φ : α(λ) = 0}`, positive representatives only.
pub fn phi_lambda(rs: &RootSystem, lambda: &[Q]) -> Vec<AffineRoot> {
    rs.positive_families()
        .filter_map(|f| {
            let level = -dot(&f.bar, lambda);
            f.admits_level(&level)
                .then(|| AffineRoot::new(f.bar.clone(), level, f.orbit))
        })
        .collect()
}

/// The `(c, λ)`-clans: regions of `{H_α : α ∈ Φ_{c,λ}}` on `𝔥¹`.
pub fn clan_regions(rs: &RootSystem, c: &[Q], lambda: &[Q]) -> Vec<Region> {
    let fs: Vec<Functional> = phi_c_lambda(rs, c, lambda)
        .into_iter()
        .map(|a| Functional::new(a.bar, a.level))
        .collect();
    arrangement_regions(&fs, rs.rank)
}

/// A clan is generic when its salient cone is full-dimensional.
pub fn is_generic_clan(r: &Region) -> bool {
    let rows = r.recession_rows();
    let ineqs = rows
        .into_iter()
        .map(|coeffs| Ineq {
            coeffs,
            constant: Q::zero(),
            strict: true,
        })
        .collect();
    feasible_point(ineqs, r.dim()).is_some()
}

/// The finite arrangement `{H_φ : φ ∈ Φ_λ ∪ Ψ_{c,λ}}` on `𝔞` and its chambers.
#[derive(Clone, Debug)]
pub struct LocalArrangement {
    pub phi: Vec<AffineRoot>,
    pub psi: Vec<AffineRoot>,
    pub regions: Vec<Region>,
}

fn phi_functional(rs: &RootSystem, a: &AffineRoot) -> Functional {
    let mut coeffs = vec![Q::zero(); rs.n_orb()];
    coeffs.extend(a.bar.iter().cloned());
    Functional::new(coeffs, a.level.clone())
}

fn psi_functional(rs: &RootSystem, a: &AffineRoot) -> Functional {
    let mut f = phi_functional(rs, a);
    f.coeffs[rs.orbit_var(a.orbit)] = -Q::one();
    f
}

fn chamber_point(c: &Chamber) -> Vec<Q> {
    c.u.iter().chain(&c.z).cloned().collect()
}

/// `Ch^{c,λ}(𝔞)` for rational `c` and `λ`. Coordinates on `𝔞` follow the
/// variable order: orbit parameters, then `x₁, …, x_r`.
pub fn local_chambers(rs: &RootSystem, c: &[Q], lambda: &[Q]) -> LocalArrangement {
    let phi = phi_lambda(rs, lambda);
    let psi = phi_c_lambda(rs, c, lambda);
    let fs: Vec<Functional> = phi
        .iter()
        .map(|a| phi_functional(rs, a))
        .chain(psi.iter().map(|a| psi_functional(rs, a)))
        .collect();
    let regions = arrangement_regions(&fs, rs.nvars());
    LocalArrangement { phi, psi, regions }
}

impl LocalArrangement {
    /// `C̃`: the index of the local chamber containing the global chamber `C`.
    pub fn widetilde(&self, c: &Chamber) -> Result<usize> {
        locate(&self.regions, &chamber_point(c))
            .ok_or_else(|| Error::InternalBasisError("chamber point lies on a local wall".into()))
    }

    /// Index of the chamber with the opposite sign vector.
    pub fn antipode(&self, i: usize) -> Option<usize> {
        let want: Vec<i8> = self.regions[i].signs.iter().map(|s| -s).collect();
        self.regions.iter().position(|r| r.signs == want)
    }

    pub fn are_antipodal(&self, i: usize, j: usize) -> bool {
        self.regions[i]
            .signs
            .iter()
            .zip(&self.regions[j].signs)
            .all(|(a, b)| *a == -*b)
    }
}

/// Finds `y` with `ℓ(y) ≤ max_len` such that `(y⁻¹κ_d)~` is antipodal to `(w⁻¹κ₀)~`.
pub fn antipodal_search(
    rs: &RootSystem,
    c: &[Q],
    lambda: &[Q],
    d: &[Q],
    w: &WeylElem,
    max_len: usize,
) -> Result<WeylElem> {
    let local = local_chambers(rs, c, lambda);
    let zero = vec![Q::zero(); rs.n_orb()];
    let src = local.widetilde(&act_chamber(&w.inverse(), &fundamental_chamber(rs, &zero)))?;
    let kd = fundamental_chamber(rs, d);
    for y in rs.enumerate_weyl(max_len) {
        let tgt = local.widetilde(&act_chamber(&y.inverse(), &kd))?;
        if local.are_antipodal(src, tgt) {
            return Ok(y);
        }
    }
    Err(Error::LengthBoundExceeded {
        bound: max_len,
        needed: max_len + 1,
    })
}

/// One row of a KZ genericity report.
#[derive(Clone, Debug)]
pub struct KzEntry {
    pub w: WeylElem,
    /// `w⁻¹ν₀ − w⁻¹γ`.
    pub point: Vec<Q>,
    pub clan: Option<usize>,
    pub generic: bool,
}

#[derive(Clone, Debug)]
pub struct KzReport {
    pub clans: Vec<Region>,
    pub entries: Vec<KzEntry>,
}

impl KzReport {
    pub fn all_generic(&self) -> bool {
        self.entries.iter().all(|e| e.generic)
    }
}

/// Locates `w⁻¹ν₀ − w⁻¹γ` among the clans for each `w` and tests genericity.
pub fn kz_genericity(rs: &RootSystem, c: &[Q], lambda: &[Q], gamma: &[Q], wlist: &[WeylElem]) -> KzReport {
    let clans = clan_regions(rs, c, lambda);
    let generic: Vec<bool> = clans.iter().map(is_generic_clan).collect();
    let entries = wlist
        .iter()
        .map(|w| {
            let wi = w.inverse();
            let p = wi.apply_point(&rs.z0);
            let g = wi.apply_vector(gamma);
            let point: Vec<Q> = p.iter().zip(&g).map(|(a, b)| a - b).collect();
            let clan = locate(&clans, &point);
            KzEntry {
                w: w.clone(),
                point,
                clan,
                generic: clan.is_some_and(|i| generic[i]),
            }
        })
        .collect();
    KzReport { clans, entries }
}

/// A depth `N` past which `γ = −N·2ρ^∨` makes every `w` in `wlist` generic:
/// one more than the largest `|α(w⁻¹ν₀)|` over `α ∈ Φ_{c,λ}`.
pub fn kz_depth_bound(rs: &RootSystem, c: &[Q], lambda: &[Q], wlist: &[WeylElem]) -> Q {
    let phi = phi_c_lambda(rs, c, lambda);
    let mut m = Q::zero();
    for w in wlist {
        let p = w.inverse().apply_point(&rs.z0);
        for a in &phi {
            m = m.max(a.eval(&p).abs());
        }
    }
    m + Q::one()
}

/// `γ = −N·2ρ^∨ ∈ Q^∨`, which pairs to at most `−2N` with every positive root.
pub fn deep_coroot(rs: &RootSystem, n: &Q) -> Vec<Q> {
    rs.two_rho_check().iter().map(|x| -(x * n)).collect()
}

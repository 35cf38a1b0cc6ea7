//! Root systems, their affinization Φ, and affine Weyl group algorithms.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::rational::{dot, integers_strictly_between, mat_inverse, mat_vec, q, qr, solve, Q};
use crate::exactalg::Poly;

use super::types::{AffineRoot, Family, Orbit, RootType};
use super::weyl::WeylElem;

/// A finite root with its orbit label.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Root {
    pub bar: Vec<Q>,
    pub orbit: Orbit,
    pub reduced: bool,
}

/// Root datum together with the affine data used throughout the crate.
///
/// Polynomial variables are laid out as the orbit parameters (in `orbits`
/// order) followed by `x1..xr`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub ty: RootType,
    pub rank: usize,
    pub gram: Vec<Vec<Q>>,
    pub roots: Vec<Root>,
    pub simple: Vec<Vec<Q>>,
    pub theta: Vec<Q>,
    /// `[α₀, α₁, …, α_n]`.
    pub affine_simple: Vec<AffineRoot>,
    pub orbits: Vec<Orbit>,
    /// Finite parts of Φ with their level offsets, both signs.
    pub families: Vec<Family>,
    pub coroot_basis: Vec<Vec<Q>>,
    pub z0: Vec<Q>,
    pub coxeter: Vec<Vec<Option<u32>>>,
    pub simple_refl: Vec<WeylElem>,
    pub var_names: Vec<String>,
}

fn unit(r: usize, i: usize, v: Q) -> Vec<Q> {
    let mut out = vec![Q::zero(); r];
    out[i] = v;
    out
}

fn vsub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vadd(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vscale(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

fn cartan_e(n: usize) -> Vec<Vec<Q>> {
    // Bourbaki labels: chain 1-3-4-…-n, node 2 attached to 4.
    let mut edges = vec![(1, 3), (2, 4)];
    for i in 3..n {
        edges.push((i, i + 1));
    }
    let mut a = vec![vec![Q::zero(); n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = q(2);
    }
    for (i, j) in edges {
        a[i - 1][j - 1] = q(-1);
        a[j - 1][i - 1] = q(-1);
    }
    a
}

impl RootSystem {
    pub fn build(ty: RootType, rank: usize) -> Result<RootSystem> {
        let admissible = match ty {
            RootType::A => rank >= 1,
            RootType::B | RootType::C => rank >= 2,
            RootType::D => rank >= 4,
            RootType::E => (6..=8).contains(&rank),
            RootType::F => rank == 4,
            RootType::G => rank == 2,
            RootType::BC => rank >= 1,
        };
        let n = rank;
        if !admissible || n + 3 > crate::exactalg::poly::MAX_VARS {
            return Err(Error::Inadmissible {
                ty: ty.to_string(),
                rank,
            });
        }
        let eps = |i: usize, v: i64| unit(n, i, q(v));
        let (gram, simple): (Vec<Vec<Q>>, Vec<Vec<Q>>) = match ty {
            RootType::A => {
                let k = qr(1, n as i64 + 1);
                let gram = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| if i == j { Q::one() - &k } else { -k.clone() })
                            .collect()
                    })
                    .collect();
                let mut simple: Vec<Vec<Q>> = (0..n - 1).map(|i| vsub(&eps(i, 1), &eps(i + 1, 1))).collect();
                let mut last = vec![q(1); n];
                last[n - 1] = q(2);
                simple.push(last);
                (gram, simple)
            }
            RootType::B | RootType::C | RootType::BC => {
                let gram = crate::exactalg::rational::identity(n);
                let mut simple: Vec<Vec<Q>> = (0..n - 1).map(|i| vsub(&eps(i, 1), &eps(i + 1, 1))).collect();
                simple.push(eps(n - 1, if ty == RootType::C { 2 } else { 1 }));
                (gram, simple)
            }
            RootType::D => {
                let gram = crate::exactalg::rational::identity(n);
                let mut simple: Vec<Vec<Q>> = (0..n - 1).map(|i| vsub(&eps(i, 1), &eps(i + 1, 1))).collect();
                simple.push(vadd(&eps(n - 2, 1), &eps(n - 1, 1)));
                (gram, simple)
            }
            RootType::E => {
                let a = cartan_e(n);
                let gram = mat_inverse(&a).expect("Cartan matrix is invertible");
                (gram, a)
            }
            RootType::F => {
                let gram = crate::exactalg::rational::identity(4);
                let h = qr(1, 2);
                let simple = vec![
                    vsub(&eps(1, 1), &eps(2, 1)),
                    vsub(&eps(2, 1), &eps(3, 1)),
                    eps(3, 1),
                    vec![h.clone(), -h.clone(), -h.clone(), -h],
                ];
                (gram, simple)
            }
            RootType::G => {
                let gram = vec![vec![qr(2, 3), qr(-1, 3)], vec![qr(-1, 3), qr(2, 3)]];
                let simple = vec![vec![q(1), q(-1)], vec![q(-3), q(0)]];
                (gram, simple)
            }
        };
        let norm = |v: &[Q]| dot(v, &mat_vec(&gram, v));
        let reflect = |beta: &[Q], alpha: &[Q]| {
            let c = Q::from_integer(BigInt::from(2)) * dot(beta, &mat_vec(&gram, alpha)) / norm(alpha);
            vsub(beta, &vscale(alpha, &c))
        };
        // Closure of Δ under simple reflections gives the reduced roots.
        let mut red: Vec<Vec<Q>> = Vec::new();
        let mut seen: HashSet<Vec<Q>> = HashSet::new();
        let mut frontier: Vec<Vec<Q>> = simple.clone();
        for s in &simple {
            seen.insert(s.clone());
            red.push(s.clone());
        }
        while let Some(b) = frontier.pop() {
            for a in &simple {
                let nb = reflect(&b, a);
                if seen.insert(nb.clone()) {
                    red.push(nb.clone());
                    frontier.push(nb);
                }
            }
        }
        red.sort();
        let mut all: Vec<(Vec<Q>, bool)> = red.iter().map(|v| (v.clone(), true)).collect();
        if ty == RootType::BC {
            for v in &red {
                if norm(v) == q(1) {
                    all.push((vscale(v, &q(2)), false));
                }
            }
        }
        let norms: Vec<Q> = {
            let mut ns: Vec<Q> = all.iter().map(|(v, _)| norm(v)).collect();
            ns.sort();
            ns.dedup();
            ns
        };
        let orbit_of = |v: &[Q]| -> Orbit {
            let nv = norm(v);
            match ty {
                RootType::BC => {
                    if nv == q(1) {
                        Orbit::Sharp
                    } else if nv == q(4) {
                        Orbit::Flat
                    } else {
                        Orbit::Nat
                    }
                }
                _ => {
                    if norms.len() == 1 || nv == norms[norms.len() - 1] {
                        Orbit::Nat
                    } else {
                        Orbit::Sharp
                    }
                }
            }
        };
        let roots: Vec<Root> = all
            .iter()
            .map(|(v, red)| Root {
                bar: v.clone(),
                orbit: orbit_of(v),
                reduced: *red,
            })
            .collect();
        let mut orbits: Vec<Orbit> = roots.iter().map(|r| r.orbit).collect();
        orbits.sort();
        orbits.dedup();

        // Highest root by height.
        let simple_t: Vec<Vec<Q>> = (0..n).map(|i| simple.iter().map(|s| s[i].clone()).collect()).collect();
        let height = |v: &[Q]| -> Q {
            solve(&simple_t, v)
                .expect("simple roots form a basis")
                .iter()
                .fold(Q::zero(), |a, b| a + b)
        };
        let theta = roots
            .iter()
            .max_by(|a, b| height(&a.bar).cmp(&height(&b.bar)))
            .unwrap()
            .clone();
        let alpha0 = if theta.reduced {
            AffineRoot::new(vscale(&theta.bar, &q(-1)), q(1), theta.orbit)
        } else {
            AffineRoot::new(vscale(&theta.bar, &qr(-1, 2)), qr(1, 2), theta.orbit)
        };
        let mut affine_simple = vec![alpha0];
        for s in &simple {
            affine_simple.push(AffineRoot::new(s.clone(), Q::zero(), orbit_of(s)));
        }

        let families: Vec<Family> = roots
            .iter()
            .map(|r| {
                if r.reduced {
                    Family {
                        bar: r.bar.clone(),
                        offset: Q::zero(),
                        orbit: r.orbit,
                    }
                } else {
                    Family {
                        bar: vscale(&r.bar, &qr(1, 2)),
                        offset: qr(1, 2),
                        orbit: r.orbit,
                    }
                }
            })
            .collect();

        let coroot = |v: &[Q]| vscale(&mat_vec(&gram, v), &(q(2) / norm(v)));
        let coroot_basis: Vec<Vec<Q>> = simple
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if ty == RootType::BC && i == n - 1 {
                    coroot(&vscale(s, &q(2)))
                } else {
                    coroot(s)
                }
            })
            .collect();

        // Fundamental alcove vertices: all walls but one vanish.
        let mut z0 = vec![Q::zero(); n];
        for skip in 0..=n {
            let rows: Vec<&AffineRoot> = affine_simple
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, a)| a)
                .collect();
            let m: Vec<Vec<Q>> = rows.iter().map(|a| a.bar.clone()).collect();
            let rhs: Vec<Q> = rows.iter().map(|a| -a.level.clone()).collect();
            let v = solve(&m, &rhs).expect("alcove vertex");
            z0 = vadd(&z0, &v);
        }
        let z0 = vscale(&z0, &qr(1, n as i64 + 1));

        let nn = n + 1;
        let mut coxeter = vec![vec![Some(1u32); nn]; nn];
        for i in 0..nn {
            for j in 0..nn {
                if i == j {
                    continue;
                }
                let a = &affine_simple[i].bar;
                let b = &affine_simple[j].bar;
                let ab = dot(a, &mat_vec(&gram, b));
                let prod = q(4) * &ab * &ab / (norm(a) * norm(b));
                coxeter[i][j] = if prod == q(0) {
                    Some(2)
                } else if prod == q(1) {
                    Some(3)
                } else if prod == q(2) {
                    Some(4)
                } else if prod == q(3) {
                    Some(6)
                } else {
                    None
                };
            }
        }
        let simple_refl = affine_simple.iter().map(|a| WeylElem::reflection(a, &gram)).collect();
        let mut var_names: Vec<String> = orbits.iter().map(|o| o.param_name().to_string()).collect();
        for i in 0..n {
            var_names.push(format!("x{}", i + 1));
        }
        Ok(RootSystem {
            ty,
            rank,
            gram,
            roots,
            simple,
            theta: theta.bar,
            affine_simple,
            orbits,
            families,
            coroot_basis,
            z0,
            coxeter,
            simple_refl,
            var_names,
        })
    }

    /// Number of orbit parameters.
    pub fn n_orb(&self) -> usize {
        self.orbits.len()
    }

    /// Total number of polynomial variables.
    pub fn nvars(&self) -> usize {
        self.orbits.len() + self.rank
    }

    /// Index of the parameter variable of an orbit.
    pub fn orbit_var(&self, o: Orbit) -> usize {
        self.orbits.iter().position(|x| *x == o).expect("orbit present")
    }

    /// Index of the variable `x_{i+1}`.
    pub fn x_var(&self, i: usize) -> usize {
        self.orbits.len() + i
    }

    pub fn norm(&self, v: &[Q]) -> Q {
        dot(v, &mat_vec(&self.gram, v))
    }

    /// Coroot `2Gv/⟨v,v⟩` as a point of 𝔥.
    pub fn coroot(&self, v: &[Q]) -> Vec<Q> {
        let nv = self.norm(v);
        mat_vec(&self.gram, v).into_iter().map(|x| q(2) * x / &nv).collect()
    }

    pub fn root_poly(&self, a: &AffineRoot) -> Poly {
        a.to_poly(self.n_orb())
    }

    pub fn psi_poly(&self, a: &AffineRoot) -> Poly {
        a.psi_poly(self.n_orb(), self.orbit_var(a.orbit))
    }

    /// Membership of an affine root in Φ.
    pub fn in_phi(&self, a: &AffineRoot) -> bool {
        self.families
            .iter()
            .any(|f| f.bar == a.bar && f.orbit == a.orbit && f.admits_level(&a.level))
    }

    pub fn is_positive(&self, a: &AffineRoot) -> bool {
        a.eval(&self.z0) > Q::zero()
    }

    /// Finite covector of the coordinate functional `x_i`.
    pub fn coordinate_functional(&self, i: usize) -> Vec<Q> {
        unit(self.rank, i, Q::one())
    }

    pub fn identity(&self) -> WeylElem {
        WeylElem::identity(self.rank)
    }

    pub fn s(&self, i: usize) -> &WeylElem {
        &self.simple_refl[i]
    }

    pub fn reflection(&self, a: &AffineRoot) -> WeylElem {
        WeylElem::reflection(a, &self.gram)
    }

    pub fn translation(&self, nu: &[Q]) -> WeylElem {
        WeylElem::translation(nu)
    }

    /// Images of all variables under `f ↦ ʷf` (parameters fixed).
    pub fn weyl_images(&self, w: &WeylElem) -> Vec<Poly> {
        let (rows, consts) = w.inverse_coordinate_maps();
        let mut out: Vec<Poly> = (0..self.n_orb()).map(Poly::var).collect();
        for (row, c) in rows.iter().zip(&consts) {
            let mut coeffs = vec![Q::zero(); self.n_orb()];
            coeffs.extend(row.iter().cloned());
            out.push(Poly::linear(&coeffs, c));
        }
        out
    }

    pub fn act_on_poly(&self, w: &WeylElem, f: &Poly) -> Poly {
        f.substitute(&self.weyl_images(w))
    }

    /// Images of variables under `𝐜_* ↦ 𝐜_* − d_*`.
    pub fn shift_images(&self, d: &[Q]) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::with_capacity(self.nvars());
        for (k, dk) in d.iter().enumerate().take(self.n_orb()) {
            let mut p = Poly::var(k);
            p.sub_assign_ref(&Poly::constant(dk.clone()));
            out.push(p);
        }
        for i in 0..self.rank {
            out.push(Poly::var(self.x_var(i)));
        }
        out
    }

    /// Number of Φ-hyperplanes strictly separating two points of 𝔥¹.
    pub fn phi_separation_count(&self, z1: &[Q], z2: &[Q]) -> usize {
        let mut count = 0usize;
        for f in self.families.iter().filter(|f| f.is_positive_representative()) {
            let a = dot(&f.bar, z1) + &f.offset;
            let b = dot(&f.bar, z2) + &f.offset;
            let (lo, hi) = integers_strictly_between(&a, &b);
            if hi >= lo {
                let c: BigInt = hi - lo + 1;
                count += usize::try_from(c).expect("count fits");
            }
        }
        count
    }

    pub fn length(&self, w: &WeylElem) -> usize {
        self.phi_separation_count(&self.z0, &w.apply_point(&self.z0))
    }

    /// True when `ℓ(w s_i) < ℓ(w)`, i.e. `w(α_i) ∈ Φ⁻`.
    pub fn is_right_descent(&self, w: &WeylElem, i: usize) -> bool {
        let z = w.inverse().apply_point(&self.z0);
        self.affine_simple[i].eval(&z) < Q::zero()
    }

    /// Reduced word by greedy right descent in the order `0..=n`.
    pub fn reduced_word(&self, w: &WeylElem) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w.clone();
        while !cur.is_identity() {
            let i = (0..=self.rank)
                .find(|&i| self.is_right_descent(&cur, i))
                .expect("non-identity element has a descent");
            word.push(i);
            cur = cur.compose(self.s(i));
        }
        word.reverse();
        word
    }

    pub fn word_to_elem(&self, word: &[usize]) -> WeylElem {
        word.iter().fold(self.identity(), |acc, &i| acc.compose(self.s(i)))
    }

    /// Elements of length `<= max_len`, by increasing length, each once.
    pub fn enumerate_weyl(&self, max_len: usize) -> Vec<WeylElem> {
        let mut out = vec![self.identity()];
        let mut seen: HashSet<WeylElem> = HashSet::new();
        seen.insert(self.identity());
        let mut layer = vec![self.identity()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for i in 0..=self.rank {
                    if !self.is_right_descent(w, i) {
                        let ws = w.compose(self.s(i));
                        if seen.insert(ws.clone()) {
                            next.push(ws);
                        }
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Bruhat order by the lifting property along a reduced word of `v`.
    pub fn bruhat_leq(&self, u: &WeylElem, v: &WeylElem) -> bool {
        let word = self.reduced_word(v);
        let mut cur = u.clone();
        for &i in word.iter().rev() {
            if self.is_right_descent(&cur, i) {
                cur = cur.compose(self.s(i));
            }
        }
        cur.is_identity()
    }

    /// The element `y` with `z ∈ y·ν₀`, for `z` off all Φ-walls.
    pub fn alcove_of(&self, z: &[Q]) -> WeylElem {
        let mut y = self.identity();
        let mut p = z.to_vec();
        while let Some(i) = (0..=self.rank).find(|&i| self.affine_simple[i].eval(&p) < Q::zero()) {
            p = self.s(i).apply_point(&p);
            y = y.compose(self.s(i));
        }
        y
    }

    /// Word notation such as `s0*s1`, or `e`.
    pub fn word_string(&self, w: &WeylElem) -> String {
        let word = self.reduced_word(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("*")
        }
    }

    /// Positive half-sum of coroots times two, an element of Q^∨.
    pub fn two_rho_check(&self) -> Vec<Q> {
        let mut acc = vec![Q::zero(); self.rank];
        for r in self.roots.iter().filter(|r| r.reduced) {
            let h: Q = {
                let simple_t: Vec<Vec<Q>> = (0..self.rank)
                    .map(|i| self.simple.iter().map(|s| s[i].clone()).collect())
                    .collect();
                solve(&simple_t, &r.bar).unwrap().iter().fold(Q::zero(), |a, b| a + b)
            };
            if h > Q::zero() {
                acc = vadd(&acc, &self.coroot(&r.bar));
            }
        }
        acc
    }

    /// Sign-normalized family list (one per Φ-hyperplane family).
    pub fn positive_families(&self) -> impl Iterator<Item = &Family> {
        self.families.iter().filter(|f| f.is_positive_representative())
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.ty, self.rank)
    }
}

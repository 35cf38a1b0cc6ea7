//! Chambers, walls, separating sets, intervals and minimal galleries of the
//! periodic arrangement `{H_μ : μ ∈ Ψ ∪ Φ}` on `𝔞 = 𝔓_ℝ × 𝔥¹_ℝ`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::rational::{dot, floor_q, integers_strictly_between, q, qr, Q};
use crate::exactalg::Poly;
use crate::rootdata::{AffineRoot, Family, RootSystem, WeylElem};

/// A wall of the arrangement.
///
/// `Phi(α)` is the hyperplane `α = 0`; the stored root is oriented as the
/// context requires (positive representative in separating sets, positive on
/// the source chamber in galleries). `Psi(α)` is the function `α − 𝐜_α`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Wall {
    Phi(AffineRoot),
    Psi(AffineRoot),
}

impl Wall {
    pub fn root(&self) -> &AffineRoot {
        match self {
            Wall::Phi(a) | Wall::Psi(a) => a,
        }
    }

    pub fn is_phi(&self) -> bool {
        matches!(self, Wall::Phi(_))
    }

    /// Value of the wall function at a chamber point.
    pub fn eval(&self, rs: &RootSystem, c: &Chamber) -> Q {
        match self {
            Wall::Phi(a) => a.eval(&c.z),
            Wall::Psi(a) => a.eval(&c.z) - &c.u[orbit_index(rs, a)],
        }
    }

    /// The wall function as a polynomial.
    pub fn poly(&self, rs: &RootSystem) -> Poly {
        match self {
            Wall::Phi(a) => rs.root_poly(a),
            Wall::Psi(a) => rs.psi_poly(a),
        }
    }

    pub fn render(&self, rs: &RootSystem) -> String {
        self.poly(rs).render(&rs.var_names)
    }

    /// Image under `w` (acting on `z` only).
    pub fn act(&self, w: &WeylElem) -> Wall {
        match self {
            Wall::Phi(a) => Wall::Phi(w.act_on_root(a)),
            Wall::Psi(a) => Wall::Psi(w.act_on_root(a)),
        }
    }

    /// Image under `t_d`: `μ ↦ μ ∘ t_d⁻¹`, i.e. levels of Ψ-walls shift by `d`.
    pub fn translate(&self, rs: &RootSystem, d: &[Q]) -> Wall {
        match self {
            Wall::Phi(a) => Wall::Phi(a.clone()),
            Wall::Psi(a) => {
                let mut b = a.clone();
                b.level += &d[orbit_index(rs, a)];
                Wall::Psi(b)
            }
        }
    }
}

fn orbit_index(rs: &RootSystem, a: &AffineRoot) -> usize {
    rs.orbit_var(a.orbit)
}

/// A chamber, represented by a certified interior point `(u, z)`.
///
/// Derived equality compares points; use [`same_chamber`] for chamber equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chamber {
    pub u: Vec<Q>,
    pub z: Vec<Q>,
}

impl Chamber {
    pub fn new(u: Vec<Q>, z: Vec<Q>) -> Self {
        Chamber { u, z }
    }

    fn lerp(&self, o: &Chamber, t: &Q) -> Chamber {
        let mix = |a: &[Q], b: &[Q]| a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect();
        Chamber {
            u: mix(&self.u, &o.u),
            z: mix(&self.z, &o.z),
        }
    }

    pub fn render(&self) -> String {
        let f = |v: &[Q]| {
            v.iter()
                .map(crate::exactalg::q_to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!("(u = [{}], z = [{}])", f(&self.u), f(&self.z))
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Distance from `v` to the nearest integer.
fn dist_to_integer(v: &Q) -> Q {
    let fl = Q::from_integer(floor_q(v));
    let a = v - &fl;
    let b = Q::one() - &a;
    a.min(b)
}

/// Value of the family's base function at a point (without the integer part).
fn family_value(rs: &RootSystem, f: &Family, c: &Chamber, psi: bool) -> Q {
    let mut v = dot(&f.bar, &c.z) + &f.offset;
    if psi {
        v -= &c.u[rs.orbit_var(f.orbit)];
    }
    v
}

/// The fixed generic direction `u₀` in parameter space.
pub fn generic_direction(rs: &RootSystem) -> Vec<Q> {
    (0..rs.n_orb()).map(|k| qr(1, 2 * k as i64 + 1)).collect()
}

/// The perturbation size `ε = m₀ / (2(1 + max|u₀|))`.
pub fn certified_epsilon(rs: &RootSystem) -> Q {
    let m0 = rs
        .positive_families()
        .map(|f| dist_to_integer(&(dot(&f.bar, &rs.z0) + &f.offset)))
        .min()
        .expect("families are nonempty");
    let umax = generic_direction(rs)
        .into_iter()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(Q::zero);
    m0 / (q(2) * (Q::one() + umax))
}

/// `κ_d`, the chamber containing `(d + ε·u₀, z₀)`.
pub fn fundamental_chamber(rs: &RootSystem, d: &[Q]) -> Chamber {
    let eps = certified_epsilon(rs);
    let u = generic_direction(rs)
        .iter()
        .zip(d)
        .map(|(u0, dk)| dk + &eps * u0)
        .collect();
    Chamber { u, z: rs.z0.clone() }
}

/// `w(C)`.
pub fn act_chamber(w: &WeylElem, c: &Chamber) -> Chamber {
    Chamber {
        u: c.u.clone(),
        z: w.apply_point(&c.z),
    }
}

/// `t_d(C)`.
pub fn translate_chamber(d: &[Q], c: &Chamber) -> Chamber {
    Chamber {
        u: c.u.iter().zip(d).map(|(a, b)| a + b).collect(),
        z: c.z.clone(),
    }
}

/// True when no wall vanishes at the point.
pub fn is_interior(rs: &RootSystem, c: &Chamber) -> bool {
    rs.families.iter().all(|f| {
        !dist_to_integer(&family_value(rs, f, c, false)).is_zero()
            && !dist_to_integer(&family_value(rs, f, c, true)).is_zero()
    })
}

fn walls_between(rs: &RootSystem, a: &Chamber, b: &Chamber, out: &mut Vec<Wall>) {
    for f in rs.families.iter() {
        if f.is_positive_representative() {
            let va = family_value(rs, f, a, false);
            let vb = family_value(rs, f, b, false);
            let (lo, hi) = integers_strictly_between(&va, &vb);
            let mut m = lo;
            while m <= hi {
                out.push(Wall::Phi(f.member(&-Q::from_integer(m.clone()))));
                m += 1;
            }
        }
        let va = family_value(rs, f, a, true);
        let vb = family_value(rs, f, b, true);
        let (lo, hi) = integers_strictly_between(&va, &vb);
        let mut m = lo;
        while m <= hi {
            out.push(Wall::Psi(f.member(&-Q::from_integer(m.clone()))));
            m += 1;
        }
    }
}

/// Walls whose function changes strict sign between the two chambers, sorted.
pub fn separating_walls(rs: &RootSystem, a: &Chamber, b: &Chamber) -> Vec<Wall> {
    let mut out = Vec::new();
    walls_between(rs, a, b, &mut out);
    out.sort();
    out
}

/// Number of separating walls.
pub fn distance(rs: &RootSystem, a: &Chamber, b: &Chamber) -> usize {
    separating_walls(rs, a, b).len()
}

pub fn same_chamber(rs: &RootSystem, a: &Chamber, b: &Chamber) -> bool {
    separating_walls(rs, a, b).is_empty()
}

/// True when no Φ-wall separates the chambers (`C ∼ C′`).
pub fn phi_equivalent(rs: &RootSystem, a: &Chamber, b: &Chamber) -> bool {
    separating_walls(rs, a, b).iter().all(|w| !w.is_phi())
}

/// `C″ ∈ [C, C′]`, via the sign-set inclusions on the union of separating sets.
pub fn in_interval(rs: &RootSystem, mid: &Chamber, c: &Chamber, c2: &Chamber) -> bool {
    let mut walls = Vec::new();
    walls_between(rs, c, c2, &mut walls);
    walls_between(rs, c, mid, &mut walls);
    walls_between(rs, mid, c2, &mut walls);
    walls.into_iter().all(|w| {
        let s1 = w.eval(rs, c).is_positive();
        let s2 = w.eval(rs, c2).is_positive();
        let sm = w.eval(rs, mid).is_positive();
        s1 != s2 || sm == s1
    })
}

/// `𝔡(C, C′)`: product of `μ ∈ Ψ` negative on `C` and positive on `C′`.
pub fn dinv(rs: &RootSystem, a: &Chamber, b: &Chamber) -> Poly {
    separating_walls(rs, a, b)
        .iter()
        .filter(|w| !w.is_phi() && w.eval(rs, b).is_positive())
        .fold(Poly::one(), |acc, w| &acc * &w.poly(rs))
}

/// `𝔢(C, C′)`: product of `α ∈ Φ` positive on `C` and negative on `C′`.
pub fn einv(rs: &RootSystem, a: &Chamber, b: &Chamber) -> Poly {
    separating_walls(rs, a, b)
        .iter()
        .filter(|w| w.is_phi())
        .fold(Poly::one(), |acc, w| {
            let r = w.root();
            let r = if r.eval(&a.z).is_positive() { r.clone() } else { r.neg() };
            &acc * &rs.root_poly(&r)
        })
}

/// Signs of walls with `|value| < radius` at the chamber point.
pub fn nearby_signs(rs: &RootSystem, c: &Chamber, radius: &Q) -> Vec<(Wall, Q)> {
    let mut out = Vec::new();
    for f in rs.families.iter() {
        for psi in [false, true] {
            if !psi && !f.is_positive_representative() {
                continue;
            }
            let v = family_value(rs, f, c, psi);
            let (lo, hi) = integers_strictly_between(&(&v - radius), &(&v + radius));
            let mut m = lo;
            while m <= hi {
                let k = -Q::from_integer(m.clone());
                let a = f.member(&k);
                let val = &v + &k;
                if val.abs() < *radius {
                    let w = if psi { Wall::Psi(a) } else { Wall::Phi(a) };
                    out.push((w, val));
                }
                m += 1;
            }
        }
    }
    out.sort();
    out
}

/// A gallery with its crossed walls.
///
/// Φ-walls are oriented positive on the source of their step; Ψ-walls carry
/// their function.
#[derive(Clone, Debug)]
pub struct Gallery {
    pub chambers: Vec<Chamber>,
    pub walls: Vec<Wall>,
}

impl Gallery {
    pub fn trivial(c: Chamber) -> Self {
        Gallery {
            chambers: vec![c],
            walls: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.walls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }

    pub fn source(&self) -> &Chamber {
        &self.chambers[0]
    }

    pub fn target(&self) -> &Chamber {
        self.chambers.last().unwrap()
    }

    /// Builds a gallery from a chamber sequence, recording the crossed walls.
    pub fn from_chambers(rs: &RootSystem, chambers: Vec<Chamber>) -> Result<Gallery> {
        let mut walls = Vec::new();
        for pair in chambers.windows(2) {
            let sep = separating_walls(rs, &pair[0], &pair[1]);
            if sep.len() != 1 {
                return Err(Error::NotAdjacent);
            }
            walls.push(orient(&sep[0], &pair[0]));
        }
        Ok(Gallery { chambers, walls })
    }

    /// Composite `GG′`.
    pub fn concat(&self, rs: &RootSystem, o: &Gallery) -> Result<Gallery> {
        if !same_chamber(rs, self.target(), o.source()) {
            return Err(Error::ChamberMismatch);
        }
        let mut chambers = self.chambers.clone();
        chambers.extend(o.chambers[1..].iter().cloned());
        let mut walls = self.walls.clone();
        walls.extend(o.walls.iter().cloned());
        Ok(Gallery { chambers, walls })
    }

    /// Opposite gallery `G*`.
    pub fn opposite(&self) -> Gallery {
        let chambers: Vec<Chamber> = self.chambers.iter().rev().cloned().collect();
        let walls = chambers
            .windows(2)
            .zip(self.walls.iter().rev())
            .map(|(p, w)| orient(w, &p[0]))
            .collect();
        Gallery { chambers, walls }
    }

    /// Transport `wG`.
    pub fn act(&self, w: &WeylElem) -> Gallery {
        Gallery {
            chambers: self.chambers.iter().map(|c| act_chamber(w, c)).collect(),
            walls: self.walls.iter().map(|x| x.act(w)).collect(),
        }
    }

    /// Transport `t_d(G)`.
    pub fn translate(&self, rs: &RootSystem, d: &[Q]) -> Gallery {
        Gallery {
            chambers: self.chambers.iter().map(|c| translate_chamber(d, c)).collect(),
            walls: self.walls.iter().map(|x| x.translate(rs, d)).collect(),
        }
    }

    pub fn is_minimal(&self, rs: &RootSystem) -> bool {
        self.len() == distance(rs, self.source(), self.target())
    }

    /// Checks that consecutive chambers are distinct and adjacent across the recorded walls.
    pub fn validate(&self, rs: &RootSystem) -> bool {
        self.chambers.len() == self.walls.len() + 1
            && self.chambers.windows(2).zip(&self.walls).all(|(p, w)| {
                let sep = separating_walls(rs, &p[0], &p[1]);
                sep.len() == 1 && orient(&sep[0], &p[0]) == *w
            })
    }
}

/// Orients a Φ-wall to be positive on `src`.
fn orient(w: &Wall, src: &Chamber) -> Wall {
    match w {
        Wall::Phi(a) => {
            if a.eval(&src.z).is_positive() {
                Wall::Phi(a.clone())
            } else {
                Wall::Phi(a.neg())
            }
        }
        Wall::Psi(_) => w.clone(),
    }
}

/// Radius around `c` along direction `(du, dz)` within which no wall changes sign.
fn safe_step(rs: &RootSystem, c: &Chamber, du: &[Q], dz: &[Q]) -> Q {
    let mut best: Option<Q> = None;
    for f in rs.families.iter() {
        for psi in [false, true] {
            let v = family_value(rs, f, c, psi);
            let mut g = dot(&f.bar, dz);
            if psi {
                g -= &du[rs.orbit_var(f.orbit)];
            }
            if g.is_zero() {
                continue;
            }
            let r = dist_to_integer(&v) / g.abs();
            best = Some(match best {
                None => r,
                Some(b) => b.min(r),
            });
        }
    }
    best.unwrap_or_else(Q::one)
}

const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Endpoint perturbation number `attempt` (0 = unperturbed) of `c`.
pub fn perturb(rs: &RootSystem, c: &Chamber, attempt: usize) -> Chamber {
    if attempt == 0 {
        return c.clone();
    }
    let dim = rs.n_orb() + rs.rank;
    let dir: Vec<Q> = (0..dim).map(|i| qr(1, PRIMES[(i + attempt) % PRIMES.len()])).collect();
    let (du, dz) = dir.split_at(rs.n_orb());
    let r = safe_step(rs, c, du, dz);
    let s = r / q(2 * PRIMES[attempt % PRIMES.len()]);
    Chamber {
        u: c.u.iter().zip(du).map(|(a, b)| a + &s * b).collect(),
        z: c.z.iter().zip(dz).map(|(a, b)| a + &s * b).collect(),
    }
}

/// Crossing parameters `t ∈ (0,1)` of separating walls along the segment.
fn crossings(rs: &RootSystem, a: &Chamber, b: &Chamber) -> Vec<(Q, Wall)> {
    separating_walls(rs, a, b)
        .into_iter()
        .map(|w| {
            let va = w.eval(rs, a);
            let vb = w.eval(rs, b);
            let t = &va / (&va - &vb);
            (t, w)
        })
        .collect()
}

const MAX_ATTEMPTS: usize = 48;

/// Minimal gallery by walking the segment between interior points, using the
/// perturbation schedule starting at `first_attempt`.
pub fn minimal_gallery_from(rs: &RootSystem, a: &Chamber, b: &Chamber, first_attempt: usize) -> Result<Gallery> {
    for attempt in first_attempt..first_attempt + MAX_ATTEMPTS {
        let a2 = perturb(rs, a, if first_attempt == 0 { 0 } else { attempt });
        let b2 = perturb(rs, b, attempt);
        let mut cs = crossings(rs, &a2, &b2);
        cs.sort_by(|x, y| x.0.cmp(&y.0));
        if cs.windows(2).any(|p| p[0].0 == p[1].0) {
            continue;
        }
        let mut chambers = vec![a.clone()];
        let mut walls = Vec::new();
        for (i, (_, w)) in cs.iter().enumerate() {
            let next = if i + 1 < cs.len() {
                a2.lerp(&b2, &((&cs[i].0 + &cs[i + 1].0) / q(2)))
            } else {
                b.clone()
            };
            walls.push(orient(w, chambers.last().unwrap()));
            chambers.push(next);
        }
        let g = Gallery { chambers, walls };
        debug_assert!(g.is_minimal(rs));
        return Ok(g);
    }
    Err(Error::PerturbationExhausted)
}

/// Another interior point of the chamber `c`, drawn from a seeded box of
/// radius 1/2 around its stored point.
pub fn resample(rs: &RootSystem, c: &Chamber, seed: u64) -> Option<Chamber> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut jitter = |v: &[Q]| -> Vec<Q> { v.iter().map(|x| x + qr(rng.random_range(-32..=32), 64)).collect() };
    (0..256).find_map(|_| {
        let p = Chamber::new(jitter(&c.u), jitter(&c.z));
        (is_interior(rs, &p) && same_chamber(rs, &p, c)).then_some(p)
    })
}

/// The canonical minimal gallery from `a` to `b`.
pub fn minimal_gallery(rs: &RootSystem, a: &Chamber, b: &Chamber) -> Result<Gallery> {
    minimal_gallery_from(rs, a, b, 0)
}

/// The set `Φ⁺_C` restricted to the given walls (as oriented roots).
pub fn phi_plus_among(c: &Chamber, walls: &[Wall]) -> Vec<AffineRoot> {
    walls
        .iter()
        .filter(|w| w.is_phi())
        .map(|w| {
            let r = w.root();
            if r.eval(&c.z).is_positive() {
                r.clone()
            } else {
                r.neg()
            }
        })
        .collect()
}

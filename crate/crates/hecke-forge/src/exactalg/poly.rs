//! Sparse multivariate polynomials over `Q` with graded lexicographic order.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{q_to_string, Q};

/// Maximum number of variables (8-bit exponent slots in a `u128`).
pub const MAX_VARS: usize = 16;
const MAX_EXP: u32 = 255;

/// Exponent vector. Ordered by total degree, then lexicographically with the
/// highest-index variable most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Mono {
    deg: u32,
    packed: u128,
}

impl Mono {
    pub fn one() -> Self {
        Mono::default()
    }

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS, "variable index {i} out of range");
        Mono {
            deg: 1,
            packed: 1u128 << (8 * i),
        }
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Mono::one();
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_EXP, "exponent overflow");
            m.packed |= (e as u128) << (8 * i);
            m.deg += e;
        }
        m
    }

    pub fn exp(&self, i: usize) -> u32 {
        ((self.packed >> (8 * i)) & 0xff) as u32
    }

    pub fn exps(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exp(i)).collect()
    }

    pub fn deg(&self) -> u32 {
        self.deg
    }

    pub fn mul(self, o: Mono) -> Mono {
        for i in 0..MAX_VARS {
            assert!(self.exp(i) + o.exp(i) <= MAX_EXP, "exponent overflow");
        }
        Mono {
            deg: self.deg + o.deg,
            packed: self.packed + o.packed,
        }
    }

    /// True when `self` divides `o`.
    pub fn divides(&self, o: &Mono) -> bool {
        self.deg <= o.deg && (0..MAX_VARS).all(|i| self.exp(i) <= o.exp(i))
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        Mono {
            deg: o.deg - self.deg,
            packed: o.packed - self.packed,
        }
    }

    /// Largest variable index with positive exponent.
    pub fn max_var(&self) -> Option<usize> {
        (0..MAX_VARS).rev().find(|&i| self.exp(i) > 0)
    }
}

/// Polynomial as a map from monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Poly::monomial(Mono::one(), c)
    }

    pub fn var(i: usize) -> Self {
        Poly::monomial(Mono::var(i), Q::one())
    }

    pub fn monomial(m: Mono, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// `Σ coeffs[i]·var(i) + constant`.
    pub fn linear(coeffs: &[Q], constant: &Q) -> Self {
        let mut p = Poly::constant(constant.clone());
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Mono::var(i), c.clone());
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Constant value when the polynomial has degree <= 0.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.deg()).max()
    }

    /// Leading term in grlex order.
    pub fn leading(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(*m, -c.clone());
        }
    }

    pub fn mul_mono(&self, m: Mono, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `var(i) ↦ images[i]` for `i < images.len()`; other variables are kept.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let n = images.len();
        let mut cache: Vec<Vec<Poly>> = vec![vec![Poly::one()]; n];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            let mut rest_exps = m.exps(MAX_VARS);
            for i in 0..n {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e];
                rest_exps[i] = 0;
            }
            let rest = Mono::from_exps(&rest_exps);
            if rest != Mono::one() {
                t = t.mul_mono(rest, &Q::one());
            }
            out.add_assign_ref(&t);
        }
        out
    }

    /// Division with remainder by a single divisor (grlex leading terms).
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let (dm, dc) = d.leading().expect("division by zero polynomial");
        let (dm, dc) = (*dm, dc.clone());
        let mut p = self.clone();
        let mut quot = Poly::zero();
        let mut rem = Poly::zero();
        while let Some((pm, pc)) = p.leading() {
            let (pm, pc) = (*pm, pc.clone());
            if dm.divides(&pm) {
                let qm = dm.quotient_of(&pm);
                let qc = &pc / &dc;
                p.sub_assign_ref(&d.mul_mono(qm, &qc));
                quot.add_term(qm, qc);
            } else {
                p.terms.remove(&pm);
                rem.add_term(pm, pc);
            }
        }
        (quot, rem)
    }

    /// Exact quotient `self / d` when `d` divides `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Coefficients `(a_0..a_{n-1}, b)` when the polynomial is `Σ a_i var(i) + b`.
    pub fn linear_coeffs(&self, nvars: usize) -> Option<(Vec<Q>, Q)> {
        if self.degree().unwrap_or(0) > 1 {
            return None;
        }
        let mut a = vec![Q::zero(); nvars];
        let mut b = Q::zero();
        for (m, c) in &self.terms {
            if m.deg() == 0 {
                b = c.clone();
            } else {
                let i = m.max_var().unwrap();
                if i >= nvars {
                    return None;
                }
                a[i] = c.clone();
            }
        }
        Some((a, b))
    }

    /// Largest variable index appearing, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.max_var()).max()
    }

    /// True when no variable with index `>= from` occurs.
    pub fn free_of_vars_from(&self, from: usize) -> bool {
        self.terms.keys().all(|m| (from..MAX_VARS).all(|i| m.exp(i) == 0))
    }

    /// True when no variable with index `< upto` occurs.
    pub fn free_of_vars_below(&self, upto: usize) -> bool {
        self.terms.keys().all(|m| (0..upto).all(|i| m.exp(i) == 0))
    }

    /// Deterministic text form, terms in descending monomial order.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for i in 0..MAX_VARS {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                let name = names.get(i).cloned().unwrap_or_else(|| format!("v{i}"));
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            if factors.is_empty() {
                s.push_str(&q_to_string(&a));
            } else {
                if !a.is_one() {
                    let _ = write!(s, "{}*", q_to_string(&a));
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign_ref(o);
        r
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r.sub_assign_ref(o);
        r
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let (small, big) = if self.terms.len() <= o.terms.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut out = Poly::zero();
        for (m, c) in &small.terms {
            for (m2, c2) in &big.terms {
                out.add_term(m.mul(*m2), c * c2);
            }
        }
        out
    }
}

/// Exact quotient `num / den` when `den` divides `num`.
pub fn poly_divides(den: &Poly, num: &Poly) -> Option<Poly> {
    num.exact_div(den)
}

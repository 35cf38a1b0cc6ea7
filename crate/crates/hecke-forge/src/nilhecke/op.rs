//! Operators `f ↦ Σ_w g_w · ʷf` with rational-function coefficients.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exactalg::{FactoredRat, Poly, RatFunc, Q};
use crate::rootdata::{AffineRoot, RootSystem, WeylElem};

/// Localized normal form `Σ g_w·w`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NilOp {
    terms: BTreeMap<WeylElem, RatFunc>,
}

/// `ʷf` for a rational function.
pub fn twist(rs: &RootSystem, w: &WeylElem, f: &RatFunc) -> RatFunc {
    if w.is_identity() {
        return f.clone();
    }
    f.substitute(&rs.weyl_images(w)).expect("Weyl action is invertible")
}

/// `ʷf` for a factored rational function.
pub fn twist_factored(rs: &RootSystem, w: &WeylElem, f: &FactoredRat) -> FactoredRat {
    if w.is_identity() {
        return f.clone();
    }
    f.substitute(&rs.weyl_images(w)).expect("Weyl action is invertible")
}

impl NilOp {
    pub fn zero() -> Self {
        NilOp::default()
    }

    pub fn identity(rs: &RootSystem) -> Self {
        NilOp::scalar(rs, RatFunc::one())
    }

    /// Multiplication by `f`.
    pub fn scalar(rs: &RootSystem, f: RatFunc) -> Self {
        NilOp::term(rs.identity(), f)
    }

    pub fn mul_poly(rs: &RootSystem, p: Poly) -> Self {
        NilOp::scalar(rs, RatFunc::from_poly(p))
    }

    /// The substitution operator `f ↦ ʷf`.
    pub fn weyl(w: WeylElem) -> Self {
        NilOp::term(w, RatFunc::one())
    }

    pub fn term(w: WeylElem, g: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !g.is_zero() {
            terms.insert(w, g);
        }
        NilOp { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (WeylElem, RatFunc)>) -> Self {
        let mut out = NilOp::zero();
        for (w, g) in it {
            out.add_term(w, g);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylElem, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &WeylElem) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> Vec<WeylElem> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: WeylElem, g: RatFunc) {
        if g.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                let s = &*x + &g;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(w, g);
            }
        }
    }

    pub fn add(&self, o: &NilOp) -> NilOp {
        let mut out = self.clone();
        for (w, g) in &o.terms {
            out.add_term(w.clone(), g.clone());
        }
        out
    }

    pub fn sub(&self, o: &NilOp) -> NilOp {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> NilOp {
        NilOp {
            terms: self.terms.iter().map(|(w, g)| (w.clone(), -g)).collect(),
        }
    }

    pub fn scale_q(&self, c: &Q) -> NilOp {
        NilOp::from_terms(self.terms.iter().map(|(w, g)| (w.clone(), g.scale(c))))
    }

    /// `f ∘ self` (left multiplication).
    pub fn scale_left(&self, f: &RatFunc) -> NilOp {
        NilOp::from_terms(self.terms.iter().map(|(w, g)| (w.clone(), f * g)))
    }

    /// `self ∘ f` (precomposition with multiplication by `f`).
    pub fn scale_right(&self, rs: &RootSystem, f: &RatFunc) -> NilOp {
        NilOp::from_terms(self.terms.iter().map(|(w, g)| (w.clone(), g * &twist(rs, w, f))))
    }

    /// `self ∘ o`, using `(g·w)∘(g′·w′) = (g·ʷg′)·(ww′)`.
    pub fn compose(&self, rs: &RootSystem, o: &NilOp) -> NilOp {
        let mut out = NilOp::zero();
        for (w, g) in &self.terms {
            let images = if w.is_identity() { None } else { Some(rs.weyl_images(w)) };
            for (w2, g2) in &o.terms {
                let tg2 = match &images {
                    None => g2.clone(),
                    Some(im) => g2.substitute(im).expect("Weyl action is invertible"),
                };
                out.add_term(w.compose(w2), g * &tg2);
            }
        }
        out
    }

    /// Applies the operator to a polynomial.
    pub fn apply(&self, rs: &RootSystem, f: &Poly) -> Result<Poly> {
        let mut acc = RatFunc::zero();
        for (w, g) in &self.terms {
            let tf = RatFunc::from_poly(rs.act_on_poly(w, f));
            acc = &acc + &(g * &tf);
        }
        acc.to_poly().ok_or(Error::NonPolynomialImage)
    }

    /// `(t_d)_*`: substitutes `𝐜_* ↦ 𝐜_* − d_*` in every coefficient.
    pub fn pushforward(&self, rs: &RootSystem, d: &[Q]) -> NilOp {
        let im = rs.shift_images(d);
        NilOp::from_terms(
            self.terms
                .iter()
                .map(|(w, g)| (w.clone(), g.substitute(&im).expect("shift is invertible"))),
        )
    }

    /// Substitutes all variables (e.g. a parameter specialization).
    pub fn substitute(&self, images: &[Poly]) -> Option<NilOp> {
        let mut out = NilOp::zero();
        for (w, g) in &self.terms {
            out.add_term(w.clone(), g.substitute(images)?);
        }
        Some(out)
    }

    /// Largest Weyl length in the support.
    pub fn max_length(&self, rs: &RootSystem) -> usize {
        self.terms.keys().map(|w| rs.length(w)).max().unwrap_or(0)
    }

    /// Deterministic text form `g_1·[word_1] + …`, support sorted by (length, word).
    pub fn render(&self, rs: &RootSystem) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut items: Vec<(usize, Vec<usize>, String)> = self
            .terms
            .iter()
            .map(|(w, g)| {
                let word = rs.reduced_word(w);
                (word.len(), word, g.render(&rs.var_names))
            })
            .collect();
        items.sort();
        items
            .into_iter()
            .map(|(_, word, g)| {
                let wname = if word.is_empty() {
                    "e".to_string()
                } else {
                    word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("*")
                };
                format!("({g})·[{wname}]")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Support elements sorted by decreasing length, ties by reduced word.
pub fn support_by_length_desc(rs: &RootSystem, elems: &[WeylElem]) -> Vec<(usize, Vec<usize>, WeylElem)> {
    let mut v: Vec<(usize, Vec<usize>, WeylElem)> = elems
        .iter()
        .map(|w| {
            let word = rs.reduced_word(w);
            (word.len(), word, w.clone())
        })
        .collect();
    v.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    v
}

/// Demazure operator `ϑ_α = α⁻¹·e − α⁻¹·s_α`.
pub fn demazure(rs: &RootSystem, alpha: &AffineRoot) -> Result<NilOp> {
    if alpha.is_zero_functional() || alpha.bar.iter().all(num_traits::Zero::is_zero) {
        return Err(Error::ZeroFunctional);
    }
    let inv = RatFunc::inv_linear(&rs.root_poly(alpha)).ok_or(Error::ZeroFunctional)?;
    let s = rs.reflection(alpha);
    Ok(NilOp::from_terms([(rs.identity(), inv.clone()), (s, -&inv)]))
}

/// `ϑ_i` for the affine simple root of index `i`.
pub fn demazure_simple(rs: &RootSystem, i: usize) -> NilOp {
    demazure(rs, &rs.affine_simple[i]).expect("simple roots are nonzero")
}

/// `ϑ_w = ϑ_{i_1}∘…∘ϑ_{i_k}` along a reduced word of `w`.
pub fn theta_elem(rs: &RootSystem, w: &WeylElem) -> NilOp {
    let word = rs.reduced_word(w);
    word.iter()
        .fold(NilOp::identity(rs), |acc, &i| acc.compose(rs, &demazure_simple(rs, i)))
}

/// Right coefficients `a = Σ ϑ_w ∘ c_w` and whether all `c_w` are polynomials.
pub fn theta_coeffs(rs: &RootSystem, a: &NilOp) -> Result<(BTreeMap<WeylElem, RatFunc>, bool)> {
    let mut cache: HashMap<WeylElem, (NilOp, FactoredRat)> = HashMap::new();
    let mut residual = a.clone();
    let mut out: BTreeMap<WeylElem, RatFunc> = BTreeMap::new();
    let mut guard = 0usize;
    while !residual.is_zero() {
        guard += 1;
        if guard > 100_000 {
            return Err(Error::InternalBasisError("theta elimination did not terminate".into()));
        }
        let order = support_by_length_desc(rs, &residual.support());
        let top_len = order[0].0;
        for (len, _, v) in order.into_iter() {
            if len != top_len {
                break;
            }
            let (th, lead) = cache
                .entry(v.clone())
                .or_insert_with(|| {
                    let th = theta_elem(rs, &v);
                    let lead = FactoredRat::from_ratfunc(&th.coeff(&v)).expect("theta leading coefficient is a unit");
                    (th, lead)
                })
                .clone();
            let av = residual.coeff(&v);
            if av.is_zero() {
                continue;
            }
            let ratio = av.mul_factored(&lead.inv());
            let cv = twist(rs, &v.inverse(), &ratio);
            residual = residual.sub(&th.scale_right(rs, &cv));
            if !residual.coeff(&v).is_zero() {
                return Err(Error::InternalBasisError("leading coefficient did not cancel".into()));
            }
            out.insert(v, cv);
        }
    }
    let integral = out.values().all(|c| c.is_poly());
    Ok((out, integral))
}

/// Rebuilds `Σ ϑ_w ∘ c_w`.
pub fn from_theta_coeffs(rs: &RootSystem, coeffs: &BTreeMap<WeylElem, RatFunc>) -> NilOp {
    let mut out = NilOp::zero();
    for (w, c) in coeffs {
        out = out.add(&theta_elem(rs, w).scale_right(rs, c));
    }
    out
}

/// Images of the embedding `ι_d` on generators.
#[derive(Clone, Debug)]
pub struct IotaImages {
    pub d: Vec<Q>,
    /// `ι_d(s_α)` for `α ∈ Δ̂`, index 0 = `α₀`.
    pub s: Vec<NilOp>,
}

/// `ι_d(s_α) = 1 − (α − (𝐜_α − d_α))ϑ_α` for `α ∈ Δ̂`.
pub fn iota(rs: &RootSystem, d: &[Q]) -> IotaImages {
    let mut s = Vec::new();
    for (i, a) in rs.affine_simple.iter().enumerate() {
        let k = rs.orbits.iter().position(|o| *o == a.orbit).unwrap();
        let mut coef = rs.psi_poly(a);
        coef.add_assign_ref(&Poly::constant(d[k].clone()));
        let th = demazure_simple(rs, i);
        let one_minus = th.scale_left(&RatFunc::from_poly(coef));
        s.push(NilOp::identity(rs).sub(&one_minus));
    }
    IotaImages { d: d.to_vec(), s }
}

/// `ι_d(f) = (t_d)_* f` as a multiplication operator.
pub fn iota_poly(rs: &RootSystem, d: &[Q], f: &Poly) -> NilOp {
    NilOp::mul_poly(rs, f.substitute(&rs.shift_images(d)))
}

/// `x`-monomials of total degree `<= m` in `r` variables starting at `offset`.
fn x_monomials(r: usize, offset: usize, m: u32) -> Vec<Poly> {
    let mut out = vec![vec![0u32; r]];
    let mut frontier = out.clone();
    for _ in 0..m {
        let mut next = Vec::new();
        for e in &frontier {
            let start = e.iter().rposition(|&x| x > 0).unwrap_or(0);
            for i in start..r {
                let mut e2 = e.clone();
                e2[i] += 1;
                next.push(e2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter()
        .map(|e| {
            let mut full = vec![0u32; offset];
            full.extend(e);
            Poly::monomial(crate::exactalg::Mono::from_exps(&full), Q::from_integer(1.into()))
        })
        .collect()
}

/// Coefficient bound `max_w (deg num − deg den)`; `None` for the zero operator.
pub fn degree_bound(a: &NilOp) -> Option<i64> {
    a.terms().filter_map(|(_, g)| g.degree()).max()
}

/// Canonical filtration degree: least `n` with `a(𝐒_{≤m}) ⊆ 𝐒_{≤m+n}`.
///
/// Probes `x`-monomials (operators commute with parameters) up to a degree
/// depending on the support; the coefficient bound is an upper bound that
/// symbol cancellation can make strict. Returns `i64::MIN` for the zero operator.
pub fn canonical_degree(rs: &RootSystem, a: &NilOp) -> Result<i64> {
    let Some(bound) = degree_bound(a) else {
        return Ok(i64::MIN);
    };
    let m = 2 * (a.max_length(rs) as u32 + 1) + 2;
    let mut best: Option<i64> = None;
    for mono in x_monomials(rs.rank, rs.n_orb(), m) {
        let img = match a.apply(rs, &mono) {
            Ok(p) => p,
            Err(_) => return Ok(bound),
        };
        if let Some(dg) = img.degree() {
            let v = dg as i64 - mono.degree().unwrap() as i64;
            best = Some(best.map_or(v, |b: i64| b.max(v)));
        }
    }
    let probe = best.unwrap_or(bound);
    if probe > bound {
        return Err(Error::DegreeUnbounded(format!("probe {probe} exceeds bound {bound}")));
    }
    Ok(probe)
}

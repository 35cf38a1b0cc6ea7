//! Translation bimodules `𝐁⟨d⟩ = Hom(κ₀, κ_d)`: the ⋆-product, parameter
//! specialization, the graded γ-rule, the shift identity and the
//! Harish-Chandra degree drop.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::cat_a::{HomCtx, HomElement};
use crate::chambers::{act_chamber, distance, fundamental_chamber, in_interval, Chamber};
use crate::error::{Error, Result};
use crate::exactalg::{Poly, RatFunc, Q};
use crate::nilhecke::{canonical_degree, demazure_simple, iota, twist, NilOp};
use crate::rootdata::{build_root_system, RootSystem, RootType, WeylElem};

/// An element of `𝐁⟨d⟩`.
#[derive(Clone, Debug)]
pub struct BimodElement {
    pub hom: HomElement,
    pub shift: Vec<Q>,
}

impl BimodElement {
    pub fn new(rs: &RootSystem, op: NilOp, shift: Vec<Q>) -> Self {
        let source = fundamental_chamber(rs, &vec![Q::from_integer(0.into()); rs.n_orb()]);
        let target = fundamental_chamber(rs, &shift);
        BimodElement {
            hom: HomElement::new(op, source, target),
            shift,
        }
    }

    /// The unit of `𝐁⟨0⟩`.
    pub fn identity(rs: &RootSystem) -> Self {
        Self::new(rs, NilOp::identity(rs), zero(rs))
    }

    /// Multiplication by a polynomial, as an element of `𝐁⟨0⟩`.
    pub fn poly(rs: &RootSystem, p: Poly) -> Self {
        Self::new(rs, NilOp::mul_poly(rs, p), zero(rs))
    }

    /// `τ_{κ₀,κ_d,w}`.
    pub fn tau(ctx: &HomCtx, d: &[Q], w: &WeylElem) -> Result<Self> {
        let rs = ctx.rs;
        let k0 = fundamental_chamber(rs, &zero(rs));
        let kd = fundamental_chamber(rs, d);
        let t = ctx.tau_basis_elem(&k0, &kd, w)?;
        Ok(Self::new(rs, t.op.clone(), d.to_vec()))
    }

    pub fn op(&self) -> &NilOp {
        &self.hom.op
    }

    /// Right τ-coordinates in `𝐁⟨d⟩` and membership.
    pub fn decompose(&self, ctx: &HomCtx) -> Result<(BTreeMap<WeylElem, RatFunc>, bool)> {
        ctx.decompose(&self.hom.source, &self.hom.target, &self.hom.op)
    }
}

fn zero(rs: &RootSystem) -> Vec<Q> {
    vec![Q::from_integer(0.into()); rs.n_orb()]
}

fn add_shift(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a′ ⋆ a = (t_d)_*(a′) ∘ a`, an element of `𝐁⟨d + d′⟩`.
pub fn star(rs: &RootSystem, a2: &BimodElement, a: &BimodElement) -> BimodElement {
    let op = a2.op().pushforward(rs, &a.shift).compose(rs, a.op());
    BimodElement::new(rs, op, add_shift(&a.shift, &a2.shift))
}

/// Length-filtration degree `d(C, w⁻¹C′)` of `τ_{C,C′,w}`.
pub fn length_degree(rs: &RootSystem, c: &Chamber, c2: &Chamber, w: &WeylElem) -> usize {
    distance(rs, c, &act_chamber(&w.inverse(), c2))
}

/// Outcome of the graded product `γ^{d,w} ⋆ γ^{e,y}` in the length filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradedProduct {
    /// Equals `γ^{d+e,wy}`.
    Basis,
    /// Vanishes in the associated graded.
    Zero,
    /// Anything else.
    Other,
}

/// Both sides of the γ-rule for one `(d, e, w, y)`.
#[derive(Clone, Debug)]
pub struct GammaCase {
    /// Interval condition with middle chamber `y⁻¹κ_e`.
    pub predicate: bool,
    /// Interval condition with middle chamber `y⁻¹κ_d`.
    pub predicate_d: bool,
    pub computed: GradedProduct,
}

impl GammaCase {
    pub fn agrees(&self) -> bool {
        matches!(
            (self.predicate, self.computed),
            (true, GradedProduct::Basis) | (false, GradedProduct::Zero)
        )
    }
}

/// Evaluates both sides of the γ-rule.
pub fn gamma_rule(ctx: &HomCtx, d: &[Q], e: &[Q], w: &WeylElem, y: &WeylElem) -> Result<GammaCase> {
    let rs = ctx.rs;
    let de = add_shift(d, e);
    let k0 = fundamental_chamber(rs, &zero(rs));
    let kde = fundamental_chamber(rs, &de);
    let wy = w.compose(y);
    let far = act_chamber(&wy.inverse(), &kde);
    let yinv = y.inverse();
    let predicate = in_interval(rs, &act_chamber(&yinv, &fundamental_chamber(rs, e)), &k0, &far);
    let predicate_d = in_interval(rs, &act_chamber(&yinv, &fundamental_chamber(rs, d)), &k0, &far);

    let lhs = BimodElement::tau(ctx, d, w)?;
    let rhs = BimodElement::tau(ctx, e, y)?;
    let prod = star(rs, &lhs, &rhs);
    let (coeffs, _) = ctx.decompose(&k0, &kde, prod.op())?;
    let top =
        length_degree(rs, &k0, &fundamental_chamber(rs, d), w) + length_degree(rs, &k0, &fundamental_chamber(rs, e), y);
    let degrees: Vec<(usize, &WeylElem, &RatFunc)> = coeffs
        .iter()
        .map(|(v, f)| (length_degree(rs, &k0, &kde, v), v, f))
        .collect();
    let at_top: Vec<_> = degrees.iter().filter(|(n, _, _)| *n == top).collect();
    let computed = if degrees.iter().any(|(n, _, _)| *n > top) {
        GradedProduct::Other
    } else {
        match at_top.as_slice() {
            [] => GradedProduct::Zero,
            [(_, v, f)] if **v == wy && f.is_one() => GradedProduct::Basis,
            _ => GradedProduct::Other,
        }
    };
    Ok(GammaCase {
        predicate,
        predicate_d,
        computed,
    })
}

/// True iff the interval predicate and the graded product agree.
pub fn gamma_rule_check(ctx: &HomCtx, d: &[Q], e: &[Q], w: &WeylElem, y: &WeylElem) -> Result<bool> {
    Ok(gamma_rule(ctx, d, e, w, y)?.agrees())
}

/// Shift vectors with entries in `{-1, 0, 1}`.
pub fn unit_shifts(rs: &RootSystem) -> Vec<Vec<Q>> {
    let mut out = vec![vec![]];
    for _ in 0..rs.n_orb() {
        out = out
            .into_iter()
            .flat_map(|v: Vec<Q>| {
                (-1..=1).map(move |t| {
                    let mut v2 = v.clone();
                    v2.push(Q::from_integer(t.into()));
                    v2
                })
            })
            .collect();
    }
    out
}

/// Report of a grid check.
#[derive(Clone, Debug, Default)]
pub struct GridReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl GridReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn push(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn shift_string(d: &[Q]) -> String {
    d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// γ-rule over `|d|,|e| ≤ 1` per orbit and `ℓ(w), ℓ(y) ≤ max_len`.
pub fn gamma_grid(rs: &RootSystem, max_len: usize) -> Result<GridReport> {
    let ctx = HomCtx::new(rs, 2 * max_len);
    let shifts = unit_shifts(rs);
    let ws = rs.enumerate_weyl(max_len);
    let mut cases = Vec::new();
    for d in &shifts {
        for e in &shifts {
            for w in &ws {
                for y in &ws {
                    cases.push((d, e, w, y));
                }
            }
        }
    }
    let results: Vec<Result<(bool, String)>> = cases
        .par_iter()
        .map(|(d, e, w, y)| {
            let g = gamma_rule(&ctx, d, e, w, y)?;
            let name = format!(
                "d=[{}] e=[{}] w={} y={} predicate={} computed={:?}",
                shift_string(d),
                shift_string(e),
                rs.word_string(w),
                rs.word_string(y),
                g.predicate,
                g.computed
            );
            Ok((g.agrees(), name))
        })
        .collect();
    let mut rep = GridReport::default();
    for r in results {
        let (ok, name) = r?;
        rep.push(ok, || name);
    }
    Ok(rep)
}

/// A specialized element of `𝐁^{c′←c}`.
#[derive(Clone, Debug)]
pub struct Specialized {
    pub op: NilOp,
    /// `c′ = c − d`.
    pub c_target: Vec<Q>,
    pub c_source: Vec<Q>,
}

/// Substitution images sending each parameter to `c` and fixing `x`.
pub fn specialization_images(rs: &RootSystem, c: &[Q]) -> Vec<Poly> {
    let mut im: Vec<Poly> = c.iter().take(rs.n_orb()).map(|v| Poly::constant(v.clone())).collect();
    im.extend((0..rs.rank).map(|i| Poly::var(rs.x_var(i))));
    im
}

/// `𝐜 ↦ c` on an operator.
pub fn specialize_op(rs: &RootSystem, a: &NilOp, c: &[Q]) -> Result<NilOp> {
    a.substitute(&specialization_images(rs, c))
        .ok_or_else(|| Error::InternalBasisError("specialization hits a pole".into()))
}

/// The image of `a` in `𝐁^{c−d←c}`.
pub fn specialize(rs: &RootSystem, a: &BimodElement, c: &[Q]) -> Result<Specialized> {
    if c.len() != rs.n_orb() {
        return Err(Error::RankMismatch(format!(
            "{} parameters for {} orbits",
            c.len(),
            rs.n_orb()
        )));
    }
    Ok(Specialized {
        op: specialize_op(rs, a.op(), c)?,
        c_target: c.iter().zip(&a.shift).map(|(x, y)| x - y).collect(),
        c_source: c.to_vec(),
    })
}

/// Checks `(𝐜_* + d_*) ⋆ a = a ⋆ 𝐜_*` for every orbit.
pub fn shift_identity(rs: &RootSystem, a: &BimodElement) -> bool {
    (0..rs.n_orb()).all(|k| {
        let ck = Poly::var(k);
        let left = BimodElement::poly(rs, &ck + &Poly::constant(a.shift[k].clone()));
        let right = BimodElement::poly(rs, ck);
        star(rs, &left, a).op() == star(rs, a, &right).op()
    })
}

/// Checks that `ad(𝐜_*)` lowers the canonical degree of `a` for every orbit.
pub fn hc_degree_drop(rs: &RootSystem, a: &BimodElement) -> Result<bool> {
    let deg = canonical_degree(rs, a.op())?;
    for k in 0..rs.n_orb() {
        let ck = BimodElement::poly(rs, Poly::var(k));
        let comm = star(rs, &ck, a).op().sub(star(rs, a, &ck).op());
        if comm.is_zero() {
            continue;
        }
        if canonical_degree(rs, &comm)? > deg {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Report of [`a1_example_check`].
#[derive(Clone, Debug, Default)]
pub struct A1Report {
    pub membership: GridReport,
    pub closure: GridReport,
    pub converse: GridReport,
}

impl A1Report {
    pub fn ok(&self) -> bool {
        self.membership.ok() && self.closure.ok() && self.converse.ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    S(usize),
    X,
}

fn letter_words(l: usize) -> Vec<Vec<Letter>> {
    let alphabet = [Letter::S(0), Letter::S(1), Letter::X];
    let mut all = vec![vec![]];
    let mut layer: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..l {
        let mut next = Vec::new();
        for w in &layer {
            for &a in &alphabet {
                if matches!(a, Letter::S(_)) && w.last() == Some(&a) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(a);
                next.push(w2);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

fn word_name(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|a| match a {
            Letter::S(i) => format!("s{i}"),
            Letter::X => "x".into(),
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// `ρ_c` on generators: the specialized `ι₀`-images.
struct Rho {
    s: Vec<NilOp>,
    x: NilOp,
}

impl Rho {
    fn new(rs: &RootSystem, c: &[Q]) -> Result<Self> {
        let s = iota(rs, &zero(rs))
            .s
            .iter()
            .map(|g| specialize_op(rs, g, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Rho {
            s,
            x: NilOp::mul_poly(rs, Poly::var(rs.x_var(0))),
        })
    }

    fn letter(&self, a: Letter) -> &NilOp {
        match a {
            Letter::S(i) => &self.s[i],
            Letter::X => &self.x,
        }
    }

    fn word(&self, rs: &RootSystem, w: &[Letter]) -> NilOp {
        w.iter()
            .fold(NilOp::identity(rs), |acc, &a| acc.compose(rs, self.letter(a)))
    }
}

/// The A₁ description `𝐁^{c−1←c} = {1, ϑ₁, ϑ₀}·ρ_c(𝐇_c)` at a rational `c`,
/// for words of length `<= l`.
pub fn a1_example_check(l: usize, c: &Q) -> Result<A1Report> {
    let rs = build_root_system(RootType::A, 1)?;
    let rs = &rs;
    let cv = vec![c.clone()];
    let cm1 = vec![c - Q::from_integer(1.into())];
    let rho = Rho::new(rs, &cv)?;
    let rho_left = Rho::new(rs, &cm1)?;
    let ctx = HomCtx::new(rs, l + 2);
    let images = specialization_images(rs, &cv);
    let k0 = fundamental_chamber(rs, &zero(rs));
    let k1 = fundamental_chamber(rs, &[Q::from_integer(1.into())]);
    let bs = [
        ("1", NilOp::identity(rs)),
        ("t1", demazure_simple(rs, 1)),
        ("t0", demazure_simple(rs, 0)),
    ];
    let member = |op: &NilOp| -> Result<bool> { Ok(ctx.decompose_specialized(&k0, &k1, op, &images)?.1) };

    let mut rep = A1Report::default();
    let words = letter_words(l);
    let mut elems: Vec<(String, NilOp)> = Vec::new();
    for (bn, b) in &bs {
        for w in &words {
            elems.push((format!("{bn}*rho({})", word_name(w)), b.compose(rs, &rho.word(rs, w))));
        }
    }
    for (name, op) in &elems {
        let ok = member(op)?;
        rep.membership.push(ok, || name.clone());
    }
    for g in [Letter::S(0), Letter::S(1), Letter::X] {
        for (name, op) in &elems {
            let ok = member(&rho_left.letter(g).compose(rs, op))?;
            rep.closure.push(ok, || format!("rho'({})*{name}", word_name(&[g])));
        }
    }
    let span = SpanningSet::new(rs, &bs, &rho, l + 1);
    for w in rs.enumerate_weyl(l) {
        let t = ctx.tau_basis_elem(&k0, &k1, &w)?;
        let x =
            t.op.substitute(&images)
                .ok_or(Error::InternalBasisError("pole".into()))?;
        let ok = span.reduces(rs, &x, rs.x_var(0));
        rep.converse.push(ok, || format!("tau_{}", rs.word_string(&w)));
    }
    Ok(rep)
}

/// The generators `b·ρ_c(w′)` of `Σ_b b·ρ_c(𝐇_c)` as a right `𝐒`-module.
struct SpanningSet {
    elems: Vec<(WeylElem, NilOp)>,
}

impl SpanningSet {
    fn new(rs: &RootSystem, bs: &[(&str, NilOp)], rho: &Rho, max_len: usize) -> Self {
        let mut elems = Vec::new();
        for w in rs.enumerate_weyl(max_len) {
            let word: Vec<Letter> = rs.reduced_word(&w).into_iter().map(Letter::S).collect();
            let r = rho.word(rs, &word);
            for (_, b) in bs {
                let op = b.compose(rs, &r);
                if let Some(top) = unique_top(rs, &op) {
                    elems.push((top, op));
                }
            }
        }
        SpanningSet { elems }
    }

    /// Greedy elimination by Weyl length; at each top the leading coefficient
    /// is solved for in the `ℚ[x]`-span of the available leading coefficients.
    fn reduces(&self, rs: &RootSystem, x: &NilOp, var: usize) -> bool {
        let mut residual = x.clone();
        for _ in 0..10_000 {
            if residual.is_zero() {
                return true;
            }
            let Some(v) = residual
                .support()
                .into_iter()
                .max_by_key(|v| (rs.length(v), rs.reduced_word(v)))
            else {
                return true;
            };
            let cands: Vec<&NilOp> = self.elems.iter().filter(|(t, _)| *t == v).map(|(_, op)| op).collect();
            let leads: Vec<RatFunc> = cands.iter().map(|op| op.coeff(&v)).collect();
            let Some(gs) = solve_univariate(&leads, &residual.coeff(&v), var) else {
                return false;
            };
            for (op, g) in cands.iter().zip(gs) {
                let f = twist(rs, &v.inverse(), &RatFunc::from_poly(g));
                residual = residual.sub(&op.scale_right(rs, &f));
            }
            if !residual.coeff(&v).is_zero() {
                return false;
            }
        }
        false
    }
}

fn unique_top(rs: &RootSystem, op: &NilOp) -> Option<WeylElem> {
    let supp = op.support();
    let m = supp.iter().map(|v| rs.length(v)).max()?;
    let tops: Vec<WeylElem> = supp.into_iter().filter(|v| rs.length(v) == m).collect();
    (tops.len() == 1).then(|| tops[0].clone())
}

/// Solves `target = Σ leads_i g_i` with `g_i ∈ ℚ[x_var]`.
fn solve_univariate(leads: &[RatFunc], target: &RatFunc, var: usize) -> Option<Vec<Poly>> {
    if leads.is_empty() {
        return None;
    }
    let mut den: BTreeMap<Poly, u32> = BTreeMap::new();
    for r in leads.iter().chain(std::iter::once(target)) {
        for (l, &e) in r.denom_factors() {
            let slot = den.entry(l.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
    }
    let dpoly = den.iter().fold(Poly::one(), |acc, (l, &e)| &acc * &l.pow(e));
    let clear = |r: &RatFunc| r.mul_poly(&dpoly).to_poly();
    let ps: Vec<Poly> = leads.iter().map(clear).collect::<Option<_>>()?;
    let t = clear(target)?;
    if ps
        .iter()
        .chain(std::iter::once(&t))
        .any(|p| p.max_var().is_some_and(|m| m != var))
    {
        return None;
    }
    let mut g = Poly::zero();
    let mut coeffs: Vec<Poly> = Vec::new();
    for p in &ps {
        let (g2, s, u) = ext_gcd(&g, p);
        coeffs = coeffs.iter().map(|c| c * &s).collect();
        coeffs.push(u);
        g = g2;
    }
    if g.is_zero() {
        return t.is_zero().then(|| vec![Poly::zero(); ps.len()]);
    }
    let quot = t.exact_div(&g)?;
    Some(coeffs.iter().map(|c| c * &quot).collect())
}

/// Extended Euclid in one variable: `(g, s, t)` with `s·a + t·b = g`.
fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (qt, r) = r0.div_rem(&r1);
        let s2 = &s0 - &(&qt * &s1);
        let t2 = &t0 - &(&qt * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    (r0, s0, t0)
}

//! Hom-spaces of the chamber category: τ-operators of galleries, the τ-basis,
//! triangular decomposition with membership, and composition.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::Signed;

use crate::chambers::{
    act_chamber, dinv, fundamental_chamber, minimal_gallery, minimal_gallery_from, same_chamber, separating_walls,
    Chamber, Gallery, Wall,
};
use crate::error::{Error, Result};
use crate::exactalg::{FactoredRat, Poly, RatFunc, Q};
use crate::nilhecke::{demazure, iota, iota_poly, twist, twist_factored, NilOp};
use crate::rootdata::{RootSystem, WeylElem};

/// The one-step operator `τ_{C,C′}`.
pub fn tau_step(rs: &RootSystem, a: &Chamber, b: &Chamber) -> Result<NilOp> {
    let sep = separating_walls(rs, a, b);
    let phi: Vec<&Wall> = sep.iter().filter(|w| w.is_phi()).collect();
    match phi.len() {
        0 => Ok(NilOp::mul_poly(rs, dinv(rs, a, b))),
        1 if sep.len() == 1 => {
            let r = phi[0].root();
            let beta = if r.eval(&a.z).is_positive() { r.clone() } else { r.neg() };
            demazure(rs, &beta)
        }
        _ => Err(Error::NotAdjacent),
    }
}

/// Operator of one recorded gallery step.
fn step_op(rs: &RootSystem, w: &Wall, target: &Chamber) -> Result<(NilOp, StepKind)> {
    match w {
        Wall::Phi(beta) => Ok((demazure(rs, beta)?, StepKind::Theta)),
        Wall::Psi(_) => {
            if w.eval(rs, target).is_positive() {
                let p = w.poly(rs);
                Ok((NilOp::mul_poly(rs, p.clone()), StepKind::Mult(p)))
            } else {
                Ok((NilOp::identity(rs), StepKind::Unit))
            }
        }
    }
}

enum StepKind {
    Theta,
    Mult(Poly),
    Unit,
}

/// `τ_G = τ_{C_{n−1},C_n} ∘ ⋯ ∘ τ_{C_0,C_1}`.
pub fn tau_gallery(rs: &RootSystem, g: &Gallery) -> Result<NilOp> {
    let mut acc = NilOp::identity(rs);
    for (w, c) in g.walls.iter().zip(&g.chambers[1..]) {
        let (op, _) = step_op(rs, w, c)?;
        acc = op.compose(rs, &acc);
    }
    Ok(acc)
}

/// Net degree of a gallery: counted Ψ-crossings minus Φ-crossings.
pub fn gallery_degree(rs: &RootSystem, g: &Gallery) -> i64 {
    g.walls
        .iter()
        .zip(&g.chambers[1..])
        .map(|(w, c)| match w {
            Wall::Phi(_) => -1,
            Wall::Psi(_) => i64::from(w.eval(rs, c).is_positive()),
        })
        .sum()
}

/// `w ∘ τ_G` together with the factored coefficient at `w`.
///
/// The coefficient is `ʷ𝔡(G)` times the coefficient of `w` in
/// `w ∘ ϑ_{β_n} ∘ ⋯ ∘ ϑ_{β_1}` (whose numerator is constant); callers verify it
/// against the normal form.
pub fn transported_tau(rs: &RootSystem, w: &WeylElem, g: &Gallery) -> Result<(NilOp, FactoredRat)> {
    let mut acc = NilOp::identity(rs);
    let mut pure = NilOp::weyl(w.clone());
    let mut thetas = Vec::new();
    let mut mult = FactoredRat::one();
    for (wall, c) in g.walls.iter().zip(&g.chambers[1..]) {
        let (op, kind) = step_op(rs, wall, c)?;
        acc = op.compose(rs, &acc);
        match kind {
            StepKind::Theta => thetas.push(op),
            StepKind::Mult(p) => {
                mult = FactoredRat::from_linear(&p).expect("wall is linear").mul(&mult);
            }
            StepKind::Unit => {}
        }
    }
    for th in thetas.iter().rev() {
        pure = pure.compose(rs, th);
    }
    let top = FactoredRat::from_ratfunc(&pure.coeff(w))
        .ok_or_else(|| Error::LeadingTermViolation(format!("no unit coefficient at {}", rs.word_string(w))))?;
    let op = NilOp::weyl(w.clone()).compose(rs, &acc);
    Ok((op, twist_factored(rs, w, &mult).mul(&top)))
}

/// A morphism of the chamber category.
#[derive(Clone, Debug)]
pub struct HomElement {
    pub op: NilOp,
    pub source: Chamber,
    pub target: Chamber,
    /// Right τ-coordinates and membership flag, when computed.
    pub decomposition: Option<(BTreeMap<WeylElem, RatFunc>, bool)>,
}

impl HomElement {
    pub fn new(op: NilOp, source: Chamber, target: Chamber) -> Self {
        HomElement {
            op,
            source,
            target,
            decomposition: None,
        }
    }
}

/// A cached τ-basis element.
#[derive(Clone, Debug)]
pub struct TauElem {
    pub w: WeylElem,
    pub op: NilOp,
    pub lead: FactoredRat,
    pub gallery: Gallery,
}

type Key = (Chamber, Chamber, WeylElem);

/// Shared context for τ-bases with a session length bound.
pub struct HomCtx<'a> {
    pub rs: &'a RootSystem,
    pub max_len: usize,
    cache: RwLock<HashMap<Key, Arc<TauElem>>>,
}

/// Transport data for the Bruhat order on `Hom(C, C′)`: `v ↦ y′⁻¹ v y`.
#[derive(Clone, Debug)]
pub struct Transport {
    pub y: WeylElem,
    pub y2_inv: WeylElem,
}

impl Transport {
    pub fn new(rs: &RootSystem, c: &Chamber, c2: &Chamber) -> Self {
        Transport {
            y: rs.alcove_of(&c.z),
            y2_inv: rs.alcove_of(&c2.z).inverse(),
        }
    }

    pub fn key(&self, v: &WeylElem) -> WeylElem {
        self.y2_inv.compose(v).compose(&self.y)
    }

    pub fn length(&self, rs: &RootSystem, v: &WeylElem) -> usize {
        rs.length(&self.key(v))
    }

    pub fn leq(&self, rs: &RootSystem, u: &WeylElem, v: &WeylElem) -> bool {
        rs.bruhat_leq(&self.key(u), &self.key(v))
    }
}

impl<'a> HomCtx<'a> {
    pub fn new(rs: &'a RootSystem, max_len: usize) -> Self {
        HomCtx {
            rs,
            max_len,
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// `τ_{C,C′,w} = w ∘ τ_{G_w}` with `G_w` the canonical minimal gallery to `w⁻¹C′`.
    pub fn tau_basis_elem(&self, c: &Chamber, c2: &Chamber, w: &WeylElem) -> Result<Arc<TauElem>> {
        let key = (c.clone(), c2.clone(), w.clone());
        if let Some(e) = self.cache.read().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let tr = Transport::new(self.rs, c, c2);
        let len = tr.length(self.rs, w);
        if len > self.max_len {
            return Err(Error::LengthBoundExceeded {
                bound: self.max_len,
                needed: len,
            });
        }
        let g = minimal_gallery(self.rs, c, &act_chamber(&w.inverse(), c2))?;
        let e = Arc::new(build_tau_elem(self.rs, &tr, w, g)?);
        self.cache.write().unwrap().entry(key).or_insert_with(|| e.clone());
        Ok(e)
    }

    /// Right τ-coordinates `a = Σ τ_{C,C′,w} ∘ f_w` and membership (`f_w ∈ 𝐒`).
    pub fn decompose(&self, c: &Chamber, c2: &Chamber, a: &NilOp) -> Result<(BTreeMap<WeylElem, RatFunc>, bool)> {
        self.decompose_at(c, c2, a, None)
    }

    /// As [`HomCtx::decompose`], against the τ-basis with all variables
    /// substituted by `images` (a parameter specialization).
    pub fn decompose_specialized(
        &self,
        c: &Chamber,
        c2: &Chamber,
        a: &NilOp,
        images: &[Poly],
    ) -> Result<(BTreeMap<WeylElem, RatFunc>, bool)> {
        self.decompose_at(c, c2, a, Some(images))
    }

    fn decompose_at(
        &self,
        c: &Chamber,
        c2: &Chamber,
        a: &NilOp,
        images: Option<&[Poly]>,
    ) -> Result<(BTreeMap<WeylElem, RatFunc>, bool)> {
        let rs = self.rs;
        let tr = Transport::new(rs, c, c2);
        let mut residual = a.clone();
        let mut out: BTreeMap<WeylElem, RatFunc> = BTreeMap::new();
        let mut rounds = 0usize;
        while !residual.is_zero() {
            rounds += 1;
            if rounds > 10_000 {
                return Err(Error::InternalBasisError("elimination did not terminate".into()));
            }
            let mut order: Vec<(usize, Vec<usize>, WeylElem)> = residual
                .support()
                .into_iter()
                .map(|v| {
                    let k = tr.key(&v);
                    let word = rs.reduced_word(&k);
                    (word.len(), word, v)
                })
                .collect();
            order.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(&y.1)));
            let top = order[0].0;
            if top > self.max_len {
                return Err(Error::LengthBoundExceeded {
                    bound: self.max_len,
                    needed: top,
                });
            }
            for (len, _, v) in order {
                if len != top {
                    break;
                }
                let av = residual.coeff(&v);
                if av.is_zero() {
                    continue;
                }
                let t = self.tau_basis_elem(c, c2, &v)?;
                let (op, lead) = match images {
                    None => (t.op.clone(), t.lead.clone()),
                    Some(im) => {
                        let bad = || Error::InternalBasisError("specialization hits a pole".into());
                        (
                            t.op.substitute(im).ok_or_else(bad)?,
                            t.lead.substitute(im).ok_or_else(bad)?,
                        )
                    }
                };
                let ratio = av.mul_factored(&lead.inv());
                let f = twist(rs, &v.inverse(), &ratio);
                residual = residual.sub(&op.scale_right(rs, &f));
                if !residual.coeff(&v).is_zero() {
                    return Err(Error::InternalBasisError("leading coefficient did not cancel".into()));
                }
                let entry = out.entry(v).or_default();
                *entry = &*entry + &f;
            }
        }
        out.retain(|_, f| !f.is_zero());
        let member = out.values().all(|f| f.is_poly());
        Ok((out, member))
    }

    /// Rebuilds `Σ τ_{C,C′,w} ∘ f_w`.
    pub fn recompose(&self, c: &Chamber, c2: &Chamber, coeffs: &BTreeMap<WeylElem, RatFunc>) -> Result<NilOp> {
        let mut out = NilOp::zero();
        for (w, f) in coeffs {
            let t = self.tau_basis_elem(c, c2, w)?;
            out = out.add(&t.op.scale_right(self.rs, f));
        }
        Ok(out)
    }

    /// Decomposes a hom element in place.
    pub fn decompose_hom(&self, h: &mut HomElement) -> Result<bool> {
        let d = self.decompose(&h.source, &h.target, &h.op)?;
        let member = d.1;
        h.decomposition = Some(d);
        Ok(member)
    }
}

fn build_tau_elem(rs: &RootSystem, tr: &Transport, w: &WeylElem, g: Gallery) -> Result<TauElem> {
    let (op, lead) = transported_tau(rs, w, &g)?;
    if op.coeff(w) != lead.to_ratfunc() {
        return Err(Error::LeadingTermViolation(format!(
            "leading coefficient mismatch at {}",
            rs.word_string(w)
        )));
    }
    for u in op.support() {
        if !tr.leq(rs, &u, w) {
            return Err(Error::LeadingTermViolation(format!(
                "support element {} not below {}",
                rs.word_string(&u),
                rs.word_string(w)
            )));
        }
    }
    Ok(TauElem {
        w: w.clone(),
        op,
        lead,
        gallery: g,
    })
}

/// Composition `g ∘ f` of hom elements.
pub fn compose_hom(rs: &RootSystem, g: &HomElement, f: &HomElement) -> Result<HomElement> {
    if !same_chamber(rs, &f.target, &g.source) {
        return Err(Error::ChamberMismatch);
    }
    Ok(HomElement::new(
        g.op.compose(rs, &f.op),
        f.source.clone(),
        g.target.clone(),
    ))
}

/// `w ∘ τ_G` for an alternative minimal gallery chosen by perturbation attempt.
pub fn tau_with_gallery_attempt(
    rs: &RootSystem,
    c: &Chamber,
    c2: &Chamber,
    w: &WeylElem,
    attempt: usize,
) -> Result<(NilOp, Gallery)> {
    let g = minimal_gallery_from(rs, c, &act_chamber(&w.inverse(), c2), attempt)?;
    let op = NilOp::weyl(w.clone()).compose(rs, &tau_gallery(rs, &g)?);
    Ok((op, g))
}

/// Report of [`verify_iota`].
#[derive(Clone, Debug, Default)]
pub struct IotaReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl IotaReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the defining relations on `ι_d`-images and membership of images of
/// generator words of length `<= depth` in `End(κ_d)`.
pub fn verify_iota(rs: &RootSystem, d: &[Q], depth: usize) -> Result<IotaReport> {
    let mut rep = IotaReport::default();
    let n = rs.rank;
    let gens = iota(rs, d).s;
    let one = NilOp::identity(rs);
    let mut check = |ok: bool, what: String| {
        rep.checked += 1;
        if !ok {
            rep.failures.push(what);
        }
    };
    for i in 0..=n {
        check(gens[i].compose(rs, &gens[i]) == one, format!("s{i}^2 = 1"));
        for j in i + 1..=n {
            if let Some(m) = rs.coxeter[i][j] {
                let alt = |a: usize, b: usize| {
                    (0..m).fold(one.clone(), |acc, t| {
                        acc.compose(rs, &gens[if t % 2 == 0 { a } else { b }])
                    })
                };
                check(alt(i, j) == alt(j, i), format!("braid s{i} s{j}"));
            }
        }
        let a = &rs.affine_simple[i];
        let ci = Poly::var(rs.orbit_var(a.orbit));
        let th = demazure(rs, a)?;
        for k in 0..n {
            let f = Poly::var(rs.x_var(k));
            let sf = rs.act_on_poly(rs.s(i), &f);
            let lhs = gens[i]
                .compose(rs, &iota_poly(rs, d, &f))
                .sub(&iota_poly(rs, d, &sf).compose(rs, &gens[i]));
            let rhs = iota_poly(rs, d, &(&ci * &th.apply(rs, &f)?));
            check(lhs == rhs, format!("cross relation s{i} x{}", k + 1));
        }
    }
    if depth > 0 {
        let ctx = HomCtx::new(rs, depth);
        let kd = fundamental_chamber(rs, d);
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..depth {
            let mut next = Vec::new();
            for w in &layer {
                for i in 0..=n {
                    if w.last() != Some(&i) {
                        let mut w2 = w.clone();
                        w2.push(i);
                        next.push(w2);
                    }
                }
            }
            words.extend(next.iter().cloned());
            layer = next;
        }
        for w in words {
            let op = w.iter().fold(one.clone(), |acc, &i| acc.compose(rs, &gens[i]));
            let (_, member) = ctx.decompose(&kd, &kd, &op)?;
            let name = if w.is_empty() {
                "e".to_string()
            } else {
                w.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("*")
            };
            check(member, format!("membership of {name}"));
        }
    }
    Ok(rep)
}

/// Zero vector of parameter shifts.
pub fn zero_shift(rs: &RootSystem) -> Vec<Q> {
    vec![Q::from_integer(0.into()); rs.n_orb()]
}

//! Affine Weyl group elements as affine maps of 𝔥¹.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use num_traits::Zero;

use crate::exactalg::rational::{dot, identity, mat_mul, mat_vec, transpose, Q};

use super::types::AffineRoot;

/// `z ↦ lin·z + trans` on point coordinates; the inverse linear part is cached.
#[derive(Clone, Debug)]
pub struct WeylElem {
    lin: Vec<Vec<Q>>,
    inv_lin: Vec<Vec<Q>>,
    trans: Vec<Q>,
}

impl PartialEq for WeylElem {
    fn eq(&self, o: &Self) -> bool {
        self.trans == o.trans && self.lin == o.lin
    }
}

impl Eq for WeylElem {}

impl Hash for WeylElem {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.lin.hash(h);
        self.trans.hash(h);
    }
}

impl PartialOrd for WeylElem {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for WeylElem {
    fn cmp(&self, o: &Self) -> Ordering {
        self.trans.cmp(&o.trans).then_with(|| self.lin.cmp(&o.lin))
    }
}

impl WeylElem {
    pub fn identity(r: usize) -> Self {
        WeylElem {
            lin: identity(r),
            inv_lin: identity(r),
            trans: vec![Q::zero(); r],
        }
    }

    /// Reflection `z ↦ z − α(z)·ᾱ^∨` in the zero set of an affine root.
    pub fn reflection(alpha: &AffineRoot, gram: &[Vec<Q>]) -> Self {
        let r = alpha.bar.len();
        let gv = mat_vec(gram, &alpha.bar);
        let norm = dot(&alpha.bar, &gv);
        let cor: Vec<Q> = gv.iter().map(|x| Q::from_integer(2.into()) * x / &norm).collect();
        let mut lin = identity(r);
        for i in 0..r {
            for j in 0..r {
                lin[i][j] -= &cor[i] * &alpha.bar[j];
            }
        }
        let trans: Vec<Q> = cor.iter().map(|c| -(c * &alpha.level)).collect();
        WeylElem {
            inv_lin: lin.clone(),
            lin,
            trans,
        }
    }

    /// Translation `z ↦ z + ν`.
    pub fn translation(nu: &[Q]) -> Self {
        let r = nu.len();
        WeylElem {
            lin: identity(r),
            inv_lin: identity(r),
            trans: nu.to_vec(),
        }
    }

    pub fn lin(&self) -> &[Vec<Q>] {
        &self.lin
    }

    pub fn trans(&self) -> &[Q] {
        &self.trans
    }

    pub fn rank(&self) -> usize {
        self.trans.len()
    }

    pub fn is_identity(&self) -> bool {
        self.trans.iter().all(|x| x.is_zero()) && self.lin == identity(self.rank())
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &WeylElem) -> WeylElem {
        let lin = mat_mul(&self.lin, &o.lin);
        let inv_lin = mat_mul(&o.inv_lin, &self.inv_lin);
        let mut trans = mat_vec(&self.lin, &o.trans);
        for (t, s) in trans.iter_mut().zip(&self.trans) {
            *t += s;
        }
        WeylElem { lin, inv_lin, trans }
    }

    pub fn inverse(&self) -> WeylElem {
        let t = mat_vec(&self.inv_lin, &self.trans);
        WeylElem {
            lin: self.inv_lin.clone(),
            inv_lin: self.lin.clone(),
            trans: t.into_iter().map(|x| -x).collect(),
        }
    }

    pub fn apply_point(&self, z: &[Q]) -> Vec<Q> {
        let mut out = mat_vec(&self.lin, z);
        for (o, t) in out.iter_mut().zip(&self.trans) {
            *o += t;
        }
        out
    }

    /// Linear part only (action on vectors such as coroots).
    pub fn apply_vector(&self, v: &[Q]) -> Vec<Q> {
        mat_vec(&self.lin, v)
    }

    /// `(bar, level) ↦` the functional `z ↦ μ(w⁻¹ z)`.
    pub fn act_on_functional(&self, bar: &[Q], level: &Q) -> (Vec<Q>, Q) {
        let it = transpose(&self.inv_lin);
        let nb = mat_vec(&it, bar);
        let shift = dot(bar, &mat_vec(&self.inv_lin, &self.trans));
        (nb, level - shift)
    }

    pub fn act_on_root(&self, a: &AffineRoot) -> AffineRoot {
        let (bar, level) = self.act_on_functional(&a.bar, &a.level);
        AffineRoot::new(bar, level, a.orbit)
    }

    /// Affine images `x_i ∘ w⁻¹` as `(coefficient rows, constants)`.
    pub fn inverse_coordinate_maps(&self) -> (Vec<Vec<Q>>, Vec<Q>) {
        let c = mat_vec(&self.inv_lin, &self.trans);
        (self.inv_lin.clone(), c.into_iter().map(|x| -x).collect())
    }
}

//! Parameter-space stratification: the configuration `Ψ̄`, its circuits and
//! the classes `𝔐`, the subfamily `𝔐_c`, and stratum comparison.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{param_eval, ParamPoint, Q};
use crate::rootdata::{Orbit, RootSystem};

/// An element `ᾱ − 𝐜_α` of `Ψ̄` (with `ᾱ/2` for divisible roots).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PsiBar {
    pub bar: Vec<Q>,
    pub orbit: Orbit,
}

/// The finite configuration `Ψ̄`, in the root system's family order.
pub fn psi_bar(rs: &RootSystem) -> Vec<PsiBar> {
    let mut seen = BTreeSet::new();
    for f in &rs.families {
        seen.insert(PsiBar {
            bar: f.bar.clone(),
            orbit: f.orbit,
        });
    }
    seen.into_iter().collect()
}

/// A class `[μ] ∈ ℙ(𝔓*_ℚ)`: a primitive integer covector over the orbits,
/// normalized so that its first nonzero coordinate is positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MClass {
    pub coords: Vec<i64>,
}

impl MClass {
    /// Normalizes a nonzero rational covector.
    pub fn from_rational(v: &[Q]) -> Option<Self> {
        let den = v.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<num_bigint::BigInt> = v
            .iter()
            .map(|x| (x * Q::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return None;
        }
        let sign = if ints.iter().find(|x| !x.is_zero())?.is_negative() {
            -1
        } else {
            1
        };
        let coords = ints
            .iter()
            .map(|x| (x / &g).to_i64().map(|y| y * sign))
            .collect::<Option<Vec<_>>>()?;
        Some(MClass { coords })
    }

    pub fn as_q(&self) -> Vec<Q> {
        self.coords.iter().map(|&x| Q::from_integer(x.into())).collect()
    }

    /// `μ(c)` for the stored representative.
    pub fn eval(&self, c: &ParamPoint) -> crate::exactalg::ParamValue {
        param_eval(&self.as_q(), c)
    }

    pub fn render(&self, rs: &RootSystem) -> String {
        let mut s = String::new();
        for (k, &x) in self.coords.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let name = rs.var_names[k].as_str();
            let mag = x.abs();
            if s.is_empty() {
                if x < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if x < 0 { " - " } else { " + " });
            }
            if mag != 1 {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(name);
        }
        s
    }
}

/// Builds an `MClass` from `(orbit, coefficient)` pairs.
pub fn mclass(rs: &RootSystem, parts: &[(Orbit, i64)]) -> MClass {
    let mut v = vec![Q::zero(); rs.n_orb()];
    for &(o, c) in parts {
        v[rs.orbit_var(o)] += Q::from_integer(c.into());
    }
    MClass::from_rational(&v).expect("nonzero class")
}

struct Elem {
    bar: Vec<Rational64>,
    orbit: usize,
}

struct Row {
    pivot: usize,
    v: Vec<Rational64>,
    /// Coefficients over the current independent set.
    comb: Vec<Rational64>,
}

fn to_r64(x: &Q) -> Rational64 {
    Rational64::new(
        x.numer().to_i64().expect("small entry"),
        x.denom().to_i64().expect("small entry"),
    )
}

/// The set `𝔐` of classes `[μ_σ]` over all circuits `σ ⊆ Ψ̄`.
pub fn circuits(rs: &RootSystem) -> Vec<MClass> {
    let elems: Vec<Elem> = psi_bar(rs)
        .into_iter()
        .map(|p| Elem {
            bar: p.bar.iter().map(to_r64).collect(),
            orbit: rs.orbit_var(p.orbit),
        })
        .collect();
    let mut out = BTreeSet::new();
    let mut set = Vec::new();
    let mut rows = Vec::new();
    dfs(rs, &elems, 0, &mut set, &mut rows, &mut out);
    out.into_iter().collect()
}

fn reduce(rows: &[Row], e: &[Rational64]) -> (Vec<Rational64>, Vec<Rational64>) {
    let mut v = e.to_vec();
    let mut factors = Vec::with_capacity(rows.len());
    for r in rows {
        let f = v[r.pivot];
        if !f.is_zero() {
            for (a, b) in v.iter_mut().zip(&r.v) {
                *a -= f * b;
            }
        }
        factors.push(f);
    }
    (v, factors)
}

fn dfs(
    rs: &RootSystem,
    elems: &[Elem],
    start: usize,
    set: &mut Vec<usize>,
    rows: &mut Vec<Row>,
    out: &mut BTreeSet<MClass>,
) {
    let k = set.len();
    for e in start..elems.len() {
        let (v, factors) = reduce(rows, &elems[e].bar);
        if v.iter().all(|x| x.is_zero()) {
            // e = Σ_i a_i s_i over the current independent set.
            let mut a = vec![Rational64::zero(); k];
            for (f, r) in factors.iter().zip(rows.iter()) {
                for (ai, ci) in a.iter_mut().zip(&r.comb) {
                    *ai += f * ci;
                }
            }
            if k == 0 || a.iter().any(|x| x.is_zero()) {
                continue;
            }
            let mut mu = vec![Q::zero(); rs.n_orb()];
            let mut add = |idx: usize, d: Rational64| {
                mu[elems[idx].orbit] -= Q::new((*d.numer()).into(), (*d.denom()).into());
            };
            add(e, Rational64::one());
            for (i, &s) in set.iter().enumerate() {
                add(s, -a[i]);
            }
            if let Some(c) = MClass::from_rational(&mu) {
                out.insert(c);
            }
        } else if k < rs.rank {
            let pivot = v.iter().position(|x| !x.is_zero()).expect("nonzero");
            let p = v[pivot];
            let mut comb = vec![Rational64::zero(); k + 1];
            for (f, r) in factors.iter().zip(rows.iter()) {
                for (ci, rc) in comb.iter_mut().zip(&r.comb) {
                    *ci -= f * rc;
                }
            }
            comb[k] = Rational64::one();
            let row = Row {
                pivot,
                v: v.iter().map(|x| x / p).collect(),
                comb: comb.iter().map(|x| x / p).collect(),
            };
            for r in rows.iter_mut() {
                r.comb.push(Rational64::zero());
            }
            rows.push(row);
            set.push(e);
            dfs(rs, elems, e + 1, set, rows, out);
            set.pop();
            rows.pop();
            for r in rows.iter_mut() {
                r.comb.pop();
            }
        }
    }
}

/// `𝔐_c = {[μ] ∈ 𝔐 : μ(c) ∈ ℚ}`.
pub fn m_c(classes: &[MClass], c: &ParamPoint) -> Vec<MClass> {
    classes.iter().filter(|m| m.eval(c).is_rational()).cloned().collect()
}

/// Relation between the strata of two parameters in one coset `c + 𝔓_ℤ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumComparison {
    pub same: bool,
    pub antipodal: bool,
    pub open_c: bool,
    pub open_c2: bool,
    /// Signs of `μ(c)` and `μ(c′)` per class of `𝔐_c`.
    pub signs: Vec<(MClass, i8, i8)>,
}

impl StratumComparison {
    pub fn relation(&self) -> &'static str {
        if self.same {
            "same"
        } else if self.antipodal {
            "antipodal"
        } else {
            "neither"
        }
    }
}

impl fmt::Display for StratumComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (open: {}, {})", self.relation(), self.open_c, self.open_c2)
    }
}

fn sign_of(v: &Q) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Compares the `c`-facets containing `c` and `c′`.
pub fn stratum_compare(classes: &[MClass], c: &ParamPoint, c2: &ParamPoint) -> Result<StratumComparison> {
    let diff = c.sub(c2);
    let ints = diff.rational_parts().ok_or(Error::CosetMismatch)?;
    if ints.iter().any(|x| !x.is_integer()) || c.values.len() != c2.values.len() {
        return Err(Error::CosetMismatch);
    }
    let mut signs = Vec::new();
    for m in m_c(classes, c) {
        let a = sign_of(&m.eval(c).rational);
        let b = sign_of(&m.eval(c2).rational);
        signs.push((m, a, b));
    }
    Ok(StratumComparison {
        same: signs.iter().all(|(_, a, b)| a == b),
        antipodal: signs.iter().all(|(_, a, b)| *a == -*b),
        open_c: signs.iter().all(|(_, a, _)| *a != 0),
        open_c2: signs.iter().all(|(_, _, b)| *b != 0),
        signs,
    })
}

/// The classes printed in the stratification proposition, when listed.
pub fn expected_classes(rs: &RootSystem) -> Option<Vec<MClass>> {
    use crate::rootdata::RootType;
    use Orbit::{Flat, Nat, Sharp};
    let m = |parts: &[(Orbit, i64)]| mclass(rs, parts);
    let mut v = match rs.ty {
        RootType::A | RootType::D | RootType::E => vec![m(&[(Nat, 1)])],
        RootType::BC if rs.rank == 1 => {
            vec![
                m(&[(Sharp, 1)]),
                m(&[(Flat, 1)]),
                m(&[(Sharp, 1), (Flat, 1)]),
                m(&[(Sharp, 1), (Flat, -1)]),
            ]
        }
        RootType::BC => {
            let mut v = vec![m(&[(Nat, 1)]), m(&[(Sharp, 1)]), m(&[(Flat, 1)])];
            for e in [1, -1] {
                v.push(m(&[(Nat, 1), (Sharp, 2 * e)]));
                v.push(m(&[(Nat, 1), (Flat, 2 * e)]));
                v.push(m(&[(Sharp, 1), (Flat, e)]));
                for e2 in [1, -1] {
                    v.push(m(&[(Nat, 1), (Sharp, e), (Flat, e2)]));
                }
            }
            v
        }
        RootType::F | RootType::G => {
            let mut v = vec![m(&[(Nat, 1)]), m(&[(Sharp, 1)])];
            for e in [1, -1] {
                v.push(m(&[(Nat, 1), (Sharp, e)]));
                v.push(m(&[(Nat, 1), (Sharp, 2 * e)]));
            }
            v
        }
        _ => return None,
    };
    v.sort();
    v.dedup();
    Some(v)
}

//! Parameter points with formal transcendental parts.

use num_traits::Zero;

use super::rational::{q_to_string, Q};

/// A value `a + Σ_j b_j t_j` with formal, linearly independent symbols `t_j`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ParamValue {
    pub rational: Q,
    pub transcendental: Vec<Q>,
}

impl ParamValue {
    pub fn rational(a: Q) -> Self {
        ParamValue {
            rational: a,
            transcendental: Vec::new(),
        }
    }

    pub fn new(a: Q, b: Vec<Q>) -> Self {
        ParamValue {
            rational: a,
            transcendental: b,
        }
    }

    /// True when all transcendental parts cancel.
    pub fn is_rational(&self) -> bool {
        self.transcendental.iter().all(|b| b.is_zero())
    }

    pub fn render(&self) -> String {
        let mut s = q_to_string(&self.rational);
        for (j, b) in self.transcendental.iter().enumerate() {
            if !b.is_zero() {
                s.push_str(&format!(" + {}*t{}", q_to_string(b), j + 1));
            }
        }
        s
    }
}

/// One value per orbit, in the root system's orbit order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ParamPoint {
    pub values: Vec<ParamValue>,
}

impl ParamPoint {
    pub fn rational(vals: &[Q]) -> Self {
        ParamPoint {
            values: vals.iter().cloned().map(ParamValue::rational).collect(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(|v| v.is_rational())
    }

    /// Rational parts, if the point is rational.
    pub fn rational_parts(&self) -> Option<Vec<Q>> {
        if self.is_rational() {
            Some(self.values.iter().map(|v| v.rational.clone()).collect())
        } else {
            None
        }
    }

    fn num_symbols(&self) -> usize {
        self.values.iter().map(|v| v.transcendental.len()).max().unwrap_or(0)
    }

    /// Componentwise difference.
    pub fn sub(&self, o: &ParamPoint) -> ParamPoint {
        let n = self.num_symbols().max(o.num_symbols());
        let values = self
            .values
            .iter()
            .zip(&o.values)
            .map(|(a, b)| {
                let t = (0..n)
                    .map(|j| {
                        a.transcendental.get(j).cloned().unwrap_or_else(Q::zero)
                            - b.transcendental.get(j).cloned().unwrap_or_else(Q::zero)
                    })
                    .collect();
                ParamValue::new(&a.rational - &b.rational, t)
            })
            .collect();
        ParamPoint { values }
    }
}

/// Evaluates the functional `Σ mu[k]·c_k` at `c`.
pub fn param_eval(mu: &[Q], c: &ParamPoint) -> ParamValue {
    let n = c.num_symbols();
    let mut out = ParamValue::new(Q::zero(), vec![Q::zero(); n]);
    for (m, v) in mu.iter().zip(&c.values) {
        out.rational += m * &v.rational;
        for (j, b) in v.transcendental.iter().enumerate() {
            out.transcendental[j] += m * b;
        }
    }
    out
}

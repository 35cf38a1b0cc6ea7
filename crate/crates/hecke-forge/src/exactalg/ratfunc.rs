//! Rational functions whose denominators are products of affine-linear forms.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::rational::{primitive_normalize, Q};

/// Writes a nonconstant affine-linear `p` as `k·L` with `L` a primitive integer
/// form whose leading coefficient is positive. `None` unless `deg p = 1`.
pub fn normalize_linear(p: &Poly) -> Option<(Q, Poly)> {
    if p.degree() != Some(1) {
        return None;
    }
    let coeffs: Vec<(_, Q)> = p.terms().rev().map(|(m, c)| (*m, c.clone())).collect();
    let vals: Vec<Q> = coeffs.iter().map(|(_, c)| c.clone()).collect();
    let (k, ints) = primitive_normalize(&vals);
    let mut l = Poly::zero();
    for ((m, _), i) in coeffs.iter().zip(ints) {
        l.add_assign_ref(&Poly::monomial(*m, Q::from_integer(i)));
    }
    Some((k, l))
}

/// `num / Π L^e` with normalized linear factors `L` and `num` not divisible by any of them.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct RatFunc {
    num: Poly,
    den: BTreeMap<Poly, u32>,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc::default()
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn constant(c: Q) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: BTreeMap::new(),
        }
    }

    /// `1 / p` for an affine-linear `p`; constants are inverted directly.
    /// `None` if `p` is zero or of degree > 1.
    pub fn inv_linear(p: &Poly) -> Option<Self> {
        if let Some(c) = p.as_constant() {
            if c.is_zero() {
                return None;
            }
            return Some(RatFunc::constant(c.recip()));
        }
        let (k, l) = normalize_linear(p)?;
        let mut den = BTreeMap::new();
        den.insert(l, 1);
        Some(RatFunc {
            num: Poly::constant(k.recip()),
            den,
        })
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom_factors(&self) -> &BTreeMap<Poly, u32> {
        &self.den
    }

    pub fn denom_poly(&self) -> Poly {
        let mut d = Poly::one();
        for (l, e) in &self.den {
            d = &d * &l.pow(*e);
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num == Poly::one()
    }

    /// The polynomial value when the denominator is trivial.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.den.is_empty() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_empty()
    }

    /// Degree of numerator minus degree of denominator.
    pub fn degree(&self) -> Option<i64> {
        let dn = self.num.degree()? as i64;
        Some(dn - self.den.values().map(|&e| e as i64).sum::<i64>())
    }

    fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let keys: Vec<Poly> = self.den.keys().cloned().collect();
        for l in keys {
            loop {
                let e = *self.den.get(&l).unwrap_or(&0);
                if e == 0 {
                    break;
                }
                match self.num.exact_div(&l) {
                    Some(qt) => {
                        self.num = qt;
                        if e == 1 {
                            self.den.remove(&l);
                        } else {
                            self.den.insert(l.clone(), e - 1);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    pub fn scale(&self, c: &Q) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        RatFunc {
            num: &self.num * p,
            den: self.den.clone(),
        }
        .reduce()
    }

    pub fn mul_factored(&self, f: &FactoredRat) -> RatFunc {
        let mut num = self.num.scale(&f.scalar);
        let mut den = self.den.clone();
        for (l, &e) in &f.factors {
            if e > 0 {
                num = &num * &l.pow(e as u32);
            } else {
                *den.entry(l.clone()).or_insert(0) += (-e) as u32;
            }
        }
        RatFunc { num, den }.reduce()
    }

    /// Applies a ring endomorphism given by variable images (affine-linear
    /// images keep denominators factored). `None` if a denominator factor maps to 0.
    pub fn substitute(&self, images: &[Poly]) -> Option<RatFunc> {
        let mut num = self.num.substitute(images);
        let mut den: BTreeMap<Poly, u32> = BTreeMap::new();
        for (l, &e) in &self.den {
            let img = l.substitute(images);
            if let Some(c) = img.as_constant() {
                if c.is_zero() {
                    return None;
                }
                num = num.scale(&num_traits::pow(c.recip(), e as usize));
                continue;
            }
            let (k, l2) = normalize_linear(&img).expect("affine substitution expected");
            num = num.scale(&num_traits::pow(k.recip(), e as usize));
            *den.entry(l2).or_insert(0) += e;
        }
        Some(RatFunc { num, den }.reduce())
    }

    pub fn eval(&self, point: &[Q]) -> Option<Q> {
        let mut d = Q::one();
        for (l, &e) in &self.den {
            d *= num_traits::pow(l.eval(point), e as usize);
        }
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    /// Deterministic text form `num` or `(num)/(L1^e1*L2)`.
    pub fn render(&self, names: &[String]) -> String {
        let n = self.num.render(names);
        if self.den.is_empty() {
            return n;
        }
        let ds: Vec<String> = self
            .den
            .iter()
            .rev()
            .map(|(l, e)| {
                if *e == 1 {
                    format!("({})", l.render(names))
                } else {
                    format!("({})^{}", l.render(names), e)
                }
            })
            .collect();
        format!("({})/({})", n, ds.join("*"))
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc {
                num: &self.num + &o.num,
                den: self.den.clone(),
            }
            .reduce();
        }
        let mut den = self.den.clone();
        for (l, &e) in &o.den {
            let x = den.entry(l.clone()).or_insert(0);
            if *x < e {
                *x = e;
            }
        }
        let lift = |r: &RatFunc| {
            let mut n = r.num.clone();
            for (l, &e) in &den {
                let have = *r.den.get(l).unwrap_or(&0);
                if e > have {
                    n = &n * &l.pow(e - have);
                }
            }
            n
        };
        let num = &lift(self) + &lift(o);
        RatFunc { num, den }.reduce()
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        let mut den = self.den.clone();
        for (l, &e) in &o.den {
            *den.entry(l.clone()).or_insert(0) += e;
        }
        RatFunc {
            num: &self.num * &o.num,
            den,
        }
        .reduce()
    }
}

/// Nonzero `scalar · Π L^e` with normalized linear `L` and integer exponents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactoredRat {
    pub scalar: Q,
    pub factors: BTreeMap<Poly, i32>,
}

impl FactoredRat {
    pub fn one() -> Self {
        FactoredRat {
            scalar: Q::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn constant(c: Q) -> Self {
        assert!(!c.is_zero(), "zero is not a factored unit");
        FactoredRat {
            scalar: c,
            factors: BTreeMap::new(),
        }
    }

    /// A constant or affine-linear polynomial, `None` if zero or nonlinear.
    pub fn from_linear(p: &Poly) -> Option<Self> {
        if let Some(c) = p.as_constant() {
            return if c.is_zero() {
                None
            } else {
                Some(FactoredRat::constant(c))
            };
        }
        let (k, l) = normalize_linear(p)?;
        let mut factors = BTreeMap::new();
        factors.insert(l, 1);
        Some(FactoredRat { scalar: k, factors })
    }

    /// Splits a rational function whose numerator is constant or affine-linear.
    pub fn from_ratfunc(r: &RatFunc) -> Option<Self> {
        let mut f = FactoredRat::from_linear(r.numer())?;
        for (l, &e) in r.denom_factors() {
            *f.factors.entry(l.clone()).or_insert(0) -= e as i32;
        }
        f.factors.retain(|_, e| *e != 0);
        Some(f)
    }

    pub fn mul(&self, o: &FactoredRat) -> FactoredRat {
        let mut factors = self.factors.clone();
        for (l, &e) in &o.factors {
            *factors.entry(l.clone()).or_insert(0) += e;
        }
        factors.retain(|_, e| *e != 0);
        FactoredRat {
            scalar: &self.scalar * &o.scalar,
            factors,
        }
    }

    pub fn inv(&self) -> FactoredRat {
        FactoredRat {
            scalar: self.scalar.recip(),
            factors: self.factors.iter().map(|(l, e)| (l.clone(), -e)).collect(),
        }
    }

    /// True when the value is a polynomial (no negative exponents).
    pub fn is_poly(&self) -> bool {
        self.factors.values().all(|&e| e > 0)
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::one().mul_factored(self)
    }

    /// Applies an affine substitution; `None` if a factor maps to zero.
    pub fn substitute(&self, images: &[Poly]) -> Option<FactoredRat> {
        let mut out = FactoredRat::constant(self.scalar.clone());
        for (l, &e) in &self.factors {
            let img = FactoredRat::from_linear(&l.substitute(images))?;
            let img = if e > 0 { img } else { img.inv() };
            for _ in 0..e.unsigned_abs() {
                out = out.mul(&img);
            }
        }
        Some(out)
    }

    /// Sign-insensitive test used by assertions.
    pub fn is_negative_scalar(&self) -> bool {
        self.scalar.is_negative()
    }
}

//! Root types, orbit labels and affine roots.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::exactalg::rational::{dot, Q};
use crate::exactalg::Poly;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootType::A => "A",
            RootType::B => "B",
            RootType::C => "C",
            RootType::D => "D",
            RootType::E => "E",
            RootType::F => "F",
            RootType::G => "G",
            RootType::BC => "BC",
        };
        f.write_str(s)
    }
}

impl FromStr for RootType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(RootType::A),
            "B" => Ok(RootType::B),
            "C" => Ok(RootType::C),
            "D" => Ok(RootType::D),
            "E" => Ok(RootType::E),
            "F" => Ok(RootType::F),
            "G" => Ok(RootType::G),
            "BC" => Ok(RootType::BC),
            other => Err(Error::Inadmissible {
                ty: other.to_string(),
                rank: 0,
            }),
        }
    }
}

/// W-orbit label of a root.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Orbit {
    Nat,
    Sharp,
    Flat,
}

impl Orbit {
    /// Variable name of the parameter attached to the orbit.
    pub fn param_name(&self) -> &'static str {
        match self {
            Orbit::Nat => "c_nat",
            Orbit::Sharp => "c_sharp",
            Orbit::Flat => "c_flat",
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Orbit::Nat => "nat",
            Orbit::Sharp => "sharp",
            Orbit::Flat => "flat",
        }
    }
}

/// Affine root `ᾱ + n`, a function on 𝔥¹ with value `ᾱ(z) + n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AffineRoot {
    pub bar: Vec<Q>,
    pub level: Q,
    pub orbit: Orbit,
}

impl AffineRoot {
    pub fn new(bar: Vec<Q>, level: Q, orbit: Orbit) -> Self {
        AffineRoot { bar, level, orbit }
    }

    pub fn eval(&self, z: &[Q]) -> Q {
        dot(&self.bar, z) + &self.level
    }

    pub fn neg(&self) -> AffineRoot {
        AffineRoot {
            bar: self.bar.iter().map(|x| -x.clone()).collect(),
            level: -self.level.clone(),
            orbit: self.orbit,
        }
    }

    pub fn is_zero_functional(&self) -> bool {
        self.bar.iter().all(|x| x.is_zero()) && self.level.is_zero()
    }

    /// As a polynomial in the x-variables, which start at index `x_offset`.
    pub fn to_poly(&self, x_offset: usize) -> Poly {
        let mut coeffs = vec![Q::zero(); x_offset];
        coeffs.extend(self.bar.iter().cloned());
        Poly::linear(&coeffs, &self.level)
    }

    /// `α − c_α` as a polynomial, with `orbit_var` the index of `c_α`.
    pub fn psi_poly(&self, x_offset: usize, orbit_var: usize) -> Poly {
        let mut p = self.to_poly(x_offset);
        p.sub_assign_ref(&Poly::var(orbit_var));
        p
    }
}

/// A family `{ᾱ + offset + k : k ∈ ℤ}` of affine roots sharing a finite part.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Family {
    pub bar: Vec<Q>,
    pub offset: Q,
    pub orbit: Orbit,
}

impl Family {
    pub fn member(&self, k: &Q) -> AffineRoot {
        AffineRoot::new(self.bar.clone(), &self.offset + k, self.orbit)
    }

    /// True when the first nonzero coordinate of the finite part is positive.
    pub fn is_positive_representative(&self) -> bool {
        self.bar
            .iter()
            .find(|x| !x.is_zero())
            .map(|x| *x > Q::zero())
            .unwrap_or(false)
    }

    /// Admissible level check for a member.
    pub fn admits_level(&self, level: &Q) -> bool {
        (level - &self.offset).denom().is_one()
    }
}

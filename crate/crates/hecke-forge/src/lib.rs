//! Exact calculus for trigonometric double affine Hecke algebras: affine root
//! data, Demazure operators, the chamber category realized by divided
//! differences, translation bimodules, and the parameter stratification.

pub mod cat_a;
pub mod chambers;
pub mod clans;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod nilhecke;
pub mod rootdata;
pub mod strata;
pub mod translation;

pub use error::{Error, Result};

//! Exact arithmetic: rationals, polynomials, rational functions with factored
//! denominators, and parameter points.

pub mod param;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use param::{param_eval, ParamPoint, ParamValue};
pub use poly::{poly_divides, Mono, Poly};
pub use ratfunc::{normalize_linear, FactoredRat, RatFunc};
pub use rational::{parse_q, q, q_to_string, qr, Q};

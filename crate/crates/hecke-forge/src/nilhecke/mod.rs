//! Demazure operators, the localized normal form, θ-basis coordinates, and the
//! embedding `ι_d` of the double affine Hecke algebra.

pub mod op;

pub use op::{
    canonical_degree, degree_bound, demazure, demazure_simple, from_theta_coeffs, iota, iota_poly,
    support_by_length_desc, theta_coeffs, theta_elem, twist, twist_factored, IotaImages, NilOp,
};

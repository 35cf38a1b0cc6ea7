//! Finite and affine root data, the modified affine root set Φ, and the affine
//! Weyl group.

pub mod system;
pub mod types;
pub mod weyl;

pub use system::{Root, RootSystem};
pub use types::{AffineRoot, Family, Orbit, RootType};
pub use weyl::WeylElem;

use crate::error::Result;

/// Builds the root system of the given type and rank.
pub fn build_root_system(ty: RootType, rank: usize) -> Result<RootSystem> {
    RootSystem::build(ty, rank)
}

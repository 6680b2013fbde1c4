//! Conic subsets of cotangent bundles as finite unions of conormal components.
mod descriptor;
mod ops;
mod subspace;

pub use descriptor::{AmbientSpec, Block, ConicSetDescriptor, ConormalComponent, ConormalFiber, WRule};
pub use ops::{
    conormal_union, crit_of_map, is_conic, is_homothety_stable, isotropic_check, membership, pushforward_coordinate,
    symplectic_swap, Projection, Stratum,
};
pub use subspace::{nullspace, rref, Subspace};

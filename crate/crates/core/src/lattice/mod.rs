//! Lattice polytopes: polar duality, lattice points, automorphisms, orbits
//! and reflexive sections.

pub mod fixtures;
pub mod group;
pub mod linalg;
pub mod polytope;
pub mod slices;
pub mod snf;

pub use group::{automorphism_group, dual_group, orbits, LatticeAutomorphism, OrbitPartition};
pub use linalg::LatticeVector;
pub use polytope::{HalfSpace, LatticePolytope};
pub use slices::{reflexive_slices, Slice};
pub use snf::{kernel_basis, smith_normal_form, SmithForm};

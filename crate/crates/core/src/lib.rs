//! Exact computations for a Weyl group acting on a pair of Langlands-dual maximal tori.
//!
//! The crate enumerates the Weyl group from a simply-laced Cartan matrix, computes conjugacy
//! classes and centralisers, and for each class representative `w` describes the fixed sets of
//! `w` on `t/Γ` (root lattice) and `t/Γ^∨` (weight lattice): identity-component dimension,
//! component group, the twisted duality pairing between the two component groups, and the
//! centraliser action. Summing the rational cohomology of the sectors `T^w / Z_W(w)` gives the
//! ranks of the K-theory of the extended affine Weyl groups.
//!
//! All arithmetic is exact. [`e6`] holds the reference data for type E6.

pub mod e6;
pub mod exact_linalg;
pub mod root_system;
pub mod sectors_ktheory;
pub mod torus_fixed;
pub mod weyl_group;

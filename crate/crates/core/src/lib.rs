//! Real toric varieties from equivariant fans.
//!
//! A real toric variety is described by a lattice N with an involution τ
//! (the cocharacter lattice with its Galois action), a τ-stable fan and a
//! twist class in H¹(ℤ/2; N). This crate computes the lattice invariants,
//! manipulates the fans (subdivisions, restrictions, images), evaluates
//! the counting polynomials of the real orbits and names the topology of
//! the real locus in dimensions up to three.
//!
//! ```
//! use retoric::catalog;
//! use retoric::invariants::virtual_poincare;
//!
//! let sphere = catalog::res_p1();
//! assert_eq!(virtual_poincare(&sphere).to_string(), "t^2 + 1");
//! ```

pub mod catalog;
pub mod classify;
pub mod cli;
pub mod fans;
pub mod invariants;
pub mod matrix;
pub mod poly;
pub mod variety;
pub mod zlattice;

pub use classify::{classify, TopologicalType};
pub use fans::{Cone, EquivariantFan};
pub use matrix::{Int, Matrix, Vector};
pub use poly::CountPolynomial;
pub use variety::RealToricVariety;
pub use zlattice::{InvolutiveLattice, TypeSignature};

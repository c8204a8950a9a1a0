//! Exact workbench for crystal-basis generators of symmetric irreducible
//! representations of `sl(n)` and `sp(2n)`, their classical and q-deformed
//! Chevalley realizations, the diagonal factors converting one into the other, and a
//! relation checker that evaluates every identity exactly, state by state.
//!
//! Everything is computed over [`scalar::Radical`], i.e. sums `c * sqrt(m)`
//! with rational `c` and squarefree integer `m`. No floating point is used.

pub mod boson;
pub mod crystal;
pub mod error;
pub mod rep;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};

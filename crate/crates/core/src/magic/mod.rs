//! The Lie algebras `g(A,B) = t(A) ⊕ t(B) ⊕ ⊕_i A_i ⊗ B_i`.

mod algebra;
pub mod modules;

pub use algebra::{build_magic_algebra, calibrate_lambda, MagicAlgebra, Part};

//! Exact arithmetic: rationals, binomials, q-polynomials and linear forms.

pub mod binom;
pub mod linform;
pub mod qpoly;
pub mod rat;

pub use binom::{factorial_ratio, gen_binomial, FactorialQuotient};
pub use linform::{Assignment, LinearFactorProduct, LinearForm};
pub use qpoly::{gauss_binomial, QPoly};
pub use rat::{rat, ri, Rat};

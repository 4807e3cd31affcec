//! Exact models of the Freudenthal magic square.
//!
//! Composition algebras are built by split Cayley–Dickson doubling, their
//! triality algebras are solved for as nullspaces, and the Lie algebras
//! `g(A,B)` are assembled from an explicit bracket table. Root data extracted
//! from those tables feed a Weyl dimension oracle, which in turn checks a
//! family of closed dimension and degree formulas.

// index loops mirror the matrix formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod error;

pub use error::{Error, Result};
pub mod composition;
pub mod lie;
pub mod linalg;
pub mod magic;
pub mod roots;
pub mod series;
pub mod triality;

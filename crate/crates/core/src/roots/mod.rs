//! Root data: extraction from bracket tables, the finite-type catalogue, and
//! Weyl / Freudenthal computations.

pub mod builtin;
pub mod datum;
pub mod dynkin;
pub mod extract;

pub use builtin::builtin_datum;
pub use datum::RootDatum;
pub use extract::{magic_extraction, magic_root_datum, so8_extraction, Extraction};

//! Shared inputs for the benchmarks.

use freudenthal::arith::{ri, Rat};
use freudenthal::roots::RootDatum;

/// `k θ` for the highest root `θ`.
pub fn adjoint_power(d: &RootDatum, k: i64) -> Vec<Rat> {
    d.highest_root().iter().map(|x| x * ri(k)).collect()
}

//! Closed dimension formulas for the series, exact in the parameter `a`.

pub mod closed;
pub mod crosscheck;
pub mod degree;
pub mod descriptor;
pub mod oracle;

use num_traits::Zero;

use crate::arith::rat::is_integer;
use crate::arith::{Assignment, LinearFactorProduct, LinearForm, Rat};
use crate::error::{Error, Result};

pub use closed::*;
pub use degree::{degree, degree_corrected, leading_coefficient, Variety};
pub use descriptor::{evaluate_series, RowClass, SeriesDescriptor, SeriesRow};

/// A formula value together with the linear factors it was assembled from.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesResult {
    pub value: Rat,
    pub factored: LinearFactorProduct,
    pub integral: bool,
}

impl SeriesResult {
    /// Evaluates `factored` at `a`; a vanishing denominator is a pole.
    pub fn at(factored: LinearFactorProduct, a: &Rat) -> Result<SeriesResult> {
        let mut at = Assignment::new();
        at.insert("a".into(), a.clone());
        let reduced = factored.reduced();
        for (f, e) in &reduced.factors {
            if *e < 0 && f.eval(&at)?.is_zero() {
                return Err(Error::Pole(format!("{f} = 0 at a = {a}")));
            }
        }
        let value = reduced.eval(&at)?;
        Ok(SeriesResult { integral: is_integer(&value), value, factored })
    }

    pub fn is_positive_integer(&self) -> bool {
        self.integral && self.value > Rat::zero()
    }
}

/// `c + ca·a`.
pub(crate) fn form(c: Rat, ca: Rat) -> LinearForm {
    LinearForm::new(c, &[("a", ca)])
}

/// Appends `C(base + k, k) = ∏_{i=1..k} (base + i)/i`.
pub(crate) fn push_binomial(p: &mut LinearFactorProduct, base: &LinearForm, k: u64) {
    for i in 1..=k {
        let mut f = base.clone();
        f.constant += Rat::from_integer(i.into());
        p.push(f, 1);
        p.push(LinearForm::constant(Rat::from_integer(i.into())), -1);
    }
}

/// Appends `1 / C(base + k, k)`.
pub(crate) fn push_inverse_binomial(p: &mut LinearFactorProduct, base: &LinearForm, k: u64) {
    for i in 1..=k {
        let mut f = base.clone();
        f.constant += Rat::from_integer(i.into());
        p.push(f, -1);
        p.push(LinearForm::constant(Rat::from_integer(i.into())), 1);
    }
}

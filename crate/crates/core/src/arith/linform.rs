//! Linear forms over named symbols and products of their powers.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rat::{to_str, Rat};
use crate::error::{Error, Result};

pub type Assignment = BTreeMap<String, Rat>;

/// `constant + Σ coeff·symbol`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinearForm {
    pub constant: Rat,
    pub terms: BTreeMap<String, Rat>,
}

impl LinearForm {
    pub fn constant(c: Rat) -> Self {
        LinearForm { constant: c, terms: BTreeMap::new() }
    }

    pub fn new(constant: Rat, terms: &[(&str, Rat)]) -> Self {
        let mut f = LinearForm::constant(constant);
        for (s, c) in terms {
            f = f.plus_term(s, c.clone());
        }
        f
    }

    pub fn plus_term(mut self, sym: &str, c: Rat) -> Self {
        let e = self.terms.entry(sym.to_string()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(sym);
        }
        self
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, at: &Assignment) -> Result<Rat> {
        let mut v = self.constant.clone();
        for (s, c) in &self.terms {
            let x = at.get(s).ok_or_else(|| Error::Invalid(format!("symbol {s} unassigned")))?;
            v += c * x;
        }
        Ok(v)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = vec![];
        if !self.constant.is_zero() || self.terms.is_empty() {
            parts.push((self.constant.is_negative(), to_str(&self.constant.abs())));
        }
        for (s, c) in &self.terms {
            let a = c.abs();
            let body = if a.is_one() { s.clone() } else { format!("{}{}", to_str(&a), s) };
            parts.push((c.is_negative(), body));
        }
        for (i, (neg, body)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// `∏ form_i^{e_i}`, kept unsimplified; used to display and count the linear
/// factors of a closed formula.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearFactorProduct {
    pub factors: Vec<(LinearForm, i32)>,
}

impl LinearFactorProduct {
    pub fn push(&mut self, f: LinearForm, e: i32) {
        self.factors.push((f, e));
    }

    pub fn numerator_count(&self) -> usize {
        self.factors.iter().filter(|(_, e)| *e > 0).map(|(_, e)| *e as usize).sum()
    }

    pub fn denominator_count(&self) -> usize {
        self.factors.iter().filter(|(_, e)| *e < 0).map(|(_, e)| (-*e) as usize).sum()
    }

    /// The same product with equal forms merged and cancelled.
    pub fn reduced(&self) -> LinearFactorProduct {
        let mut net: BTreeMap<&LinearForm, i32> = BTreeMap::new();
        for (f, e) in &self.factors {
            *net.entry(f).or_insert(0) += e;
        }
        LinearFactorProduct { factors: net.into_iter().filter(|(_, e)| *e != 0).map(|(f, e)| (f.clone(), e)).collect() }
    }

    pub fn eval(&self, at: &Assignment) -> Result<Rat> {
        let mut num = Rat::one();
        let mut den = Rat::one();
        for (f, e) in &self.factors {
            let v = f.eval(at)?;
            for _ in 0..e.unsigned_abs() {
                if *e > 0 {
                    num *= &v;
                } else {
                    den *= &v;
                }
            }
        }
        if den.is_zero() {
            return Err(Error::Pole("a denominator linear form vanishes".into()));
        }
        Ok(num / den)
    }
}

impl fmt::Display for LinearFactorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |pos: bool| -> String {
            let v: Vec<String> = self
                .factors
                .iter()
                .filter(|(_, e)| (*e > 0) == pos && *e != 0)
                .map(|(l, e)| {
                    let k = e.unsigned_abs();
                    if k == 1 {
                        format!("({l})")
                    } else {
                        format!("({l})^{k}")
                    }
                })
                .collect();
            if v.is_empty() {
                "1".into()
            } else {
                v.join("")
            }
        };
        write!(f, "{} / {}", side(true), side(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{rat, ri};

    #[test]
    fn display_forms() {
        let f = LinearForm::new(ri(3), &[("a", rat(5, 2))]);
        assert_eq!(f.to_string(), "3 + 5/2a");
        let g = LinearForm::new(ri(0), &[("a", ri(-1))]);
        assert_eq!(g.to_string(), "-a");
        assert_eq!(LinearForm::constant(ri(0)).to_string(), "0");
    }

    #[test]
    fn product_evaluates_and_counts() {
        let mut p = LinearFactorProduct::default();
        p.push(LinearForm::new(ri(1), &[("a", ri(1))]), 2);
        p.push(LinearForm::new(ri(0), &[("a", ri(1))]), -1);
        let mut at = Assignment::new();
        at.insert("a".into(), ri(3));
        assert_eq!(p.eval(&at).unwrap(), rat(16, 3));
        assert_eq!((p.numerator_count(), p.denominator_count()), (2, 1));
        at.insert("a".into(), ri(0));
        assert!(matches!(p.eval(&at), Err(Error::Pole(_))));
    }
}

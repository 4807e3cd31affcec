//! Generalized binomials and paired factorial quotients.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::rat::{frac, is_nonneg_int, ri, to_i64, to_str, Rat};
use crate::error::{Error, Result};

/// `∏_{i=1..k} (x − k + i)/i`, defined for any rational `x`.
pub fn gen_binomial(x: &Rat, k: u64) -> Rat {
    let mut r = Rat::one();
    for i in 1..=k {
        let i = ri(i as i64);
        r *= (x - ri(k as i64) + &i) / i;
    }
    r
}

/// `x!/y!` as the product `(y+1)(y+2)…(x)`; the gap must be a nonnegative integer.
pub fn factorial_ratio(x: &Rat, y: &Rat) -> Result<Rat> {
    let gap = x - y;
    if !is_nonneg_int(&gap) {
        return Err(Error::NonIntegralGap(to_str(&gap)));
    }
    let n = to_i64(&gap).ok_or_else(|| Error::NonIntegralGap(to_str(&gap)))?;
    let mut r = Rat::one();
    for j in 1..=n {
        r *= y + ri(j);
    }
    Ok(r)
}

/// `coeff · ∏ num_i! / ∏ den_j!` with possibly half-integral arguments.
///
/// Factorials are matched by fractional part and evaluated through
/// [`factorial_ratio`]; an unmatched non-integral factorial is an error.
#[derive(Clone, Debug, Default)]
pub struct FactorialQuotient {
    pub coeff: Rat,
    pub num: Vec<Rat>,
    pub den: Vec<Rat>,
}

impl FactorialQuotient {
    pub fn new(coeff: Rat) -> Self {
        FactorialQuotient { coeff, num: vec![], den: vec![] }
    }

    pub fn over(mut self, x: Rat) -> Self {
        self.den.push(x);
        self
    }

    pub fn times(mut self, x: Rat) -> Self {
        self.num.push(x);
        self
    }

    pub fn eval(&self) -> Result<Rat> {
        let mut classes: BTreeMap<Rat, (Vec<Rat>, Vec<Rat>)> = BTreeMap::new();
        for x in &self.num {
            classes.entry(frac(x)).or_default().0.push(x.clone());
        }
        for x in &self.den {
            classes.entry(frac(x)).or_default().1.push(x.clone());
        }
        let mut r = self.coeff.clone();
        for (f, (mut n, mut d)) in classes {
            n.sort();
            d.sort();
            // pair largest with largest so every ratio stays short
            while let (Some(x), Some(y)) = (n.last().cloned(), d.last().cloned()) {
                n.pop();
                d.pop();
                if x >= y {
                    r *= factorial_ratio(&x, &y)?;
                } else {
                    r /= factorial_ratio(&y, &x)?;
                }
            }
            let rest: Vec<(Rat, bool)> = n.into_iter().map(|x| (x, true)).chain(d.into_iter().map(|x| (x, false))).collect();
            for (x, up) in rest {
                if !f.is_zero() || x.is_negative() {
                    return Err(Error::NonIntegralGap(format!("unpaired factorial ({})!", to_str(&x))));
                }
                let v = factorial_ratio(&x, &Rat::zero())?;
                if up {
                    r *= v;
                } else {
                    r /= v;
                }
            }
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;

    #[test]
    fn binomial_examples() {
        assert_eq!(gen_binomial(&ri(20), 1), ri(20));
        assert_eq!(gen_binomial(&rat(13, 2), 1), rat(13, 2));
        assert_eq!(gen_binomial(&rat(11, 3), 2), rat(44, 9));
        assert_eq!(gen_binomial(&rat(-7, 5), 0), ri(1));
    }

    #[test]
    fn factorial_ratio_examples() {
        assert_eq!(factorial_ratio(&ri(5), &ri(3)).unwrap(), ri(20));
        assert_eq!(factorial_ratio(&rat(7, 2), &rat(3, 2)).unwrap(), rat(35, 4));
        assert_eq!(factorial_ratio(&rat(9, 4), &rat(9, 4)).unwrap(), ri(1));
        assert!(factorial_ratio(&ri(3), &ri(5)).is_err());
        assert!(factorial_ratio(&rat(3, 2), &ri(1)).is_err());
    }

    #[test]
    fn quotient_pairs_half_integers() {
        // (7/2)! (3)! / ((3/2)! 1!) = (5/2)(7/2) · 6
        let q = FactorialQuotient::new(ri(1)).times(rat(7, 2)).times(ri(3)).over(rat(3, 2)).over(ri(1));
        assert_eq!(q.eval().unwrap(), rat(35, 4) * ri(6));
        let bad = FactorialQuotient::new(ri(1)).times(rat(1, 2));
        assert!(bad.eval().is_err());
    }
}

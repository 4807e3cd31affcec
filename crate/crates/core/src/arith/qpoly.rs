//! Polynomials in `q` with rational coefficients.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rat::{ri, to_str, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::new(vec![Rat::one()])
    }

    /// `1 − q^n`.
    pub fn one_minus_q_pow(n: usize) -> Self {
        let mut c = vec![Rat::zero(); n + 1];
        c[0] += Rat::one();
        c[n] -= Rat::one();
        QPoly::new(c)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_at_one(&self) -> Rat {
        self.coeffs.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(c)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                let b = other.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                a + b
            })
            .collect();
        QPoly::new(c)
    }

    /// Shift by `q^k`.
    pub fn shift(&self, k: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![Rat::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        QPoly::new(c)
    }

    /// Quotient and remainder of long division.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dl = d.coeffs.len();
        let lead = d.coeffs[dl - 1].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < dl {
            return (QPoly::zero(), self.clone());
        }
        let mut quo = vec![Rat::zero(); rem.len() - dl + 1];
        for i in (0..quo.len()).rev() {
            let c = &rem[i + dl - 1] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quo[i] = c;
        }
        (QPoly::new(quo), QPoly::new(rem))
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &QPoly) -> Option<QPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coef = if a.is_one() && i > 0 { String::new() } else { to_str(&a) };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}q")?,
                _ => write!(f, "{coef}q^{i}")?,
            }
        }
        Ok(())
    }
}

/// Gauss polynomial `[l+k choose k]_q = ∏_{i=1..k} (1−q^{l+i})/(1−q^i)`.
pub fn gauss_binomial(l: usize, k: usize) -> QPoly {
    // q-Pascal: G(n,j) = G(n−1,j−1) + q^j G(n−1,j), stored for j = 0..=k
    let n = l + k;
    let mut row: Vec<QPoly> = vec![QPoly::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(row.len() + 1);
        for j in 0..=m.min(k) {
            let a = if j >= 1 { row.get(j - 1).cloned().unwrap_or_else(QPoly::zero) } else { QPoly::zero() };
            let b = row.get(j).map(|p| p.shift(j)).unwrap_or_else(QPoly::zero);
            next.push(a.add(&b));
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(QPoly::zero)
}

/// Integer coefficient list, for display and snapshot tests.
pub fn int_coeffs(p: &QPoly) -> Vec<String> {
    p.coeffs().iter().map(to_str).collect()
}

pub fn constant(c: i64) -> QPoly {
    QPoly::new(vec![ri(c)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &QPoly) -> Vec<i64> {
        p.coeffs().iter().map(|c| crate::arith::rat::to_i64(c).unwrap()).collect()
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(ints(&gauss_binomial(1, 1)), vec![1, 1]);
        assert_eq!(ints(&gauss_binomial(2, 2)), vec![1, 1, 2, 1, 1]);
        assert_eq!(gauss_binomial(5, 0), QPoly::one());
        assert_eq!(gauss_binomial(0, 4), QPoly::one());
    }

    #[test]
    fn gauss_matches_product_form() {
        for l in 0..6 {
            for k in 0..6 {
                let mut num = QPoly::one();
                let mut den = QPoly::one();
                for i in 1..=k {
                    num = num.mul(&QPoly::one_minus_q_pow(l + i));
                    den = den.mul(&QPoly::one_minus_q_pow(i));
                }
                assert_eq!(num.div_exact(&den).unwrap(), gauss_binomial(l, k));
            }
        }
    }

    #[test]
    fn display_and_division() {
        let p = QPoly::new(vec![ri(1), ri(-2), ri(0), ri(4)]);
        assert_eq!(p.to_string(), "1 - 2q + 4q^3");
        let d = QPoly::new(vec![ri(1), ri(1)]);
        assert!(p.div_exact(&d).is_none());
        let prod = p.mul(&d);
        assert_eq!(prod.div_exact(&d).unwrap(), p);
    }
}

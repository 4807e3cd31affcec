//! Degrees of the closed orbits, from factorial closed forms and from the
//! leading coefficient of their Hilbert functions.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{rat, ri, FactorialQuotient, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variety {
    Ad,
    Fplanes,
    Flines,
    Fpoints,
    SubexcAd,
    SubexcX,
    SubexcFlines,
}

impl Variety {
    pub const ALL: [Variety; 7] =
        [Variety::Ad, Variety::Fplanes, Variety::Flines, Variety::Fpoints, Variety::SubexcAd, Variety::SubexcX, Variety::SubexcFlines];

    pub fn name(self) -> &'static str {
        match self {
            Variety::Ad => "ad",
            Variety::Fplanes => "fplanes",
            Variety::Flines => "flines",
            Variety::Fpoints => "fpoints",
            Variety::SubexcAd => "subexc_ad",
            Variety::SubexcX => "subexc_X",
            Variety::SubexcFlines => "subexc_flines",
        }
    }

    pub fn parse(s: &str) -> Result<Variety> {
        Variety::ALL.into_iter().find(|v| v.name().eq_ignore_ascii_case(s)).ok_or_else(|| Error::Parse(format!("unknown variety {s}")))
    }

    /// Dimension `c + ca·a` of the variety, which is the degree of its
    /// Hilbert polynomial.
    pub fn dimension(self, a: &Rat) -> Rat {
        let (c, ca) = match self {
            Variety::Ad => (9, 6),
            Variety::Fplanes => (11, 9),
            Variety::Flines => (9, 11),
            Variety::Fpoints => (6, 9),
            Variety::SubexcAd => (1, 4),
            Variety::SubexcX => (3, 3),
            Variety::SubexcFlines => (2, 5),
        };
        ri(c) + ri(ca) * a
    }
}

fn pow(b: i64, e: &Rat) -> Result<Rat> {
    let n = rat::to_i64(e).filter(|n| *n >= 0).ok_or_else(|| Error::NonIntegralExponent(e.to_string()))?;
    Ok(Rat::from_integer(BigInt::from(b).pow(n as u32)))
}

/// `c + ca·a` as a factorial argument.
fn l(a: &Rat, c: i64, ca: (i64, i64)) -> Rat {
    ri(c) + rat(ca.0, ca.1) * a
}

/// Degree from the written factorial formula.
pub fn degree(v: Variety, a: &Rat) -> Result<Rat> {
    let x = |c: i64, n: i64, d: i64| l(a, c, (n, d));
    let q = match v {
        Variety::Ad => FactorialQuotient::new(ri(2))
            .times(x(1, 1, 2))
            .times(x(1, 1, 1))
            .times(x(9, 6, 1))
            .over(x(3, 5, 2))
            .over(x(3, 2, 1))
            .over(x(5, 3, 1)),
        Variety::Fplanes => FactorialQuotient::new(pow(2, &x(3, 3, 1))? * ri(9))
            .times(x(11, 9, 1))
            .times(x(0, 1, 1))
            .times(x(0, 1, 2))
            .times(x(1, 1, 2))
            .over(x(1, 3, 2))
            .over(x(1, 2, 1))
            .over(x(3, 2, 1))
            .over(x(3, 5, 2))
            .over(x(5, 3, 1)),
        Variety::Flines => FactorialQuotient::new(pow(2, &x(6, 3, 1))? * pow(3, &x(0, 2, 1))?)
            .times(x(9, 11, 1))
            .times(x(-1, 1, 2))
            .times(x(0, 1, 2))
            .times(x(1, 1, 2))
            .over(x(-1, 3, 2))
            .over(x(1, 3, 2))
            .over(x(3, 2, 1))
            .over(x(3, 5, 2)),
        Variety::Fpoints => FactorialQuotient::new(pow(2, &x(6, 1, 1))?)
            .times(x(9, 6, 1))
            .times(x(1, 1, 2))
            .times(x(2, 1, 2))
            .times(x(1, 1, 1))
            .times(x(3, 1, 1))
            .over(x(1, 2, 1))
            .over(x(3, 2, 1))
            .over(x(2, 5, 2))
            .over(x(5, 3, 1)),
        Variety::SubexcAd => FactorialQuotient::new(ri(2) / x(1, 2, 1))
            .times(x(1, 4, 1))
            .times(x(-1, 1, 2))
            .times(x(1, 1, 2))
            .over(x(-1, 3, 2))
            .over(x(1, 3, 2))
            .over(x(0, 2, 1)),
        Variety::SubexcX => FactorialQuotient::new(ri(2)).times(x(3, 3, 1)).times(x(1, 1, 2)).over(x(1, 2, 1)).over(x(1, 3, 2)),
        Variety::SubexcFlines => FactorialQuotient::new(pow(2, &x(3, 1, 1))?)
            .times(x(2, 5, 1))
            .times(x(0, 1, 2))
            .times(x(-1, 1, 2))
            .over(x(2, 3, 1))
            .over(x(1, 1, 1))
            .over(x(1, 2, 1))
            .over(x(0, 3, 2))
            .over(x(-1, 3, 2)),
    };
    q.eval()
}

/// Degree formulas re-derived from the leading coefficients of the Hilbert
/// functions, for the four whose written form disagrees; `None` otherwise.
pub fn degree_corrected(v: Variety, a: &Rat) -> Result<Option<Rat>> {
    let x = |c: i64, n: i64, d: i64| l(a, c, (n, d));
    let q = match v {
        Variety::Flines => FactorialQuotient::new(pow(2, &x(13, 3, 1))? * pow(3, &x(0, 2, 1))?)
            .times(x(9, 11, 1))
            .times(x(-1, 1, 2))
            .times(x(0, 1, 2))
            .times(x(1, 1, 2))
            .over(x(-1, 3, 2))
            .over(x(1, 3, 2))
            .over(x(1, 2, 1))
            .over(x(3, 2, 1))
            .over(x(3, 5, 2))
            .over(x(5, 3, 1)),
        Variety::Fpoints => FactorialQuotient::new(pow(2, &x(6, 1, 1))?)
            .times(x(6, 9, 1))
            .times(x(-1, 1, 2))
            .times(x(1, 1, 2))
            .times(x(2, 1, 2))
            .times(x(1, 1, 1))
            .times(x(3, 1, 1))
            .over(x(5, 3, 1))
            .over(x(-1, 3, 2))
            .over(x(1, 3, 2))
            .over(x(1, 2, 1))
            .over(x(3, 2, 1))
            .over(x(3, 5, 2)),
        Variety::SubexcX => {
            FactorialQuotient::new(Rat::one() / x(1, 1, 1)).times(x(3, 3, 1)).times(x(0, 1, 2)).over(x(1, 2, 1)).over(x(1, 3, 2))
        }
        Variety::SubexcFlines => FactorialQuotient::new(pow(2, &x(3, 1, 1))? / x(2, 3, 1))
            .times(x(2, 5, 1))
            .times(x(0, 1, 2))
            .times(x(-1, 1, 2))
            .over(x(1, 1, 1))
            .over(x(1, 2, 1))
            .over(x(0, 3, 2))
            .over(x(-1, 3, 2)),
        _ => return Ok(None),
    };
    q.eval().map(Some)
}

/// Leading coefficient of a polynomial of degree `d` from its values at
/// `0..=d`: the `d`-th forward difference divided by `d!`.
pub fn leading_coefficient(f: impl Fn(u64) -> Result<Rat>, d: u64) -> Result<Rat> {
    let mut row: Vec<Rat> = (0..=d).map(&f).collect::<Result<_>>()?;
    for _ in 0..d {
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let fact: BigInt = (1..=d).fold(BigInt::one(), |acc, i| acc * i);
    let lc = &row[0] / Rat::from_integer(fact);
    if lc.is_zero() {
        return Err(Error::Invalid(format!("degree is below {d}")));
    }
    Ok(lc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e8_adjoint_variety_degree() {
        assert_eq!(degree(Variety::Ad, &ri(8)).unwrap(), ri(126_937_516_885_200));
    }

    #[test]
    fn e7_minimal_orbit_degree() {
        assert_eq!(degree_corrected(Variety::SubexcX, &ri(8)).unwrap().unwrap(), ri(13110));
        assert_eq!(degree(Variety::SubexcX, &ri(8)).unwrap(), ri(1_179_900));
    }

    #[test]
    fn leading_coefficient_of_a_cubic() {
        let lc = leading_coefficient(|k| Ok(ri(2 * (k as i64).pow(3) + 5)), 3).unwrap();
        assert_eq!(lc, ri(2));
    }
}

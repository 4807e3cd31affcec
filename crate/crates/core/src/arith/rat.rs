//! Rational scalars and their string encoding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

pub fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: &BigInt) -> Rat {
    Rat::from_integer(n.clone())
}

/// Encodes as `"n/d"`, or `"n"` when the denominator is one.
pub fn to_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Parses a comma separated list such as `"0,1,-1/2"`.
pub fn parse_list(s: &str) -> Result<Vec<Rat>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(parse).collect()
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn to_i64(r: &Rat) -> Option<i64> {
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

pub fn is_nonneg_int(r: &Rat) -> bool {
    is_integer(r) && !r.is_negative()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Scales a rational vector to a primitive integer vector (content 1) with the
/// first nonzero entry positive.
pub fn primitive(v: &[Rat]) -> Vec<BigInt> {
    let d = common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * big(&d)).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

pub mod serde_rat {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_str(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&to_str(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse(s).map_err(serde::de::Error::custom)).collect()
    }
}

pub mod serde_mat {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(m: &[Vec<Rat>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for row in m {
            let r: Vec<String> = row.iter().map(to_str).collect();
            seq.serialize_element(&r)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Rat>>, D::Error> {
        let m = Vec::<Vec<String>>::deserialize(d)?;
        m.iter().map(|row| row.iter().map(|s| parse(s).map_err(serde::de::Error::custom)).collect()).collect()
    }
}

pub fn json(r: &Rat) -> serde_json::Value {
    serde_json::Value::String(to_str(r))
}

pub fn json_vec(v: &[Rat]) -> serde_json::Value {
    serde_json::Value::Array(v.iter().map(json).collect())
}

pub fn json_mat(m: &[Vec<Rat>]) -> serde_json::Value {
    serde_json::Value::Array(m.iter().map(|r| json_vec(r)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for s in ["0", "7", "-4/3", "13/2"] {
            assert_eq!(to_str(&parse(s).unwrap()), s);
        }
        assert_eq!(to_str(&rat(6, -4)), "-3/2");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn primitive_vector() {
        let v = vec![rat(-1, 2), ri(0), rat(3, 4)];
        let p = primitive(&v);
        assert_eq!(p, vec![BigInt::from(2), BigInt::from(0), BigInt::from(-3)]);
    }

    #[test]
    fn fractional_part() {
        assert_eq!(frac(&rat(-1, 2)), rat(1, 2));
        assert_eq!(frac(&rat(7, 3)), rat(1, 3));
    }
}

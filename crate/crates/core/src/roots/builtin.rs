//! Classical and exceptional root data generated from Bourbaki Cartan matrices.

use std::collections::BTreeMap;

use crate::arith::{ri, Rat};
use crate::error::{Error, Result};

use super::datum::RootDatum;
use super::dynkin::{bourbaki_cartan, bourbaki_form};

/// Parses names such as `e8`, `so8`, `sp6`, `sl3`, `g2`, `D4`.
pub fn parse_type(name: &str) -> Option<(char, usize)> {
    let s = name.trim().to_ascii_lowercase();
    let num = |p: &str| s.strip_prefix(p).and_then(|r| r.parse::<usize>().ok());
    if let Some(n) = num("sl") {
        return (n >= 2).then_some(('A', n - 1));
    }
    if let Some(n) = num("sp") {
        return (n >= 4 && n % 2 == 0).then_some(('C', n / 2));
    }
    if let Some(n) = num("so") {
        return match n % 2 {
            1 if n >= 5 => Some(('B', n / 2)),
            0 if n >= 8 => Some(('D', n / 2)),
            _ => None,
        };
    }
    let mut chars = s.chars();
    let kind = chars.next()?.to_ascii_uppercase();
    let n: usize = chars.as_str().parse().ok()?;
    bourbaki_cartan(kind, n).map(|_| (kind, n))
}

/// Positive roots in simple-root coordinates, by root strings.
pub fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut k = 0;
    while k < roots.len() {
        let b = roots[k].clone();
        for i in 0..n {
            // β − pα_i, …, β is the part of the α_i-string below β
            let mut p = 0;
            loop {
                let mut d = b.clone();
                d[i] -= p + 1;
                if roots.contains(&d) {
                    p += 1;
                } else {
                    break;
                }
            }
            let pairing: i64 = (0..n).map(|j| b[j] * cartan[j][i]).sum();
            if p - pairing > 0 {
                let mut up = b.clone();
                up[i] += 1;
                if !roots.contains(&up) {
                    roots.push(up);
                }
            }
        }
        k += 1;
    }
    roots
}

pub fn builtin_datum(name: &str) -> Result<RootDatum> {
    let (kind, n) = parse_type(name).ok_or_else(|| Error::UnknownDatum(name.to_string()))?;
    let gram = bourbaki_form(kind, n).expect("catalogue type");
    let cartan = bourbaki_cartan(kind, n).expect("catalogue type");
    let roots: Vec<Vec<Rat>> = positive_roots(&cartan).into_iter().map(|r| r.into_iter().map(ri).collect()).collect();
    let mut d = RootDatum::new(&format!("{kind}{n}"), gram, roots, BTreeMap::new())?;
    let theta = d.highest_root();
    d.markers.insert("g".into(), theta);
    if (kind, n) == ('D', 4) {
        let w = |l: [i64; 4]| d.from_labels(&l.map(ri));
        let extra = [("X2", w([1, 0, 1, 1])?), ("X3", w([2, 0, 0, 2])?), ("Y2*", w([2, 0, 0, 0])?)];
        for (k, v) in extra {
            d.markers.insert(k.into(), v);
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (name, count) in
            [("sl2", 1), ("sl3", 3), ("g2", 6), ("so8", 12), ("f4", 24), ("e6", 36), ("e7", 63), ("e8", 120), ("sp6", 9), ("so7", 9)]
        {
            assert_eq!(builtin_datum(name).unwrap().positive_roots.len(), count, "{name}");
        }
    }

    #[test]
    fn names() {
        assert_eq!(parse_type("so8"), Some(('D', 4)));
        assert_eq!(parse_type("so12"), Some(('D', 6)));
        assert_eq!(parse_type("sp6"), Some(('C', 3)));
        assert_eq!(parse_type("sl6"), Some(('A', 5)));
        assert_eq!(parse_type("E7"), Some(('E', 7)));
        assert_eq!(parse_type("so6"), None);
        assert_eq!(parse_type("h9"), None);
    }
}

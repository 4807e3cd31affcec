//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::arith::Rat;

pub type Mat = Vec<Vec<Rat>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![Rat::zero(); c]; r]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    m
}

pub fn transpose(m: &Mat) -> Mat {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![Rat::zero(); n];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

pub fn mat_vec(a: &Mat, v: &[Rat]) -> Vec<Rat> {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn mat_sub(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn mat_add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn scale(m: &Mat, c: &Rat) -> Mat {
    m.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

pub fn is_zero_mat(m: &Mat) -> bool {
    m.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Mat) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of `{x : m x = 0}` for a matrix with `cols` columns.
pub fn nullspace(m: &Mat, cols: usize) -> Vec<Vec<Rat>> {
    let mut a: Mat = m.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -a[i][f].clone();
            }
            v
        })
        .collect()
}

/// One solution of `a x = b`, or `None` when inconsistent.
pub fn solve(a: &Mat, b: &[Rat]) -> Option<Vec<Rat>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Mat = a
        .iter()
        .zip(b)
        .map(|(r, y)| {
            let mut r = r.clone();
            r.push(y.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][cols].clone();
    }
    Some(x)
}

pub fn inverse(m: &Mat) -> Option<Mat> {
    let n = m.len();
    let mut aug: Mat = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det(m: &Mat) -> Rat {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Rat::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    (a as u128 * b as u128 % PRIME as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b);
        }
        b = mul_mod(b, b);
        e >>= 1;
    }
    r
}

fn reduce(x: &Rat) -> Option<u64> {
    let p = num_bigint::BigInt::from(PRIME);
    let n = ((x.numer() % &p) + &p) % &p;
    let d = ((x.denom() % &p) + &p) % &p;
    let (n, d) = (u64::try_from(n).ok()?, u64::try_from(d).ok()?);
    (d != 0).then(|| mul_mod(n, pow_mod(d, PRIME - 2)))
}

/// Rank modulo the prime `2^61 − 1`, a lower bound for the rational rank.
///
/// Returns `None` if some denominator vanishes modulo the prime.
pub fn rank_mod_p(m: &Mat) -> Option<usize> {
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(reduce).collect()).collect::<Option<_>>()?;
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = pow_mod(a[r][c], PRIME - 2);
        let pr: Vec<u64> = a[r].iter().map(|&x| mul_mod(x, inv)).collect();
        for row in a.iter_mut().skip(r + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pr) {
                *x = (*x + PRIME - mul_mod(f, y)) % PRIME;
            }
        }
        a[r] = pr;
        r += 1;
    }
    Some(r)
}

/// Fixed left inverse of a full-column-rank basis: picks independent rows once
/// so that coordinates of any vector in the span are a cheap product.
#[derive(Clone, Debug)]
pub struct Coordinates {
    rows: Vec<usize>,
    inv: Mat,
    basis: Vec<Vec<Rat>>,
}

impl Coordinates {
    /// `basis` holds the spanning vectors, each of the ambient length.
    pub fn new(basis: &[Vec<Rat>]) -> Option<Coordinates> {
        let k = basis.len();
        if k == 0 {
            return Some(Coordinates { rows: vec![], inv: vec![], basis: vec![] });
        }
        // rows of the ambient space form the columns of the transpose
        let mut t: Mat = basis.to_vec();
        let rows = rref(&mut t);
        if rows.len() < k {
            return None;
        }
        let sub: Mat = (0..k).map(|i| basis.iter().map(|b| b[rows[i]].clone()).collect()).collect();
        let inv = inverse(&sub)?;
        Some(Coordinates { rows, inv, basis: basis.to_vec() })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates assuming `v` lies in the span.
    pub fn coords(&self, v: &[Rat]) -> Vec<Rat> {
        let picked: Vec<Rat> = self.rows.iter().map(|&r| v[r].clone()).collect();
        mat_vec(&self.inv, &picked)
    }

    /// Coordinates, or `None` if `v` is outside the span.
    pub fn coords_checked(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let c = self.coords(v);
        let n = v.len();
        for i in 0..n {
            let mut s = Rat::zero();
            for (b, x) in self.basis.iter().zip(&c) {
                if !x.is_zero() && !b[i].is_zero() {
                    s += x * &b[i];
                }
            }
            if s != v[i] {
                return None;
            }
        }
        Some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ri;

    fn m(rows: &[&[i64]]) -> Mat {
        rows.iter().map(|r| r.iter().map(|&x| ri(x)).collect()).collect()
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(mat_vec(&a, &v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_and_det() {
        let a = m(&[&[2, 1], &[7, 4]]);
        assert_eq!(det(&a), ri(1));
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn modular_rank_agrees_on_small_cases() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank_mod_p(&a), Some(rank(&a)));
        assert_eq!(rank_mod_p(&identity(4)), Some(4));
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[ri(3), ri(1)]).unwrap(), vec![ri(2), ri(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&b, &[ri(1), ri(3)]).is_none());
    }

    #[test]
    fn coordinates_in_span() {
        let basis = vec![vec![ri(1), ri(0), ri(1)], vec![ri(0), ri(1), ri(1)]];
        let c = Coordinates::new(&basis).unwrap();
        assert_eq!(c.coords_checked(&[ri(2), ri(3), ri(5)]).unwrap(), vec![ri(2), ri(3)]);
        assert!(c.coords_checked(&[ri(1), ri(1), ri(1)]).is_none());
    }
}

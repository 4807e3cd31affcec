//! Lie algebras given by sparse structure constants on a basis.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{rat::big, rat::common_denominator, Rat};
use crate::linalg::{self, Mat};
use crate::triality::Sparse;

#[derive(Clone, Debug)]
pub struct LieTable {
    pub dim: usize,
    /// `[e_i, e_j] = Σ brackets[i][j]`, stored for every ordered pair.
    pub brackets: Vec<Vec<Sparse>>,
}

impl LieTable {
    pub fn new(dim: usize) -> Self {
        LieTable { dim, brackets: vec![vec![vec![]; dim]; dim] }
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = −v`.
    pub fn set(&mut self, i: usize, j: usize, v: Sparse) {
        let neg: Sparse = v.iter().map(|(k, c)| (*k, -c)).collect();
        self.brackets[i][j] = v;
        self.brackets[j][i] = neg;
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in &self.brackets[i][j] {
                    out[*k] += &c * s;
                }
            }
        }
        out
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Sparse {
        &self.brackets[i][j]
    }

    pub fn unit(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = num_traits::One::one();
        v
    }

    /// `[[x,y],z] + [[y,z],x] + [[z,x],y]`.
    pub fn jacobi_defect(&self, x: &[Rat], y: &[Rat], z: &[Rat]) -> Vec<Rat> {
        let a = self.bracket(&self.bracket(x, y), z);
        let b = self.bracket(&self.bracket(y, z), x);
        let c = self.bracket(&self.bracket(z, x), y);
        a.iter().zip(b.iter().zip(&c)).map(|(p, (q, r))| p + q + r).collect()
    }

    /// Matrix of `ad x` (columns are images of basis vectors).
    pub fn ad(&self, x: &[Rat]) -> Mat {
        let mut m = linalg::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, s) in self.brackets[i].iter().enumerate() {
                for (k, c) in s {
                    m[*k][j] += xi * c;
                }
            }
        }
        m
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let a = &self.brackets[i][j];
                let b = &self.brackets[j][i];
                a.len() == b.len() && a.iter().all(|(k, c)| b.iter().any(|(l, d)| l == k && *d == -c))
            })
        })
    }

    /// Dimension of the center, the common kernel of all `ad e_i`.
    ///
    /// Two random elements usually already have trivial common centralizer,
    /// so those are tried first (full rank modulo a prime certifies a trivial
    /// center) and the full rational system only when that fails.
    pub fn center_dim(&self) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut rows: Mat = vec![];
        for _ in 0..2 {
            let x: Vec<Rat> = (0..self.dim).map(|_| Rat::from_integer(rng.gen_range(-5i64..=5).into())).collect();
            rows.extend(self.ad(&x));
        }
        if linalg::rank_mod_p(&rows) == Some(self.dim) {
            return 0;
        }
        let mut rows: Mat = vec![];
        for i in 0..self.dim {
            rows.extend(self.ad(&self.unit(i)).into_iter().filter(|r| r.iter().any(|c| !c.is_zero())));
        }
        self.dim - linalg::rank(&rows)
    }

    /// Structure constants scaled by a common denominator into `i64`.
    pub fn integer_table(&self) -> IntTable {
        let d = common_denominator(self.brackets.iter().flatten().flatten().map(|(_, c)| c));
        let dr = big(&d);
        let entries = self
            .brackets
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        s.iter()
                            .map(|(k, c)| {
                                let v: BigInt = (c * &dr).to_integer();
                                (*k as u32, v.to_i64().expect("structure constant fits in i64"))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        IntTable { dim: self.dim, entries }
    }

    /// Closure of the span of the given basis indices under the bracket.
    pub fn is_subalgebra(&self, idx: &[usize]) -> bool {
        let mut inside = vec![false; self.dim];
        for &i in idx {
            inside[i] = true;
        }
        idx.iter().all(|&i| idx.iter().all(|&j| self.brackets[i][j].iter().all(|(k, _)| inside[*k])))
    }
}

/// Integer-scaled structure constants for fast exact Jacobi checks.
#[derive(Clone, Debug)]
pub struct IntTable {
    pub dim: usize,
    pub entries: Vec<Vec<Vec<(u32, i64)>>>,
}

impl IntTable {
    fn accumulate(&self, acc: &mut [i128], touched: &mut Vec<usize>, x: usize, y: usize, z: usize) {
        for &(k, c) in &self.entries[x][y] {
            for &(m, d) in &self.entries[k as usize][z] {
                let m = m as usize;
                if acc[m] == 0 {
                    touched.push(m);
                }
                acc[m] += c as i128 * d as i128;
            }
        }
    }

    /// True if the Jacobi identity holds on the basis triple `(i, j, k)`.
    pub fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let mut acc = vec![0i128; self.dim];
        let mut touched = vec![];
        self.accumulate(&mut acc, &mut touched, i, j, k);
        self.accumulate(&mut acc, &mut touched, j, k, i);
        self.accumulate(&mut acc, &mut touched, k, i, j);
        touched.iter().all(|&m| acc[m] == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct JacobiReport {
    pub checked: u64,
    pub defects: u64,
}

/// Every triple `i < j < k`; the Jacobiator is alternating, so this covers all.
pub fn jacobi_exhaustive(t: &IntTable) -> JacobiReport {
    let n = t.dim;
    let defects: u64 = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut bad = 0u64;
            for j in i + 1..n {
                for k in j + 1..n {
                    if !t.jacobi_holds(i, j, k) {
                        bad += 1;
                    }
                }
            }
            bad
        })
        .sum();
    let n = n as u64;
    let checked = if n < 3 { 0 } else { n * (n - 1) * (n - 2) / 6 };
    JacobiReport { checked, defects }
}

/// `samples` basis triples drawn from a seeded stream.
pub fn jacobi_sampled(t: &IntTable, samples: u64, seed: u64) -> JacobiReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = t.dim;
    if n == 0 {
        return JacobiReport { checked: 0, defects: 0 };
    }
    let triples: Vec<(usize, usize, usize)> =
        (0..samples).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    let defects = triples.par_iter().filter(|&&(i, j, k)| !t.jacobi_holds(i, j, k)).count() as u64;
    JacobiReport { checked: samples, defects }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ri;

    /// sl2 with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
    fn sl2() -> LieTable {
        let mut t = LieTable::new(3);
        t.set(0, 1, vec![(1, ri(2))]);
        t.set(0, 2, vec![(2, ri(-2))]);
        t.set(1, 2, vec![(0, ri(1))]);
        t
    }

    #[test]
    fn sl2_is_a_lie_algebra() {
        let t = sl2();
        assert!(t.is_antisymmetric());
        assert_eq!(jacobi_exhaustive(&t.integer_table()), JacobiReport { checked: 1, defects: 0 });
        assert_eq!(t.center_dim(), 0);
        assert!(t.is_subalgebra(&[0, 1]));
        assert!(!t.is_subalgebra(&[1, 2]));
    }

    #[test]
    fn broken_table_is_caught() {
        let mut t = sl2();
        t.set(1, 2, vec![(0, ri(1)), (1, ri(1))]);
        assert_eq!(jacobi_exhaustive(&t.integer_table()).defects, 1);
        let r = jacobi_sampled(&t.integer_table(), 200, 1);
        assert!(r.defects > 0);
    }
}

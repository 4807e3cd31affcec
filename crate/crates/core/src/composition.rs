//! Split composition algebras of dimension 1, 2, 4 and 8.
//!
//! The algebras come out of split Cayley–Dickson doubling and are then
//! rewritten in a hyperbolic basis built from the idempotents
//! `e1 = (1+ℓ)/2`, `e2 = (1−ℓ)/2` and the Peirce spaces `e1·A·e2`, `e2·A·e1`.
//! In that basis every product of basis vectors is a basis vector, its
//! negative, or zero, and `Q(e_p, e_q) ≠ 0` only when `p + q = a − 1`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{rat, ri, Rat};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::triality::TrialityTriple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraTag {
    R,
    C,
    H,
    O,
}

impl AlgebraTag {
    pub const ALL: [AlgebraTag; 4] = [AlgebraTag::R, AlgebraTag::C, AlgebraTag::H, AlgebraTag::O];

    pub fn dim(self) -> usize {
        match self {
            AlgebraTag::R => 1,
            AlgebraTag::C => 2,
            AlgebraTag::H => 4,
            AlgebraTag::O => 8,
        }
    }

    pub fn from_dim(a: usize) -> Option<AlgebraTag> {
        AlgebraTag::ALL.into_iter().find(|t| t.dim() == a)
    }
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for AlgebraTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "R" | "r" | "1" => Ok(AlgebraTag::R),
            "C" | "c" | "2" | "C+C" | "CxC" => Ok(AlgebraTag::C),
            "H" | "h" | "4" => Ok(AlgebraTag::H),
            "O" | "o" | "8" => Ok(AlgebraTag::O),
            _ => Err(Error::Parse(format!("unknown composition algebra {s:?}"))),
        }
    }
}

pub type Elem = Vec<Rat>;

#[derive(Clone, Debug)]
pub struct CompAlg {
    pub tag: AlgebraTag,
    pub dim: usize,
    /// `e_i · e_j = Σ_k mult[i][j][k] e_k`
    pub mult: Vec<Vec<Vec<Rat>>>,
    pub unit: Elem,
    pub conj: Mat,
    pub gram: Mat,
    sparse: Vec<Vec<Vec<(usize, Rat)>>>,
}

/// Signed basis table of a Cayley–Dickson algebra: `e_i e_j = sign · e_k`.
struct Doubling {
    table: Vec<Vec<(usize, i64)>>,
    conj: Vec<i64>,
    norm: Vec<i64>,
}

impl Doubling {
    fn reals() -> Doubling {
        Doubling { table: vec![vec![(0, 1)]], conj: vec![1], norm: vec![1] }
    }

    /// `(a,b)(c,d) = (ac + d̄b, da + bc̄)`, `conj(a,b) = (ā, −b)`.
    fn double(&self) -> Doubling {
        let n = self.table.len();
        let mut table = vec![vec![(0, 0); 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                let (k, s) = self.table[i][j];
                table[i][j] = (k, s);
                let (k, s) = self.table[j][i];
                table[i][n + j] = (n + k, s);
                let (k, s) = self.table[i][j];
                table[n + i][j] = (n + k, s * self.conj[j]);
                let (k, s) = self.table[j][i];
                table[n + i][n + j] = (k, s * self.conj[j]);
            }
        }
        let mut conj = self.conj.clone();
        conj.extend(std::iter::repeat_n(-1, n));
        // split doubling: N(a,b) = N(a) − N(b)
        let mut norm = self.norm.clone();
        norm.extend(self.norm.iter().map(|x| -x));
        Doubling { table, conj, norm }
    }

    fn dense(&self) -> Vec<Vec<Vec<Rat>>> {
        let n = self.table.len();
        let mut m = vec![vec![vec![Rat::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let (k, s) = self.table[i][j];
                m[i][j][k] = ri(s);
            }
        }
        m
    }
}

fn mul_with(mult: &[Vec<Vec<Rat>>], x: &[Rat], y: &[Rat]) -> Elem {
    let n = x.len();
    let mut out = vec![Rat::zero(); n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let c = xi * yj;
            for (k, m) in mult[i][j].iter().enumerate() {
                if !m.is_zero() {
                    out[k] += &c * m;
                }
            }
        }
    }
    out
}

pub fn unit_vec(n: usize, i: usize) -> Elem {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

pub fn add(x: &[Rat], y: &[Rat]) -> Elem {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[Rat], y: &[Rat]) -> Elem {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scal(c: &Rat, x: &[Rat]) -> Elem {
    x.iter().map(|a| c * a).collect()
}

/// Scalar `λ` with `x = λ·y`, for `y ≠ 0` and `x` known to be parallel.
fn ratio(x: &[Rat], y: &[Rat]) -> Rat {
    let i = y.iter().position(|c| !c.is_zero()).expect("nonzero reference vector");
    &x[i] / &y[i]
}

/// Solution space of `(L_l − I)x = 0` and `(R_r − I)x = 0`.
fn peirce(mult: &[Vec<Vec<Rat>>], l: &[Rat], r: &[Rat]) -> Vec<Elem> {
    let n = l.len();
    let mut rows: Mat = vec![];
    for side in 0..2 {
        let mut m = linalg::zeros(n, n);
        for j in 0..n {
            let ej = unit_vec(n, j);
            let img = if side == 0 { mul_with(mult, l, &ej) } else { mul_with(mult, &ej, r) };
            for i in 0..n {
                m[i][j] = &img[i] - if i == j { Rat::one() } else { Rat::zero() };
            }
        }
        rows.extend(m);
    }
    linalg::nullspace(&rows, n)
}

/// Builds the split composition algebra for `tag` in its hyperbolic basis.
pub fn build_split_algebra(tag: AlgebraTag) -> CompAlg {
    let a = tag.dim();
    let mut d = Doubling::reals();
    while d.table.len() < a {
        d = d.double();
    }
    let cd = d.dense();
    let mut cd_gram = linalg::zeros(a, a);
    for (i, n) in d.norm.iter().enumerate() {
        cd_gram[i][i] = ri(*n);
    }
    if a == 1 {
        return CompAlg::from_parts(tag, cd, cd_gram);
    }
    let one = unit_vec(a, 0);
    let ell = unit_vec(a, a / 2);
    let half = rat(1, 2);
    let e1 = scal(&half, &add(&one, &ell));
    let e2 = scal(&half, &sub(&one, &ell));
    let basis: Vec<Elem> = match a {
        2 => vec![e1, e2],
        4 => {
            let u = peirce(&cd, &e1, &e2).remove(0);
            let v0 = peirce(&cd, &e2, &e1).remove(0);
            let lam = ratio(&mul_with(&cd, &u, &v0), &e1);
            let v = scal(&lam.recip(), &v0);
            vec![e1, u, v, e2]
        }
        8 => {
            let us = peirce(&cd, &e1, &e2);
            let (u1, u2, mut u3) = (us[0].clone(), us[1].clone(), us[2].clone());
            let c = ratio(&mul_with(&cd, &u1, &mul_with(&cd, &u2, &u3)), &e1);
            u3 = scal(&c.recip(), &u3);
            let v1 = mul_with(&cd, &u2, &u3);
            let v2 = mul_with(&cd, &u3, &u1);
            let v3 = mul_with(&cd, &u1, &u2);
            vec![e1, u1, u2, u3, v3, v2, v1, e2]
        }
        _ => unreachable!(),
    };
    // columns of `p` are the new basis vectors in doubling coordinates
    let p = linalg::transpose(&basis);
    let pinv = linalg::inverse(&p).expect("hyperbolic basis is a basis");
    let mut mult = vec![vec![vec![Rat::zero(); a]; a]; a];
    for i in 0..a {
        for j in 0..a {
            let prod = mul_with(&cd, &basis[i], &basis[j]);
            mult[i][j] = linalg::mat_vec(&pinv, &prod);
        }
    }
    let gram = linalg::mat_mul(&linalg::transpose(&p), &linalg::mat_mul(&cd_gram, &p));
    CompAlg::from_parts(tag, mult, gram)
}

impl CompAlg {
    fn from_parts(tag: AlgebraTag, mult: Vec<Vec<Vec<Rat>>>, gram: Mat) -> CompAlg {
        let a = tag.dim();
        // the unit is the unique u with u·e_j = e_j for all j
        let mut rows: Mat = vec![];
        let mut rhs = vec![];
        for j in 0..a {
            for k in 0..a {
                rows.push((0..a).map(|i| mult[i][j][k].clone()).collect());
                rhs.push(if j == k { Rat::one() } else { Rat::zero() });
            }
        }
        let unit = linalg::solve(&rows, &rhs).expect("algebra has a unit");
        let sparse = mult
            .iter()
            .map(|row| {
                row.iter().map(|v| v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()).collect()
            })
            .collect();
        let mut alg = CompAlg { tag, dim: a, mult, unit, conj: vec![], gram, sparse };
        // x̄ = 2Q(x,e)e − x
        let e = alg.unit.clone();
        alg.conj = alg.matrix_of(|x| sub(&scal(&(ri(2) * alg.q(x, &e)), &e), x));
        alg
    }

    pub fn basis(&self, i: usize) -> Elem {
        unit_vec(self.dim, i)
    }

    /// Index of the hyperbolic partner of basis vector `p`.
    pub fn partner(&self, p: usize) -> usize {
        self.dim - 1 - p
    }

    pub fn zero(&self) -> Elem {
        vec![Rat::zero(); self.dim]
    }

    /// Product without a shape check.
    pub fn mul(&self, x: &[Rat], y: &[Rat]) -> Elem {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in &self.sparse[i][j] {
                    out[*k] += xi * yj * c;
                }
            }
        }
        out
    }

    /// Product of basis vectors as `(index, coefficient)` pairs.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.sparse[i][j]
    }

    pub fn bar(&self, x: &[Rat]) -> Elem {
        linalg::mat_vec(&self.conj, x)
    }

    pub fn q(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && !self.gram[i][j].is_zero() {
                    s += xi * yj * &self.gram[i][j];
                }
            }
        }
        s
    }

    fn check(&self, x: &[Rat]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: x.len() });
        }
        Ok(())
    }

    pub fn multiply(&self, x: &[Rat], y: &[Rat]) -> Result<Elem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn conjugate(&self, x: &[Rat]) -> Result<Elem> {
        self.check(x)?;
        Ok(self.bar(x))
    }

    pub fn qform(&self, x: &[Rat], y: &[Rat]) -> Rat {
        self.q(x, y)
    }

    pub fn try_qform(&self, x: &[Rat], y: &[Rat]) -> Result<Rat> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.q(x, y))
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Elem {
        (0..self.dim).map(|_| ri(rng.gen_range(-3..=3))).collect()
    }

    /// Matrix of `x ↦ f(x)` on the basis.
    pub fn matrix_of(&self, f: impl Fn(&[Rat]) -> Elem) -> Mat {
        let a = self.dim;
        let mut m = linalg::zeros(a, a);
        for j in 0..a {
            let img = f(&self.basis(j));
            for i in 0..a {
                m[i][j] = img[i].clone();
            }
        }
        m
    }

    /// The three maps `x ↦ Q(u,x)v − Q(v,x)u`, `x ↦ v̄(ux) − ū(vx)` and
    /// `x ↦ (xu)v̄ − (xv)ū`, taken literally. In this model they do not form a
    /// triality triple; see [`CompAlg::psi1`].
    pub fn psi1_printed(&self, u: &[Rat], v: &[Rat]) -> TrialityTriple {
        let ub = self.bar(u);
        let vb = self.bar(v);
        let t1 = self.matrix_of(|x| sub(&scal(&self.q(u, x), v), &scal(&self.q(v, x), u)));
        let t2 = self.matrix_of(|x| sub(&self.mul(&vb, &self.mul(u, x)), &self.mul(&ub, &self.mul(v, x))));
        let t3 = self.matrix_of(|x| sub(&self.mul(&self.mul(x, u), &vb), &self.mul(&self.mul(x, v), &ub)));
        TrialityTriple::new([t1, t2, t3])
    }

    /// `Ψ1(u∧v)`: first component `x ↦ Q(u,x)v − Q(v,x)u`, second
    /// `x ↦ (v̄(ux) − ū(vx))/4`, third the conjugate `x ↦ conj((x̄u)v̄ − (x̄v)ū)/4`.
    ///
    /// The quarter and the conjugation are what the relation
    /// `θ3(xy) = θ1(x)y + xθ2(y)` forces once the first component is fixed.
    pub fn psi1(&self, u: &[Rat], v: &[Rat]) -> TrialityTriple {
        let t = self.psi1_printed(u, v);
        let quarter = rat(1, 4);
        let c = &self.conj;
        let t3 = linalg::mat_mul(c, &linalg::mat_mul(&t.theta[2], c));
        let [t1, t2, _] = t.theta;
        TrialityTriple::new([t1, linalg::scale(&t2, &quarter), linalg::scale(&t3, &quarter)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dims_and_units() {
        for t in AlgebraTag::ALL {
            let a = build_split_algebra(t);
            assert_eq!(a.dim, t.dim());
            for i in 0..a.dim {
                let e = a.basis(i);
                assert_eq!(a.mul(&a.unit, &e), e);
                assert_eq!(a.mul(&e, &a.unit), e);
            }
            assert_eq!(a.q(&a.unit, &a.unit), Rat::one());
            assert_eq!(a.bar(&a.unit), a.unit);
        }
    }

    #[test]
    fn real_algebra_is_trivial() {
        let r = build_split_algebra(AlgebraTag::R);
        assert_eq!(r.gram, vec![vec![ri(1)]]);
        assert_eq!(r.conj, vec![vec![ri(1)]]);
    }

    #[test]
    fn octonion_products_are_signed_basis_vectors() {
        let o = build_split_algebra(AlgebraTag::O);
        for i in 0..8 {
            for j in 0..8 {
                let p = o.basis_product(i, j);
                assert!(p.len() <= 1, "e{i}e{j} = {p:?}");
                if let Some((_, c)) = p.first() {
                    assert!(c == &ri(1) || c == &ri(-1));
                }
            }
        }
    }

    #[test]
    fn gram_is_antidiagonal() {
        for t in [AlgebraTag::C, AlgebraTag::H, AlgebraTag::O] {
            let a = build_split_algebra(t);
            for p in 0..a.dim {
                for q in 0..a.dim {
                    let g = &a.gram[p][q];
                    if q == a.partner(p) {
                        assert!(!g.is_zero());
                    } else {
                        assert!(g.is_zero(), "{t} Q(e{p},e{q}) = {g}");
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let h = build_split_algebra(AlgebraTag::H);
        assert!(h.multiply(&[ri(1)], &h.unit).is_err());
        assert!(h.conjugate(&[ri(1), ri(2)]).is_err());
    }

    #[test]
    fn composition_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for t in AlgebraTag::ALL {
            let a = build_split_algebra(t);
            for _ in 0..50 {
                let x = a.random_element(&mut rng);
                let y = a.random_element(&mut rng);
                let xy = a.mul(&x, &y);
                assert_eq!(a.q(&xy, &xy), a.q(&x, &x) * a.q(&y, &y));
            }
        }
    }
}

use std::sync::OnceLock;

use num_traits::Zero;

use crate::arith::{ri, Rat};
use crate::composition::{AlgebraTag, CompAlg};
use crate::lie::{jacobi_exhaustive, LieTable};
use crate::linalg::Mat;
use crate::triality::{build_triality, Sparse, TrialityAlgebra};

/// Which summand a basis index belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    TA(usize),
    TB(usize),
    /// `e_p ⊗ f_q` in `A_{i+1} ⊗ B_{i+1}`.
    M(usize, usize, usize),
}

#[derive(Clone, Debug)]
pub struct MagicAlgebra {
    pub ta: TrialityAlgebra,
    pub tb: TrialityAlgebra,
    pub table: LieTable,
    /// Scalar in front of the `Λ²` part of `[A_i⊗B_i, A_i⊗B_i]`.
    pub lambda: Rat,
}

impl MagicAlgebra {
    pub fn a(&self) -> &CompAlg {
        &self.ta.alg
    }

    pub fn b(&self) -> &CompAlg {
        &self.tb.alg
    }

    pub fn dim(&self) -> usize {
        self.table.dim
    }

    pub fn tags(&self) -> (AlgebraTag, AlgebraTag) {
        (self.ta.alg.tag, self.tb.alg.tag)
    }

    fn block(&self) -> usize {
        self.a().dim * self.b().dim
    }

    pub fn m_offset(&self, i: usize) -> usize {
        self.ta.dim() + self.tb.dim() + i * self.block()
    }

    pub fn index(&self, part: Part) -> usize {
        match part {
            Part::TA(k) => k,
            Part::TB(k) => self.ta.dim() + k,
            Part::M(i, p, q) => self.m_offset(i) + p * self.b().dim + q,
        }
    }

    pub fn part(&self, idx: usize) -> Part {
        let (na, nb) = (self.ta.dim(), self.tb.dim());
        if idx < na {
            return Part::TA(idx);
        }
        if idx < na + nb {
            return Part::TB(idx - na);
        }
        let r = idx - na - nb;
        let bd = self.b().dim;
        let (i, r) = (r / self.block(), r % self.block());
        Part::M(i, r / bd, r % bd)
    }

    /// Rank of the Cartan subalgebra spanned by the two tori (plus a split
    /// direction when both tori are trivial).
    pub fn cartan_indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.ta.rank).collect();
        v.extend((0..self.tb.rank).map(|k| self.ta.dim() + k));
        v
    }

    /// Invariant form: `Q_A ⊗ Q_B` on each `A_i ⊗ B_i`, `−K/λ` on the tori.
    pub fn kform(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let (na, nb) = (self.ta.dim(), self.tb.dim());
        let t = self.ta.k(&x[..na], &y[..na]) + self.tb.k(&x[na..na + nb], &y[na..na + nb]);
        let mut s = -t / &self.lambda;
        let (a, b) = (self.a(), self.b());
        for i in 0..3 {
            let o = self.m_offset(i);
            for p in 0..a.dim {
                for q in 0..b.dim {
                    let xv = &x[o + p * b.dim + q];
                    if xv.is_zero() {
                        continue;
                    }
                    let (pp, qq) = (a.partner(p), b.partner(q));
                    let g = &a.gram[p][pp] * &b.gram[q][qq];
                    s += xv * &y[o + pp * b.dim + qq] * g;
                }
            }
        }
        s
    }

    pub fn kform_gram(&self) -> Mat {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.kform(&self.table.unit(i), &self.table.unit(j))).collect()).collect()
    }
}

fn add_into(out: &mut [Rat], v: &Sparse, c: &Rat, offset: usize) {
    for (k, x) in v {
        out[offset + k] += c * x;
    }
}

fn to_sparse(v: Vec<Rat>) -> Sparse {
    v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}

/// Builds `g(A,B)` with the `Λ²` scalar fixed by [`calibrate_lambda`].
pub fn build_magic_algebra(a: AlgebraTag, b: AlgebraTag) -> MagicAlgebra {
    build_with_lambda(build_triality(a), build_triality(b), calibrate_lambda())
}

/// Solves for the `Λ²` scalar from the Jacobi identity on `g(C,C)`.
///
/// The Jacobiator of three basis vectors is affine in the scalar, so two
/// evaluations determine it; the result is then checked on every triple.
pub fn calibrate_lambda() -> Rat {
    static CACHE: OnceLock<Rat> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let (ta, tb) = (build_triality(AlgebraTag::C), build_triality(AlgebraTag::C));
            let g0 = build_with_lambda(ta.clone(), tb.clone(), ri(0));
            let g1 = build_with_lambda(ta, tb, ri(1));
            let n = g0.dim();
            let mut lambda: Option<Rat> = None;
            'outer: for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        let (x, y, z) = (g0.table.unit(i), g0.table.unit(j), g0.table.unit(k));
                        let d0 = g0.table.jacobi_defect(&x, &y, &z);
                        let d1 = g1.table.jacobi_defect(&x, &y, &z);
                        for (c0, c1) in d0.iter().zip(&d1) {
                            let slope = c1 - c0;
                            if !slope.is_zero() {
                                lambda = Some(-c0 / slope);
                                break 'outer;
                            }
                        }
                    }
                }
            }
            let lambda = lambda.expect("Jacobi identity depends on the Λ² scalar");
            let g = g0.with_lambda(lambda.clone());
            assert_eq!(jacobi_exhaustive(&g.table.integer_table()).defects, 0, "calibrated g(C,C) is a Lie algebra");
            lambda
        })
        .clone()
}

pub(crate) fn build_with_lambda(ta: TrialityAlgebra, tb: TrialityAlgebra, lambda: Rat) -> MagicAlgebra {
    let (na, nb) = (ta.dim(), tb.dim());
    let (ad, bd) = (ta.alg.dim, tb.alg.dim);
    let n = na + nb + 3 * ad * bd;
    let mut g = MagicAlgebra { ta, tb, table: LieTable::new(n), lambda };
    let mut table = LieTable::new(n);

    for i in 0..na {
        for j in i + 1..na {
            table.set(i, j, g.ta.brackets[i][j].clone());
        }
    }
    for i in 0..nb {
        for j in i + 1..nb {
            let v = g.tb.brackets[i][j].iter().map(|(k, c)| (na + k, c.clone())).collect();
            table.set(na + i, na + j, v);
        }
    }

    // [θ, e_p ⊗ f_q] = θ_i(e_p) ⊗ f_q and likewise on the B side
    for i in 0..3 {
        for p in 0..ad {
            for q in 0..bd {
                let m = g.index(Part::M(i, p, q));
                for (s, th) in g.ta.basis.iter().enumerate() {
                    let v = (0..ad)
                        .filter(|&r| !th.theta[i][r][p].is_zero())
                        .map(|r| (g.index(Part::M(i, r, q)), th.theta[i][r][p].clone()))
                        .collect();
                    table.set(s, m, v);
                }
                for (s, th) in g.tb.basis.iter().enumerate() {
                    let v = (0..bd)
                        .filter(|&r| !th.theta[i][r][q].is_zero())
                        .map(|r| (g.index(Part::M(i, p, r)), th.theta[i][r][q].clone()))
                        .collect();
                    table.set(na + s, m, v);
                }
            }
        }
    }

    let (a, b) = (g.ta.alg.clone(), g.tb.alg.clone());
    let pairs: Vec<(usize, usize)> = (0..ad).flat_map(|p| (0..bd).map(move |q| (p, q))).collect();
    for i in 0..3 {
        for (x, &(p, q)) in pairs.iter().enumerate() {
            for &(p2, q2) in &pairs[x + 1..] {
                let mut out = vec![Rat::zero(); n];
                let qb = b.gram[q][q2].clone();
                if !qb.is_zero() && p != p2 {
                    add_into(&mut out, &g.ta.psi[i][p][p2], &(&g.lambda * &qb), 0);
                }
                let qa = a.gram[p][p2].clone();
                if !qa.is_zero() && q != q2 {
                    add_into(&mut out, &g.tb.psi[i][q][q2], &(&g.lambda * &qa), na);
                }
                table.set(g.index(Part::M(i, p, q)), g.index(Part::M(i, p2, q2)), to_sparse(out));
            }
        }
    }

    // products between different summands, each pair (i, i+1) landing in i+2
    for (p, q) in pairs.iter().copied() {
        for (p2, q2) in pairs.iter().copied() {
            let (ep, fq, ep2, fq2) = (a.basis(p), b.basis(q), a.basis(p2), b.basis(q2));
            let terms = [
                (0, 1, a.mul(&ep, &ep2), b.mul(&fq, &fq2)),
                (1, 2, a.mul(&ep2, &a.bar(&ep)), b.mul(&fq2, &b.bar(&fq))),
                (2, 0, a.mul(&a.bar(&ep2), &ep), b.mul(&b.bar(&fq2), &fq)),
            ];
            for (i, j, u, v) in terms {
                let k = 3 - i - j;
                let mut out = vec![];
                for (r, ur) in u.iter().enumerate() {
                    if ur.is_zero() {
                        continue;
                    }
                    for (s, vs) in v.iter().enumerate() {
                        if !vs.is_zero() {
                            out.push((g.index(Part::M(k, r, s)), ur * vs));
                        }
                    }
                }
                table.set(g.index(Part::M(i, p, q)), g.index(Part::M(j, p2, q2)), out);
            }
        }
    }
    g.table = table;
    g
}

impl MagicAlgebra {
    /// Same algebra with a different `Λ²` scalar, for calibration.
    pub fn with_lambda(&self, lambda: Rat) -> MagicAlgebra {
        build_with_lambda(self.ta.clone(), self.tb.clone(), lambda)
    }
}

//! The triality algebra `t(A)` of triples satisfying `θ3(xy) = θ1(x)y + xθ2(y)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{rat::big, rat::primitive, Rat};
use crate::composition::{build_split_algebra, AlgebraTag, CompAlg, Elem};
use crate::error::{Error, Result};
use crate::linalg::{self, Coordinates, Mat};

/// Three endomorphisms of `A`, one for each of `A1`, `A2`, `A3`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialityTriple {
    pub theta: [Mat; 3],
}

fn commutator(a: &Mat, b: &Mat) -> Mat {
    linalg::mat_sub(&linalg::mat_mul(a, b), &linalg::mat_mul(b, a))
}

impl TrialityTriple {
    pub fn new(theta: [Mat; 3]) -> Self {
        TrialityTriple { theta }
    }

    pub fn zero(a: usize) -> Self {
        TrialityTriple::new([linalg::zeros(a, a), linalg::zeros(a, a), linalg::zeros(a, a)])
    }

    pub fn dim(&self) -> usize {
        self.theta[0].len()
    }

    pub fn is_zero(&self) -> bool {
        self.theta.iter().all(linalg::is_zero_mat)
    }

    pub fn add(&self, o: &TrialityTriple) -> TrialityTriple {
        TrialityTriple::new(std::array::from_fn(|i| linalg::mat_add(&self.theta[i], &o.theta[i])))
    }

    pub fn scale(&self, c: &Rat) -> TrialityTriple {
        TrialityTriple::new(std::array::from_fn(|i| linalg::scale(&self.theta[i], c)))
    }

    /// Componentwise commutator.
    pub fn bracket(&self, o: &TrialityTriple) -> TrialityTriple {
        TrialityTriple::new(std::array::from_fn(|i| commutator(&self.theta[i], &o.theta[i])))
    }

    pub fn apply(&self, i: usize, x: &[Rat]) -> Elem {
        linalg::mat_vec(&self.theta[i], x)
    }

    pub fn flatten(&self) -> Vec<Rat> {
        self.theta.iter().flat_map(|m| m.iter().flat_map(|r| r.iter().cloned())).collect()
    }

    pub fn from_flat(a: usize, v: &[Rat]) -> TrialityTriple {
        TrialityTriple::new(std::array::from_fn(|i| (0..a).map(|r| v[i * a * a + r * a..i * a * a + (r + 1) * a].to_vec()).collect()))
    }

    /// `θ_i^T G + G θ_i = 0` for each component.
    pub fn in_so(&self, alg: &CompAlg) -> bool {
        self.theta.iter().all(|m| {
            let mt = linalg::transpose(m);
            let s = linalg::mat_add(&linalg::mat_mul(&mt, &alg.gram), &linalg::mat_mul(&alg.gram, m));
            linalg::is_zero_mat(&s)
        })
    }

    /// `θ3(xy) − θ1(x)y − xθ2(y)` for basis vectors `x = e_j`, `y = e_k`.
    pub fn relation_defect(&self, alg: &CompAlg, j: usize, k: usize) -> Elem {
        let (x, y) = (alg.basis(j), alg.basis(k));
        let lhs = self.apply(2, &alg.mul(&x, &y));
        let r1 = alg.mul(&self.apply(0, &x), &y);
        let r2 = alg.mul(&x, &self.apply(1, &y));
        lhs.iter().zip(r1.iter().zip(&r2)).map(|(l, (a, b))| l - a - b).collect()
    }

    pub fn satisfies_relation(&self, alg: &CompAlg) -> bool {
        (0..alg.dim).all(|j| (0..alg.dim).all(|k| self.relation_defect(alg, j, k).iter().all(|c| c.is_zero())))
    }

    fn conjugated(m: &Mat, c: &Mat) -> Mat {
        linalg::mat_mul(c, &linalg::mat_mul(m, c))
    }

    /// Order-three symmetry `(θ1,θ2,θ3) ↦ (θ2, cθ3c, cθ1c)` where `c` is conjugation.
    ///
    /// The plain rotation `(θ2,θ3,θ1)` does not preserve the relation in this
    /// model; conjugating the two rotated-in components fixes that and keeps
    /// the order equal to three.
    pub fn shifted(&self, alg: &CompAlg) -> TrialityTriple {
        let c = &alg.conj;
        TrialityTriple::new([self.theta[1].clone(), Self::conjugated(&self.theta[2], c), Self::conjugated(&self.theta[0], c)])
    }

    /// The naive rotation, kept for the test that rules it out.
    pub fn rotated(&self) -> TrialityTriple {
        TrialityTriple::new([self.theta[1].clone(), self.theta[2].clone(), self.theta[0].clone()])
    }
}

/// Checked version of [`TrialityTriple::shifted`].
pub fn cyclic_shift(alg: &CompAlg, theta: &TrialityTriple) -> Result<TrialityTriple> {
    let s = theta.shifted(alg);
    if !s.satisfies_relation(alg) {
        return Err(Error::TrialityRelation("cyclic shift left the triality algebra".into()));
    }
    Ok(s)
}

pub type Sparse = Vec<(usize, Rat)>;

pub fn sparse(v: &[Rat]) -> Sparse {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

#[derive(Clone, Debug)]
pub struct TrialityAlgebra {
    pub alg: CompAlg,
    pub basis: Vec<TrialityTriple>,
    /// The first `rank` basis elements are diagonal and span a Cartan subalgebra.
    pub rank: usize,
    /// `weights[b][t]`: eigenvalue of torus element `t` on basis element `b`.
    pub weights: Vec<Vec<Rat>>,
    /// `[b_i, b_j] = Σ brackets[i][j]`.
    pub brackets: Vec<Vec<Sparse>>,
    /// `psi[i][p][q]`: coordinates of `Ψ_{i+1}(e_p ∧ e_q)`.
    pub psi: [Vec<Vec<Sparse>>; 3],
    /// Gram matrix of the form `K` with `K(Ψ_i(u∧v), θ) = Q(u, θ_i v)`.
    pub kform: Mat,
    coords: Coordinates,
}

/// Basis `M_pq(x) = Q(e_p,x)e_q − Q(e_q,x)e_p`, `p < q`, of `so(Q)`.
pub fn so_basis(alg: &CompAlg) -> Vec<((usize, usize), Mat)> {
    let a = alg.dim;
    let mut out = vec![];
    for p in 0..a {
        for q in p + 1..a {
            let (ep, eq) = (alg.basis(p), alg.basis(q));
            let m = alg.matrix_of(|x| {
                let s = alg.q(&ep, x);
                let t = alg.q(&eq, x);
                eq.iter().zip(&ep).map(|(b, c)| &s * b - &t * c).collect()
            });
            out.push(((p, q), m));
        }
    }
    out
}

/// Column of the relation system contributed by `M` placed in component `i`.
fn relation_column(alg: &CompAlg, i: usize, m: &Mat) -> Vec<Rat> {
    let a = alg.dim;
    let mut col = Vec::with_capacity(a * a * a);
    for j in 0..a {
        for k in 0..a {
            let (x, y) = (alg.basis(j), alg.basis(k));
            let v = match i {
                0 => alg.mul(&linalg::mat_vec(m, &x), &y).iter().map(|c| -c).collect(),
                1 => alg.mul(&x, &linalg::mat_vec(m, &y)).iter().map(|c| -c).collect(),
                _ => linalg::mat_vec(m, &alg.mul(&x, &y)),
            };
            col.extend(v);
        }
    }
    col
}

fn triple_from(alg: &CompAlg, so: &[((usize, usize), Mat)], unknowns: &[(usize, usize)], sol: &[Rat]) -> TrialityTriple {
    let a = alg.dim;
    let mut t = TrialityTriple::zero(a);
    for ((i, m), c) in unknowns.iter().zip(sol) {
        if c.is_zero() {
            continue;
        }
        t.theta[*i] = linalg::mat_add(&t.theta[*i], &linalg::scale(&so[*m].1, c));
    }
    t
}

/// Rescales a triple to integer entries with content one.
fn normalized(t: &TrialityTriple) -> TrialityTriple {
    let a = t.dim();
    let p: Vec<BigInt> = primitive(&t.flatten());
    TrialityTriple::from_flat(a, &p.iter().map(big).collect::<Vec<_>>())
}

fn nullspace_on(columns: &[Vec<Rat>], pick: &[usize]) -> Vec<Vec<Rat>> {
    if pick.is_empty() {
        return vec![];
    }
    let rows = columns[0].len();
    let m: Mat = (0..rows).map(|r| pick.iter().map(|&c| columns[c][r].clone()).collect()).collect();
    linalg::nullspace(&m, pick.len())
}

/// Solves for `t(A)` as the nullspace of the relation over `so(Q)³`.
///
/// The diagonal part is solved first and gives a torus; the remaining
/// unknowns are then grouped by torus weight and solved block by block, so
/// every basis element comes out as a weight vector.
pub fn triality_basis(alg: &CompAlg) -> TrialityAlgebra {
    let (basis, rank) = raw_triality_basis(alg);
    TrialityAlgebra::from_basis(alg.clone(), basis, rank)
}

/// Weight-adapted nullspace basis and the size of its leading torus.
pub fn raw_triality_basis(alg: &CompAlg) -> (Vec<TrialityTriple>, usize) {
    let so = so_basis(alg);
    let unknowns: Vec<(usize, usize)> = (0..3).flat_map(|i| (0..so.len()).map(move |m| (i, m))).collect();
    let columns: Vec<Vec<Rat>> = unknowns.iter().map(|&(i, m)| relation_column(alg, i, &so[m].1)).collect();

    let diagonal: Vec<usize> = (0..unknowns.len()).filter(|&u| so[unknowns[u].1].0 .1 == alg.partner(so[unknowns[u].1].0 .0)).collect();
    let torus: Vec<TrialityTriple> = nullspace_on(&columns, &diagonal)
        .iter()
        .map(|sol| {
            let picked: Vec<(usize, usize)> = diagonal.iter().map(|&u| unknowns[u]).collect();
            normalized(&triple_from(alg, &so, &picked, sol))
        })
        .collect();
    let rank = torus.len();

    let weight_of =
        |i: usize, (p, q): (usize, usize)| -> Vec<Rat> { torus.iter().map(|t| &t.theta[i][p][p] + &t.theta[i][q][q]).collect() };
    let mut blocks: BTreeMap<Vec<Rat>, Vec<usize>> = BTreeMap::new();
    for (u, &(i, m)) in unknowns.iter().enumerate() {
        blocks.entry(weight_of(i, so[m].0)).or_default().push(u);
    }
    let mut basis = torus.clone();
    let zero = vec![Rat::zero(); rank];
    for (w, cols) in blocks.iter().rev() {
        if *w == zero {
            let extra = nullspace_on(&columns, cols).len();
            assert_eq!(extra, rank, "zero-weight space of t({}) is larger than the torus", alg.tag);
            continue;
        }
        let picked: Vec<(usize, usize)> = cols.iter().map(|&u| unknowns[u]).collect();
        for sol in nullspace_on(&columns, cols) {
            basis.push(normalized(&triple_from(alg, &so, &picked, &sol)));
        }
    }
    (basis, rank)
}

impl TrialityAlgebra {
    fn from_basis(alg: CompAlg, basis: Vec<TrialityTriple>, rank: usize) -> TrialityAlgebra {
        let a = alg.dim;
        let flat: Vec<Vec<Rat>> = basis.iter().map(|t| t.flatten()).collect();
        let coords = Coordinates::new(&flat).expect("triality basis is independent");
        let n = basis.len();
        let mut brackets = vec![vec![vec![]; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let br = basis[i].bracket(&basis[j]);
                let c = coords.coords_checked(&br.flatten()).expect("t(A) is closed under the bracket");
                let neg: Vec<Rat> = c.iter().map(|x| -x).collect();
                brackets[i][j] = sparse(&c);
                brackets[j][i] = sparse(&neg);
            }
        }
        let weights = (0..n)
            .map(|b| {
                (0..rank)
                    .map(|t| {
                        let s = &brackets[t][b];
                        match s.iter().find(|(k, _)| *k == b) {
                            Some((_, c)) => c.clone(),
                            None => Rat::zero(),
                        }
                    })
                    .collect()
            })
            .collect();
        let mut ta = TrialityAlgebra { alg, basis, rank, weights, brackets, psi: [vec![], vec![], vec![]], kform: vec![], coords };
        for i in 0..3 {
            let mut table = vec![vec![vec![]; a]; a];
            for p in 0..a {
                for q in 0..a {
                    if p != q {
                        let t = ta.psi_triple(i, &ta.alg.basis(p), &ta.alg.basis(q));
                        table[p][q] = sparse(&ta.coords_of(&t).expect("Ψ lands in t(A)"));
                    }
                }
            }
            ta.psi[i] = table;
        }
        ta.kform = ta.solve_kform();
        ta
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords_of(&self, t: &TrialityTriple) -> Option<Vec<Rat>> {
        if self.basis.is_empty() {
            return t.is_zero().then(Vec::new);
        }
        self.coords.coords_checked(&t.flatten())
    }

    pub fn element(&self, c: &[Rat]) -> TrialityTriple {
        let mut t = TrialityTriple::zero(self.alg.dim);
        for (b, x) in self.basis.iter().zip(c) {
            if !x.is_zero() {
                t = t.add(&b.scale(x));
            }
        }
        t
    }

    /// `Ψ_{i+1}(u∧v)` as a triple: `Ψ2 = s²∘Ψ1` and `Ψ3(u∧v) = s(Ψ1(ū∧v̄))`.
    pub fn psi_triple(&self, i: usize, u: &[Rat], v: &[Rat]) -> TrialityTriple {
        let alg = &self.alg;
        match i {
            0 => alg.psi1(u, v),
            1 => alg.psi1(u, v).shifted(alg).shifted(alg),
            _ => alg.psi1(&alg.bar(u), &alg.bar(v)).shifted(alg),
        }
    }

    /// Coordinates of `Ψ_{i+1}(u∧v)` by bilinear expansion over the table.
    pub fn psi_coords(&self, i: usize, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (p, up) in u.iter().enumerate() {
            if up.is_zero() {
                continue;
            }
            for (q, vq) in v.iter().enumerate() {
                if vq.is_zero() || p == q {
                    continue;
                }
                let c = up * vq;
                for (k, x) in &self.psi[i][p][q] {
                    out[*k] += &c * x;
                }
            }
        }
        out
    }

    pub fn bracket_coords(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in &self.brackets[i][j] {
                    out[*k] += xi * yj * c;
                }
            }
        }
        out
    }

    /// Solves `K` from `K(Ψ_i(e_p∧e_q), b) = Q(e_p, b_i e_q)` for all `i`, `p < q`, `b`.
    ///
    /// For `t(C)` and `t(H)` the image of a single `Ψ_i` does not span, so all
    /// three are stacked.
    fn solve_kform(&self) -> Mat {
        let n = self.dim();
        if n == 0 {
            return vec![];
        }
        let a = self.alg.dim;
        let mut rows: Mat = vec![];
        let mut rhs: Mat = vec![];
        for i in 0..3 {
            for p in 0..a {
                for q in p + 1..a {
                    let mut row = vec![Rat::zero(); n];
                    for (k, c) in &self.psi[i][p][q] {
                        row[*k] = c.clone();
                    }
                    rows.push(row);
                    let (ep, eq) = (self.alg.basis(p), self.alg.basis(q));
                    rhs.push(self.basis.iter().map(|b| self.alg.q(&ep, &b.apply(i, &eq))).collect());
                }
            }
        }
        let mut aug: Mat = rows.iter().zip(&rhs).map(|(r, s)| r.iter().chain(s).cloned().collect()).collect();
        let piv = linalg::rref(&mut aug);
        assert!(piv.len() == n && piv[n - 1] == n - 1, "Ψ images span t({})", self.alg.tag);
        (0..n).map(|r| aug[r][n..].to_vec()).collect()
    }

    pub fn k(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && !self.kform[i][j].is_zero() {
                    s += xi * yj * &self.kform[i][j];
                }
            }
        }
        s
    }

    /// Eigenvalue of torus element `t` on basis vector `e_p` of `A_{i+1}`.
    pub fn vector_weight(&self, i: usize, p: usize) -> Vec<Rat> {
        (0..self.rank).map(|t| self.basis[t].theta[i][p][p].clone()).collect()
    }

    pub fn unit_coords(&self, b: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        v[b] = Rat::one();
        v
    }
}

pub fn build_triality(tag: AlgebraTag) -> TrialityAlgebra {
    triality_basis(&build_split_algebra(tag))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_ranks() {
        let got: Vec<(usize, usize)> = AlgebraTag::ALL
            .iter()
            .map(|&t| {
                let ta = build_triality(t);
                (ta.dim(), ta.rank)
            })
            .collect();
        assert_eq!(got, vec![(0, 0), (2, 2), (9, 3), (28, 4)]);
    }

    #[test]
    fn basis_is_integral_and_valid() {
        let ta = build_triality(AlgebraTag::H);
        for b in &ta.basis {
            assert!(b.flatten().iter().all(|c| c.is_integer()));
            assert!(b.in_so(&ta.alg));
            assert!(b.satisfies_relation(&ta.alg));
        }
    }
}

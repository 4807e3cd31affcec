//! The modules `V` of `g(A,H)` and `W` of `g(A,C)`.
//!
//! Each module is a direct sum of summands `A_i ⊗ X` or `X`, where `X` is a
//! small `t(B)`-module. The action of `A_i ⊗ B_i` is a sum of equivariant
//! maps, each the tensor product of a fixed map on the `A` side (the same
//! products and pairings as in the bracket) with a `t(B)`-equivariant map
//! found as a nullspace. The relative scalars of these maps are then fixed
//! by the representation axiom.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{MagicAlgebra, Part};
use crate::arith::{ri, Rat};
use crate::composition::{AlgebraTag, CompAlg, Elem};
use crate::linalg::{self, Coordinates, Mat};
use crate::triality::TrialityAlgebra;
use crate::{Error, Result};

/// Sparse matrix as `(row, col, value)` triples.
pub type SparseMat = Vec<(usize, usize, Rat)>;

fn sparse_mul(a: &SparseMat, b: &SparseMat) -> HashMap<(usize, usize), Rat> {
    let mut by_row: HashMap<usize, Vec<(usize, &Rat)>> = HashMap::new();
    for (r, c, v) in b {
        by_row.entry(*r).or_default().push((*c, v));
    }
    let mut out: HashMap<(usize, usize), Rat> = HashMap::new();
    for (r, k, v) in a {
        if let Some(row) = by_row.get(k) {
            for (c, w) in row {
                *out.entry((*r, *c)).or_insert_with(Rat::zero) += v * *w;
            }
        }
    }
    out
}

fn sparse_apply(m: &SparseMat, v: &[Rat], dim: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); dim];
    for (r, c, x) in m {
        if !v[*c].is_zero() {
            out[*r] += x * &v[*c];
        }
    }
    out
}

/// The invariant attached to a module.
#[derive(Clone, Debug)]
pub enum ModuleForm {
    /// Gram matrix of a nondegenerate alternating form.
    Symplectic(Mat),
    /// Cubic polynomial as monomials `(i, j, k, c)` with `i ≤ j ≤ k`.
    Cubic(Vec<(usize, usize, usize, Rat)>),
}

#[derive(Clone, Debug)]
pub struct GModule {
    pub name: String,
    pub dim: usize,
    /// `action[x]`: matrix of the basis element `x` of `g`.
    pub action: Vec<SparseMat>,
    pub form: ModuleForm,
    /// Which trilinear term the cubic form uses, when there is one.
    pub cubic_term: Option<CubicTerm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubicTerm {
    /// `Q(X1 X2, conj X3)`
    ConjugatedThird,
    /// `Q(X1 X2, X3)`
    Plain,
}

impl GModule {
    pub fn act(&self, g: &MagicAlgebra, x: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (k, c) in x.iter().enumerate().take(g.dim()) {
            if c.is_zero() {
                continue;
            }
            for (o, y) in out.iter_mut().zip(sparse_apply(&self.action[k], v, self.dim)) {
                *o += c * y;
            }
        }
        out
    }

    /// Defect of `ρ([e_x,e_y]) = [ρ(e_x), ρ(e_y)]` on a pair of basis elements.
    pub fn axiom_holds(&self, g: &MagicAlgebra, x: usize, y: usize) -> bool {
        let mut acc = sparse_mul(&self.action[x], &self.action[y]);
        for (k, v) in sparse_mul(&self.action[y], &self.action[x]) {
            *acc.entry(k).or_insert_with(Rat::zero) -= v;
        }
        for (k, c) in g.table.bracket_basis(x, y) {
            for (r, s, v) in &self.action[*k] {
                *acc.entry((*r, *s)).or_insert_with(Rat::zero) -= c * v;
            }
        }
        acc.values().all(|v| v.is_zero())
    }

    /// Representation axiom on every basis pair.
    pub fn check_axiom_exhaustive(&self, g: &MagicAlgebra) -> u64 {
        let n = g.dim();
        let mut bad = 0;
        for x in 0..n {
            for y in x + 1..n {
                if !self.axiom_holds(g, x, y) {
                    bad += 1;
                }
            }
        }
        bad
    }

    pub fn check_axiom_sampled(&self, g: &MagicAlgebra, samples: usize, seed: u64) -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.dim();
        (0..samples).filter(|_| !self.axiom_holds(g, rng.gen_range(0..n), rng.gen_range(0..n))).count() as u64
    }

    /// Invariance of the form under `e_x`, tested on the given vectors.
    pub fn form_invariant_on(&self, x: usize, v: &[Rat], w: &[Rat]) -> bool {
        let xv = sparse_apply(&self.action[x], v, self.dim);
        match &self.form {
            ModuleForm::Symplectic(om) => {
                let xw = sparse_apply(&self.action[x], w, self.dim);
                bilinear(om, &xv, w) + bilinear(om, v, &xw) == Rat::zero()
            }
            ModuleForm::Cubic(terms) => {
                let _ = w;
                cubic_derivative(terms, v, &xv).is_zero()
            }
        }
    }

    pub fn check_form_sampled(&self, g: &MagicAlgebra, samples: usize, seed: u64) -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bad = 0;
        for _ in 0..samples {
            let x = rng.gen_range(0..g.dim());
            let v = random_vec(&mut rng, self.dim);
            let w = random_vec(&mut rng, self.dim);
            if !self.form_invariant_on(x, &v, &w) {
                bad += 1;
            }
        }
        bad
    }

    /// Invariance under every basis element of `g`: on all pairs of basis
    /// vectors for a bilinear form, coefficientwise for a cubic one.
    pub fn check_form_exhaustive(&self, g: &MagicAlgebra) -> u64 {
        let mut bad = 0;
        match &self.form {
            ModuleForm::Symplectic(_) => {
                for x in 0..g.dim() {
                    for i in 0..self.dim {
                        for j in i..self.dim {
                            if !self.form_invariant_on(x, &unit(self.dim, i), &unit(self.dim, j)) {
                                bad += 1;
                            }
                        }
                    }
                }
            }
            ModuleForm::Cubic(_) => {
                for x in 0..g.dim() {
                    let q = self.cubic_derivative_form(x);
                    if q.values().any(|c| !c.is_zero()) {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    /// Coefficients of the cubic polynomial `w ↦ dC_w(ρ(e_x) w)`.
    fn cubic_derivative_form(&self, x: usize) -> BTreeMap<(usize, usize, usize), Rat> {
        let ModuleForm::Cubic(terms) = &self.form else { return BTreeMap::new() };
        let mut cols: HashMap<usize, Vec<(usize, &Rat)>> = HashMap::new();
        for (r, c, v) in &self.action[x] {
            cols.entry(*r).or_default().push((*c, v));
        }
        let mut out: BTreeMap<(usize, usize, usize), Rat> = BTreeMap::new();
        for (i, j, k, coef) in terms {
            let idx = [*i, *j, *k];
            for pos in 0..3 {
                let Some(row) = cols.get(&idx[pos]) else { continue };
                let others: Vec<usize> = (0..3).filter(|&p| p != pos).map(|p| idx[p]).collect();
                for (s, v) in row {
                    let mut m = [*s, others[0], others[1]];
                    m.sort();
                    *out.entry((m[0], m[1], m[2])).or_insert_with(Rat::zero) += coef * *v;
                }
            }
        }
        out
    }
}

fn bilinear(m: &Mat, v: &[Rat], w: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (j, wj) in w.iter().enumerate() {
            if !wj.is_zero() && !m[i][j].is_zero() {
                s += vi * wj * &m[i][j];
            }
        }
    }
    s
}

fn cubic_eval(terms: &[(usize, usize, usize, Rat)], v: &[Rat]) -> Rat {
    terms.iter().map(|(i, j, k, c)| c * &v[*i] * &v[*j] * &v[*k]).sum()
}

/// `d/dt C(w + t·u)` at `t = 0`.
fn cubic_derivative(terms: &[(usize, usize, usize, Rat)], w: &[Rat], u: &[Rat]) -> Rat {
    terms.iter().map(|(i, j, k, c)| c * (&u[*i] * &w[*j] * &w[*k] + &w[*i] * &u[*j] * &w[*k] + &w[*i] * &w[*j] * &u[*k])).sum()
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

fn random_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<Rat> {
    (0..n).map(|_| ri(rng.gen_range(-3..=3))).collect()
}

/// A summand `A_i ⊗ X` (when `a_part` is set) or `X`.
#[derive(Clone, Debug)]
struct Summand {
    a_part: Option<usize>,
    /// Matrices of the `t(B)` basis on `X`.
    b_action: Vec<Mat>,
}

impl Summand {
    fn b_dim(&self) -> usize {
        self.b_action.first().map_or(1, |m| m.len())
    }
}

/// Linear map on the `A` side of a summand-to-summand piece.
#[derive(Clone, Copy, Debug)]
enum AMap {
    /// `1 ↦ u`
    Embed,
    /// `w ↦ Q(u,w)`
    Pair,
    /// `w ↦` the product used by the bracket `A_i × A_j → A_k`, keyed by `j`
    Product(usize),
}

/// Product `A_i × A_j → A_k` of `u ∈ A_i`, `w ∈ A_j` following the bracket
/// table (up to a sign that the calibration absorbs).
fn product(alg: &CompAlg, i: usize, j: usize, u: &[Rat], w: &[Rat]) -> Elem {
    match (i, j) {
        (0, 1) => alg.mul(u, w),
        (1, 2) => alg.mul(w, &alg.bar(u)),
        (2, 0) => alg.mul(&alg.bar(w), u),
        (1, 0) => alg.mul(w, u),
        (2, 1) => alg.mul(u, &alg.bar(w)),
        (0, 2) => alg.mul(&alg.bar(u), w),
        _ => unreachable!("product needs distinct indices"),
    }
}

/// Basis of `t(B)`-equivariant maps `Φ: B_i ⊗ X → Y`, as tensors
/// `phi[y][q][x]`.
fn equivariant_maps(tb: &TrialityAlgebra, i: usize, src: &Summand, tgt: &Summand) -> Vec<Vec<Vec<Vec<Rat>>>> {
    let (b, ds, dt) = (tb.alg.dim, src.b_dim(), tgt.b_dim());
    let var = |y: usize, q: usize, x: usize| (y * b + q) * ds + x;
    let nvars = dt * b * ds;
    let mut rows: Mat = vec![];
    for (s, th) in tb.basis.iter().enumerate() {
        let (rt, rs) = (&tgt.b_action[s], &src.b_action[s]);
        // ρ_t(θ)Φ(e_q⊗x) − Φ(θ_i e_q ⊗ x) − Φ(e_q ⊗ ρ_s(θ) x) = 0
        for y in 0..dt {
            for q in 0..b {
                for x in 0..ds {
                    let mut row = vec![Rat::zero(); nvars];
                    for y2 in 0..dt {
                        if !rt[y][y2].is_zero() {
                            row[var(y2, q, x)] += &rt[y][y2];
                        }
                    }
                    for q2 in 0..b {
                        if !th.theta[i][q2][q].is_zero() {
                            row[var(y, q2, x)] -= &th.theta[i][q2][q];
                        }
                    }
                    for x2 in 0..ds {
                        if !rs[x2][x].is_zero() {
                            row[var(y, q, x2)] -= &rs[x2][x];
                        }
                    }
                    if row.iter().any(|c| !c.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    linalg::nullspace(&rows, nvars)
        .into_iter()
        .map(|v| {
            let v = crate::arith::rat::primitive(&v);
            (0..dt).map(|y| (0..b).map(|q| (0..ds).map(|x| Rat::from_integer(v[var(y, q, x)].clone())).collect()).collect()).collect()
        })
        .collect()
}

/// One unknown scalar in the action of `A_i ⊗ B_i`.
struct Piece {
    i: usize,
    src: usize,
    tgt: usize,
    /// `template[(p,q)]`: matrix of `e_p ⊗ f_q` with unit scalar.
    template: Vec<SparseMat>,
}

type Mono = (Option<usize>, Option<usize>);

fn mono(a: Option<usize>, b: Option<usize>) -> Mono {
    match (a, b) {
        (Some(x), Some(y)) if y < x => (Some(y), Some(x)),
        (None, Some(y)) => (Some(y), None),
        m => m,
    }
}

struct Layout {
    offsets: Vec<usize>,
    summands: Vec<Summand>,
    a: usize,
    dim: usize,
}

impl Layout {
    fn new(summands: Vec<Summand>, a: usize) -> Layout {
        let mut offsets = vec![];
        let mut o = 0;
        for s in &summands {
            offsets.push(o);
            o += s.b_dim() * if s.a_part.is_some() { a } else { 1 };
        }
        Layout { offsets, summands, a, dim: o }
    }

    /// Index of `e_p ⊗ x` (or `x` when the summand has no `A` part).
    fn idx(&self, s: usize, p: usize, x: usize) -> usize {
        self.offsets[s] + p * self.summands[s].b_dim() + x
    }

    fn a_range(&self, s: usize) -> usize {
        if self.summands[s].a_part.is_some() {
            self.a
        } else {
            1
        }
    }
}

fn build_module(g: &MagicAlgebra, name: &str, summands: Vec<Summand>) -> Result<(Layout, Vec<SparseMat>)> {
    let (ta, tb) = (&g.ta, &g.tb);
    let (a, b) = (g.a(), g.b());
    let lay = Layout::new(summands, a.dim);
    let mut fixed: Vec<SparseMat> = vec![vec![]; g.dim()];

    for (s, th) in ta.basis.iter().enumerate() {
        for (k, sm) in lay.summands.iter().enumerate() {
            let Some(i) = sm.a_part else { continue };
            for p in 0..a.dim {
                for p2 in 0..a.dim {
                    let c = &th.theta[i][p2][p];
                    if c.is_zero() {
                        continue;
                    }
                    for x in 0..sm.b_dim() {
                        fixed[g.index(Part::TA(s))].push((lay.idx(k, p2, x), lay.idx(k, p, x), c.clone()));
                    }
                }
            }
        }
    }
    for s in 0..tb.dim() {
        for (k, sm) in lay.summands.iter().enumerate() {
            let m = &sm.b_action[s];
            for p in 0..lay.a_range(k) {
                for x in 0..sm.b_dim() {
                    for y in 0..sm.b_dim() {
                        if !m[y][x].is_zero() {
                            fixed[g.index(Part::TB(s))].push((lay.idx(k, p, y), lay.idx(k, p, x), m[y][x].clone()));
                        }
                    }
                }
            }
        }
    }

    let mut pieces: Vec<Piece> = vec![];
    for i in 0..3 {
        for (si, src) in lay.summands.iter().enumerate() {
            for (ti, tgt) in lay.summands.iter().enumerate() {
                let amap = match (src.a_part, tgt.a_part) {
                    (None, Some(k)) if k == i => AMap::Embed,
                    (Some(j), None) if j == i => AMap::Pair,
                    (Some(j), Some(k)) if j != i && k != i && j != k => AMap::Product(j),
                    _ => continue,
                };
                for phi in equivariant_maps(tb, i, src, tgt) {
                    let mut template = vec![];
                    for p in 0..a.dim {
                        for q in 0..b.dim {
                            let u = a.basis(p);
                            let mut m: SparseMat = vec![];
                            for pa in 0..lay.a_range(si) {
                                // image on the A side of basis vector pa of the source
                                let img: Vec<(usize, Rat)> = match amap {
                                    AMap::Embed => (0..a.dim).filter(|&r| !u[r].is_zero()).map(|r| (r, u[r].clone())).collect(),
                                    AMap::Pair => {
                                        let c = a.q(&u, &a.basis(pa));
                                        if c.is_zero() {
                                            vec![]
                                        } else {
                                            vec![(0, c)]
                                        }
                                    }
                                    AMap::Product(j) => {
                                        let w = product(a, i, j, &u, &a.basis(pa));
                                        w.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
                                    }
                                };
                                for (pt, ca) in img {
                                    for x in 0..src.b_dim() {
                                        for y in 0..tgt.b_dim() {
                                            let cb = &phi[y][q][x];
                                            if !cb.is_zero() {
                                                m.push((lay.idx(ti, pt, y), lay.idx(si, pa, x), &ca * cb));
                                            }
                                        }
                                    }
                                }
                            }
                            template.push(m);
                        }
                    }
                    pieces.push(Piece { i, src: si, tgt: ti, template });
                }
            }
        }
    }

    let scalars = calibrate(g, &lay, &fixed, &pieces, name)?;
    let mut action = fixed;
    for (piece, c) in pieces.iter().zip(&scalars) {
        if c.is_zero() {
            continue;
        }
        for p in 0..a.dim {
            for q in 0..b.dim {
                let x = g.index(Part::M(piece.i, p, q));
                for (r, s, v) in &piece.template[p * b.dim + q] {
                    action[x].push((*r, *s, v * c));
                }
            }
        }
    }
    for m in action.iter_mut() {
        let mut acc: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
        for (r, s, v) in m.drain(..) {
            *acc.entry((r, s)).or_insert_with(Rat::zero) += v;
        }
        *m = acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((r, s), v)| (r, s, v)).collect();
    }
    Ok((lay, action))
}

/// Solves the scalars of the pieces from the representation axiom.
///
/// Rescaling a summand rescales the pieces entering and leaving it, so one
/// piece per edge of a spanning forest of the summand graph is set to one.
/// The remaining scalars are then found one at a time from equations that
/// have become linear in a single unknown.
fn calibrate(g: &MagicAlgebra, lay: &Layout, fixed: &[SparseMat], pieces: &[Piece], name: &str) -> Result<Vec<Rat>> {
    let n = pieces.len();
    let mut value: Vec<Option<Rat>> = vec![None; n];
    let mut comp: Vec<usize> = (0..lay.summands.len()).collect();
    fn find(c: &mut [usize], mut x: usize) -> usize {
        while c[x] != x {
            c[x] = c[c[x]];
            x = c[x];
        }
        x
    }
    for (k, p) in pieces.iter().enumerate() {
        let (r1, r2) = (find(&mut comp, p.src), find(&mut comp, p.tgt));
        if r1 != r2 {
            comp[r1] = r2;
            value[k] = Some(Rat::one());
        }
    }

    let bd = g.b().dim;
    let ad = g.a().dim;
    let mut by_i: [Vec<usize>; 3] = [vec![], vec![], vec![]];
    for (k, p) in pieces.iter().enumerate() {
        by_i[p.i].push(k);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut equations: Vec<BTreeMap<Mono, Rat>> = vec![];
    for round in 0..40 {
        if value.iter().all(|v| v.is_some()) {
            break;
        }
        // a pair of basis elements of A_i⊗B_i and A_j⊗B_j
        let i = round % 3;
        let j = (round / 3) % 3;
        let x = (i, rng.gen_range(0..ad), rng.gen_range(0..bd));
        let y = (j, rng.gen_range(0..ad), rng.gen_range(0..bd));
        equations.extend(pair_equations(g, fixed, pieces, &by_i, x, y));
        loop {
            let mut progress = false;
            for eq in &equations {
                if let Some((k, v)) = solve_single(eq, &value) {
                    value[k] = Some(v);
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
    }
    if value.iter().any(|v| v.is_none()) {
        return Err(Error::RepresentationAxiom(format!("{name}: calibration left scalars undetermined")));
    }
    let value: Vec<Rat> = value.into_iter().map(Option::unwrap).collect();
    for eq in &equations {
        if !eval_poly(eq, &value).is_zero() {
            return Err(Error::RepresentationAxiom(format!("{name}: calibration equations inconsistent")));
        }
    }
    Ok(value)
}

fn eval_poly(eq: &BTreeMap<Mono, Rat>, value: &[Rat]) -> Rat {
    eq.iter()
        .map(|((a, b), c)| {
            let mut t = c.clone();
            for v in [a, b].into_iter().flatten() {
                t *= &value[*v];
            }
            t
        })
        .sum()
}

/// If only one unknown remains and it enters linearly, solve for it.
fn solve_single(eq: &BTreeMap<Mono, Rat>, value: &[Option<Rat>]) -> Option<(usize, Rat)> {
    let mut constant = Rat::zero();
    let mut linear: Option<(usize, Rat)> = None;
    for ((a, b), c) in eq {
        let mut t = c.clone();
        let mut unknown = vec![];
        for v in [a, b].into_iter().flatten() {
            match &value[*v] {
                Some(x) => t *= x,
                None => unknown.push(*v),
            }
        }
        match unknown.as_slice() {
            [] => constant += t,
            [u] => match &mut linear {
                None => linear = Some((*u, t)),
                Some((w, s)) if w == u => *s += t,
                _ => return None,
            },
            _ => return None,
        }
    }
    let (u, s) = linear?;
    if s.is_zero() {
        return None;
    }
    Some((u, -constant / s))
}

/// Polynomial entries of `[ρx, ρy] − ρ([x,y])` for `x, y` in the `m` part.
fn pair_equations(
    g: &MagicAlgebra,
    fixed: &[SparseMat],
    pieces: &[Piece],
    by_i: &[Vec<usize>; 3],
    x: (usize, usize, usize),
    y: (usize, usize, usize),
) -> Vec<BTreeMap<Mono, Rat>> {
    let bd = g.b().dim;
    let mut acc: BTreeMap<(usize, usize), BTreeMap<Mono, Rat>> = BTreeMap::new();
    let mut add = |key: (usize, usize), m: Mono, v: Rat| {
        *acc.entry(key).or_default().entry(m).or_insert_with(Rat::zero) += v;
    };
    for &k in &by_i[x.0] {
        for &l in &by_i[y.0] {
            let mx = &pieces[k].template[x.1 * bd + x.2];
            let my = &pieces[l].template[y.1 * bd + y.2];
            for (key, v) in sparse_mul(mx, my) {
                add(key, mono(Some(k), Some(l)), v);
            }
            for (key, v) in sparse_mul(my, mx) {
                add(key, mono(Some(k), Some(l)), -v);
            }
        }
    }
    let (ix, iy) = (g.index(Part::M(x.0, x.1, x.2)), g.index(Part::M(y.0, y.1, y.2)));
    for (z, c) in g.table.bracket_basis(ix, iy) {
        match g.part(*z) {
            Part::M(i, p, q) => {
                for &k in &by_i[i] {
                    for (r, s, v) in &pieces[k].template[p * bd + q] {
                        add((*r, *s), mono(Some(k), None), -(c * v));
                    }
                }
            }
            _ => {
                for (r, s, v) in &fixed[*z] {
                    add((*r, *s), (None, None), -(c * v));
                }
            }
        }
    }
    acc.into_values().filter(|m| m.values().any(|c| !c.is_zero())).collect()
}

/// The three ideals `I_k = {θ : θ_k = 0}` of `t(H)` and the decomposition
/// of each basis element into its components.
fn ideal_components(tb: &TrialityAlgebra) -> Result<[Vec<Vec<Rat>>; 3]> {
    let n = tb.dim();
    let b = tb.alg.dim;
    let mut bases: Vec<Vec<Vec<Rat>>> = vec![];
    for k in 0..3 {
        let rows: Mat = (0..b * b).map(|e| (0..n).map(|s| tb.basis[s].theta[k][e / b][e % b].clone()).collect()).collect();
        let ns = linalg::nullspace(&rows, n);
        if ns.len() != 3 {
            return Err(Error::Invalid(format!("ideal {k} of t(H) has dimension {}", ns.len())));
        }
        bases.push(ns);
    }
    let all: Vec<Vec<Rat>> = bases.iter().flatten().cloned().collect();
    let coords = Coordinates::new(&all).ok_or_else(|| Error::Invalid("ideals of t(H) are not independent".into()))?;
    let mut comps: [Vec<Vec<Rat>>; 3] = [vec![], vec![], vec![]];
    for s in 0..n {
        let c = coords.coords(&tb.unit_coords(s));
        for k in 0..3 {
            let mut v = vec![Rat::zero(); n];
            for (t, basis_vec) in bases[k].iter().enumerate() {
                for (o, x) in v.iter_mut().zip(basis_vec) {
                    *o += &c[3 * k + t] * x;
                }
            }
            comps[k].push(v);
        }
    }
    Ok(comps)
}

/// The natural two-dimensional module `U_k` of the ideal `I_k`, realized on a
/// span of two basis vectors of `H_{k+1}`, with the other ideals acting by zero.
fn natural_modules(tb: &TrialityAlgebra) -> Result<Vec<Vec<Mat>>> {
    let comps = ideal_components(tb)?;
    let b = tb.alg.dim;
    let mut out = vec![];
    for k in 0..3 {
        let j = (k + 1) % 3;
        let ops: Vec<Mat> = comps[k].iter().map(|c| tb.element(c).theta[j].clone()).collect();
        let pair = (0..b).flat_map(|p| (p + 1..b).map(move |q| (p, q))).find(|&(p, q)| {
            ops.iter().all(|m| (0..b).all(|r| r == p || r == q || (m[r][p].is_zero() && m[r][q].is_zero())))
                && ops.iter().any(|m| !m[p][q].is_zero() || !m[q][p].is_zero())
        });
        let (p, q) = pair.ok_or_else(|| Error::Invalid(format!("no invariant plane for ideal {k}")))?;
        out.push(ops.iter().map(|m| vec![vec![m[p][p].clone(), m[p][q].clone()], vec![m[q][p].clone(), m[q][q].clone()]]).collect());
    }
    Ok(out)
}

fn kron(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    let mut out = linalg::zeros(n * m, n * m);
    for i in 0..n {
        for j in 0..n {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

/// Action on `U1 ⊗ U2 ⊗ U3` from actions on the factors.
fn triple_tensor(u: &[Vec<Mat>], s: usize) -> Mat {
    let id = linalg::identity(2);
    let t1 = kron(&kron(&u[0][s], &id), &id);
    let t2 = kron(&kron(&id, &u[1][s]), &id);
    let t3 = kron(&kron(&id, &id), &u[2][s]);
    linalg::mat_add(&linalg::mat_add(&t1, &t2), &t3)
}

/// The module `V = ⊕ A_i⊗U_i ⊕ U1⊗U2⊗U3` of `g(A,H)`, of dimension `6a+8`.
pub fn build_v_module(g: &MagicAlgebra) -> Result<GModule> {
    if g.b().tag != AlgebraTag::H {
        return Err(Error::Invalid("V is defined for B = H".into()));
    }
    let u = natural_modules(&g.tb)?;
    let mut summands: Vec<Summand> = (0..3).map(|k| Summand { a_part: Some(k), b_action: u[k].clone() }).collect();
    summands.push(Summand { a_part: None, b_action: (0..g.tb.dim()).map(|s| triple_tensor(&u, s)).collect() });
    let name = format!("V of g({},H)", g.a().tag);
    let (lay, action) = build_module(g, &name, summands)?;
    let mut module = GModule { name: name.clone(), dim: lay.dim, action, form: ModuleForm::Symplectic(vec![]), cubic_term: None };

    // candidate forms: det⊗det⊗det on the triple product, Q_i⊗det_i on A_i⊗U_i
    let det = vec![vec![ri(0), ri(1)], vec![ri(-1), ri(0)]];
    let mut candidates: Vec<Mat> = vec![];
    for k in 0..3 {
        let mut m = linalg::zeros(lay.dim, lay.dim);
        for p in 0..lay.a {
            for p2 in 0..lay.a {
                let qv = &g.a().gram[p][p2];
                if qv.is_zero() {
                    continue;
                }
                for x in 0..2 {
                    for y in 0..2 {
                        if !det[x][y].is_zero() {
                            m[lay.idx(k, p, x)][lay.idx(k, p2, y)] = qv * &det[x][y];
                        }
                    }
                }
            }
        }
        candidates.push(m);
    }
    let d3 = kron(&kron(&det, &det), &det);
    let mut m = linalg::zeros(lay.dim, lay.dim);
    for x in 0..8 {
        for y in 0..8 {
            m[lay.idx(3, 0, x)][lay.idx(3, 0, y)] = d3[x][y].clone();
        }
    }
    candidates.push(m);
    let omega = calibrate_form(g, &module, &candidates, &name)?;
    module.form = ModuleForm::Symplectic(omega);
    Ok(module)
}

/// Combination of candidate bilinear forms that is invariant under the
/// generators `A_i ⊗ B_i` (which generate `g` together with `t(A)×t(B)`).
fn calibrate_form(g: &MagicAlgebra, module: &GModule, candidates: &[Mat], name: &str) -> Result<Mat> {
    let mut rows: Mat = vec![];
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..12 {
        let x = rng.gen_range(0..g.dim());
        let v = random_vec(&mut rng, module.dim);
        let w = random_vec(&mut rng, module.dim);
        let xv = sparse_apply(&module.action[x], &v, module.dim);
        let xw = sparse_apply(&module.action[x], &w, module.dim);
        rows.push(candidates.iter().map(|c| bilinear(c, &xv, &w) + bilinear(c, &v, &xw)).collect());
    }
    let ns = linalg::nullspace(&rows, candidates.len());
    if ns.len() != 1 {
        return Err(Error::RepresentationAxiom(format!("{name}: {} invariant combinations", ns.len())));
    }
    let c = &ns[0];
    let mut out = linalg::zeros(module.dim, module.dim);
    for (m, x) in candidates.iter().zip(c) {
        out = linalg::mat_add(&out, &linalg::scale(m, x));
    }
    Ok(out)
}

/// Weights `ω_1, ω_2, ω_3` of `t(C)` (one functional per `C_k`, summing to
/// zero), read off the weights `±(ω_j − ω_k)` of the idempotent `e1` in `C_i`.
fn severi_weights(tb: &TrialityAlgebra) -> Result<[Vec<Rat>; 3]> {
    let w: Vec<Vec<Rat>> = (0..3).map(|i| tb.vector_weight(i, 0)).collect();
    for signs in [[1, 1, 1], [1, 1, -1], [1, -1, 1], [-1, 1, 1]] {
        let sw: Vec<Vec<Rat>> = (0..3).map(|i| w[i].iter().map(|x| x * ri(signs[i])).collect()).collect();
        let sum_zero = (0..tb.rank).all(|t| (&sw[0][t] + &sw[1][t] + &sw[2][t]).is_zero());
        if !sum_zero {
            continue;
        }
        // σ_i w_i = ω_j − ω_k, so ω_i = (σ_k w_k − σ_j w_j)/3
        let om = |i: usize| -> Vec<Rat> {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            (0..tb.rank).map(|t| (&sw[k][t] - &sw[j][t]) / ri(3)).collect()
        };
        return Ok([om(0), om(1), om(2)]);
    }
    Err(Error::Invalid("weights of t(C) on C_i do not close up".into()))
}

/// The module `W = ⊕ A_i⊗C_i^{-1} ⊕ C_i²` of `g(A,C)`, of dimension `3a+3`.
pub fn build_w_module(g: &MagicAlgebra) -> Result<GModule> {
    if g.b().tag != AlgebraTag::C {
        return Err(Error::Invalid("W is defined for B = C".into()));
    }
    let om = severi_weights(&g.tb)?;
    // t(C) basis is the torus, so each character is a 1×1 matrix per basis element
    let character = |w: &[Rat], c: i64| -> Vec<Mat> { w.iter().map(|x| vec![vec![x * ri(c)]]).collect() };
    let mut summands: Vec<Summand> = (0..3).map(|k| Summand { a_part: Some(k), b_action: character(&om[k], -1) }).collect();
    summands.extend((0..3).map(|k| Summand { a_part: None, b_action: character(&om[k], 2) }));
    let name = format!("W of g({},C)", g.a().tag);
    let (lay, action) = build_module(g, &name, summands)?;
    let mut module = GModule { name: name.clone(), dim: lay.dim, action, form: ModuleForm::Cubic(vec![]), cubic_term: None };

    let (x1, x2, x3) = (lay.idx(3, 0, 0), lay.idx(4, 0, 0), lay.idx(5, 0, 0));
    let mut sorted = [x1, x2, x3];
    sorted.sort();
    let diag = vec![(sorted[0], sorted[1], sorted[2], ri(1))];
    let a = g.a();
    // x_i Q(X_i, X_i) for each i
    let norm_terms: Vec<Vec<(usize, usize, usize, Rat)>> = (0..3)
        .map(|i| {
            let mut t = vec![];
            for p in 0..a.dim {
                for q in p..a.dim {
                    let c = if p == q { a.q(&a.basis(p), &a.basis(p)) } else { ri(2) * a.q(&a.basis(p), &a.basis(q)) };
                    if !c.is_zero() {
                        let mut idx = [lay.idx(i, p, 0), lay.idx(i, q, 0), lay.idx(3 + i, 0, 0)];
                        idx.sort();
                        t.push((idx[0], idx[1], idx[2], c));
                    }
                }
            }
            t
        })
        .collect();
    for term in [CubicTerm::ConjugatedThird, CubicTerm::Plain] {
        let mut tri: BTreeMap<(usize, usize, usize), Rat> = BTreeMap::new();
        for p in 0..a.dim {
            for q in 0..a.dim {
                let prod = a.mul(&a.basis(p), &a.basis(q));
                for r in 0..a.dim {
                    let third = match term {
                        CubicTerm::ConjugatedThird => a.bar(&a.basis(r)),
                        CubicTerm::Plain => a.basis(r),
                    };
                    let c = a.q(&prod, &third);
                    if c.is_zero() {
                        continue;
                    }
                    let mut idx = [lay.idx(0, p, 0), lay.idx(1, q, 0), lay.idx(2, r, 0)];
                    idx.sort();
                    *tri.entry((idx[0], idx[1], idx[2])).or_insert_with(Rat::zero) += c;
                }
            }
        }
        let tri: Vec<(usize, usize, usize, Rat)> = tri.into_iter().map(|((i, j, k), c)| (i, j, k, c)).collect();
        let mut candidates = vec![diag.clone(), tri];
        candidates.extend(norm_terms.iter().cloned());
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut rows: Mat = vec![];
        for _ in 0..24 {
            let x = rng.gen_range(0..g.dim());
            let w = random_vec(&mut rng, lay.dim);
            let xw = sparse_apply(&module.action[x], &w, lay.dim);
            rows.push(candidates.iter().map(|t| cubic_derivative(t, &w, &xw)).collect());
        }
        let ns = linalg::nullspace(&rows, candidates.len());
        if ns.len() == 1 && ns[0].iter().all(|c| !c.is_zero()) {
            let c = &ns[0];
            // normalize so that the x1 x2 x3 coefficient is 1
            let scale = c[0].recip();
            let mut terms: BTreeMap<(usize, usize, usize), Rat> = BTreeMap::new();
            for (cand, x) in candidates.iter().zip(c) {
                for (i, j, k, v) in cand {
                    *terms.entry((*i, *j, *k)).or_insert_with(Rat::zero) += v * x * &scale;
                }
            }
            module.form = ModuleForm::Cubic(terms.into_iter().filter(|(_, v)| !v.is_zero()).map(|((i, j, k), v)| (i, j, k, v)).collect());
            module.cubic_term = Some(term);
            return Ok(module);
        }
    }
    Err(Error::RepresentationAxiom(format!("{name}: no invariant cubic form")))
}

impl GModule {
    pub fn cubic_value(&self, v: &[Rat]) -> Option<Rat> {
        match &self.form {
            ModuleForm::Cubic(t) => Some(cubic_eval(t, v)),
            _ => None,
        }
    }

    /// Nondegeneracy of the symplectic form.
    pub fn form_is_nondegenerate(&self) -> bool {
        match &self.form {
            ModuleForm::Symplectic(m) => linalg::rank(m) == self.dim,
            ModuleForm::Cubic(t) => !t.is_empty(),
        }
    }

    pub fn form_is_alternating(&self) -> bool {
        match &self.form {
            ModuleForm::Symplectic(m) => (0..self.dim).all(|i| (0..self.dim).all(|j| (&m[i][j] + &m[j][i]).is_zero())),
            _ => false,
        }
    }

    pub fn max_abs_entry(&self) -> Rat {
        self.action.iter().flatten().map(|(_, _, v)| v.abs()).max().unwrap_or_else(Rat::zero)
    }
}

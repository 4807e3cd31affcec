//! Root systems read off a bracket table through a split Cartan subalgebra.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::arith::{ri, Rat};
use crate::composition::AlgebraTag;
use crate::error::{Error, Result};
use crate::lie::LieTable;
use crate::linalg::{self, Mat};
use crate::magic::modules::{build_v_module, build_w_module, GModule};
use crate::magic::{MagicAlgebra, Part};
use crate::triality::TrialityAlgebra;

use super::datum::RootDatum;

/// Commuting basis elements acting diagonally, and the order in which their
/// coordinates decide positivity (positions into `indices`).
#[derive(Clone, Debug)]
pub struct CartanChoice {
    pub indices: Vec<usize>,
    pub priority: Vec<usize>,
}

/// A datum together with the weight of every basis vector of the algebra.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub datum: RootDatum,
    pub weights: Vec<Vec<Rat>>,
    pub priority: Vec<usize>,
}

impl Extraction {
    pub fn compare(&self, x: &[Rat], y: &[Rat]) -> Ordering {
        lex_cmp(&self.priority, x, y)
    }

    /// Largest of `ws` in the chosen order.
    pub fn top<'a>(&self, ws: impl IntoIterator<Item = &'a Vec<Rat>>) -> Option<Vec<Rat>> {
        ws.into_iter().max_by(|a, b| self.compare(a, b)).cloned()
    }
}

fn lex_cmp(priority: &[usize], x: &[Rat], y: &[Rat]) -> Ordering {
    for &k in priority {
        match x[k].cmp(&y[k]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn is_positive(priority: &[usize], x: &[Rat]) -> bool {
    priority.iter().map(|&k| &x[k]).find(|c| !c.is_zero()).is_some_and(|c| c.is_positive())
}

/// Killing form on the Cartan coordinates from the roots, inverted and
/// scaled so that the longest roots have length² 2.
fn root_gram(rank: usize, positive: &[Vec<Rat>]) -> Result<Mat> {
    let mut b = linalg::zeros(rank, rank);
    for a in positive {
        for i in 0..rank {
            for j in 0..rank {
                b[i][j] += ri(2) * &a[i] * &a[j];
            }
        }
    }
    let g = linalg::inverse(&b).ok_or_else(|| Error::Invalid("roots do not span the Cartan dual".into()))?;
    let longest = positive.iter().map(|a| linalg::dot(a, &linalg::mat_vec(&g, a))).max().unwrap_or_else(|| ri(2));
    Ok(linalg::scale(&g, &(ri(2) / longest)))
}

pub fn extract_root_datum(name: &str, table: &LieTable, c: &CartanChoice) -> Result<Extraction> {
    let r = c.indices.len();
    let mut weights = vec![vec![Rat::zero(); r]; table.dim];
    for (t, &h) in c.indices.iter().enumerate() {
        for (j, w) in weights.iter_mut().enumerate() {
            match table.bracket_basis(h, j).as_slice() {
                [] => {}
                [(k, v)] if *k == j => w[t] = v.clone(),
                other => return Err(Error::NotDiagonalizable(format!("[e{h}, e{j}] = {other:?}"))),
            }
        }
    }
    let zero = weights.iter().filter(|w| w.iter().all(|x| x.is_zero())).count();
    if zero != r {
        return Err(Error::NotDiagonalizable(format!("{name}: zero weight space of dimension {zero}, rank {r}")));
    }
    let mut positive: Vec<Vec<Rat>> = weights.iter().filter(|w| is_positive(&c.priority, w)).cloned().collect();
    positive.sort_by(|x, y| lex_cmp(&c.priority, y, x));
    if positive.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::Invalid(format!("{name}: root space of dimension > 1")));
    }
    if 2 * positive.len() + r != table.dim {
        return Err(Error::Invalid(format!("{name}: {} roots for dimension {} and rank {r}", 2 * positive.len(), table.dim)));
    }
    let gram = root_gram(r, &positive)?;
    let datum = RootDatum::new(name, gram, positive, BTreeMap::new())?;
    Ok(Extraction { datum, weights, priority: c.priority.clone() })
}

/// Rank-one case with no diagonal basis element: `ad(h)²` is diagonal with
/// eigenvalues `−c²`, so `ih` is split with eigenvalues `±c`.
pub fn extract_anisotropic(name: &str, table: &LieTable, h: usize) -> Result<Extraction> {
    let x = table.unit(h);
    let mut weights = vec![];
    for j in 0..table.dim {
        let y = table.bracket(&x, &table.bracket(&x, &table.unit(j)));
        let e = -y[j].clone();
        if y.iter().enumerate().any(|(k, v)| k != j && !v.is_zero()) {
            return Err(Error::NotDiagonalizable(format!("{name}: ad(e{h})² on e{j}")));
        }
        let c = rational_sqrt(&e).ok_or_else(|| Error::NotDiagonalizable(format!("{name}: eigenvalue {} of ad²", -e)))?;
        weights.push(c);
    }
    // the two nonzero eigenvectors of ad(h)² pair up into ±c
    let mut nonzero: Vec<Rat> = weights.iter().filter(|c| !c.is_zero()).cloned().collect();
    nonzero.sort();
    if nonzero.len() != 2 || nonzero[0] != nonzero[1] {
        return Err(Error::Invalid(format!("{name}: not of rank one")));
    }
    let mut sign = 1;
    let weights: Vec<Vec<Rat>> = weights
        .into_iter()
        .map(|c| {
            if c.is_zero() {
                vec![c]
            } else {
                sign = -sign;
                vec![c * ri(-sign)]
            }
        })
        .collect();
    let positive = vec![weights.iter().find(|w| w[0].is_positive()).cloned().expect("a positive root")];
    let gram = root_gram(1, &positive)?;
    let datum = RootDatum::new(name, gram, positive, BTreeMap::new())?;
    Ok(Extraction { datum, weights, priority: vec![0] })
}

fn rational_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rat::new(n, d))
}

/// Weights of a module on the Cartan elements, if they act diagonally.
pub fn module_weights(m: &GModule, cartan: &[usize]) -> Result<Vec<Vec<Rat>>> {
    let mut w = vec![vec![Rat::zero(); cartan.len()]; m.dim];
    for (t, &h) in cartan.iter().enumerate() {
        for (r, s, v) in &m.action[h] {
            if r != s {
                return Err(Error::NotDiagonalizable(format!("{} under e{h}", m.name)));
            }
            w[*r][t] = v.clone();
        }
    }
    Ok(w)
}

/// Cartan choice for `g(A,B)`: both tori, with the `B` torus deciding
/// positivity first.
pub fn magic_cartan(g: &MagicAlgebra) -> CartanChoice {
    let indices = g.cartan_indices();
    let ra = g.ta.rank;
    let priority = (ra..indices.len()).chain(0..ra).collect();
    CartanChoice { indices, priority }
}

/// The root datum of `g(A,B)` with the distinguished weights of its series.
pub fn magic_root_datum(g: &MagicAlgebra) -> Result<RootDatum> {
    Ok(magic_extraction(g)?.datum)
}

pub fn magic_extraction(g: &MagicAlgebra) -> Result<Extraction> {
    let (a, b) = g.tags();
    let name = format!("g({a},{b})");
    let c = magic_cartan(g);
    let mut ex = if c.indices.is_empty() {
        extract_anisotropic(&name, &g.table, g.index(Part::M(0, 0, 0)))?
    } else {
        extract_root_datum(&name, &g.table, &c)?
    };
    let theta = ex.datum.highest_root();
    ex.datum.markers.insert("g".into(), theta);
    match b {
        AlgebraTag::O => {
            let tb_roots: Vec<Vec<Rat>> = (0..g.tb.dim()).map(|k| ex.weights[g.index(Part::TB(k))].clone()).collect();
            let markers = exceptional_markers(&ex, a.dim(), g.ta.rank, &g.tb, &tb_roots)?;
            ex.datum.markers.extend(markers);
        }
        AlgebraTag::H => {
            let v = build_v_module(g)?;
            let ws = module_weights(&v, &c.indices)?;
            let top = ex.top(&ws).expect("nonzero module");
            let second = ex.top(ws.iter().filter(|w| **w != top)).expect("more than one weight");
            let v2: Vec<Rat> = top.iter().zip(&second).map(|(x, y)| x + y).collect();
            ex.datum.markers.insert("V".into(), top);
            ex.datum.markers.insert("V2".into(), v2);
        }
        AlgebraTag::C => {
            let w = build_w_module(g)?;
            let ws = module_weights(&w, &c.indices)?;
            let top = ex.top(&ws).expect("nonzero module");
            let bottom = ws.iter().min_by(|x, y| ex.compare(x, y)).expect("nonzero module");
            ex.datum.markers.insert("W".into(), top);
            ex.datum.markers.insert("W*".into(), bottom.iter().map(|x| -x).collect());
        }
        AlgebraTag::R => {}
    }
    for (k, w) in &ex.datum.markers {
        if !ex.datum.is_dominant_integral(w) {
            return Err(Error::NotDominant(format!("{name} marker {k}: labels {}", fmt_labels(&ex.datum.labels(w)))));
        }
    }
    Ok(ex)
}

/// `t(O) = so8` on its own, the `a = 0` member of the exceptional series.
pub fn so8_extraction() -> Result<Extraction> {
    let tb = crate::triality::build_triality(AlgebraTag::O);
    let table = LieTable { dim: tb.dim(), brackets: tb.brackets.clone() };
    let c = CartanChoice { indices: (0..tb.rank).collect(), priority: (0..tb.rank).collect() };
    let mut ex = extract_root_datum("t(O)", &table, &c)?;
    let roots = ex.weights.clone();
    let theta = ex.datum.highest_root();
    ex.datum.markers.insert("g".into(), theta);
    let markers = exceptional_markers(&ex, 0, 0, &tb, &roots)?;
    ex.datum.markers.extend(markers);
    Ok(ex)
}

/// so8 labelling for `g(A,O)`. With `a > 0` the nodes are read off
/// `γ = (ρ − ρ_so8)/a`, which must be `2ω1 + ω4`; the remaining outer node is
/// 3. For `a = 0` the highest weights of `O_3, O_2, O_1` give nodes 1, 3, 4,
/// which is what the `γ` rule produces for every `a > 0`.
/// Markers are `ω2`, `ω1+ω3+ω4`, `2ω1+2ω4`, `2ω1`, extended by zero on the
/// torus of `t(A)`. With `γ = 2ω1+ω4`, `2ω1+2ω3` is not dominant for
/// `g(A,O)` when `a > 0`.
fn exceptional_markers(
    ex: &Extraction,
    a: usize,
    a_rank: usize,
    tb: &TrialityAlgebra,
    tb_roots: &[Vec<Rat>],
) -> Result<BTreeMap<String, Vec<Rat>>> {
    let full = &ex.datum;
    let rb = tb.rank;
    let sub = |v: &[Rat]| v[a_rank..a_rank + rb].to_vec();
    let gram: Mat = (a_rank..a_rank + rb).map(|i| (a_rank..a_rank + rb).map(|j| full.gram[i][j].clone()).collect()).collect();
    let bprio: Vec<usize> = ex.priority.iter().filter(|&&k| k >= a_rank && k < a_rank + rb).map(|k| k - a_rank).collect();
    let mut pos: Vec<Vec<Rat>> = tb_roots.iter().map(|w| sub(w)).filter(|w| is_positive(&bprio, w)).collect();
    pos.sort_by(|x, y| lex_cmp(&bprio, y, x));
    let so8 = RootDatum::new("so8", gram, pos, BTreeMap::new())?;
    if so8.dynkin_type() != "D4" {
        return Err(Error::Invalid(format!("t(O) root system is {}", so8.dynkin_type())));
    }
    let mut node = [usize::MAX; 3];
    for (i, n) in node.iter_mut().enumerate() {
        let top = (0..tb.alg.dim).map(|p| tb.vector_weight(i, p)).max_by(|x, y| lex_cmp(&bprio, x, y)).expect("weights");
        let l = so8.labels(&top);
        *n = (0..4)
            .find(|&k| l[k] == ri(1) && l.iter().filter(|x| !x.is_zero()).count() == 1)
            .ok_or_else(|| Error::Invalid(format!("highest weight of O_{} is not fundamental", i + 1)))?;
    }
    let (mut n1, mut n3, mut n4) = (node[2], node[1], node[0]);
    if a > 0 {
        let rho = full.rho();
        let rs = so8.rho();
        let gamma: Vec<Rat> = (0..rb).map(|k| (&rho[a_rank + k] - &rs[k]) / ri(a as i64)).collect();
        let l = so8.labels(&gamma);
        let find = |v: i64| (0..4).filter(|&k| l[k] == ri(v)).collect::<Vec<_>>();
        match (find(2).as_slice(), find(1).as_slice(), find(0).len()) {
            ([x], [y], 2) if *x != 1 && *y != 1 => {
                n1 = *x;
                n4 = *y;
                n3 = [0, 2, 3].into_iter().find(|k| k != x && k != y).expect("three outer nodes");
            }
            _ => return Err(Error::Invalid(format!("ρ − ρ_so8 has labels {}", fmt_labels(&l)))),
        }
    }
    let lift = |labels: &[(usize, i64)]| -> Result<Vec<Rat>> {
        let mut l = vec![Rat::zero(); 4];
        for &(k, c) in labels {
            l[k] += ri(c);
        }
        let w = so8.from_labels(&l)?;
        let mut out = vec![Rat::zero(); full.rank];
        for (k, x) in w.into_iter().enumerate() {
            out[a_rank + k] = x;
        }
        Ok(out)
    };
    let mut m = BTreeMap::new();
    m.insert("X2".to_string(), lift(&[(n1, 1), (n3, 1), (n4, 1)])?);
    m.insert("X3".to_string(), lift(&[(n1, 2), (n4, 2)])?);
    m.insert("Y2*".to_string(), lift(&[(n1, 2)])?);
    m.insert("so8:g".to_string(), lift(&[(1, 1)])?);
    Ok(m)
}

fn fmt_labels(l: &[Rat]) -> String {
    l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

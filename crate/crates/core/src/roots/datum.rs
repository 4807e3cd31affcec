use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rat::{self, is_integer, to_i64};
use crate::arith::{ri, Rat};
use crate::error::{Error, Result};
use crate::linalg::{self, Coordinates, Mat};

use super::dynkin::{self, Component};

/// A reduced root system on a rational vector space with an invariant form.
///
/// Roots are stored in whatever coordinates they were produced in; the
/// simple system, Cartan matrix and fundamental weights are derived once on
/// construction. Simple roots are put in Bourbaki order per component.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub name: String,
    pub rank: usize,
    pub gram: Mat,
    pub positive_roots: Vec<Vec<Rat>>,
    pub markers: BTreeMap<String, Vec<Rat>>,
    simple: Vec<Vec<Rat>>,
    cartan: Vec<Vec<i64>>,
    components: Vec<Component>,
    /// Positive roots in simple-root coordinates.
    heights: Vec<Vec<i64>>,
    fundamental: Vec<Vec<Rat>>,
}

#[derive(Serialize, Deserialize)]
struct DatumJson {
    #[serde(default)]
    name: String,
    rank: usize,
    #[serde(with = "rat::serde_mat")]
    gram: Mat,
    #[serde(with = "rat::serde_mat")]
    positive_roots: Mat,
    #[serde(default)]
    markers: BTreeMap<String, Vec<String>>,
}

impl RootDatum {
    /// Builds a datum from a positive system and an invariant form.
    pub fn new(name: &str, gram: Mat, positive_roots: Vec<Vec<Rat>>, markers: BTreeMap<String, Vec<Rat>>) -> Result<RootDatum> {
        let rank = gram.len();
        if positive_roots.iter().any(|r| r.len() != rank) {
            return Err(Error::Invalid(format!("{name}: root of the wrong length")));
        }
        let simple: Vec<Vec<Rat>> = positive_roots
            .iter()
            .filter(|r| {
                !positive_roots.iter().any(|b| {
                    let d: Vec<Rat> = r.iter().zip(b).map(|(x, y)| x - y).collect();
                    positive_roots.contains(&d)
                })
            })
            .cloned()
            .collect();
        if simple.len() != rank && !positive_roots.is_empty() {
            return Err(Error::Invalid(format!("{name}: {} simple roots for rank {rank}", simple.len())));
        }
        let mut d = RootDatum {
            name: name.to_string(),
            rank,
            gram,
            positive_roots,
            markers,
            simple,
            cartan: vec![],
            components: vec![],
            heights: vec![],
            fundamental: vec![],
        };
        if d.rank == 0 {
            return Ok(d);
        }
        d.cartan = d.compute_cartan()?;
        let (components, order) = dynkin::classify(&d.cartan)?;
        d.simple = order.iter().map(|&i| d.simple[i].clone()).collect();
        d.cartan = d.compute_cartan()?;
        d.components = components;
        let coords = Coordinates::new(&d.simple).ok_or_else(|| Error::Invalid(format!("{}: simple roots are dependent", d.name)))?;
        d.heights = d
            .positive_roots
            .iter()
            .map(|r| {
                let c = coords.coords_checked(r)?;
                c.iter().map(|x| if is_integer(x) && !x.is_negative() { to_i64(x) } else { None }).collect::<Option<Vec<i64>>>()
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Invalid(format!("{}: positive root outside the positive cone", d.name)))?;
        // ω_i solves 2(ω_i, α_j)/(α_j, α_j) = δ_ij
        let rows: Mat = d.simple.iter().map(|a| d.coroot_functional(a)).collect();
        let inv = linalg::inverse(&rows).ok_or_else(|| Error::Invalid(format!("{}: degenerate form", d.name)))?;
        d.fundamental = (0..d.rank).map(|i| (0..d.rank).map(|k| inv[k][i].clone()).collect()).collect();
        Ok(d)
    }

    pub fn from_json(s: &str) -> Result<RootDatum> {
        let j: DatumJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if j.gram.len() != j.rank {
            return Err(Error::Dimension { expected: j.rank, got: j.gram.len() });
        }
        let markers = j
            .markers
            .into_iter()
            .map(|(k, v)| Ok((k, v.iter().map(|x| rat::parse(x)).collect::<Result<Vec<Rat>>>()?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        RootDatum::new(&j.name, j.gram, j.positive_roots, markers)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let markers: serde_json::Map<String, serde_json::Value> = self.markers.iter().map(|(k, v)| (k.clone(), rat::json_vec(v))).collect();
        serde_json::json!({
            "name": self.name,
            "rank": self.rank,
            "gram": rat::json_mat(&self.gram),
            "positive_roots": rat::json_mat(&self.positive_roots),
            "markers": markers,
        })
    }

    fn coroot_functional(&self, a: &[Rat]) -> Vec<Rat> {
        let n = self.pair(a, a);
        let ga = linalg::mat_vec(&self.gram, a);
        ga.iter().map(|x| ri(2) * x / &n).collect()
    }

    fn compute_cartan(&self) -> Result<Vec<Vec<i64>>> {
        self.simple
            .iter()
            .map(|a| {
                self.simple
                    .iter()
                    .map(|b| {
                        let c = ri(2) * self.pair(a, b) / self.pair(b, b);
                        to_i64(&c).ok_or_else(|| Error::Invalid(format!("{}: non-integral Cartan entry {c}", self.name)))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn pair(&self, x: &[Rat], y: &[Rat]) -> Rat {
        linalg::dot(x, &linalg::mat_vec(&self.gram, y))
    }

    pub fn simple_roots(&self) -> &[Vec<Rat>] {
        &self.simple
    }

    /// `A[i][j] = 2(α_i, α_j)/(α_j, α_j)`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn dynkin_type(&self) -> String {
        if self.components.is_empty() {
            return "0".into();
        }
        self.components.iter().map(|c| c.label()).collect::<Vec<_>>().join("x")
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive_roots.len()
    }

    pub fn fundamental_weight(&self, i: usize) -> &[Rat] {
        &self.fundamental[i]
    }

    pub fn rho(&self) -> Vec<Rat> {
        let mut r = vec![Rat::zero(); self.rank];
        for a in &self.positive_roots {
            for (x, y) in r.iter_mut().zip(a) {
                *x += y;
            }
        }
        r.iter().map(|x| x / ri(2)).collect()
    }

    pub fn length2(&self, a: &[Rat]) -> Rat {
        self.pair(a, a)
    }

    /// Positive root of largest height (first in list order on ties).
    pub fn highest_root(&self) -> Vec<Rat> {
        let (mut best, mut h) = (0, -1);
        for (i, c) in self.heights.iter().enumerate() {
            let s: i64 = c.iter().sum();
            if s > h {
                best = i;
                h = s;
            }
        }
        self.positive_roots[best].clone()
    }

    pub fn simple_coords(&self, i: usize) -> &[i64] {
        &self.heights[i]
    }

    /// Dynkin labels `2(ω, α_i)/(α_i, α_i)`.
    pub fn labels(&self, w: &[Rat]) -> Vec<Rat> {
        self.simple.iter().map(|a| ri(2) * self.pair(w, a) / self.pair(a, a)).collect()
    }

    pub fn from_labels(&self, labels: &[Rat]) -> Result<Vec<Rat>> {
        if labels.len() != self.rank {
            return Err(Error::Dimension { expected: self.rank, got: labels.len() });
        }
        let mut w = vec![Rat::zero(); self.rank];
        for (l, f) in labels.iter().zip(&self.fundamental) {
            for (x, y) in w.iter_mut().zip(f) {
                *x += l * y;
            }
        }
        Ok(w)
    }

    fn dominant_labels(&self, w: &[Rat]) -> Result<Vec<i64>> {
        let l = self.labels(w);
        l.iter().map(|x| to_i64(x).filter(|v| *v >= 0)).collect::<Option<Vec<i64>>>().ok_or_else(|| Error::NotDominant(fmt_vec(&l)))
    }

    pub fn is_dominant_integral(&self, w: &[Rat]) -> bool {
        self.dominant_labels(w).is_ok()
    }

    /// `∏_{α>0} (ρ+ω, α)/(ρ, α)`.
    pub fn weyl_dim(&self, w: &[Rat]) -> Result<BigInt> {
        self.dominant_labels(w)?;
        let rho = self.rho();
        let shifted: Vec<Rat> = rho.iter().zip(w).map(|(r, x)| r + x).collect();
        let mut num = Rat::one();
        for a in &self.positive_roots {
            num *= self.pair(&shifted, a) / self.pair(&rho, a);
        }
        if !is_integer(&num) || !num.is_positive() {
            return Err(Error::NonIntegerResult(num.to_string()));
        }
        Ok(num.to_integer())
    }

    pub fn weyl_dim_labels(&self, labels: &[i64]) -> Result<BigInt> {
        let l: Vec<Rat> = labels.iter().map(|&x| ri(x)).collect();
        self.weyl_dim(&self.from_labels(&l)?)
    }

    /// Multiplicity of `mu` in the irreducible module of highest weight `lambda`.
    pub fn weight_multiplicity(&self, lambda: &[Rat], mu: &[Rat]) -> Result<BigInt> {
        let lam = self.dominant_labels(lambda)?;
        let m = self.labels(mu);
        let m: Vec<i64> = m.iter().map(to_i64).collect::<Option<Vec<_>>>().ok_or_else(|| Error::NotDominant(fmt_vec(&m)))?;
        let ch = Character::new(self, &lam);
        Ok(ch.mult(&m))
    }

    /// Dominant weights of `V_λ` (as labels) with multiplicities.
    pub fn dominant_character(&self, lambda: &[Rat]) -> Result<Vec<(Vec<i64>, BigInt)>> {
        let lam = self.dominant_labels(lambda)?;
        let ch = Character::new(self, &lam);
        Ok(ch.order.iter().map(|w| (w.clone(), ch.mults[w].clone())).collect())
    }

    /// Size of the Weyl orbit of a dominant weight, `|W| / |W_stab|`.
    pub fn orbit_size(&self, labels: &[i64]) -> Result<BigInt> {
        let full = dynkin::weyl_order(&self.cartan, &(0..self.rank).collect::<Vec<_>>())?;
        let zero: Vec<usize> = (0..self.rank).filter(|&i| labels[i] == 0).collect();
        let stab = dynkin::weyl_order(&self.cartan, &zero)?;
        Ok(full / stab)
    }

    /// Labels of a positive root.
    fn root_labels(&self, i: usize) -> Vec<i64> {
        let h = &self.heights[i];
        (0..self.rank).map(|j| (0..self.rank).map(|k| h[k] * self.cartan[k][j]).sum()).collect()
    }

    /// `(μ, ν)` for weights given by labels.
    fn label_form(&self) -> Mat {
        (0..self.rank).map(|i| (0..self.rank).map(|j| self.pair(&self.fundamental[i], &self.fundamental[j])).collect()).collect()
    }
}

fn fmt_vec(v: &[Rat]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Freudenthal's recursion over the dominant weights of one module.
struct Character<'a> {
    d: &'a RootDatum,
    lambda: Vec<i64>,
    roots: Vec<Vec<i64>>,
    form: Mat,
    order: Vec<Vec<i64>>,
    mults: HashMap<Vec<i64>, BigInt>,
}

impl<'a> Character<'a> {
    fn new(d: &'a RootDatum, lambda: &[i64]) -> Character<'a> {
        let roots: Vec<Vec<i64>> = (0..d.positive_roots.len()).map(|i| d.root_labels(i)).collect();
        let mut ch = Character { d, lambda: lambda.to_vec(), roots, form: d.label_form(), order: vec![], mults: HashMap::new() };
        ch.order = ch.dominant_weights();
        ch.run();
        ch
    }

    fn ip(&self, x: &[i64], y: &[i64]) -> Rat {
        let mut s = Rat::zero();
        for (i, a) in x.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if *b != 0 {
                    s += &self.form[i][j] * ri(a * b);
                }
            }
        }
        s
    }

    /// Dominant weights below `λ`, closest first. Every such weight is reached
    /// from `λ` by subtracting positive roots through dominant weights.
    fn dominant_weights(&self) -> Vec<Vec<i64>> {
        let mut seen = vec![self.lambda.clone()];
        let mut i = 0;
        while i < seen.len() {
            let w = seen[i].clone();
            for a in &self.roots {
                let v: Vec<i64> = w.iter().zip(a).map(|(x, y)| x - y).collect();
                if v.iter().all(|x| *x >= 0) && !seen.contains(&v) {
                    seen.push(v);
                }
            }
            i += 1;
        }
        let rho = vec![1i64; self.lambda.len()];
        let key = |w: &Vec<i64>| {
            let diff: Vec<i64> = self.lambda.iter().zip(w).map(|(x, y)| x - y).collect();
            self.ip(&diff, &rho)
        };
        seen.sort_by_cached_key(key);
        seen
    }

    fn dominant(&self, w: &[i64]) -> Vec<i64> {
        let mut w = w.to_vec();
        let c = &self.d.cartan;
        loop {
            let Some(i) = w.iter().position(|x| *x < 0) else { return w };
            let m = w[i];
            for (j, x) in w.iter_mut().enumerate() {
                *x -= m * c[i][j];
            }
        }
    }

    fn lookup(&self, w: &[i64]) -> Option<BigInt> {
        self.mults.get(&self.dominant(w)).cloned()
    }

    fn run(&mut self) {
        let lr: Vec<i64> = self.lambda.iter().map(|x| x + 1).collect();
        let top = self.ip(&lr, &lr);
        for w in self.order.clone() {
            if w == self.lambda {
                self.mults.insert(w, BigInt::one());
                continue;
            }
            let mut s = Rat::zero();
            for a in &self.roots {
                let mut k = 1;
                loop {
                    let v: Vec<i64> = w.iter().zip(a).map(|(x, y)| x + k * y).collect();
                    match self.lookup(&v) {
                        Some(m) => s += Rat::from_integer(m) * self.ip(&v, a),
                        None => break,
                    }
                    k += 1;
                }
            }
            let wr: Vec<i64> = w.iter().map(|x| x + 1).collect();
            let m = ri(2) * s / (&top - self.ip(&wr, &wr));
            debug_assert!(is_integer(&m));
            self.mults.insert(w, m.to_integer());
        }
    }

    fn mult(&self, mu: &[i64]) -> BigInt {
        self.lookup(mu).unwrap_or_default()
    }
}

//! Every closed form against the Weyl dimension formula on a parameter grid.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::rat::to_str;
use crate::arith::{ri, Rat};
use crate::error::{Error, Result};

use super::closed::*;
use super::degree::{degree, degree_corrected, Variety};
use super::descriptor::{evaluate_series, SeriesDescriptor};
use super::oracle::{
    catalogue_datum, degree_from_hilbert, exceptional_values, magic_values, series_datum, weyl_of_markers, Family, EXCEPTIONAL_MARKERS,
    SEVERI_MARKERS, SUBEXCEPTIONAL_MARKERS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Validated,
    Mismatch,
    OracleUnavailable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub formula: String,
    pub params: BTreeMap<String, String>,
    pub printed_value: String,
    pub oracle_value: Option<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuspectEntry {
    pub formula: String,
    /// Restricts the entry to grid points with these parameter values.
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    #[serde(default)]
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuspectList {
    pub suspect: Vec<SuspectEntry>,
}

impl SuspectList {
    pub fn from_json(s: &str) -> Result<SuspectList> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// The list shipped with the crate.
    pub fn bundled() -> SuspectList {
        Self::from_json(include_str!("../../data/known_suspect.json")).expect("bundled suspect list")
    }

    pub fn covers(&self, e: &Entry) -> bool {
        self.suspect.iter().any(|s| s.formula == e.formula && s.params.iter().all(|(k, v)| e.params.get(k) == Some(v)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: Suite,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn count(&self, s: Status) -> usize {
        self.entries.iter().filter(|e| e.status == s).count()
    }

    /// Mismatches not covered by the suspect list.
    pub fn unexpected<'a>(&'a self, suspects: &SuspectList) -> Vec<&'a Entry> {
        self.entries.iter().filter(|e| e.status == Status::Mismatch && !suspects.covers(e)).collect()
    }

    pub fn of(&self, formula: &str) -> impl Iterator<Item = &Entry> {
        let f = formula.to_string();
        self.entries.iter().filter(move |e| e.formula == f)
    }
}

type Eval = Box<dyn Fn() -> Result<Rat> + Send + Sync>;

struct Task {
    formula: String,
    params: BTreeMap<String, String>,
    printed: Eval,
    oracle: Eval,
}

fn task(formula: &str, params: &[(&str, String)], printed: Eval, oracle: Eval) -> Task {
    Task { formula: formula.into(), params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(), printed, oracle }
}

fn big(x: num_bigint::BigInt) -> Rat {
    Rat::from_integer(x)
}

fn weyl(family: Family, a: Rat, markers: &'static [&'static str], exps: Vec<u64>) -> Eval {
    Box::new(move || Ok(big(weyl_of_markers(&*series_datum(family, &a)?, markers, &exps)?)))
}

const EXC: &[&str] = EXCEPTIONAL_MARKERS;
const SUB: &[&str] = SUBEXCEPTIONAL_MARKERS;
const SEV: &[&str] = SEVERI_MARKERS;

/// Nonnegative integer vectors of length `n` with sum at most `total`.
pub fn exponent_grid(n: usize, total: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vec<u64>| (0..=total).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out.retain(|v| v.iter().sum::<u64>() <= total);
    out
}

fn s(x: &Rat) -> String {
    to_str(x)
}

fn adjoint_tasks(ks: std::ops::RangeInclusive<u64>) -> Vec<Task> {
    let mut t = vec![];
    for a in exceptional_values() {
        for k in ks.clone() {
            let p = [("k", k.to_string()), ("a", s(&a))];
            let aa = a.clone();
            t.push(task(
                "adjoint_cartan_power",
                &p,
                Box::new(move || Ok(adjoint_cartan_power(k, &aa)?.value)),
                weyl(Family::Exceptional, a.clone(), &["g"], vec![k]),
            ));
        }
    }
    t
}

fn tasks(suite: Suite) -> Vec<Task> {
    let mut t = vec![];
    let full = suite == Suite::Full;
    let kmax = if full { 4 } else { 2 };
    t.extend(adjoint_tasks(1..=kmax));
    for a in magic_values() {
        for e in exponent_grid(2, if full { 3 } else { 2 }) {
            let p = [("p", e[0].to_string()), ("pstar", e[1].to_string()), ("a", s(&a))];
            let aa = a.clone();
            let (x, y) = (e[0], e[1]);
            t.push(task(
                "severi_closed",
                &p,
                Box::new(move || Ok(severi_dim(x, y, &aa)?.value)),
                weyl(Family::Severi, a.clone(), SEV, e.clone()),
            ));
        }
    }
    if !full {
        return t;
    }
    for a in exceptional_values() {
        for k in 1..=4u64 {
            let p = [("k", k.to_string()), ("a", s(&a))];
            let l = lambda_of_a(&a);
            let l2 = l.clone();
            t.push(task(
                "deligne_yk",
                &p,
                Box::new(move || deligne_yk(k, l.as_ref().map_err(Clone::clone)?)),
                weyl(Family::Exceptional, a.clone(), &["g"], vec![k]),
            ));
            t.push(task(
                "deligne_yk_corrected",
                &p,
                Box::new(move || deligne_yk_corrected(k, l2.as_ref().map_err(Clone::clone)?)),
                weyl(Family::Exceptional, a.clone(), &["g"], vec![k]),
            ));
        }
    }
    for a in [ri(0), ri(2), ri(4), ri(8)] {
        for k in 1..=3u64 {
            let aa = a.clone();
            t.push(task(
                "qdim_adjoint",
                &[("k", k.to_string()), ("a", s(&a)), ("q", "1".into())],
                Box::new(move || Ok(qdim_adjoint_cartan_power(k, &aa)?.eval_at_one())),
                weyl(Family::Exceptional, a.clone(), &["g"], vec![k]),
            ));
        }
    }
    let exc = SeriesDescriptor::exceptional();
    for a in [ri(0), ri(1), ri(2), ri(4), ri(8)] {
        for e in exponent_grid(4, 2) {
            let p = [("p", e[0].to_string()), ("q", e[1].to_string()), ("r", e[2].to_string()), ("s", e[3].to_string()), ("a", s(&a))];
            let (d, aa, ee) = (exc.clone(), a.clone(), e.clone());
            t.push(task(
                "exceptional_series",
                &p,
                Box::new(move || Ok(evaluate_series(&d, &ee, &aa)?.value)),
                weyl(Family::Exceptional, a.clone(), EXC, e),
            ));
        }
    }
    let hilbert: [(&str, Option<Hilbert>, usize); 4] = [
        ("hilbert_x2", Some(Hilbert::X2), 1),
        ("hilbert_x3", Some(Hilbert::X3), 2),
        ("hilbert_y2star", Some(Hilbert::Y2Star), 3),
        ("hilbert_y2star_corrected", None, 3),
    ];
    for (id, which, slot) in hilbert {
        for a in magic_values() {
            for k in 1..=3u64 {
                let aa = a.clone();
                let mut e = vec![0; 4];
                e[slot] = k;
                let f: Eval = match which {
                    Some(w) => Box::new(move || Ok(hilbert_function(w, k, &aa)?.value)),
                    None => Box::new(move || Ok(hilbert_y2star_corrected(k, &aa)?.value)),
                };
                t.push(task(id, &[("k", k.to_string()), ("a", s(&a))], f, weyl(Family::Exceptional, a.clone(), EXC, e)));
            }
        }
    }
    let sub = SeriesDescriptor::subexceptional();
    for a in magic_values() {
        for e in exponent_grid(3, 2) {
            let p = [("p", e[0].to_string()), ("q", e[1].to_string()), ("r", e[2].to_string()), ("a", s(&a))];
            let (d, aa, ee) = (sub.clone(), a.clone(), e.clone());
            t.push(task(
                "subexceptional_series",
                &p,
                Box::new(move || Ok(evaluate_series(&d, &ee, &aa)?.value)),
                weyl(Family::Subexceptional, a.clone(), SUB, e),
            ));
        }
    }
    let powers: [(&str, Option<SubexModule>, usize); 4] = [
        ("subexc_g_power", Some(SubexModule::G), 0),
        ("subexc_v_power", Some(SubexModule::V), 1),
        ("subexc_v_power_corrected", None, 1),
        ("subexc_v2_power", Some(SubexModule::V2), 2),
    ];
    for (id, which, slot) in powers {
        for a in magic_values() {
            for k in 1..=3u64 {
                let aa = a.clone();
                let mut e = vec![0; 3];
                e[slot] = k;
                let f: Eval = match which {
                    Some(w) => Box::new(move || Ok(subexceptional_cartan_power(w, k, &aa)?.value)),
                    None => Box::new(move || Ok(subexceptional_v_power_corrected(k, &aa)?.value)),
                };
                t.push(task(id, &[("k", k.to_string()), ("a", s(&a))], f, weyl(Family::Subexceptional, a.clone(), SUB, e)));
            }
        }
    }
    let sev = SeriesDescriptor::severi();
    for a in magic_values() {
        for e in exponent_grid(2, 3) {
            let p = [("p", e[0].to_string()), ("pstar", e[1].to_string()), ("a", s(&a))];
            let (d, aa, ee) = (sev.clone(), a.clone(), e.clone());
            t.push(task(
                "severi_series",
                &p,
                Box::new(move || Ok(evaluate_series(&d, &ee, &aa)?.value)),
                weyl(Family::Severi, a.clone(), SEV, e),
            ));
        }
    }
    let so = SeriesDescriptor::so_family();
    for tt in 1..=6u64 {
        let name = if tt == 1 { "sl4".to_string() } else { format!("so{}", 2 * tt + 4) };
        for k in 1..=3u64 {
            let p = [("k", k.to_string()), ("t", tt.to_string())];
            let n1 = name.clone();
            let oracle: Eval = Box::new(move || Ok(big(weyl_of_markers(&*catalogue_datum(&n1)?, &["g"], &[k])?)));
            t.push(task("so_family_closed", &p, Box::new(move || Ok(so_family_dim(k, tt)?.value)), oracle));
            let n2 = name.clone();
            let d = so.clone();
            let oracle: Eval = Box::new(move || Ok(big(weyl_of_markers(&*catalogue_datum(&n2)?, &["g"], &[k])?)));
            t.push(task("so_family_series", &p, Box::new(move || Ok(evaluate_series(&d, &[k], &ri(2 * tt as i64))?.value)), oracle));
        }
    }
    for (r, a) in [(2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (4, 2), (2, 4), (3, 4), (4, 4), (3, 8)] {
        for k in 1..=3u64 {
            let p = [("k", k.to_string()), ("r", r.to_string()), ("a", a.to_string())];
            let oracle: Eval = match a {
                1 => Box::new(move || Ok(big(weyl_of_markers(&*catalogue_datum(&format!("sp{}", 2 * r))?, &["g"], &[k])?))),
                2 => Box::new(move || Ok(big(weyl_of_markers(&*catalogue_datum(&format!("sl{}", 2 * r))?, &["g"], &[k])?))),
                4 => Box::new(move || Ok(big(weyl_of_markers(&*catalogue_datum(&format!("so{}", 4 * r))?, &["g"], &[k])?))),
                _ => weyl(Family::Subexceptional, ri(8), SUB, vec![k, 0, 0]),
            };
            t.push(task("thirdrow_closed", &p, Box::new(move || Ok(thirdrow_dim(k, r, &ri(a as i64))?.value)), oracle));
        }
    }
    for v in Variety::ALL {
        for a in [ri(2), ri(4), ri(8)] {
            let p = [("a", s(&a))];
            let aa = a.clone();
            t.push(task(&format!("degree_{}", v.name()), &p, Box::new(move || degree(v, &aa)), degree_oracle(v, a.clone())));
            if degree_corrected(v, &a).ok().flatten().is_some() {
                let aa = a.clone();
                t.push(task(
                    &format!("degree_{}_corrected", v.name()),
                    &p,
                    Box::new(move || degree_corrected(v, &aa)?.ok_or_else(|| Error::Invalid("no corrected form".into()))),
                    degree_oracle(v, a.clone()),
                ));
            }
        }
    }
    t
}

fn degree_oracle(v: Variety, a: Rat) -> Eval {
    Box::new(move || degree_from_hilbert(v, &a))
}

fn render(r: &Result<Rat>) -> String {
    match r {
        Ok(v) => s(v),
        Err(Error::Pole(m)) => format!("pole: {m}"),
        Err(e) => format!("error: {e}"),
    }
}

pub fn run(suite: Suite, timings: bool) -> Report {
    let entries = tasks(suite)
        .into_par_iter()
        .map(|t| {
            let start = Instant::now();
            let printed = (t.printed)();
            let oracle = (t.oracle)();
            let status = match (&printed, &oracle) {
                (_, Err(_)) => Status::OracleUnavailable,
                (Ok(p), Ok(o)) if p == o => Status::Validated,
                _ => Status::Mismatch,
            };
            Entry {
                formula: t.formula,
                params: t.params,
                printed_value: render(&printed),
                oracle_value: oracle.ok().map(|o| s(&o)),
                status,
                elapsed_ms: timings.then(|| start.elapsed().as_millis() as u64),
            }
        })
        .collect();
    Report { suite, entries }
}

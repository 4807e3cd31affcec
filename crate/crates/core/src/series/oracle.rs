//! Weyl-formula reference values for the series, from root data extracted
//! out of the constructed algebras (and the catalogue where no construction
//! exists).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{rat, ri, Rat};
use crate::composition::AlgebraTag;
use crate::error::{Error, Result};
use crate::magic::build_magic_algebra;
use crate::roots::{builtin_datum, magic_root_datum, so8_extraction, RootDatum};

use super::degree::{leading_coefficient, Variety};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Exceptional,
    Subexceptional,
    Severi,
}

impl Family {
    fn column(self) -> AlgebraTag {
        match self {
            Family::Exceptional => AlgebraTag::O,
            Family::Subexceptional => AlgebraTag::H,
            Family::Severi => AlgebraTag::C,
        }
    }
}

/// The values of `a` at which the exceptional series has a member.
pub fn exceptional_values() -> Vec<Rat> {
    vec![rat(-4, 3), ri(-1), rat(-2, 3), ri(0), ri(1), ri(2), ri(4), ri(8)]
}

pub fn magic_values() -> Vec<Rat> {
    vec![ri(1), ri(2), ri(4), ri(8)]
}

pub const EXCEPTIONAL_MARKERS: &[&str] = &["g", "X2", "X3", "Y2*"];
pub const SUBEXCEPTIONAL_MARKERS: &[&str] = &["g", "V", "V2"];
pub const SEVERI_MARKERS: &[&str] = &["W", "W*"];

fn cache() -> &'static Mutex<HashMap<String, Arc<RootDatum>>> {
    static C: OnceLock<Mutex<HashMap<String, Arc<RootDatum>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(key: String, build: impl FnOnce() -> Result<RootDatum>) -> Result<Arc<RootDatum>> {
    if let Some(d) = cache().lock().expect("cache lock").get(&key) {
        return Ok(d.clone());
    }
    let d = Arc::new(build()?);
    Ok(cache().lock().expect("cache lock").entry(key).or_insert(d).clone())
}

/// Root datum of the member of `family` at `a`, with its marker weights.
pub fn series_datum(family: Family, a: &Rat) -> Result<Arc<RootDatum>> {
    let key = format!("{family:?}:{a}");
    let unavailable = || Error::UnknownDatum(format!("{family:?} at a = {a}"));
    if family == Family::Exceptional && a.is_zero() {
        return cached(key, || Ok(so8_extraction()?.datum));
    }
    if family == Family::Exceptional && *a < Rat::zero() {
        let name = match rat::to_str(a).as_str() {
            "-4/3" => "sl2",
            "-1" => "sl3",
            "-2/3" => "g2",
            _ => return Err(unavailable()),
        };
        return cached(key, || builtin_datum(name));
    }
    let tag = rat::to_i64(a).and_then(|n| AlgebraTag::from_dim(n as usize)).ok_or_else(unavailable)?;
    cached(key, || magic_root_datum(&build_magic_algebra(tag, family.column())))
}

/// A catalogue datum by name, cached.
pub fn catalogue_datum(name: &str) -> Result<Arc<RootDatum>> {
    cached(format!("builtin:{name}"), || builtin_datum(name))
}

/// `Σ e_i · marker_i`.
pub fn marker_combination(d: &RootDatum, markers: &[&str], exponents: &[u64]) -> Result<Vec<Rat>> {
    let mut w = vec![Rat::zero(); d.rank];
    for (m, e) in markers.iter().zip(exponents) {
        if *e == 0 {
            continue;
        }
        let v = d.markers.get(*m).ok_or_else(|| Error::UnknownDatum(format!("{} has no marker {m}", d.name)))?;
        for (x, y) in w.iter_mut().zip(v) {
            *x += ri(*e as i64) * y;
        }
    }
    Ok(w)
}

pub fn weyl_of_markers(d: &RootDatum, markers: &[&str], exponents: &[u64]) -> Result<BigInt> {
    d.weyl_dim(&marker_combination(d, markers, exponents)?)
}

/// `dim! ×` the leading coefficient of the Weyl-formula Hilbert function of
/// the variety, i.e. its degree.
pub fn degree_from_hilbert(v: Variety, a: &Rat) -> Result<Rat> {
    let (family, markers, slot): (Family, &[&str], usize) = match v {
        Variety::Ad => (Family::Exceptional, EXCEPTIONAL_MARKERS, 0),
        Variety::Fplanes => (Family::Exceptional, EXCEPTIONAL_MARKERS, 1),
        Variety::Flines => (Family::Exceptional, EXCEPTIONAL_MARKERS, 2),
        Variety::Fpoints => (Family::Exceptional, EXCEPTIONAL_MARKERS, 3),
        Variety::SubexcAd => (Family::Subexceptional, SUBEXCEPTIONAL_MARKERS, 0),
        Variety::SubexcX => (Family::Subexceptional, SUBEXCEPTIONAL_MARKERS, 1),
        Variety::SubexcFlines => (Family::Subexceptional, SUBEXCEPTIONAL_MARKERS, 2),
    };
    let d = series_datum(family, a)?;
    let dim =
        rat::to_i64(&v.dimension(a)).filter(|n| *n >= 0).ok_or_else(|| Error::Invalid(format!("variety dimension at a = {a}")))? as u64;
    let lc = leading_coefficient(
        |k| {
            let mut e = vec![0; markers.len()];
            e[slot] = k;
            Ok(Rat::from_integer(weyl_of_markers(&d, markers, &e)?))
        },
        dim,
    )?;
    let fact: BigInt = (1..=dim).fold(BigInt::from(1), |acc, i| acc * i);
    Ok(lc * Rat::from_integer(fact))
}

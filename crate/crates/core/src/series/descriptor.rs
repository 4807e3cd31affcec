//! Series given by the pairings of their marker weights with the positive
//! roots, and the interval evaluator that turns them into dimensions.

use serde::{Deserialize, Serialize};

use crate::arith::rat::serde_rat;
use crate::arith::{ri, LinearFactorProduct, Rat};
use crate::error::{Error, Result};

use super::{form, SeriesResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowClass {
    /// One root with `(ρ, α) = u + a·v`.
    Unit,
    /// `a` roots whose `ρ`-values are `u + a·v` shifted by
    /// `[1 − a/2, a/2 − 1] ∪ {0}`.
    Afold,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub pairings: Vec<i64>,
    #[serde(with = "serde_rat")]
    pub u: Rat,
    #[serde(with = "serde_rat")]
    pub v: Rat,
    pub class: RowClass,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesDescriptor {
    pub name: String,
    pub symbols: Vec<String>,
    pub markers: Vec<String>,
    pub rows: Vec<SeriesRow>,
}

impl SeriesDescriptor {
    pub fn from_json(s: &str) -> Result<SeriesDescriptor> {
        let d: SeriesDescriptor = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if d.rows.iter().any(|r| r.pairings.len() != d.symbols.len()) {
            return Err(Error::Parse(format!("{}: row width differs from {} symbols", d.name, d.symbols.len())));
        }
        Ok(d)
    }

    pub fn exceptional() -> SeriesDescriptor {
        Self::from_json(include_str!("../../data/exceptional.json")).expect("bundled descriptor")
    }

    pub fn subexceptional() -> SeriesDescriptor {
        Self::from_json(include_str!("../../data/subexceptional.json")).expect("bundled descriptor")
    }

    pub fn severi() -> SeriesDescriptor {
        Self::from_json(include_str!("../../data/severi.json")).expect("bundled descriptor")
    }

    /// `so(2t+4)` with its adjoint powers; the parameter is `a = 2t`.
    pub fn so_family() -> SeriesDescriptor {
        Self::from_json(include_str!("../../data/so_family.json")).expect("bundled descriptor")
    }

    pub fn by_name(name: &str) -> Result<SeriesDescriptor> {
        match name {
            "exceptional" => Ok(Self::exceptional()),
            "subexceptional" => Ok(Self::subexceptional()),
            "severi" => Ok(Self::severi()),
            "so-family" => Ok(Self::so_family()),
            _ => Err(Error::Invalid(format!("no descriptor named {name}"))),
        }
    }

    pub fn count(&self, class: RowClass) -> usize {
        self.rows.iter().filter(|r| r.class == class).count()
    }

    /// The linear factors in `a` for fixed exponents. Every row contributes
    /// `(x + u + av)/(u + av)`; a-fold rows add `x` factors above and below.
    pub fn factored(&self, exponents: &[u64]) -> Result<LinearFactorProduct> {
        if exponents.len() != self.symbols.len() {
            return Err(Error::Dimension { expected: self.symbols.len(), got: exponents.len() });
        }
        let mut p = LinearFactorProduct::default();
        for row in &self.rows {
            let x: i64 = row.pairings.iter().zip(exponents).map(|(c, e)| c * *e as i64).sum();
            if x < 0 {
                return Err(Error::NotDominant(format!("pairing {x} with a positive root")));
            }
            p.push(form(&row.u + ri(x), row.v.clone()), 1);
            p.push(form(row.u.clone(), row.v.clone()), -1);
            if row.class == RowClass::Afold {
                let half = Rat::new(1.into(), 2.into());
                for i in 1..=x {
                    p.push(form(&row.u - ri(1) + ri(i), &row.v + &half), 1);
                    p.push(form(&row.u + ri(i), &row.v - &half), -1);
                }
            }
        }
        Ok(p)
    }
}

/// Dimension of the module with the given marker exponents at parameter `a`.
pub fn evaluate_series(d: &SeriesDescriptor, exponents: &[u64], a: &Rat) -> Result<SeriesResult> {
    SeriesResult::at(d.factored(exponents)?, a)
}

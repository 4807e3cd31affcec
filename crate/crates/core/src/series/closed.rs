//! Closed forms, evaluated exactly as written, and corrected variants where
//! the written form disagrees with the Weyl dimension formula.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gauss_binomial, rat, ri, LinearFactorProduct, LinearForm, QPoly, Rat};
use crate::error::{Error, Result};

use super::{form, push_binomial, push_inverse_binomial, SeriesResult};

/// Product builder in the single symbol `a`.
#[derive(Default)]
struct F(LinearFactorProduct);

impl F {
    /// `(c + ca·a)^{±1}`.
    fn lin(mut self, c: Rat, ca: Rat, e: i32) -> Self {
        self.0.push(form(c, ca), e);
        self
    }
    /// `C(m·k + base, m·k)` above (`up`) or below.
    fn binom(mut self, base: LinearForm, mk: u64, up: bool) -> Self {
        if up {
            push_binomial(&mut self.0, &base, mk);
        } else {
            push_inverse_binomial(&mut self.0, &base, mk);
        }
        self
    }
    fn up(self, c: Rat, ca: Rat, mk: u64) -> Self {
        self.binom(form(c, ca), mk, true)
    }
    fn down(self, c: Rat, ca: Rat, mk: u64) -> Self {
        self.binom(form(c, ca), mk, false)
    }
    fn at(self, a: &Rat) -> Result<SeriesResult> {
        SeriesResult::at(self.0, a)
    }
}

fn h(n: i64) -> Rat {
    rat(n, 2)
}

fn kr(k: u64) -> Rat {
    ri(k as i64)
}

/// `λ = −2/(a+2)`.
pub fn lambda_of_a(a: &Rat) -> Result<Rat> {
    let d = a + ri(2);
    if d.is_zero() {
        return Err(Error::Pole("a = -2".into()));
    }
    Ok(ri(-2) / d)
}

/// Dimension of the `k`-th Cartan power of the adjoint module along the
/// exceptional series.
pub fn adjoint_cartan_power(k: u64, a: &Rat) -> Result<SeriesResult> {
    F::default()
        .lin(ri(5) + ri(2) * kr(k), ri(3), 1)
        .lin(ri(5), ri(3), -1)
        .up(ri(3), ri(2), k)
        .up(ri(3), h(5), k)
        .up(ri(4), ri(3), k)
        .down(ri(1), h(1), k)
        .down(ri(1), ri(1), k)
        .at(a)
}

/// The product in Deligne's parameter, as written.
pub fn deligne_yk(k: u64, lambda: &Rat) -> Result<Rat> {
    let l = lambda;
    let mut den = l + ri(6);
    for j in 1..=k {
        den *= l * ri(j as i64);
    }
    if den.is_zero() {
        return Err(Error::Pole(format!("lambda = {l}")));
    }
    let mut v = (ri(2 * k as i64 - 1) * l - ri(6)) / den;
    for j in 1..=k as i64 {
        let d = (ri(j) * l - ri(1)) * (ri(j - 1) * l - ri(2));
        if d.is_zero() {
            return Err(Error::Pole(format!("lambda = {l}, j = {j}")));
        }
        v *= (ri(j - 1) * l - ri(4)) * (ri(j - 2) * l - ri(5)) * (ri(j - 2) * l - ri(6)) / d;
    }
    Ok(v)
}

/// The written product has the wrong overall sign for `λ < 0`; this is its
/// negation, which agrees with [`adjoint_cartan_power`] at `λ = −2/(a+2)`.
pub fn deligne_yk_corrected(k: u64, lambda: &Rat) -> Result<Rat> {
    Ok(-deligne_yk(k, lambda)?)
}

fn half_integral_to_usize(x: &Rat, what: &str) -> Result<usize> {
    rat::to_i64(x).filter(|v| *v >= 0).map(|v| v as usize).ok_or_else(|| Error::NonIntegralExponent(format!("{what} = {x}")))
}

/// q-analogue of [`adjoint_cartan_power`]; needs every exponent integral,
/// so `a` must be an even nonnegative integer.
pub fn qdim_adjoint_cartan_power(k: u64, a: &Rat) -> Result<QPoly> {
    let ku = k as usize;
    let e = |c: i64, ca: Rat, what: &str| half_integral_to_usize(&(ri(c) + ca * a), what);
    let top = e(5 + 2 * k as i64, ri(3), "3a+2k+5")?;
    let bottom = e(5, ri(3), "3a+5")?;
    let num_l = [e(3, ri(2), "2a+3")?, e(3, h(5), "5a/2+3")?, e(4, ri(3), "3a+4")?];
    let den_l = [e(1, h(1), "a/2+1")?, e(1, ri(1), "a+1")?];
    let mut num = QPoly::one_minus_q_pow(top);
    for l in num_l {
        num = num.mul(&gauss_binomial(l, ku));
    }
    let mut den = QPoly::one_minus_q_pow(bottom);
    for l in den_l {
        den = den.mul(&gauss_binomial(l, ku));
    }
    num.div_exact(&den).ok_or_else(|| Error::NonIntegerResult("q-dimension is not a polynomial".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Hilbert {
    X2,
    X3,
    Y2Star,
}

/// Hilbert functions of the closed orbits in `P X2`, `P X3`, `P Y2*`, as
/// written.
pub fn hilbert_function(which: Hilbert, k: u64, a: &Rat) -> Result<SeriesResult> {
    let k2 = 2 * k;
    let k3 = 3 * k;
    let kk = kr(k);
    match which {
        Hilbert::X2 => F::default()
            .lin(ri(1) + &kk, ri(1), 1)
            .lin(ri(1), ri(1), -1)
            .lin(ri(2) + &kk, ri(1), 1)
            .lin(ri(2), ri(1), -1)
            .lin(ri(3) + ri(2) * &kk, ri(2), 1)
            .lin(ri(3), ri(2), -1)
            .lin(ri(4) + ri(3) * &kk, ri(3), 1)
            .lin(ri(4), ri(3), -1)
            .lin(ri(5) + ri(3) * &kk, ri(3), 1)
            .lin(ri(5), ri(3), -1)
            .up(ri(1), h(3), k)
            .up(ri(2), h(3), k)
            .up(ri(1), ri(2), k)
            .up(ri(2), ri(2), k)
            .up(ri(3), h(5), k2)
            .up(ri(3), ri(3), k2)
            .down(ri(1), ri(0), k)
            .down(ri(0), h(1), k)
            .down(ri(1), h(1), k)
            .down(ri(2), ri(1), k2)
            .down(ri(2), h(3), k2)
            .at(a),
        Hilbert::X3 => F::default()
            .lin(ri(1) + ri(2) * &kk, h(3), 1)
            .lin(ri(1), h(3), -1)
            .lin(ri(2) + ri(2) * &kk, h(3), 1)
            .lin(ri(2), h(3), -1)
            .lin(ri(3) + ri(2) * &kk, h(3), 1)
            .lin(ri(3), h(3), -1)
            .lin(ri(3) + ri(4) * &kk, ri(3), 1)
            .lin(ri(3), ri(3), -1)
            .lin(ri(4) + ri(4) * &kk, ri(3), 1)
            .lin(ri(4), ri(3), -1)
            .lin(ri(5) + ri(4) * &kk, ri(3), 1)
            .lin(ri(5), ri(3), -1)
            .up(ri(0), ri(1), k)
            .up(ri(1), ri(1), k)
            .up(ri(2), ri(1), k)
            .up(ri(-1), h(3), k)
            .up(ri(0), h(3), k)
            .up(ri(1), h(3), k)
            .up(ri(1), ri(2), k2)
            .up(ri(2), ri(2), k2)
            .up(ri(3), ri(2), k2)
            .up(ri(3), h(5), k3)
            .up(ri(2), ri(3), k3)
            .down(ri(1), ri(0), k)
            .down(ri(2), ri(0), k)
            .down(ri(-1), h(1), k)
            .down(ri(0), h(1), k)
            .down(ri(1), h(1), k)
            .down(ri(0), ri(1), k2)
            .down(ri(1), ri(1), k2)
            .down(ri(2), ri(1), k2)
            .down(ri(3), h(3), k3)
            .down(ri(2), ri(2), k3)
            .at(a),
        Hilbert::Y2Star => y2star(k, a, false),
    }
}

fn y2star(k: u64, a: &Rat, corrected: bool) -> Result<SeriesResult> {
    let k2 = 2 * k;
    let mut f = F::default()
        .lin(ri(3) + ri(2) * kr(k), h(5), 1)
        .lin(ri(3), h(5), -1)
        .up(ri(0), ri(2), k)
        .up(ri(1), ri(2), k)
        .up(ri(3), ri(2), k)
        .up(ri(2), h(5), k)
        .up(ri(5), ri(3), k2)
        .down(ri(-1), h(1), k)
        .down(ri(1), h(1), k)
        .down(ri(2), h(1), k)
        .down(ri(1), ri(1), k)
        .down(ri(3), ri(1), k)
        .down(ri(0), ri(2), k2);
    if corrected {
        f = f.up(ri(-1), h(3), k).up(ri(1), h(3), k);
    }
    f.at(a)
}

/// The `Y2*` Hilbert function with the two factors `C(k+3a/2−1, k)` and
/// `C(k+3a/2+1, k)` that the written form lacks.
pub fn hilbert_y2star_corrected(k: u64, a: &Rat) -> Result<SeriesResult> {
    y2star(k, a, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubexModule {
    G,
    V,
    V2,
}

/// Cartan powers of `g`, `V`, `V2` along the sub-exceptional series, as
/// written.
pub fn subexceptional_cartan_power(which: SubexModule, k: u64, a: &Rat) -> Result<SeriesResult> {
    let kk = kr(k);
    match which {
        SubexModule::G => F::default()
            .lin(ri(1) + ri(2) * &kk, ri(2), 1)
            .lin(ri(1), ri(2), -1)
            .up(ri(-1), h(3), k)
            .up(ri(1), h(3), k)
            .up(ri(0), ri(2), k)
            .down(ri(-1), h(1), k)
            .down(ri(1), h(1), k)
            .at(a),
        SubexModule::V => F::default()
            .lin(ri(2) + ri(2) * &kk, ri(2), 1)
            .lin(ri(1), ri(1), -1)
            .up(ri(1), ri(2), k)
            .up(ri(1), h(3), k)
            .down(ri(1), h(1), k)
            .at(a),
        SubexModule::V2 => F::default()
            .lin(ri(2) + ri(4) * &kk, ri(3), 1)
            .lin(ri(1) + &kk, ri(0), -1)
            .lin(ri(2), ri(3), -1)
            .up(ri(1), ri(1), k)
            .up(ri(0), h(3), k)
            .up(ri(1), ri(2), 2 * k)
            .up(ri(-1), h(3), k)
            .up(ri(0), ri(1), k)
            .down(ri(0), h(1), k)
            .down(ri(0), ri(1), 2 * k)
            .down(ri(-1), h(1), k)
            .at(a),
    }
}

/// `V^(k)` with prefactor `(k+a+1)(2k+a+2)/((a+1)(a+2))` in place of the
/// written `(2a+2k+2)/(a+1)`.
pub fn subexceptional_v_power_corrected(k: u64, a: &Rat) -> Result<SeriesResult> {
    let kk = kr(k);
    F::default()
        .lin(ri(1) + &kk, ri(1), 1)
        .lin(ri(2) + ri(2) * &kk, ri(1), 1)
        .lin(ri(1), ri(1), -1)
        .lin(ri(2), ri(1), -1)
        .up(ri(1), ri(2), k)
        .up(ri(1), h(3), k)
        .down(ri(1), h(1), k)
        .at(a)
}

/// Modules with highest weight `p·ω(W) + p*·ω(W*)` along the Severi series.
pub fn severi_dim(p: u64, pstar: u64, a: &Rat) -> Result<SeriesResult> {
    let (pp, ps) = (kr(p), kr(pstar));
    F::default()
        .lin(ri(2) * &pp, ri(1), 1)
        .lin(&pp + &ps, ri(1), 1)
        .lin(ri(2) * &ps, ri(1), 1)
        .lin(ri(0), ri(1), -3)
        .up(ri(-1), ri(1), p)
        .up(ri(-1), h(3), p + pstar)
        .up(ri(-1), ri(1), pstar)
        .down(ri(0), h(1), p + pstar)
        .at(a)
}

/// Adjoint Cartan powers of `so(2t+4)`.
pub fn so_family_dim(k: u64, t: u64) -> Result<SeriesResult> {
    if t == 0 {
        return Err(Error::Invalid("t must be at least 1".into()));
    }
    let (kk, tt) = (kr(k), kr(t));
    let mut p = LinearFactorProduct::default();
    let c = |x: Rat| LinearForm::constant(x);
    p.push(c(ri(2) * &kk + ri(2) * &tt + ri(1)), 1);
    p.push(c(&kk + &tt), 1);
    p.push(c(&kk + &tt + ri(1)), 1);
    p.push(c(ri(2) * &tt + ri(1)), -1);
    p.push(c(tt.clone()), -1);
    p.push(c(&tt + ri(1)), -1);
    p.push(c(&kk + ri(1)), -1);
    push_binomial(&mut p, &c(ri(2) * &tt - ri(1)), k);
    push_binomial(&mut p, &c(ri(2) * &tt), k);
    SeriesResult::at(p, &Rat::zero())
}

/// Adjoint Cartan powers along the generalized third row `g_r(A, H)`.
pub fn thirdrow_dim(k: u64, r: u64, a: &Rat) -> Result<SeriesResult> {
    if r < 2 {
        return Err(Error::Invalid("r must be at least 2".into()));
    }
    let rr = ri(r as i64);
    let one = Rat::one();
    F::default()
        .lin(ri(2 * k as i64 + 1), &rr - &one, 1)
        .lin(ri(1), &rr - &one, -1)
        .up(ri(-1), &rr / ri(2), k)
        .up(ri(0), &rr - &one, k)
        .up(ri(0), (&rr - &one) / ri(2), k)
        .up(ri(1), &rr - rat(3, 2), k)
        .down(ri(-1), h(1), k)
        .down(ri(1), &rr / ri(2) - &one, k)
        .down(ri(0), (&rr - &one) / ri(2), k)
        .at(a)
}

/// An so8 weight with labels `o` extends to `g(A,O)` exactly when
/// `o1+o3`, `o1+o4`, `o3+o4` are even.
pub fn admissible_weight(o: [i64; 4]) -> bool {
    [(0, 2), (0, 3), (2, 3)].iter().all(|&(i, j)| (o[i] + o[j]).rem_euclid(2) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        assert_eq!(adjoint_cartan_power(1, &ri(8)).unwrap().value, ri(248));
        assert_eq!(adjoint_cartan_power(2, &ri(8)).unwrap().value, ri(27000));
        assert_eq!(adjoint_cartan_power(2, &rat(-2, 3)).unwrap().value, ri(77));
        assert_eq!(adjoint_cartan_power(1, &rat(-2, 3)).unwrap().value, ri(14));
        assert_eq!(subexceptional_cartan_power(SubexModule::G, 1, &ri(8)).unwrap().value, ri(133));
        assert_eq!(severi_dim(1, 0, &ri(8)).unwrap().value, ri(27));
        assert_eq!(severi_dim(1, 1, &ri(8)).unwrap().value, ri(650));
        assert_eq!(so_family_dim(1, 2).unwrap().value, ri(28));
    }

    #[test]
    fn written_deligne_product_has_the_opposite_sign() {
        let l = lambda_of_a(&ri(8)).unwrap();
        assert_eq!(l, rat(-1, 5));
        assert_eq!(deligne_yk(1, &l).unwrap(), ri(-248));
        assert_eq!(deligne_yk_corrected(1, &l).unwrap(), ri(248));
        assert_eq!(lambda_of_a(&ri(0)).unwrap(), ri(-1));
    }

    #[test]
    fn q_dimension_specializes() {
        let p = qdim_adjoint_cartan_power(1, &ri(0)).unwrap();
        assert_eq!(p.eval_at_one(), ri(28));
        assert!(p.is_palindromic() && p.is_nonnegative());
        assert!(matches!(qdim_adjoint_cartan_power(1, &ri(1)), Err(Error::NonIntegralExponent(_))));
    }

    #[test]
    fn parity_predicate() {
        assert!(admissible_weight([0, 1, 0, 0]));
        assert!(!admissible_weight([1, 0, 0, 0]));
        assert!(admissible_weight([2, 0, 0, 0]));
        assert!(admissible_weight([1, 0, 1, 1]));
    }

    #[test]
    fn poles_are_reported() {
        assert!(matches!(adjoint_cartan_power(1, &ri(-2)), Err(Error::Pole(_))));
        // 5 + 3a cancels against a numerator factor, so this one is removable
        assert_eq!(adjoint_cartan_power(1, &rat(-5, 3)).unwrap().value, rat(-4, 7));
        assert!(matches!(severi_dim(1, 0, &ri(0)), Err(Error::Pole(_))));
    }
}

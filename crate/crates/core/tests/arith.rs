use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use freudenthal::arith::rat::{parse, to_str};
use freudenthal::arith::{factorial_ratio, gauss_binomial, gen_binomial, rat, ri, FactorialQuotient, Rat};
use freudenthal::linalg::{identity, inverse, mat_mul, mat_vec, nullspace, rank, Mat};

fn any_rat() -> impl Strategy<Value = Rat> {
    (-500i64..500, 1i64..60).prop_map(|(n, d)| rat(n, d))
}

fn small_mat(r: usize, c: usize) -> impl Strategy<Value = Mat> {
    proptest::collection::vec(proptest::collection::vec((-3i64..4).prop_map(ri), c), r)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

proptest! {
    #[test]
    fn rational_strings_round_trip(x in any_rat()) {
        let s = to_str(&x);
        prop_assert_eq!(parse(&s).unwrap(), x.clone());
        prop_assert_eq!(s.contains('/'), !x.is_integer());
    }

    #[test]
    fn integer_binomials_match_factorials(n in 0u64..40, k in 0u64..40) {
        let expect = if k > n { BigInt::zero() } else { factorial(n) / (factorial(k) * factorial(n - k)) };
        prop_assert_eq!(gen_binomial(&ri(n as i64), k), Rat::from_integer(expect));
    }

    #[test]
    fn pascal_rule_for_rational_tops(x in any_rat(), k in 1u64..12) {
        prop_assert_eq!(gen_binomial(&x, k), gen_binomial(&(&x - ri(1)), k) + gen_binomial(&(&x - ri(1)), k - 1));
    }

    #[test]
    fn factorial_ratio_telescopes(y in any_rat(), m in 0i64..10, n in 0i64..10) {
        let (a, b, c) = (&y + ri(m + n), &y + ri(m), y.clone());
        prop_assert_eq!(factorial_ratio(&a, &c).unwrap(), factorial_ratio(&a, &b).unwrap() * factorial_ratio(&b, &c).unwrap());
    }

    #[test]
    fn half_integral_quotients_pair_up(n in 0i64..12, m in 0i64..12) {
        // (n + 1/2)! / (m + 1/2)! against the direct product
        let q = FactorialQuotient::new(ri(1)).times(rat(2 * n + 1, 2)).over(rat(2 * m + 1, 2)).eval().unwrap();
        let (hi, lo, up) = if n >= m { (n, m, true) } else { (m, n, false) };
        let prod = ((lo + 1)..=hi).fold(Rat::one(), |acc, j| acc * rat(2 * j + 1, 2));
        prop_assert_eq!(q, if up { prod } else { Rat::one() / prod });
    }

    #[test]
    fn gauss_binomials_specialize_and_are_palindromic(l in 0usize..9, k in 0usize..9) {
        let g = gauss_binomial(l, k);
        prop_assert_eq!(g.eval_at_one(), gen_binomial(&ri((l + k) as i64), k as u64));
        prop_assert!(g.is_palindromic());
        prop_assert_eq!(g.degree(), Some(l * k));
    }

    #[test]
    fn nullspace_is_annihilated_and_has_complementary_dimension(m in small_mat(4, 6)) {
        let ns = nullspace(&m, 6);
        prop_assert_eq!(ns.len() + rank(&m), 6);
        for v in &ns {
            prop_assert!(mat_vec(&m, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn inverses_are_two_sided(m in small_mat(4, 4)) {
        match inverse(&m) {
            Some(inv) => {
                prop_assert_eq!(mat_mul(&m, &inv), identity(4));
                prop_assert_eq!(mat_mul(&inv, &m), identity(4));
            }
            None => prop_assert!(rank(&m) < 4),
        }
    }
}

#[test]
fn odd_half_factorial_without_partner_is_rejected() {
    assert!(FactorialQuotient::new(ri(1)).times(rat(1, 2)).eval().is_err());
    assert!(factorial_ratio(&rat(1, 2), &ri(0)).is_err());
}

use num_bigint::BigInt;
use proptest::prelude::*;

use freudenthal::arith::ri;
use freudenthal::composition::AlgebraTag;
use freudenthal::magic::build_magic_algebra;
use freudenthal::roots::{builtin_datum, magic_extraction, magic_root_datum, so8_extraction, RootDatum};

const TAGS: [AlgebraTag; 4] = [AlgebraTag::R, AlgebraTag::C, AlgebraTag::H, AlgebraTag::O];

const TYPES: [[&str; 4]; 4] = [["A1", "A2", "C3", "F4"], ["A2", "A2xA2", "A5", "E6"], ["C3", "A5", "D6", "E7"], ["F4", "E6", "E7", "E8"]];

fn fundamental_dims(d: &RootDatum) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = (0..d.rank)
        .map(|i| {
            let l: Vec<i64> = (0..d.rank).map(|j| i64::from(i == j)).collect();
            d.weyl_dim_labels(&l).unwrap()
        })
        .collect();
    v.sort();
    v
}

#[test]
fn extracted_types_fill_the_square() {
    for (i, a) in TAGS.iter().enumerate() {
        for (j, b) in TAGS.iter().enumerate() {
            let g = build_magic_algebra(*a, *b);
            let d = magic_root_datum(&g).unwrap();
            assert_eq!(d.dynkin_type(), TYPES[i][j], "g({a},{b})");
            assert_eq!(d.num_roots() + d.rank, g.dim());
        }
    }
}

#[test]
fn extracted_data_agree_with_the_catalogue() {
    // the fundamental representations are a complete invariant here
    for (a, b, name) in [
        (AlgebraTag::R, AlgebraTag::H, "sp6"),
        (AlgebraTag::H, AlgebraTag::H, "so12"),
        (AlgebraTag::R, AlgebraTag::O, "f4"),
        (AlgebraTag::C, AlgebraTag::O, "e6"),
        (AlgebraTag::H, AlgebraTag::O, "e7"),
        (AlgebraTag::O, AlgebraTag::O, "e8"),
    ] {
        let d = magic_root_datum(&build_magic_algebra(a, b)).unwrap();
        assert_eq!(fundamental_dims(&d), fundamental_dims(&builtin_datum(name).unwrap()), "{name}");
    }
}

#[test]
fn f4_root_lengths() {
    let d = magic_root_datum(&build_magic_algebra(AlgebraTag::R, AlgebraTag::O)).unwrap();
    let long = d.positive_roots.iter().filter(|r| d.length2(r) == ri(2)).count();
    let short = d.positive_roots.iter().filter(|r| d.length2(r) == ri(1)).count();
    assert_eq!((2 * long, 2 * short), (24, 24));
}

#[test]
fn e8_fundamental_dimensions_in_bourbaki_order() {
    let d = builtin_datum("e8").unwrap();
    let dims: Vec<BigInt> = (0..8)
        .map(|i| {
            let l: Vec<i64> = (0..8).map(|j| i64::from(i == j)).collect();
            d.weyl_dim_labels(&l).unwrap()
        })
        .collect();
    let expect: [u64; 8] = [3875, 147250, 6696000, 6899079264, 146325270, 2450240, 30380, 248];
    assert_eq!(dims, expect.map(BigInt::from).to_vec());
}

type MarkerRow<'a> = (AlgebraTag, &'a [(&'a str, [u64; 4])]);

/// Marker dimensions along each row, frozen from the Weyl formula.
#[test]
fn marker_dimensions() {
    let rows: [MarkerRow; 3] = [
        (
            AlgebraTag::O,
            &[
                ("g", [52, 78, 133, 248]),
                ("X2", [1274, 2925, 8645, 30380]),
                ("X3", [19448, 70070, 365750, 2450240]),
                ("Y2*", [324, 650, 1539, 3875]),
            ],
        ),
        (AlgebraTag::H, &[("g", [21, 35, 66, 133]), ("V", [14, 20, 32, 56]), ("V2", [90, 189, 495, 1539])]),
        (AlgebraTag::C, &[("W", [6, 9, 15, 27]), ("W*", [6, 9, 15, 27])]),
    ];
    for (b, markers) in rows {
        for (col, a) in TAGS.iter().enumerate() {
            let d = magic_root_datum(&build_magic_algebra(*a, b)).unwrap();
            for (m, dims) in markers {
                assert_eq!(d.weyl_dim(&d.markers[*m]).unwrap(), BigInt::from(dims[col]), "{m} in g({a},{b})");
            }
        }
    }
}

#[test]
fn so8_labelling_at_a_zero() {
    let d = so8_extraction().unwrap().datum;
    assert_eq!(d.dynkin_type(), "D4");
    let dim = |m: &str| d.weyl_dim(&d.markers[m]).unwrap();
    assert_eq!([dim("g"), dim("X2"), dim("X3"), dim("Y2*")], [28, 350, 840, 35].map(BigInt::from));
}

#[test]
fn extraction_orders_module_weights() {
    let e = magic_extraction(&build_magic_algebra(AlgebraTag::O, AlgebraTag::H)).unwrap();
    assert_eq!(e.datum.dynkin_type(), "E7");
    assert_eq!(e.weights.len(), 133);
}

#[test]
fn so8_multiplicity_check() {
    let d = builtin_datum("so8").unwrap();
    let w = |l: [i64; 4]| d.from_labels(&l.map(ri)).unwrap();
    assert_eq!(d.weight_multiplicity(&w([0, 2, 0, 0]), &w([2, 0, 0, 0])).unwrap(), BigInt::from(2));
    assert_eq!(d.weyl_dim(&w([0, 1, 0, 0])).unwrap(), BigInt::from(28));
}

#[test]
fn datum_json_round_trip() {
    let d = magic_root_datum(&build_magic_algebra(AlgebraTag::C, AlgebraTag::O)).unwrap();
    let back = RootDatum::from_json(&d.to_json().to_string()).unwrap();
    assert_eq!(back.dynkin_type(), "E6");
    for (m, w) in &d.markers {
        assert_eq!(back.weyl_dim(&back.markers[m]).unwrap(), d.weyl_dim(w).unwrap());
    }
}

#[test]
fn non_dominant_weights_are_rejected() {
    let d = builtin_datum("g2").unwrap();
    assert!(d.weyl_dim_labels(&[-1, 0]).is_err());
    let half = d.from_labels(&[ri(1) / ri(2), ri(0)]).unwrap();
    assert!(d.weyl_dim(&half).is_err());
}

fn small_type() -> impl Strategy<Value = &'static str> {
    proptest::sample::select(vec!["sl2", "sl3", "sl4", "so5", "so7", "sp6", "g2", "so8", "f4"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Freudenthal's multiplicities summed over Weyl orbits give the Weyl dimension.
    #[test]
    fn character_sums_to_weyl_dimension(name in small_type(), seed in proptest::collection::vec(0i64..3, 4)) {
        let d = builtin_datum(name).unwrap();
        let labels: Vec<i64> = seed.into_iter().take(d.rank).collect();
        prop_assume!(labels.iter().sum::<i64>() <= if d.rank == 4 { 2 } else { 4 });
        let w = d.from_labels(&labels.iter().map(|x| ri(*x)).collect::<Vec<_>>()).unwrap();
        let total: BigInt = d.dominant_character(&w).unwrap().iter().map(|(mu, m)| m * d.orbit_size(mu).unwrap()).sum();
        prop_assert_eq!(total, d.weyl_dim(&w).unwrap());
    }

    #[test]
    fn sl_dimensions_are_dual_symmetric(n in 2usize..6, seed in proptest::collection::vec(0i64..4, 5)) {
        let d = builtin_datum(&format!("sl{}", n + 1)).unwrap();
        let l: Vec<i64> = seed.into_iter().take(n).collect();
        let rev: Vec<i64> = l.iter().rev().copied().collect();
        prop_assert_eq!(d.weyl_dim_labels(&l).unwrap(), d.weyl_dim_labels(&rev).unwrap());
    }
}

//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines always reach the output; exits nonzero if the outcome differs from
//! the expected one recorded in `KNOWN_RED`.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use freudenthal::arith::{rat, ri, Rat};
use freudenthal::composition::AlgebraTag;
use freudenthal::lie::{jacobi_exhaustive, jacobi_sampled};
use freudenthal::magic::modules::{build_v_module, build_w_module};
use freudenthal::magic::{build_magic_algebra, MagicAlgebra};
use freudenthal::roots::{builtin_datum, magic_root_datum};
use freudenthal::series::crosscheck::{exponent_grid, run, Status, Suite, SuspectList};
use freudenthal::series::oracle::{
    exceptional_values, magic_values, series_datum, weyl_of_markers, Family, EXCEPTIONAL_MARKERS, SEVERI_MARKERS, SUBEXCEPTIONAL_MARKERS,
};
use freudenthal::series::*;
use freudenthal::triality::build_triality;

const TAGS: [AlgebraTag; 4] = [AlgebraTag::R, AlgebraTag::C, AlgebraTag::H, AlgebraTag::O];
const SQUARE: [[usize; 4]; 4] = [[3, 8, 21, 52], [8, 16, 35, 78], [21, 35, 66, 133], [52, 78, 133, 248]];
const SEED: u64 = 0x5eed;
const JACOBI_SAMPLES: u64 = 100_000;
const MODULE_SAMPLES: usize = 200;

// wall-clock budgets; all checks themselves are exact
const BUDGET_CONSTRUCTION: Duration = Duration::from_secs(60);
const BUDGET_TRIALITY: Duration = Duration::from_secs(10);
const BUDGET_JACOBI: Duration = Duration::from_secs(300);
const BUDGET_EXTRACTION: Duration = Duration::from_secs(60);
const BUDGET_ADJOINT: Duration = Duration::from_secs(60);
const BUDGET_EXCEPTIONAL: Duration = Duration::from_secs(600);

/// Criteria expected to fail, with the reason.
const KNOWN_RED: &[(u32, &str)] = &[
    (
        7,
        "at a = 0 the descriptor has 0/0 factors for any exponent with r + s > 0 (9 grid points); \
         the numerator count is 24 + 6p + 12q + 18r + 10s, not 16r",
    ),
    (
        10,
        "besides the V power, the full suite also finds the sign of the Deligne product, the four written \
         degree formulas and the a = 0 poles, so not everything else is VALIDATED; all are suspect-listed and the exit code is 0",
    ),
    (11, "the Deligne product as written has the opposite sign at every grid point; the other identities hold"),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within(t: Instant, budget: Duration) -> (bool, String) {
    let e = t.elapsed();
    (e <= budget, format!("{:.1}s of {}s", e.as_secs_f64(), budget.as_secs()))
}

struct Algebras(HashMap<(AlgebraTag, AlgebraTag), MagicAlgebra>);

impl Algebras {
    fn get(&mut self, a: AlgebraTag, b: AlgebraTag) -> &MagicAlgebra {
        self.0.entry((a, b)).or_insert_with(|| build_magic_algebra(a, b))
    }
}

fn construction(g: &mut Algebras) -> Outcome {
    let t = Instant::now();
    let mut bad = vec![];
    for (i, a) in TAGS.iter().enumerate() {
        for (j, b) in TAGS.iter().enumerate() {
            let d = g.get(*a, *b).dim();
            if d != SQUARE[i][j] {
                bad.push(format!("g({a},{b}) = {d}"));
            }
        }
    }
    let (fast, time) = within(t, BUDGET_CONSTRUCTION);
    outcome(bad.is_empty() && fast, format!("16 entries, wrong: {bad:?}, {time}"))
}

fn triality() -> Outcome {
    let t = Instant::now();
    let dims: Vec<usize> = TAGS.iter().map(|a| build_triality(*a).dim()).collect();
    let (fast, time) = within(t, BUDGET_TRIALITY);
    outcome(dims == [0, 2, 9, 28] && fast, format!("dims {dims:?}, {time}"))
}

fn jacobi(g: &mut Algebras) -> Outcome {
    let t = Instant::now();
    let (mut defects, mut triples) = (0, 0);
    for a in TAGS {
        for b in TAGS {
            let alg = g.get(a, b);
            let table = alg.table.integer_table();
            let r = if alg.dim() <= 78 { jacobi_exhaustive(&table) } else { jacobi_sampled(&table, JACOBI_SAMPLES, SEED) };
            defects += r.defects;
            triples += r.checked;
        }
    }
    let (fast, time) = within(t, BUDGET_JACOBI);
    outcome(defects == 0 && fast, format!("{defects} defects in {triples} basis triples, {time}"))
}

fn extraction(g: &mut Algebras) -> Outcome {
    let mut pass = true;
    let mut notes = vec![];
    for (a, b) in [(AlgebraTag::O, AlgebraTag::O), (AlgebraTag::R, AlgebraTag::O), (AlgebraTag::O, AlgebraTag::C)] {
        let t = Instant::now();
        let d = magic_root_datum(g.get(a, b)).unwrap();
        let (fast, time) = within(t, BUDGET_EXTRACTION);
        let long = d.positive_roots.iter().filter(|r| d.length2(r) == ri(2)).count() * 2;
        let short = d.num_roots() - long;
        let ok = match (a, b) {
            (AlgebraTag::O, AlgebraTag::O) => d.num_roots() == 240 && d.rank == 8 && d.dynkin_type() == "E8",
            (AlgebraTag::R, _) => d.dynkin_type() == "F4" && long == 24 && short == 24,
            _ => d.dynkin_type() == "E6",
        };
        pass &= ok && fast;
        notes.push(format!("g({a},{b}) {} rank {} roots {} ({long} long), {time}", d.dynkin_type(), d.rank, d.num_roots()));
    }
    outcome(pass, notes.join("; "))
}

fn weyl_sanity() -> Outcome {
    let so8 = builtin_datum("so8").unwrap();
    let e8 = builtin_datum("e8").unwrap();
    let w = |l: [i64; 4]| so8.from_labels(&l.map(ri)).unwrap();
    let theta = e8.highest_root();
    let two: Vec<Rat> = theta.iter().map(|x| x * ri(2)).collect();
    let got = [
        so8.weyl_dim(&w([0, 1, 0, 0])).unwrap(),
        e8.weyl_dim(&theta).unwrap(),
        e8.weyl_dim(&two).unwrap(),
        so8.weight_multiplicity(&w([0, 2, 0, 0]), &w([2, 0, 0, 0])).unwrap(),
    ];
    let want = [28, 248, 27000, 2].map(BigInt::from);
    outcome(got == want, format!("{got:?}"))
}

fn adjoint_grid() -> Outcome {
    let t = Instant::now();
    let names = ["sl2", "sl3", "g2"];
    let mut bad = vec![];
    for (i, a) in exceptional_values().iter().enumerate() {
        let d = if i < 3 { std::sync::Arc::new(builtin_datum(names[i]).unwrap()) } else { series_datum(Family::Exceptional, a).unwrap() };
        let theta = d.highest_root();
        for k in 1..=4u64 {
            let r = adjoint_cartan_power(k, a).unwrap();
            let kt: Vec<Rat> = theta.iter().map(|x| x * ri(k as i64)).collect();
            let oracle = Rat::from_integer(d.weyl_dim(&kt).unwrap());
            if !r.is_positive_integer() || r.value != oracle {
                bad.push(format!("a={a} k={k}"));
            }
        }
    }
    let spot = [(1, ri(8), 248), (2, ri(8), 27000), (2, rat(-2, 3), 77), (1, rat(-2, 3), 14)]
        .iter()
        .all(|(k, a, v)| adjoint_cartan_power(*k, a).unwrap().value == ri(*v));
    let (fast, time) = within(t, BUDGET_ADJOINT);
    outcome(bad.is_empty() && spot && fast, format!("32 points, wrong: {bad:?}, spot values ok: {spot}, {time}"))
}

fn exceptional_grid() -> Outcome {
    let t = Instant::now();
    let desc = SeriesDescriptor::exceptional();
    let mut points = vec![ri(0)];
    points.extend(magic_values());
    let (mut ok, mut poles, mut wrong) = (0, 0, 0);
    for a in &points {
        let d = series_datum(Family::Exceptional, a).unwrap();
        for e in exponent_grid(4, 2) {
            let oracle = Rat::from_integer(weyl_of_markers(&d, EXCEPTIONAL_MARKERS, &e).unwrap());
            match evaluate_series(&desc, &e, a) {
                Ok(r) if r.value == oracle => ok += 1,
                Ok(_) => wrong += 1,
                Err(_) => poles += 1,
            }
        }
    }
    let mut count_bad = 0;
    for e in exponent_grid(4, 3) {
        let n = desc.factored(&e).unwrap().numerator_count() as u64;
        if n != 24 + 6 * e[0] + 12 * e[1] + 16 * e[2] + 10 * e[3] {
            count_bad += 1;
        }
    }
    let (fast, time) = within(t, BUDGET_EXCEPTIONAL);
    outcome(
        poles == 0 && wrong == 0 && count_bad == 0 && fast,
        format!("{ok} equal, {wrong} different, {poles} undefined; factor count differs on {count_bad} exponent vectors; {time}"),
    )
}

fn sub_and_severi(g: &mut Algebras) -> Outcome {
    let sub = SeriesDescriptor::subexceptional();
    let mut bad = 0;
    let mut total = 0;
    for a in magic_values() {
        let d = series_datum(Family::Subexceptional, &a).unwrap();
        for e in exponent_grid(3, 2) {
            total += 1;
            let oracle = Rat::from_integer(weyl_of_markers(&d, SUBEXCEPTIONAL_MARKERS, &e).unwrap());
            bad += u32::from(evaluate_series(&sub, &e, &a).map(|r| r.value) != Ok(oracle));
        }
        let d = series_datum(Family::Severi, &a).unwrap();
        for e in exponent_grid(2, 3) {
            total += 1;
            let oracle = Rat::from_integer(weyl_of_markers(&d, SEVERI_MARKERS, &e).unwrap());
            bad += u32::from(severi_dim(e[0], e[1], &a).map(|r| r.value) != Ok(oracle));
        }
    }
    let v = build_v_module(g.get(AlgebraTag::O, AlgebraTag::H)).unwrap().dim;
    let v_series = evaluate_series(&sub, &[0, 1, 0], &ri(8)).unwrap().value;
    let w = [severi_dim(1, 0, &ri(8)).unwrap().value, severi_dim(1, 1, &ri(8)).unwrap().value];
    let spot = v == 56 && v_series == ri(56) && w == [ri(27), ri(650)];
    outcome(
        bad == 0 && spot,
        format!("{bad} of {total} grid points differ; V module dim {v}, series {v_series}; Severi {}, {}", w[0], w[1]),
    )
}

fn modules(g: &mut Algebras) -> Outcome {
    let mut bad = 0;
    let mut notes = vec![];
    for t in &TAGS {
        let a = t.dim();
        let exhaustive = a <= 2;
        for (b, want) in [(AlgebraTag::H, 6 * a + 8), (AlgebraTag::C, 3 * a + 3)] {
            let alg = g.get(*t, b);
            let m = if b == AlgebraTag::H { build_v_module(alg) } else { build_w_module(alg) }.unwrap();
            let defects = if exhaustive {
                m.check_axiom_exhaustive(alg) + m.check_form_exhaustive(alg)
            } else {
                m.check_axiom_sampled(alg, MODULE_SAMPLES, SEED) + m.check_form_sampled(alg, MODULE_SAMPLES, SEED)
            };
            bad += defects + u64::from(m.dim != want);
            notes.push(format!("{}={}", m.name, m.dim));
        }
    }
    outcome(bad == 0, format!("{} with {bad} defects", notes.join(" ")))
}

fn harness() -> Outcome {
    let report = run(Suite::Full, false);
    let suspects = SuspectList::bundled();
    let v_mismatch = report.of("subexc_v_power").any(|e| e.status == Status::Mismatch);
    let y_resolved = report.of("hilbert_y2star").all(|e| e.status != Status::OracleUnavailable);
    let mut others: Vec<String> = report
        .entries
        .iter()
        .filter(|e| !["subexc_v_power", "hilbert_y2star"].contains(&e.formula.as_str()) && e.status != Status::Validated)
        .map(|e| e.formula.clone())
        .collect();
    others.dedup();
    let exit_zero = report.unexpected(&suspects).is_empty();
    outcome(
        v_mismatch && y_resolved && others.is_empty() && exit_zero,
        format!(
            "{} entries, {} validated; V power mismatch recorded: {v_mismatch}; Y2* resolved: {y_resolved}; \
             also not validated: {others:?}; exit code zero: {exit_zero}",
            report.entries.len(),
            report.count(Status::Validated)
        ),
    )
}

fn identities() -> Outcome {
    let mut deligne_bad = 0;
    for a in exceptional_values() {
        let l = lambda_of_a(&a).unwrap();
        for k in 1..=4 {
            deligne_bad += u32::from(deligne_yk(k, &l).unwrap() != adjoint_cartan_power(k, &a).unwrap().value);
        }
    }
    let third = magic_values()
        .iter()
        .all(|a| (0..=4).all(|k| thirdrow_dim(k, 3, a).unwrap().value == subexceptional_cartan_power(SubexModule::G, k, a).unwrap().value));
    let so = (1..=6u64).all(|t| so_family_dim(1, t).unwrap().value == ri(((t + 2) * (2 * t + 3)) as i64));
    let q = [0, 2, 4, 8].iter().all(|a| {
        (1..=4).all(|k| qdim_adjoint_cartan_power(k, &ri(*a)).unwrap().eval_at_one() == adjoint_cartan_power(k, &ri(*a)).unwrap().value)
    });
    outcome(
        deligne_bad == 0 && third && so && q,
        format!("Deligne product differs at {deligne_bad} of 32 points; third row {third}; so family {so}; q at 1 {q}"),
    )
}

fn hilbert(v: Variety) -> impl Fn(u64, &Rat) -> freudenthal::Result<Rat> {
    move |k, a| {
        Ok(match v {
            Variety::Ad => adjoint_cartan_power(k, a)?.value,
            Variety::Fplanes => hilbert_function(Hilbert::X2, k, a)?.value,
            Variety::Flines => hilbert_function(Hilbert::X3, k, a)?.value,
            Variety::Fpoints => hilbert_y2star_corrected(k, a)?.value,
            Variety::SubexcAd => subexceptional_cartan_power(SubexModule::G, k, a)?.value,
            Variety::SubexcX => subexceptional_v_power_corrected(k, a)?.value,
            Variety::SubexcFlines => subexceptional_cartan_power(SubexModule::V2, k, a)?.value,
        })
    }
}

fn degrees() -> Outcome {
    let mut bad = vec![];
    for v in Variety::ALL {
        let h = hilbert(v);
        for a in [2, 4, 8].map(ri) {
            let dim = v.dimension(&a).to_integer().try_into().unwrap();
            let fact: BigInt = (1..=dim).fold(BigInt::one(), |acc, i| acc * i);
            let lc = leading_coefficient(|k| h(k, &a), dim).unwrap();
            let from_hilbert = lc * Rat::from_integer(fact);
            let closed = match degree_corrected(v, &a).unwrap() {
                Some(d) => d,
                None => degree(v, &a).unwrap(),
            };
            if closed != from_hilbert || closed.is_zero() {
                bad.push(format!("{} a={a}", v.name()));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("7 varieties at a = 2, 4, 8 (written form for ad, fplanes, subexc_ad, corrected for the rest); wrong: {bad:?}"),
    )
}

fn main() -> ExitCode {
    let mut g = Algebras(HashMap::new());
    let results: Vec<Outcome> = vec![
        construction(&mut g),
        triality(),
        jacobi(&mut g),
        extraction(&mut g),
        weyl_sanity(),
        adjoint_grid(),
        exceptional_grid(),
        sub_and_severi(&mut g),
        modules(&mut g),
        harness(),
        identities(),
        degrees(),
    ];
    let mut surprises = 0;
    for (n, r) in (1u32..).zip(&results) {
        let known = KNOWN_RED.iter().find(|(k, _)| *k == n);
        println!("criterion {n}: {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.detail);
        match (r.pass, known) {
            (false, Some((_, why))) => println!("    known: {why}"),
            (false, None) => surprises += 1,
            (true, Some(_)) => {
                println!("    listed as known red but passed; update KNOWN_RED");
                surprises += 1;
            }
            (true, None) => {}
        }
    }
    let passed = results.iter().filter(|r| r.pass).count();
    println!("acceptance: {passed}/12 pass, {} known red, {surprises} unexpected", KNOWN_RED.len());
    if surprises == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Subcommand, ValueEnum};
use serde_json::{json, Value};

use freudenthal::arith::rat::{self, common_denominator};
use freudenthal::arith::Rat;
use freudenthal::composition::{build_split_algebra, AlgebraTag};
use freudenthal::lie::{jacobi_exhaustive, jacobi_sampled, JacobiReport};
use freudenthal::magic::modules::{build_v_module, build_w_module};
use freudenthal::magic::{build_magic_algebra, MagicAlgebra};
use freudenthal::roots::magic_root_datum;
use freudenthal::triality::build_triality;

use crate::output::{emit, pretty, Failure};

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
}

fn tag(s: &str) -> Result<AlgebraTag, String> {
    s.parse().map_err(|e: freudenthal::Error| e.to_string())
}

#[derive(Subcommand)]
pub enum AlgebraCmd {
    /// Multiplication table, unit, polarized norm and conjugation.
    Dump {
        #[arg(long = "A", value_parser = tag)]
        a: AlgebraTag,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Subcommand)]
pub enum TrialityCmd {
    /// Basis triples, each scaled to integer matrices.
    Basis {
        #[arg(long = "A", value_parser = tag)]
        a: AlgebraTag,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Subcommand)]
pub enum MagicCmd {
    Build {
        #[arg(long = "A", value_parser = tag)]
        a: AlgebraTag,
        #[arg(long = "B", value_parser = tag)]
        b: AlgebraTag,
        /// `jacobi=full` or `jacobi=sample:N`.
        #[arg(long)]
        verify: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Add wall-clock time to the report.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long = "A", value_parser = tag)]
    a: AlgebraTag,
    #[arg(long = "B", value_parser = tag)]
    b: AlgebraTag,
    /// `full` or `sample:N`; defaults to full up to dimension 78.
    #[arg(long)]
    jacobi: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
pub struct RootsArgs {
    #[arg(long = "A", value_parser = tag)]
    a: AlgebraTag,
    #[arg(long = "B", value_parser = tag)]
    b: AlgebraTag,
    /// Where to write the datum; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn algebra(cmd: AlgebraCmd) -> Result<(), Failure> {
    let AlgebraCmd::Dump { a, format: Format::Json } = cmd;
    let alg = build_split_algebra(a);
    let mut sc = vec![];
    for i in 0..alg.dim {
        for j in 0..alg.dim {
            for (k, c) in alg.basis_product(i, j) {
                sc.push(json!([i, j, k, rat::to_str(c)]));
            }
        }
    }
    let v = json!({
        "algebra": a.to_string(),
        "dim": alg.dim,
        "unit": rat::json_vec(&alg.unit),
        "structure_constants": sc,
        "gram": rat::json_mat(&alg.gram),
        "conjugation": rat::json_mat(&alg.conj),
    });
    emit(&pretty(&v), None)
}

fn integer_matrices(mats: &[Vec<Vec<Rat>>]) -> (String, Value) {
    let d = common_denominator(mats.iter().flatten().flatten());
    let scale = Rat::from_integer(d.clone());
    let m: Vec<Value> = mats
        .iter()
        .map(|m| {
            Value::Array(
                m.iter()
                    .map(|row| {
                        Value::Array(
                            row.iter()
                                .map(|x| json!((x * &scale).to_integer().to_string().parse::<i64>().expect("small entries")))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    (d.to_string(), Value::Array(m))
}

pub fn triality(cmd: TrialityCmd) -> Result<(), Failure> {
    let TrialityCmd::Basis { a, format: Format::Json } = cmd;
    let t = build_triality(a);
    let basis: Vec<Value> = t
        .basis
        .iter()
        .map(|b| {
            let (den, theta) = integer_matrices(&b.theta);
            json!({"denominator": den, "theta": theta})
        })
        .collect();
    let v = json!({"algebra": a.to_string(), "dim": t.dim(), "rank": t.rank, "basis": basis});
    emit(&pretty(&v), None)
}

enum Jacobi {
    Full,
    Sample(u64),
}

fn parse_jacobi(s: &str) -> Result<Jacobi, Failure> {
    if s == "full" {
        return Ok(Jacobi::Full);
    }
    s.strip_prefix("sample:")
        .and_then(|n| n.parse().ok())
        .map(Jacobi::Sample)
        .ok_or_else(|| Failure::Usage(format!("expected full or sample:N, got {s:?}")))
}

fn run_jacobi(g: &MagicAlgebra, mode: &Jacobi, seed: u64) -> (String, JacobiReport) {
    let t = g.table.integer_table();
    match mode {
        Jacobi::Full => ("full".into(), jacobi_exhaustive(&t)),
        Jacobi::Sample(n) => (format!("sample:{n}"), jacobi_sampled(&t, *n, seed)),
    }
}

pub fn magic(cmd: MagicCmd) -> Result<(), Failure> {
    let MagicCmd::Build { a, b, verify, seed, timings } = cmd;
    let mode = match verify.as_deref() {
        None => None,
        Some(s) => Some(parse_jacobi(
            s.strip_prefix("jacobi=").ok_or_else(|| Failure::Usage(format!("expected jacobi=full or jacobi=sample:N, got {s:?}")))?,
        )?),
    };
    let start = Instant::now();
    let g = build_magic_algebra(a, b);
    let mut v = json!({"A": a.to_string(), "B": b.to_string(), "dim": g.dim()});
    let mut defects = 0;
    if let Some(mode) = mode {
        let (label, r) = run_jacobi(&g, &mode, seed);
        defects = r.defects;
        v["jacobi"] = json!(label);
        v["jacobi_checked"] = json!(r.checked);
        v["defects"] = json!(r.defects);
    }
    if timings {
        v["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    emit(&pretty(&v), None)?;
    if defects > 0 {
        return Err(Failure::Check(format!("{defects} Jacobi defects")));
    }
    Ok(())
}

pub const SQUARE: [[usize; 4]; 4] = [[3, 8, 21, 52], [8, 16, 35, 78], [21, 35, 66, 133], [52, 78, 133, 248]];

fn expected_dim(a: AlgebraTag, b: AlgebraTag) -> usize {
    let i = |t: AlgebraTag| t.dim().trailing_zeros() as usize;
    SQUARE[i(a)][i(b)]
}

pub fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let g = build_magic_algebra(args.a, args.b);
    let mode = match args.jacobi.as_deref() {
        Some(s) => parse_jacobi(s)?,
        None if g.dim() <= 78 => Jacobi::Full,
        None => Jacobi::Sample(100_000),
    };
    let expected = expected_dim(args.a, args.b);
    let antisymmetric = g.table.is_antisymmetric();
    let (label, jr) = run_jacobi(&g, &mode, args.seed);
    let mut defects = jr.defects + u64::from(!antisymmetric) + u64::from(g.dim() != expected);
    let mut modules = vec![];
    let module = match args.b {
        AlgebraTag::H => Some(build_v_module(&g)?),
        AlgebraTag::C => Some(build_w_module(&g)?),
        _ => None,
    };
    if let Some(m) = module {
        let exhaustive = args.a.dim() <= 2;
        let (axiom, form) = if exhaustive {
            (m.check_axiom_exhaustive(&g), m.check_form_exhaustive(&g))
        } else {
            (m.check_axiom_sampled(&g, 200, args.seed), m.check_form_sampled(&g, 200, args.seed))
        };
        defects += axiom + form;
        modules.push(json!({
            "name": m.name,
            "dim": m.dim,
            "checks": if exhaustive { "full" } else { "sample:200" },
            "axiom_defects": axiom,
            "form_defects": form,
        }));
    }
    let v = json!({
        "A": args.a.to_string(),
        "B": args.b.to_string(),
        "dim": g.dim(),
        "expected_dim": expected,
        "antisymmetric": antisymmetric,
        "jacobi": label,
        "jacobi_checked": jr.checked,
        "modules": modules,
        "defects": defects,
    });
    emit(&pretty(&v), None)?;
    if defects > 0 {
        return Err(Failure::Check(format!("{defects} invariant failures")));
    }
    Ok(())
}

pub fn roots(args: RootsArgs) -> Result<(), Failure> {
    let g = build_magic_algebra(args.a, args.b);
    let d = magic_root_datum(&g)?;
    let text = pretty(&d.to_json());
    match &args.out {
        Some(p) => {
            emit(&text, Some(p))?;
            let summary = json!({"type": d.dynkin_type(), "rank": d.rank, "roots": d.num_roots(), "out": p.display().to_string()});
            emit(&pretty(&summary), None)
        }
        None => emit(&text, None),
    }
}

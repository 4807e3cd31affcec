use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde_json::{json, Map, Value};

use freudenthal::arith::rat::{self, to_str};
use freudenthal::arith::{ri, Rat};
use freudenthal::roots::{builtin_datum, RootDatum};
use freudenthal::series::crosscheck::{self, Status, Suite, SuspectList};
use freudenthal::series::oracle::{catalogue_datum, degree_from_hilbert, exceptional_values, series_datum, weyl_of_markers, Family};
use freudenthal::series::{
    adjoint_cartan_power, degree, evaluate_series, qdim_adjoint_cartan_power, so_family_dim, subexceptional_cartan_power, thirdrow_dim,
    SeriesDescriptor, SeriesResult, SubexModule, Variety,
};
use freudenthal::Error;

use crate::output::{emit, io, pretty, Failure};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    Exceptional,
    Subexceptional,
    Severi,
    Thirdrow,
    SoFamily,
}

#[derive(Args)]
pub struct DimArgs {
    /// `weyl` for a root datum query; optional.
    #[arg(value_parser = ["weyl", "series"])]
    kind: Option<String>,
    #[arg(long, value_enum, conflicts_with_all = ["datum", "weight"])]
    series: Option<SeriesName>,
    #[arg(short, long)]
    p: Option<u64>,
    #[arg(short, long)]
    q: Option<u64>,
    #[arg(short, long)]
    r: Option<u64>,
    #[arg(short, long)]
    s: Option<u64>,
    #[arg(long)]
    pstar: Option<u64>,
    #[arg(short, long)]
    k: Option<u64>,
    #[arg(long)]
    t: Option<u64>,
    /// The series parameter, an exact rational such as `8` or `-2/3`.
    #[arg(short, long, allow_hyphen_values = true)]
    a: Option<String>,
    /// `builtin:<type>` or a root datum JSON file.
    #[arg(long, requires = "weight")]
    datum: Option<String>,
    /// Dynkin labels, comma separated.
    #[arg(long, requires = "datum")]
    weight: Option<String>,
    /// Also print the product of linear factors.
    #[arg(long)]
    factored: bool,
}

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

fn load_datum(spec: &str) -> Result<RootDatum, Failure> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return Ok(builtin_datum(name)?);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| usage(format!("{spec}: {e}")))?;
    Ok(RootDatum::from_json(&text)?)
}

fn weyl_query(datum: &str, weight: &str) -> Result<(), Failure> {
    let d = load_datum(datum)?;
    let labels = rat::parse_list(weight)?;
    let w = d.from_labels(&labels)?;
    emit(&d.weyl_dim(&w)?.to_string(), None)
}

pub fn dim(args: DimArgs) -> Result<(), Failure> {
    if let (Some(datum), Some(weight)) = (&args.datum, &args.weight) {
        let series_flags = [args.p, args.q, args.r, args.s, args.pstar, args.k, args.t].iter().any(Option::is_some) || args.a.is_some();
        if series_flags || args.factored {
            return Err(usage("series flags cannot be combined with --datum"));
        }
        return weyl_query(datum, weight);
    }
    if args.kind.as_deref() == Some("weyl") {
        return Err(usage("dim weyl needs --datum and --weight"));
    }
    let series = args.series.ok_or_else(|| usage("give --series or --datum with --weight"))?;
    let a = || -> Result<Rat, Failure> { Ok(rat::parse(args.a.as_deref().ok_or_else(|| usage("--a is required"))?)?) };
    // flags that each series accepts
    let allowed: &[&str] = match series {
        SeriesName::Exceptional => &["p", "q", "r", "s", "a"],
        SeriesName::Subexceptional => &["p", "q", "r", "a"],
        SeriesName::Severi => &["p", "pstar", "a"],
        SeriesName::Thirdrow => &["k", "r", "a"],
        SeriesName::SoFamily => &["k", "t"],
    };
    let given = [
        ("p", args.p.is_some()),
        ("q", args.q.is_some()),
        ("r", args.r.is_some()),
        ("s", args.s.is_some()),
        ("pstar", args.pstar.is_some()),
        ("k", args.k.is_some()),
        ("t", args.t.is_some()),
        ("a", args.a.is_some()),
    ];
    if let Some((f, _)) = given.iter().find(|(f, g)| *g && !allowed.contains(f)) {
        return Err(usage(format!("--{f} does not apply to this series")));
    }
    let z = |x: Option<u64>| x.unwrap_or(0);
    let result: SeriesResult = match series {
        SeriesName::Exceptional => evaluate_series(&SeriesDescriptor::exceptional(), &[z(args.p), z(args.q), z(args.r), z(args.s)], &a()?)?,
        SeriesName::Subexceptional => evaluate_series(&SeriesDescriptor::subexceptional(), &[z(args.p), z(args.q), z(args.r)], &a()?)?,
        SeriesName::Severi => evaluate_series(&SeriesDescriptor::severi(), &[z(args.p), z(args.pstar)], &a()?)?,
        SeriesName::Thirdrow => {
            thirdrow_dim(args.k.ok_or_else(|| usage("-k is required"))?, args.r.ok_or_else(|| usage("-r is required"))?, &a()?)?
        }
        SeriesName::SoFamily => {
            so_family_dim(args.k.ok_or_else(|| usage("-k is required"))?, args.t.ok_or_else(|| usage("--t is required"))?)?
        }
    };
    emit(&to_str(&result.value), None)?;
    if args.factored {
        emit(&format!("factored: {}", result.factored), None)?;
    }
    Ok(())
}

#[derive(Args)]
pub struct CrosscheckArgs {
    #[arg(long, value_enum, default_value = "quick")]
    suite: SuiteArg,
    /// Suspect list JSON; the bundled list is used when absent.
    #[arg(long, conflicts_with = "no_suspects")]
    known_suspect: Option<PathBuf>,
    /// Treat every mismatch as unexpected.
    #[arg(long)]
    no_suspects: bool,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record per-entry wall-clock time.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Quick,
    Full,
}

pub fn crosscheck(args: CrosscheckArgs) -> Result<(), Failure> {
    let suspects = if args.no_suspects {
        SuspectList::default()
    } else if let Some(p) = &args.known_suspect {
        let text = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
        SuspectList::from_json(&text)?
    } else {
        SuspectList::bundled()
    };
    let suite = match args.suite {
        SuiteArg::Quick => Suite::Quick,
        SuiteArg::Full => Suite::Full,
    };
    let report = crosscheck::run(suite, args.timings);
    let text = serde_json::to_string_pretty(&report.entries).map_err(|e| Failure::Check(e.to_string()))?;
    emit(&text, args.out.as_deref())?;
    let unexpected = report.unexpected(&suspects);
    eprintln!(
        "{} entries: {} validated, {} mismatch ({} unexpected), {} oracle unavailable",
        report.entries.len(),
        report.count(Status::Validated),
        report.count(Status::Mismatch),
        unexpected.len(),
        report.count(Status::OracleUnavailable)
    );
    if let Some(e) = unexpected.first() {
        return Err(Failure::Check(format!("unexpected mismatch in {} at {:?}", e.formula, e.params)));
    }
    Ok(())
}

#[derive(Clone, Copy, ValueEnum)]
pub enum TableSeries {
    /// Cartan powers of the adjoint representation.
    Exceptional,
    /// Cartan powers of the adjoint representation in the subexceptional row.
    Subexceptional,
    SoFamily,
    /// Quantum dimensions of the adjoint Cartan powers.
    Qdim,
    Degrees,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
    Md,
}

#[derive(Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    series: TableSeries,
    /// `lo..hi` (inclusive) or a comma list.
    #[arg(short, long)]
    k: Option<String>,
    /// Comma list of rationals, or `series` for every point of the series.
    #[arg(short, long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long)]
    t: Option<String>,
    /// Comma list of variety names for the degree table.
    #[arg(long)]
    varieties: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

const MAX_RANGE: u64 = 64;

fn int_range(s: &str) -> Result<Vec<u64>, Failure> {
    let bad = || usage(format!("bad range {s:?}"));
    let v: Vec<u64> = if let Some((lo, hi)) = s.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi || hi - lo >= MAX_RANGE {
            return Err(bad());
        }
        (lo..=hi).collect()
    } else {
        s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if v.is_empty() || v.len() as u64 > MAX_RANGE {
        return Err(bad());
    }
    Ok(v)
}

fn a_list(s: Option<&str>, default: &[i64]) -> Result<Vec<Rat>, Failure> {
    match s {
        None => Ok(default.iter().map(|x| ri(*x)).collect()),
        Some("series") => Ok(exceptional_values()),
        Some(s) => s.split(',').map(|x| rat::parse(x.trim()).map_err(|_| usage(format!("bad value {x:?} in --a")))).collect(),
    }
}

struct Row {
    params: Vec<(&'static str, String)>,
    value: String,
    status: Status,
}

fn compare(value: &Result<Rat, Error>, oracle: Result<Rat, Error>) -> Status {
    match (value, oracle) {
        (_, Err(_)) => Status::OracleUnavailable,
        (Ok(v), Ok(o)) if *v == o => Status::Validated,
        _ => Status::Mismatch,
    }
}

fn shown(v: &Result<Rat, Error>) -> String {
    match v {
        Ok(x) => to_str(x),
        Err(Error::Pole(_)) => "pole".into(),
        Err(e) => format!("error: {e}"),
    }
}

fn weyl_power(family: Family, a: &Rat, k: u64) -> Result<Rat, Error> {
    Ok(Rat::from_integer(weyl_of_markers(&*series_datum(family, a)?, &["g"], &[k])?))
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Validated => "VALIDATED",
        Status::Mismatch => "MISMATCH",
        Status::OracleUnavailable => "ORACLE_UNAVAILABLE",
    }
}

fn rows(args: &TableArgs) -> Result<Vec<Row>, Failure> {
    let ks = || int_range(args.k.as_deref().unwrap_or("1..4"));
    let mut out = vec![];
    match args.series {
        TableSeries::Exceptional | TableSeries::Subexceptional => {
            let sub = matches!(args.series, TableSeries::Subexceptional);
            let a_values = if sub { a_list(args.a.as_deref(), &[1, 2, 4, 8])? } else { a_list(args.a.as_deref().or(Some("series")), &[])? };
            for k in ks()? {
                for a in &a_values {
                    let (v, family) = if sub {
                        (subexceptional_cartan_power(SubexModule::G, k, a).map(|r| r.value), Family::Subexceptional)
                    } else {
                        (adjoint_cartan_power(k, a).map(|r| r.value), Family::Exceptional)
                    };
                    out.push(Row {
                        params: vec![("k", k.to_string()), ("a", to_str(a))],
                        value: shown(&v),
                        status: compare(&v, weyl_power(family, a, k)),
                    });
                }
            }
        }
        TableSeries::SoFamily => {
            for k in ks()? {
                for t in int_range(args.t.as_deref().unwrap_or("1..6"))? {
                    let v = so_family_dim(k, t).map(|r| r.value);
                    let name = if t == 1 { "sl4".to_string() } else { format!("so{}", 2 * t + 4) };
                    let o = catalogue_datum(&name).and_then(|d| weyl_of_markers(&d, &["g"], &[k])).map(Rat::from_integer);
                    out.push(Row { params: vec![("k", k.to_string()), ("t", t.to_string())], value: shown(&v), status: compare(&v, o) });
                }
            }
        }
        TableSeries::Qdim => {
            for k in int_range(args.k.as_deref().unwrap_or("1"))? {
                for a in a_list(args.a.as_deref(), &[0, 2, 4, 8])? {
                    let (value, status) = match qdim_adjoint_cartan_power(k, &a) {
                        Ok(p) => (p.to_string(), compare(&Ok(p.eval_at_one()), weyl_power(Family::Exceptional, &a, k))),
                        Err(e) => (format!("error: {e}"), Status::Mismatch),
                    };
                    out.push(Row { params: vec![("k", k.to_string()), ("a", to_str(&a))], value, status });
                }
            }
        }
        TableSeries::Degrees => {
            let vs: Vec<Variety> = match &args.varieties {
                None => vec![Variety::Ad, Variety::Fplanes, Variety::Flines, Variety::Fpoints],
                Some(s) => s.split(',').map(|x| Variety::parse(x.trim())).collect::<Result<_, _>>()?,
            };
            for v in vs {
                for a in a_list(args.a.as_deref(), &[2, 4, 8])? {
                    let d = degree(v, &a);
                    out.push(Row {
                        params: vec![("variety", v.name().to_string()), ("a", to_str(&a))],
                        value: shown(&d),
                        status: compare(&d, degree_from_hilbert(v, &a)),
                    });
                }
            }
        }
    }
    Ok(out)
}

fn render(rows: &[Row], format: TableFormat) -> Result<String, Failure> {
    match format {
        TableFormat::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut m: Map<String, Value> = r.params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                    m.insert("value".into(), json!(r.value));
                    m.insert("status".into(), json!(status_name(r.status)));
                    Value::Object(m)
                })
                .collect();
            Ok(pretty(&Value::Array(list)))
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(vec![]);
            if let Some(first) = rows.first() {
                let header: Vec<&str> = first.params.iter().map(|(k, _)| *k).chain(["value", "status"]).collect();
                w.write_record(&header).map_err(|e| Failure::Check(e.to_string()))?;
            }
            for r in rows {
                let rec: Vec<&str> = r.params.iter().map(|(_, v)| v.as_str()).chain([r.value.as_str(), status_name(r.status)]).collect();
                w.write_record(&rec).map_err(|e| Failure::Check(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Failure::Check(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv of UTF-8 fields").trim_end().to_string())
        }
        TableFormat::Md => {
            let mut s = String::new();
            if let Some(first) = rows.first() {
                let cols: Vec<&str> = first.params.iter().map(|(k, _)| *k).chain(["value", "status"]).collect();
                s += &format!("| {} |\n", cols.join(" | "));
                s += &format!("|{}\n", "---|".repeat(cols.len()));
            }
            for r in rows {
                let cells: Vec<&str> = r.params.iter().map(|(_, v)| v.as_str()).chain([r.value.as_str(), status_name(r.status)]).collect();
                s += &format!("| {} |\n", cells.join(" | "));
            }
            Ok(s.trim_end().to_string())
        }
    }
}

pub fn table(args: TableArgs) -> Result<(), Failure> {
    let rows = rows(&args)?;
    let text = render(&rows, args.format)?;
    match &args.out {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(io),
        None => emit(&text, None),
    }
}

use std::io::Write;
use std::path::Path;

use freudenthal::Error;

/// A failed command: `Check` exits 1, `Usage` exits 2.
#[derive(Debug)]
pub enum Failure {
    Check(String),
    Usage(String),
    /// Structured error printed as JSON on stderr, exit 1.
    Structured(serde_json::Value),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Check(m) => format!("error: {m}"),
            Failure::Usage(m) => format!("usage error: {m}"),
            Failure::Structured(v) => v.to_string(),
        }
    }
}

/// Library errors caused by bad input are usage errors; the rest are failures.
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Pole(m) => Failure::Structured(serde_json::json!({"error": "pole", "message": m})),
            Error::Parse(_) | Error::Dimension { .. } | Error::NotDominant(_) | Error::UnknownDatum(_) | Error::Invalid(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Check(other.to_string()),
        }
    }
}

pub fn io(e: std::io::Error) -> Failure {
    Failure::Check(e.to_string())
}

pub fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

/// Writes `text` to `out`, or to stdout when absent.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(io),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(io(e)),
                _ => Ok(()),
            }
        }
    }
}

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use horokit::{Error, Rat};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Run the module's invariant suite instead of the command.
    #[arg(long)]
    pub selftest: bool,
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::ResourceLimit { .. } | Error::BudgetExhausted { .. }) => 3,
            CliError::Io(_) => 3,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Core(e) => match e {
                Error::InvalidSpace { .. } => "invalid_space",
                Error::InvalidPoint(_) => "invalid_point",
                Error::InvalidDistortion(_) => "invalid_distortion",
                Error::Domain(_) => "domain",
                Error::InvalidParameter(_) => "invalid_parameter",
                Error::Precondition(_) => "precondition",
                Error::FamilyMismatch(_) => "family_mismatch",
                Error::Unsupported(_) => "unsupported",
                Error::ResourceLimit { .. } => "resource_limit",
                Error::BudgetExhausted { .. } => "budget_exhausted",
                Error::NotLipschitz { .. } => "not_lipschitz",
                Error::NonInvariant(_) => "non_invariant",
                Error::NotMonotone { .. } => "not_monotone",
                Error::Parse(_) => "parse",
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
        }
    }

    pub fn emit(&self) {
        let v = json!({
            "schema_version": SCHEMA_VERSION,
            "error": { "kind": self.kind(), "message": self.message() },
            "exit_code": self.exit_code(),
        });
        let _ = writeln!(std::io::stderr(), "{v}");
    }
}

/// A command result: the JSON report, an optional CSV rendering, and whether
/// every audit passed.
pub struct Outcome {
    pub report: Value,
    pub csv: Option<String>,
    pub pass: bool,
}

impl Outcome {
    pub fn new(report: impl Serialize, pass: bool) -> CliResult<Self> {
        Ok(Outcome {
            report: to_value(report)?,
            csv: None,
            pass,
        })
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }
}

pub fn to_value(v: impl Serialize) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::Io(format!("serialization failed: {e}")))
}

#[derive(Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
}

pub fn selftest_outcome(checks: Vec<Check>) -> CliResult<Outcome> {
    let pass = checks.iter().all(|c| c.pass);
    Outcome::new(json!({ "selftest": checks }), pass)
}

pub fn emit(command: &str, common: &Common, out: &Outcome) -> CliResult<()> {
    let text = match (common.format, &out.csv) {
        (Format::Csv, Some(csv)) => csv.clone(),
        (Format::Csv, None) => return usage(format!("`{command}` has no CSV output")),
        (Format::Json, _) => {
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "command": command,
                "seed": common.seed,
                "pass": out.pass,
                "report": out.report,
            });
            let mut s =
                serde_json::to_string_pretty(&v).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    match &common.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Ball size limit, overridable through `HOROKIT_MAX_BALL`.
pub fn ball_limit() -> CliResult<usize> {
    match std::env::var("HOROKIT_MAX_BALL") {
        Ok(v) => v.trim().parse().or_else(|_| {
            usage(format!(
                "HOROKIT_MAX_BALL must be a positive integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(horokit::metric::DEFAULT_BALL_LIMIT),
    }
}

/// Inline JSON, or a path to a JSON file.
pub fn read_json(arg: &str) -> CliResult<Value> {
    let text = if arg.trim_start().starts_with(['{', '[', '"']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Usage(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Core(Error::Parse(format!("{arg}: {e}"))))
}

pub fn parse_f64_list(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .or_else(|_| usage(format!("not a number: {t:?}")))
        })
        .collect()
}

pub fn parse_i64_list(s: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .or_else(|_| usage(format!("not an integer: {t:?}")))
        })
        .collect()
}

pub fn parse_rat_list(s: &str) -> CliResult<Vec<Rat>> {
    Ok(s.split(',')
        .map(|t| horokit::scalar::parse_rat(t.trim()))
        .collect::<horokit::Result<_>>()?)
}

pub fn parse_matrix(s: &str) -> CliResult<[f64; 4]> {
    let v = parse_f64_list(s)?;
    v.try_into()
        .or_else(|_| usage("a matrix is four numbers a,b,c,d"))
}

pub fn parse_point(s: &str) -> CliResult<num_complex::Complex64> {
    match parse_f64_list(s)?.as_slice() {
        [re, im] => Ok(num_complex::Complex64::new(*re, *im)),
        _ => usage("a point is two numbers re,im"),
    }
}

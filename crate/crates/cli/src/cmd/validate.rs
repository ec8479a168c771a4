use clap::{Args, Subcommand};
use horokit::descriptor::{distortion_from_value, validate_descriptor, SpaceDescriptor};
use horokit::spaces::distorted_line_validate;
use horokit::Error;
use serde_json::{json, Value};

use crate::common::{
    ball_limit, parse_f64_list, read_json, selftest_outcome, usage, Check, CliResult, Common,
    Outcome,
};

#[derive(Debug, Subcommand)]
pub enum ValidateCmd {
    /// Metric axioms on a sample of a described space.
    Metric(MetricArgs),
    /// Distortion axioms on a grid.
    Distortion(DistortionArgs),
}

#[derive(Debug, Args)]
pub struct MetricArgs {
    /// Space descriptor (inline JSON or file).
    #[arg(long)]
    pub space: Option<String>,
    #[arg(long, default_value_t = 60)]
    pub points: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DistortionArgs {
    /// `sqrt`, `log1p`, `square`, or a JSON table.
    #[arg(long, default_value = "log1p")]
    pub distortion: String,
    /// Positive increasing grid; `2^(k/4)` for `k = -40..=80` by default.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

pub fn common(cmd: &ValidateCmd) -> &Common {
    match cmd {
        ValidateCmd::Metric(a) => &a.common,
        ValidateCmd::Distortion(a) => &a.common,
    }
}

pub fn run(cmd: &ValidateCmd) -> CliResult<Outcome> {
    if common(cmd).selftest {
        return selftest();
    }
    match cmd {
        ValidateCmd::Metric(a) => metric(a),
        ValidateCmd::Distortion(a) => distortion(a),
    }
}

fn metric(a: &MetricArgs) -> CliResult<Outcome> {
    let Some(space) = &a.space else {
        return usage("validate metric needs --space");
    };
    let desc: SpaceDescriptor = serde_json::from_value(read_json(space)?)
        .map_err(|e| Error::Parse(format!("space descriptor: {e}")))?;
    let rep = validate_descriptor(&desc, a.points, a.common.seed, ball_limit()?)?;
    let pass = rep.verdict.is_pass();
    Outcome::new(rep, pass)
}

fn default_grid() -> Vec<f64> {
    (-40..=80).map(|k| 2f64.powf(k as f64 / 4.0)).collect()
}

fn distortion(a: &DistortionArgs) -> CliResult<Outcome> {
    let v = if a.distortion.trim_start().starts_with('{') {
        read_json(&a.distortion)?
    } else {
        Value::String(a.distortion.clone())
    };
    let d = distortion_from_value(&v)?;
    let grid = match &a.grid {
        Some(s) => parse_f64_list(s)?,
        None => default_grid(),
    };
    let verdict = distorted_line_validate(&d, &grid, a.tol)?;
    let pass = verdict.is_pass();
    Outcome::new(
        json!({ "distortion": d, "grid_points": grid.len(), "verdict": verdict }),
        pass,
    )
}

fn selftest() -> CliResult<Outcome> {
    let ok = |text: &str, expect: bool| {
        SpaceDescriptor::parse(text)
            .and_then(|d| validate_descriptor(&d, 30, 0, 100_000))
            .map(|r| r.verdict.is_pass() == expect)
            .unwrap_or(false)
    };
    let dist = |name: &str, expect: bool| {
        distortion_from_value(&Value::String(name.into()))
            .and_then(|d| distorted_line_validate(&d, &default_grid(), 1e-12))
            .map(|v| v.is_pass() == expect)
            .unwrap_or(false)
    };
    selftest_outcome(vec![
        Check {
            name: "z2_word_metric",
            pass: ok(r#"{"type": "zd", "params": {"dim": 2}}"#, true),
        },
        Check {
            name: "spoke_ray_metric",
            pass: ok(r#"{"type": "spoke_ray"}"#, true),
        },
        Check {
            name: "disk_metric",
            pass: ok(r#"{"type": "poincare_disk"}"#, true),
        },
        Check {
            name: "square_line_rejected",
            pass: ok(
                r#"{"type": "distorted_line", "params": {"distortion": "square"}}"#,
                false,
            ),
        },
        Check {
            name: "sqrt_distortion",
            pass: dist("sqrt", true),
        },
        Check {
            name: "square_distortion_rejected",
            pass: dist("square", false),
        },
    ])
}

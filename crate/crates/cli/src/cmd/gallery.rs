use clap::{Args, Subcommand};
use horokit::extension::{
    euclidean_zero_nonmembership_check, horofunction_failure_witness, perpendicular_ray_functional,
    FailureSpace, FailureWitness,
};
use horokit::functionals::RealizedConfig;
use horokit::scalar::{parse_rat, rat_to_string};
use horokit::spaces::{LpSpace, StarPoint};
use horokit::{frac, rat, Functional, Rat};
use serde_json::json;

use crate::common::{
    parse_f64_list, parse_i64_list, selftest_outcome, Check, CliResult, Common, Outcome,
};

#[derive(Debug, Subcommand)]
pub enum GalleryCmd {
    /// Busemann function of the spoke space that is not a horofunction.
    SpokeRay(FailureArgs),
    /// Star of intervals: pointwise but not uniform convergence.
    StarTree(FailureArgs),
    /// The zero functional of the line is not a metric functional.
    EuclideanZero(EuclideanArgs),
}

#[derive(Debug, Args)]
pub struct FailureArgs {
    /// Audit the witness gaps against their closed forms.
    #[arg(long)]
    pub check: bool,
    /// Ball radius, `p/q`.
    #[arg(long, default_value = "1")]
    pub r: String,
    /// Ray parameters `t` (spoke) or interval indices `n` (star).
    #[arg(long, default_value = "1,2,3,4,5,6,7,8,9,10")]
    pub params: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct EuclideanArgs {
    /// Anchors `z` on the line; `-50..50` in steps of 1/4 by default.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

pub fn common(cmd: &GalleryCmd) -> &Common {
    match cmd {
        GalleryCmd::SpokeRay(a) | GalleryCmd::StarTree(a) => &a.common,
        GalleryCmd::EuclideanZero(a) => &a.common,
    }
}

pub fn run(cmd: &GalleryCmd) -> CliResult<Outcome> {
    if common(cmd).selftest {
        return selftest();
    }
    match cmd {
        GalleryCmd::SpokeRay(a) => failure(FailureSpace::SpokeRay, a),
        GalleryCmd::StarTree(a) => failure(FailureSpace::StarTree, a),
        GalleryCmd::EuclideanZero(a) => euclidean(a),
    }
}

/// Closed forms: gap `3/2` on the spoke space, `2s` at depth `s` with
/// stabilization after `n` on the star.
fn expected(w: &FailureWitness) -> bool {
    match w {
        FailureWitness::SpokeRay(s) => s.gap == frac(3, 2),
        FailureWitness::StarTree(s) => match s.point {
            StarPoint::Interval { n, s: depth } => {
                s.gap == rat(2) * depth && s.stabilizes_after == n
            }
            StarPoint::Hub => false,
        },
    }
}

fn witnesses(
    space: FailureSpace,
    r: Rat,
    params: &[i64],
) -> CliResult<(Vec<FailureWitness>, bool)> {
    let ws = horofunction_failure_witness(space, r, params)?;
    let ok = ws.iter().all(expected);
    Ok((ws, ok))
}

fn failure(space: FailureSpace, a: &FailureArgs) -> CliResult<Outcome> {
    let r = parse_rat(&a.r)?;
    let params = parse_i64_list(&a.params)?;
    let (ws, ok) = witnesses(space, r, &params)?;
    let mut csv = String::from("param,point,value,limit,gap\n");
    for w in &ws {
        let row = match w {
            FailureWitness::SpokeRay(s) => {
                format!(
                    "{},head {},{},{},{}",
                    rat_to_string(&s.t),
                    s.n,
                    rat_to_string(&s.value_at_t),
                    rat_to_string(&s.limit_value),
                    rat_to_string(&s.gap)
                )
            }
            FailureWitness::StarTree(s) => {
                format!(
                    "{},interval {},{},{},{}",
                    s.n,
                    s.n,
                    rat_to_string(&s.value_at_n),
                    rat_to_string(&s.limit_value),
                    rat_to_string(&s.gap)
                )
            }
        };
        csv.push_str(&row);
        csv.push('\n');
    }
    let report = json!({ "space": space, "r": rat_to_string(&r), "checked": a.check, "closed_forms_hold": ok, "witnesses": ws });
    Ok(Outcome::new(report, !a.check || ok)?.with_csv(csv))
}

fn default_grid() -> Vec<f64> {
    (-200..=200).map(|k| k as f64 / 4.0).collect()
}

fn perpendicular_restriction() -> CliResult<f64> {
    let plane = LpSpace::new(2.0, 2)?;
    let h = perpendicular_ray_functional(RealizedConfig::default())?;
    let mut max = 0f64;
    for k in -20..=20 {
        max = max.max(h.eval(&plane, &vec![k as f64 * 0.5, 0.0])?.abs());
    }
    Ok(max)
}

fn euclidean(a: &EuclideanArgs) -> CliResult<Outcome> {
    let grid = match &a.grid {
        Some(s) => parse_f64_list(s)?,
        None => default_grid(),
    };
    let rep = euclidean_zero_nonmembership_check(&grid)?;
    let restriction = perpendicular_restriction()?;
    let pass = rep.pass && restriction <= 1e-9;
    let report = json!({ "nonmembership": rep, "perpendicular_ray_on_axis_max_abs": restriction });
    Outcome::new(report, pass)
}

fn selftest() -> CliResult<Outcome> {
    let ten: Vec<i64> = (1..=10).collect();
    let spoke = witnesses(FailureSpace::SpokeRay, rat(1), &ten)
        .map(|w| w.1)
        .unwrap_or(false);
    let star = witnesses(FailureSpace::StarTree, frac(3, 2), &ten)
        .map(|w| w.1)
        .unwrap_or(false);
    let zero = euclidean_zero_nonmembership_check(&default_grid())
        .map(|r| r.pass)
        .unwrap_or(false);
    let perp = perpendicular_restriction()
        .map(|m| m <= 1e-9)
        .unwrap_or(false);
    selftest_outcome(vec![
        Check {
            name: "spoke_gap_three_halves",
            pass: spoke,
        },
        Check {
            name: "star_gap_twice_depth",
            pass: star,
        },
        Check {
            name: "euclidean_zero_not_a_functional",
            pass: zero,
        },
        Check {
            name: "perpendicular_ray_vanishes_on_axis",
            pass: perp,
        },
    ])
}

//! The real line with distance `D(|x - y|)` for a concave-type distortion `D`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{MetricSpace, Verdict};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "table", rename_all = "snake_case")]
pub enum Distortion {
    Sqrt,
    Log1p,
    /// Piecewise-linear through the given `(t, D(t))` knots, sorted by `t`;
    /// extended past the last knot with the last slope.
    Table(Vec<(f64, f64)>),
    /// `t^2`: not a valid distortion, kept as a negative fixture.
    Square,
}

impl Distortion {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Distortion::Sqrt => t.sqrt(),
            Distortion::Log1p => t.ln_1p(),
            Distortion::Square => t * t,
            Distortion::Table(knots) => interpolate(knots, t),
        }
    }
}

fn interpolate(knots: &[(f64, f64)], t: f64) -> f64 {
    match knots {
        [] => f64::NAN,
        [(_, y)] => *y,
        _ => {
            let i = match knots.iter().position(|&(x, _)| x >= t) {
                Some(0) => 0,
                Some(i) => i - 1,
                None => knots.len() - 2,
            };
            let (x0, y0) = knots[i];
            let (x1, y1) = knots[i + 1];
            y0 + (y1 - y0) * (t - x0) / (x1 - x0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistortionCheck {
    Nondecreasing,
    RatioNonincreasing,
    Subadditive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistortionViolation {
    pub check: DistortionCheck,
    pub t: f64,
    pub s: f64,
}

/// Grid check that `D` is nondecreasing, `D(t)/t` is nonincreasing, and
/// `D(t + s) <= D(t) + D(s)` for all grid pairs. `tol` absorbs rounding.
pub fn distorted_line_validate(
    d: &Distortion,
    grid: &[f64],
    tol: f64,
) -> Result<Verdict<DistortionViolation>> {
    let d0 = d.eval(0.0);
    if d0 != 0.0 {
        return Err(Error::InvalidDistortion(format!("D(0) = {d0}")));
    }
    if grid.is_empty() || grid.iter().any(|&t| !(t > 0.0)) || grid.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::Precondition(
            "grid must be positive and strictly increasing".into(),
        ));
    }
    let values: Vec<f64> = grid.iter().map(|&t| d.eval(t)).collect();
    for (i, w) in values.windows(2).enumerate() {
        if w[1] < w[0] - tol {
            let (t, s) = (grid[i], grid[i + 1]);
            return Ok(Verdict::Fail(DistortionViolation {
                check: DistortionCheck::Nondecreasing,
                t,
                s,
            }));
        }
        if w[1] / grid[i + 1] > w[0] / grid[i] + tol {
            let (t, s) = (grid[i], grid[i + 1]);
            return Ok(Verdict::Fail(DistortionViolation {
                check: DistortionCheck::RatioNonincreasing,
                t,
                s,
            }));
        }
    }
    for (i, &t) in grid.iter().enumerate() {
        for (j, &s) in grid.iter().enumerate().skip(i) {
            if d.eval(t + s) > values[i] + values[j] + tol {
                return Ok(Verdict::Fail(DistortionViolation {
                    check: DistortionCheck::Subadditive,
                    t,
                    s,
                }));
            }
        }
    }
    Ok(Verdict::Pass)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistortedLine {
    pub distortion: Distortion,
}

impl DistortedLine {
    pub fn new(distortion: Distortion) -> Self {
        DistortedLine { distortion }
    }
}

impl MetricSpace for DistortedLine {
    type Point = f64;
    type Scalar = f64;

    fn distance(&self, a: &f64, b: &f64) -> Result<f64> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidPoint(format!(
                "non-finite coordinate in ({a}, {b})"
            )));
        }
        Ok(self.distortion.eval((a - b).abs()))
    }

    fn base_point(&self) -> f64 {
        0.0
    }
}

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spaces::Distortion;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistortedReport {
    pub r: f64,
    /// `(x, sup_{|y| <= r} |D(|y - x|) - D(|x|)|)`.
    pub per_anchor: Vec<(f64, f64)>,
    pub strictly_decreasing: bool,
}

/// Sup of `|h_x|` over `[-r, r]` for a monotone distortion: the extremes are
/// at the endpoints of the range `[max(|x| - r, 0), |x| + r]` of `|y - x|`.
pub fn distorted_compactification_check(
    d: &Distortion,
    r: f64,
    anchors: &[f64],
) -> Result<DistortedReport> {
    if !(r >= 0.0) || anchors.is_empty() {
        return Err(Error::Precondition(
            "need r >= 0 and at least one anchor".into(),
        ));
    }
    let per_anchor: Vec<(f64, f64)> = anchors
        .iter()
        .map(|&x| {
            let a = x.abs();
            let center = d.eval(a);
            let up = d.eval(a + r) - center;
            let down = center - d.eval((a - r).max(0.0));
            (x, up.abs().max(down.abs()))
        })
        .collect();
    let strictly_decreasing = per_anchor.windows(2).all(|w| w[1].1 < w[0].1);
    Ok(DistortedReport {
        r,
        per_anchor,
        strictly_decreasing,
    })
}

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functionals::{RealizedConfig, RealizedFunctional};
use crate::metric::{Functional, MetricSpace, Verdict};
use crate::scalar::{Scalar, ScalarKind};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HahnBanachConfig {
    /// Restriction audit tolerance; ignored (zero) for exact metrics.
    pub tol: f64,
    /// Shortest subsequence kept after a pigeonhole step.
    pub min_len: usize,
    pub realized: RealizedConfig,
}

impl Default for HahnBanachConfig {
    fn default() -> Self {
        HahnBanachConfig {
            tol: 1e-9,
            min_len: 16,
            realized: RealizedConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestrictionMismatch {
    pub index: usize,
    pub extension: String,
    pub target: String,
}

#[derive(Debug)]
pub struct HahnBanachExtension<S: MetricSpace> {
    /// The limit along the selected subsequence.
    pub functional: RealizedFunctional<S>,
    /// Indices into the witness list.
    pub selected: Vec<usize>,
    /// Number of probe radii processed.
    pub levels: usize,
    pub audit: Verdict<RestrictionMismatch>,
}

/// Extends `h`, known on a subset `Y` as the limit along `witnesses` (points
/// of `Y`), to the whole space.
///
/// Probes are grouped by integer radius `k = 1, 2, ...` around the base
/// point. For exact metrics each level keeps the witnesses whose restriction
/// to the probes of radius `<= k` is the lexicographically smallest one
/// still recurring in the second half of the current subsequence. For float
/// metrics the witness values on each probe must form a Cauchy tail instead.
/// The result is audited against `h` on `y_samples`.
pub fn hahn_banach_extend<S, H>(
    space: &S,
    witnesses: Vec<S::Point>,
    h: &H,
    probes: &[S::Point],
    y_samples: &[S::Point],
    config: HahnBanachConfig,
) -> Result<HahnBanachExtension<S>>
where
    S: MetricSpace,
    S::Point: 'static,
    H: Functional<S> + ?Sized,
{
    if witnesses.len() < config.min_len {
        return Err(Error::Precondition(format!(
            "need at least {} witnesses",
            config.min_len
        )));
    }
    let x0 = space.base_point();
    let radii = probes
        .iter()
        .map(|p| Ok(space.distance(&x0, p)?.to_f64().ceil().max(1.0) as usize))
        .collect::<Result<Vec<_>>>()?;
    let levels = radii.iter().copied().max().unwrap_or(0);
    let exact = <S::Scalar as Scalar>::KIND == ScalarKind::Exact;
    let mut remaining: Vec<usize> = (0..witnesses.len()).collect();
    for k in 1..=levels {
        let level_probes: Vec<&S::Point> = probes
            .iter()
            .zip(&radii)
            .filter(|(_, &r)| r <= k)
            .map(|(p, _)| p)
            .collect();
        let keys = remaining
            .iter()
            .map(|&a| {
                level_probes
                    .iter()
                    .map(|p| space.point_functional_value(p, &witnesses[a]))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<Vec<S::Scalar>>>>()?;
        let tail = remaining.len() / 2;
        if exact {
            let chosen = keys[tail..]
                .iter()
                .min_by(|a, b| a.partial_cmp(b).expect("exact scalars are totally ordered"))
                .cloned()
                .expect("nonempty tail");
            remaining = remaining
                .iter()
                .zip(&keys)
                .filter(|(_, key)| **key == chosen)
                .map(|(&a, _)| a)
                .collect();
        } else {
            for j in 0..level_probes.len() {
                let column = keys[tail..].iter().map(|key| key[j].to_f64());
                let (lo, hi) = column.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                    (lo.min(v), hi.max(v))
                });
                if hi - lo > config.tol {
                    return Err(Error::BudgetExhausted {
                        what: format!(
                            "witness values at {:?} spread by {} at radius {k}",
                            level_probes[j],
                            hi - lo
                        ),
                        iterations: witnesses.len(),
                    });
                }
            }
        }
        if remaining.len() < config.min_len {
            return Err(Error::BudgetExhausted {
                what: format!(
                    "subsequence shrank to {} at radius {k}; reached radius {}",
                    remaining.len(),
                    k - 1
                ),
                iterations: witnesses.len(),
            });
        }
    }
    let points: Vec<S::Point> = remaining.iter().map(|&a| witnesses[a].clone()).collect();
    let functional = RealizedFunctional::from_points(points, config.realized);
    let mut audit = Verdict::Pass;
    for (index, y) in y_samples.iter().enumerate() {
        let ext = functional.eval(space, y)?;
        let target = h.eval(space, y)?;
        let gap = (ext - target).to_f64().abs();
        let ok = if exact {
            ext == target
        } else {
            gap <= config.tol
        };
        if !ok {
            audit = Verdict::Fail(RestrictionMismatch {
                index,
                extension: ext.to_text(),
                target: target.to_text(),
            });
            break;
        }
    }
    Ok(HahnBanachExtension {
        functional,
        selected: remaining,
        levels,
        audit,
    })
}

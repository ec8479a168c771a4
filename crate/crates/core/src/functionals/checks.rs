use num_complex::Complex64;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{Functional, MetricSpace, Verdict};
use crate::scalar::Scalar;
use crate::spaces::{hyperbolic_distance, lp_norm, HyperbolicModel, LpSpace};

use super::model::ModelFunctional;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LipschitzViolation {
    pub indices: (usize, usize),
    pub gap: String,
    pub distance: String,
}

/// Checks `|f(y) - f(z)| <= d(y, z) + tol` over every pair of `samples`.
pub fn lipschitz_check<S, F>(
    f: &F,
    space: &S,
    samples: &[S::Point],
    tol: S::Scalar,
) -> Result<Verdict<LipschitzViolation>>
where
    S: MetricSpace + ?Sized,
    F: Functional<S> + ?Sized,
{
    if samples.len() < 2 {
        return Err(Error::Precondition(
            "lipschitz check needs at least two samples".into(),
        ));
    }
    let values = samples
        .iter()
        .map(|y| f.eval(space, y))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            let d = space.distance(&samples[i], &samples[j])?;
            let gap = (values[i] - values[j]).abs();
            if gap > d + tol {
                return Ok(Verdict::Fail(LipschitzViolation {
                    indices: (i, j),
                    gap: gap.to_text(),
                    distance: d.to_text(),
                }));
            }
        }
    }
    Ok(Verdict::Pass)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityViolation {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub excess: f64,
}

/// Checks `f((x + y) / 2) <= (f(x) + f(y)) / 2 + tol` on `samples` seeded
/// random pairs of `dim`-vectors with coordinates in `[-scale, scale]`.
pub fn midpoint_convexity_check_fn(
    f: impl Fn(&[f64]) -> Result<f64>,
    dim: usize,
    samples: usize,
    scale: f64,
    seed: u64,
    tol: f64,
) -> Result<Verdict<ConvexityViolation>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-scale..scale)).collect();
        let y: Vec<f64> = (0..dim).map(|_| rng.gen_range(-scale..scale)).collect();
        if let Some(v) = midpoint_violation(&f, &x, &y, tol)? {
            return Ok(Verdict::Fail(v));
        }
    }
    Ok(Verdict::Pass)
}

pub(crate) fn midpoint_violation(
    f: &impl Fn(&[f64]) -> Result<f64>,
    x: &[f64],
    y: &[f64],
    tol: f64,
) -> Result<Option<ConvexityViolation>> {
    let mid: Vec<f64> = x.iter().zip(y).map(|(a, b)| 0.5 * (a + b)).collect();
    let excess = f(&mid)? - 0.5 * (f(x)? + f(y)?);
    Ok((excess > tol).then(|| ConvexityViolation {
        x: x.to_vec(),
        y: y.to_vec(),
        excess,
    }))
}

/// Midpoint convexity of a model functional in the normed space `space`.
pub fn midpoint_convexity_check(
    f: &ModelFunctional,
    space: &LpSpace,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Verdict<ConvexityViolation>> {
    if !f.is_normed_kind() {
        return Err(Error::Unsupported(format!(
            "{f:?} does not live on a normed space"
        )));
    }
    f.validate_lp(space.p)?;
    midpoint_convexity_check_fn(
        |x| f.eval_lp(space.p, x),
        space.dim,
        samples,
        5.0,
        seed,
        tol,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormEstimate {
    /// `(radius, max |f(x)| / d(x0, x) over the sampled sphere)`.
    pub per_radius: Vec<(f64, f64)>,
    /// Running maximum of the ratios: a nondecreasing lower bound.
    pub running: Vec<f64>,
    pub estimate: f64,
}

/// Lower bounds for `sup_{x != x0} |f(x)| / d(x0, x)` from sampled spheres.
/// `sphere(r)` returns sample points at distance `r` from the base point.
pub fn functional_norm_estimate<S, F>(
    f: &F,
    space: &S,
    schedule: &[f64],
    sphere: impl Fn(f64) -> Vec<S::Point>,
) -> Result<NormEstimate>
where
    S: MetricSpace + ?Sized,
    F: Functional<S> + ?Sized,
{
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "radius schedule must be nonempty and increasing".into(),
        ));
    }
    let x0 = space.base_point();
    let mut per_radius = Vec::with_capacity(schedule.len());
    let mut running = Vec::with_capacity(schedule.len());
    let mut best = 0.0f64;
    for &r in schedule {
        let mut ratio = 0.0f64;
        for x in sphere(r) {
            let d = space.distance(&x0, &x)?.to_f64();
            if d > 0.0 {
                ratio = ratio.max(f.eval(space, &x)?.to_f64().abs() / d);
            }
        }
        best = best.max(ratio);
        per_radius.push((r, ratio));
        running.push(best);
    }
    Ok(NormEstimate {
        per_radius,
        running,
        estimate: best,
    })
}

/// Spaces whose Busemann functionals are known in closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "space", rename_all = "snake_case")]
pub enum RecoveryCase {
    /// `Z` with the Busemann functionals `x -> x` and `x -> -x`.
    Integer { x: i64 },
    /// `R^d`, `d <= 3`, with `-<x, u>` over a grid of unit directions `u`.
    Euclidean { x: Vec<f64> },
    /// The disk with `DiskBusemann(zeta)` over a grid of `zeta`.
    Disk { z: [f64; 2] },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecoveryReport {
    pub supremum: f64,
    pub distance: f64,
    pub gap: f64,
    pub pass: bool,
}

fn unit_directions(dim: usize, grid: usize) -> Result<Vec<Vec<f64>>> {
    use std::f64::consts::PI;
    Ok(match dim {
        1 => vec![vec![1.0], vec![-1.0]],
        2 => (0..grid)
            .map(|k| {
                let a = 2.0 * PI * k as f64 / grid as f64;
                vec![a.cos(), a.sin()]
            })
            .collect(),
        3 => {
            // Fibonacci lattice on the sphere
            let golden = PI * (3.0 - 5f64.sqrt());
            (0..grid)
                .map(|k| {
                    let z = 1.0 - 2.0 * (k as f64 + 0.5) / grid as f64;
                    let rho = (1.0 - z * z).sqrt();
                    let a = golden * k as f64;
                    vec![rho * a.cos(), rho * a.sin(), z]
                })
                .collect()
        }
        d => return Err(Error::Unsupported(format!("direction grid for R^{d}"))),
    })
}

/// Compares `sup_h |h(x)|` over a grid of Busemann functionals with `d(x0, x)`.
pub fn distance_recovery_check(
    case: &RecoveryCase,
    grid: usize,
    tol: f64,
) -> Result<RecoveryReport> {
    let (supremum, distance) = match case {
        RecoveryCase::Integer { x } => {
            let sup = x.abs().max((-x).abs());
            (sup as f64, x.abs() as f64)
        }
        RecoveryCase::Euclidean { x } => {
            let sup = unit_directions(x.len(), grid)?
                .iter()
                .map(|u| -x.iter().zip(u).map(|(a, b)| a * b).sum::<f64>())
                .fold(0.0f64, |m, v| m.max(v.abs()));
            (sup, lp_norm(x, 2.0))
        }
        RecoveryCase::Disk { z } => {
            let disk = HyperbolicModel::disk();
            let z = Complex64::new(z[0], z[1]);
            let mut sup = 0.0f64;
            for k in 0..grid {
                let zeta =
                    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / grid as f64);
                sup = sup.max(
                    ModelFunctional::disk_busemann(zeta)
                        .eval_hyperbolic(&disk, z)?
                        .abs(),
                );
            }
            (
                sup,
                hyperbolic_distance(&disk, Complex64::new(0.0, 0.0), z)?,
            )
        }
    };
    let gap = (supremum - distance).abs();
    Ok(RecoveryReport {
        supremum,
        distance,
        gap,
        pass: gap <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::BallFunctional;
    use crate::groups::{CayleyGraph, Group, GroupElement};
    use crate::metric::{discrete_ball, PointFunctional};
    use crate::scalar::rat;

    #[test]
    fn point_functionals_are_lipschitz_exactly() {
        let z2 = CayleyGraph::standard(Group::Zd { dim: 2 }, 100);
        let pts: Vec<GroupElement> = discrete_ball(&z2, rat(3), 1000)
            .unwrap()
            .into_iter()
            .map(|p| p.0)
            .collect();
        let h = PointFunctional::new(&z2, GroupElement::Zd(vec![4, -9])).unwrap();
        assert!(lipschitz_check(&h, &z2, &pts, rat(0)).unwrap().is_pass());
    }

    #[test]
    fn corrupted_ball_functional_is_caught() {
        let z2 = CayleyGraph::standard(Group::Zd { dim: 2 }, 100);
        let pts: Vec<GroupElement> = discrete_ball(&z2, rat(2), 1000)
            .unwrap()
            .into_iter()
            .map(|p| p.0)
            .collect();
        let mut f =
            BallFunctional::from_point(&z2, rat(2), pts.clone(), &GroupElement::Zd(vec![5, 5]))
                .unwrap();
        f.values[4] += rat(2);
        let v = lipschitz_check(&f, &z2, &pts, rat(0)).unwrap();
        let w = v.witness().unwrap();
        assert!(w.indices.0 == 4 || w.indices.1 == 4);
    }

    #[test]
    fn concave_witness_fails_convexity() {
        let neg_norm = |x: &[f64]| Ok(-lp_norm(x, 2.0));
        let v = midpoint_violation(&neg_norm, &[1.0, 0.0], &[-1.0, 0.0], 1e-12)
            .unwrap()
            .unwrap();
        assert_eq!(v.excess, 1.0);
        assert!(
            !midpoint_convexity_check_fn(neg_norm, 3, 100, 5.0, 0, 1e-12)
                .unwrap()
                .is_pass()
        );
    }

    #[test]
    fn convexity_requires_normed_ambient() {
        let space = LpSpace::new(2.0, 2).unwrap();
        let r = midpoint_convexity_check(
            &ModelFunctional::HalfPlaneBusemannAtInfinity,
            &space,
            10,
            0,
            1e-12,
        );
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn norms_of_simple_functionals() {
        let space = LpSpace::new(2.0, 2).unwrap();
        let circle = |r: f64| -> Vec<Vec<f64>> {
            (0..360)
                .map(|k| {
                    let a = (k as f64).to_radians();
                    vec![r * a.cos(), r * a.sin()]
                })
                .collect()
        };
        let lin = ModelFunctional::Linear { v: vec![0.5, 0.0] };
        let est = functional_norm_estimate(&lin, &space, &[1.0, 2.0, 4.0], circle).unwrap();
        assert!((est.estimate - 0.5).abs() < 1e-12);
        let zero =
            functional_norm_estimate(&ModelFunctional::Zero, &space, &[1.0], circle).unwrap();
        assert_eq!(zero.estimate, 0.0);
        assert!(functional_norm_estimate(&lin, &space, &[], circle).is_err());
    }

    #[test]
    fn recovery_fixtures() {
        let r = distance_recovery_check(&RecoveryCase::Integer { x: 7 }, 0, 0.0).unwrap();
        assert!(r.pass && r.supremum == 7.0);
        let r =
            distance_recovery_check(&RecoveryCase::Euclidean { x: vec![3.0, 4.0] }, 10_000, 1e-9);
        let r = r.unwrap();
        assert!(r.gap < 1e-6, "{r:?}");
        let r =
            distance_recovery_check(&RecoveryCase::Disk { z: [0.6, 0.0] }, 10_000, 1e-6).unwrap();
        assert!(r.pass);
        assert!((r.distance - 4f64.ln()).abs() < 1e-14);
        let r = distance_recovery_check(
            &RecoveryCase::Euclidean {
                x: vec![1.0, -2.0, 2.0],
            },
            10_000,
            1e-2,
        )
        .unwrap();
        assert!(r.pass && r.gap > 0.0, "{r:?}");
        assert!(
            distance_recovery_check(&RecoveryCase::Euclidean { x: vec![1.0; 4] }, 10, 1e-6)
                .is_err()
        );
    }
}

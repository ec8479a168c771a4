use serde::Serialize;

use crate::error::{Error, Result};
use crate::functionals::{RealizedConfig, RealizedFunctional};
use crate::metric::MetricSpace;
use crate::scalar::{rat, rat_string, Rat};
use crate::spaces::{LpSpace, SpokePoint, SpokeRaySpace, StarPoint, StarTreeSpace};
use num_traits::Signed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureSpace {
    SpokeRay,
    StarTree,
}

/// `h_{gamma(t)}` and the Busemann limit `h_gamma` differ by `gap` at the head
/// `n > t`, a point at distance 1 from the hub.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpokeWitness {
    #[serde(with = "rat_string")]
    pub t: Rat,
    pub n: u64,
    pub point: SpokePoint,
    #[serde(with = "rat_string")]
    pub value_at_t: Rat,
    #[serde(with = "rat_string")]
    pub limit_value: Rat,
    #[serde(with = "rat_string")]
    pub gap: Rat,
    /// Witness index from which the limit at `point` is constant.
    pub limit_stabilized_at: usize,
}

/// On interval `n` at distance `s` from the hub, `h_{x_n}` and the pointwise
/// limit `h_{x0}` differ by `2s`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarWitness {
    pub n: u64,
    pub point: StarPoint,
    #[serde(with = "rat_string")]
    pub value_at_n: Rat,
    #[serde(with = "rat_string")]
    pub limit_value: Rat,
    #[serde(with = "rat_string")]
    pub gap: Rat,
    /// `h_{x_k}(point)` equals the limit for every `k > stabilizes_after`.
    pub stabilizes_after: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "space", rename_all = "snake_case")]
pub enum FailureWitness {
    SpokeRay(SpokeWitness),
    StarTree(StarWitness),
}

/// One witness per entry of `params`: ray parameters `t >= 1` for the spoke
/// space, interval indices `n >= 1` for the star tree. Points lie in the ball
/// of radius `r >= 1`.
pub fn horofunction_failure_witness(
    space: FailureSpace,
    r: Rat,
    params: &[i64],
) -> Result<Vec<FailureWitness>> {
    if r < rat(1) {
        return Err(Error::Precondition("ball radius must be at least 1".into()));
    }
    if params.iter().any(|&p| p < 1) {
        return Err(Error::Precondition("parameters must be at least 1".into()));
    }
    // before stabilizing, the witness values are constant for up to `max`
    // steps, so the window must be longer than that
    let max = params.iter().copied().max().unwrap_or(0) as usize;
    let window = max + 2;
    let config = RealizedConfig {
        budget: 2 * window + max,
        window,
        tol: 0.0,
    };
    match space {
        FailureSpace::SpokeRay => {
            let s = SpokeRaySpace;
            let busemann = RealizedFunctional::<SpokeRaySpace>::new(
                move |k| SpokeRaySpace.gamma(rat(k as i64)),
                config,
            );
            params
                .iter()
                .map(|&t| {
                    let n = t as u64 + 1;
                    let point = SpokePoint::head(n)?;
                    let value_at_t = s.point_functional_value(&point, &s.gamma(rat(t))?)?;
                    let limit = busemann.evaluate(&s, &point)?;
                    Ok(FailureWitness::SpokeRay(SpokeWitness {
                        t: rat(t),
                        n,
                        point,
                        value_at_t,
                        limit_value: limit.value,
                        gap: (value_at_t - limit.value).abs(),
                        limit_stabilized_at: limit.stabilized_at,
                    }))
                })
                .collect()
        }
        FailureSpace::StarTree => {
            let s = StarTreeSpace;
            // witness k is the endpoint of interval k + 1
            let limit = RealizedFunctional::<StarTreeSpace>::new(
                move |k| StarPoint::endpoint(k as u64 + 1),
                config,
            );
            params
                .iter()
                .map(|&n| {
                    let n = n as u64;
                    let depth = r.min(rat(n as i64));
                    let point = StarPoint::interval(n, depth)?;
                    let value_at_n = s.point_functional_value(&point, &StarPoint::endpoint(n)?)?;
                    let lim = limit.evaluate(&s, &point)?;
                    Ok(FailureWitness::StarTree(StarWitness {
                        n,
                        point,
                        value_at_n,
                        limit_value: lim.value,
                        gap: (value_at_n - lim.value).abs(),
                        stabilizes_after: lim.stabilized_at as u64,
                    }))
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonMembershipReport {
    /// `|h_z(1)| = 1` for every grid anchor with `|z| >= 1`.
    pub far_anchors_exact: bool,
    /// `h_z(1) + h_z(-1) = 2(1 - |z|)` for every grid anchor with `|z| <= 1`.
    pub near_identity_holds: bool,
    /// Minimum over the grid of `max(|h_z(1)|, |h_z(-1)|)`.
    pub lower_bound: f64,
    /// First anchor breaking one of the checks.
    pub counterexample: Option<f64>,
    pub pass: bool,
}

/// The zero function on the real line is not a limit of point functionals
/// `h_z(y) = |y - z| - |z|`: on `{-1, 1}` every `h_z` stays at distance 1
/// from 0.
pub fn euclidean_zero_nonmembership_check(grid: &[f64]) -> Result<NonMembershipReport> {
    if grid.is_empty() {
        return Err(Error::Precondition("empty anchor grid".into()));
    }
    let h = |z: f64, y: f64| (y - z).abs() - z.abs();
    let mut far_ok = true;
    let mut near_ok = true;
    let mut lower = f64::INFINITY;
    let mut counterexample = None;
    for &z in grid {
        let (a, b) = (h(z, 1.0), h(z, -1.0));
        let mut ok = true;
        if z.abs() >= 1.0 && a.abs() != 1.0 {
            far_ok = false;
            ok = false;
        }
        if z.abs() <= 1.0 && (a + b - 2.0 * (1.0 - z.abs())).abs() > 1e-12 {
            near_ok = false;
            ok = false;
        }
        if !ok && counterexample.is_none() {
            counterexample = Some(z);
        }
        lower = lower.min(a.abs().max(b.abs()));
    }
    Ok(NonMembershipReport {
        far_anchors_exact: far_ok,
        near_identity_holds: near_ok,
        lower_bound: lower,
        counterexample,
        pass: far_ok && near_ok && lower > 0.0,
    })
}

/// The Busemann functional of the ray `t -> (0, 2^k)` in the Euclidean plane.
/// It vanishes on the horizontal axis.
pub fn perpendicular_ray_functional(config: RealizedConfig) -> Result<RealizedFunctional<LpSpace>> {
    LpSpace::new(2.0, 2)?;
    Ok(RealizedFunctional::new(
        |k| Ok(vec![0.0, 2f64.powi(k.min(1000) as i32)]),
        config,
    ))
}

use serde::Serialize;

use super::maps::{MapKind, SelfMap};
use crate::error::{Error, Result};
use crate::functionals::{RealizedConfig, RealizedFunctional};
use crate::metric::{Functional, MetricSpace, Verdict};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvarianceViolation {
    pub index: usize,
    pub at_image: f64,
    pub at_point: f64,
}

#[derive(Debug)]
pub struct AlmostFixedReport<S: MetricSpace> {
    pub functional: RealizedFunctional<S>,
    /// `min_i d(x_i, f x_i)` over the witnesses.
    pub displacement_bound: f64,
    /// `max h(f x) - h(x)` over the grid, or `max |h(f x) - h(x)|` for isometries.
    pub max_defect: f64,
    pub audit: Verdict<InvarianceViolation>,
}

/// `h = lim h_{x_i}` for witnesses with `d(x_i, f x_i) <= eps_i`, audited for
/// `h(f x) <= h(x) + tol` on `grid` (equality within `tol` for isometries).
pub fn almost_fixed_invariant_functional<S, F>(
    space: &S,
    f: &F,
    witnesses: Vec<S::Point>,
    eps: &[f64],
    grid: &[S::Point],
    config: RealizedConfig,
    tol: f64,
) -> Result<AlmostFixedReport<S>>
where
    S: MetricSpace,
    S::Point: 'static,
    F: SelfMap<S> + ?Sized,
{
    if witnesses.is_empty() || witnesses.len() != eps.len() {
        return Err(Error::Precondition(format!(
            "{} witnesses for {} thresholds",
            witnesses.len(),
            eps.len()
        )));
    }
    let mut bound = f64::INFINITY;
    for (i, (x, &e)) in witnesses.iter().zip(eps).enumerate() {
        let d = space.distance(x, &f.apply(space, x)?)?.to_f64();
        if d > e {
            return Err(Error::Precondition(format!(
                "witness {i} has displacement {d} > {e}"
            )));
        }
        bound = bound.min(d);
    }
    let min_eps = eps.iter().copied().fold(f64::INFINITY, f64::min);
    if bound >= min_eps {
        return Err(Error::Precondition(format!(
            "displacement bound {bound} is not below {min_eps}"
        )));
    }
    let functional = RealizedFunctional::from_points(witnesses, config);
    let isometry = f.kind() == MapKind::Isometry;
    let mut max_defect = f64::NEG_INFINITY;
    let mut audit = Verdict::Pass;
    for (index, x) in grid.iter().enumerate() {
        let at_point = functional.eval(space, x)?.to_f64();
        let at_image = functional.eval(space, &f.apply(space, x)?)?.to_f64();
        let defect = if isometry {
            (at_image - at_point).abs()
        } else {
            at_image - at_point
        };
        max_defect = max_defect.max(defect);
        if defect > tol && audit.is_pass() {
            audit = Verdict::Fail(InvarianceViolation {
                index,
                at_image,
                at_point,
            });
        }
    }
    Ok(AlmostFixedReport {
        functional,
        displacement_bound: bound,
        max_defect,
        audit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{FnMap, MoebiusMap};
    use crate::functionals::ModelFunctional;
    use crate::metric::FiniteMetricSpace;
    use crate::spaces::{HyperbolicModel, LpSpace};
    use num_complex::Complex64;

    #[test]
    fn parabolic_half_plane() {
        let hp = HyperbolicModel::half_plane();
        let f = MoebiusMap::half_plane([1.0, 1.0, 0.0, 1.0]).unwrap();
        let witnesses: Vec<Complex64> =
            (0..80).map(|k| Complex64::new(0.0, 2f64.powi(k))).collect();
        let eps: Vec<f64> = (0..80).map(|k| 2f64.powi(1 - k)).collect();
        let grid: Vec<Complex64> = (0..100)
            .map(|k| Complex64::new((k % 10) as f64 - 4.5, 0.2 + (k / 10) as f64 * 0.6))
            .collect();
        let rep = almost_fixed_invariant_functional(
            &hp,
            &f,
            witnesses,
            &eps,
            &grid,
            RealizedConfig::default(),
            1e-9,
        )
        .unwrap();
        assert!(rep.audit.is_pass(), "{:?}", rep.audit);
        let busemann = ModelFunctional::HalfPlaneBusemannAtInfinity;
        for z in &grid[..10] {
            let v = rep.functional.eval(&hp, z).unwrap();
            assert!((v - busemann.eval(&hp, z).unwrap()).abs() < 1e-8);
        }
    }

    #[test]
    fn halving_on_the_line() {
        let line = LpSpace::new(2.0, 1).unwrap();
        let half = FnMap::<LpSpace>::new(MapKind::SemiContraction, |x| Ok(vec![x[0] / 2.0]));
        let witnesses: Vec<Vec<f64>> = (0..60).map(|k| vec![2f64.powi(-k)]).collect();
        let eps: Vec<f64> = (0..60).map(|k| 2f64.powi(1 - k)).collect();
        let grid: Vec<Vec<f64>> = (-10..=10).map(|k| vec![k as f64 * 0.7]).collect();
        let rep = almost_fixed_invariant_functional(
            &line,
            &half,
            witnesses,
            &eps,
            &grid,
            RealizedConfig::default(),
            1e-9,
        )
        .unwrap();
        assert!(rep.audit.is_pass());
        assert!((rep.functional.eval(&line, &vec![-3.0]).unwrap() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn fixed_point_in_a_finite_space() {
        use crate::rat;
        let m = vec![
            vec![rat(0), rat(1), rat(2)],
            vec![rat(1), rat(0), rat(1)],
            vec![rat(2), rat(1), rat(0)],
        ];
        let space = FiniteMetricSpace::new(m, 0).unwrap();
        // collapse towards point 1
        let f = FnMap::<FiniteMetricSpace>::new(MapKind::SemiContraction, |_| Ok(1));
        let rep = almost_fixed_invariant_functional(
            &space,
            &f,
            vec![1; 10],
            &[0.5; 10],
            &[0, 1, 2],
            RealizedConfig {
                window: 4,
                ..Default::default()
            },
            0.0,
        )
        .unwrap();
        assert!(rep.audit.is_pass());
        assert!(almost_fixed_invariant_functional(
            &space,
            &f,
            vec![0],
            &[0.5],
            &[0],
            RealizedConfig::default(),
            0.0
        )
        .is_err());
    }
}

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{Functional, MetricSpace, Verdict};
use crate::scalar::Scalar;
use num_traits::Signed;

/// The closed-form functionals of `Z` used by the reduced classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "n", rename_all = "snake_case")]
pub enum ZFunctional {
    /// `h_n(x) = |x - n| - |n|`.
    Point(i64),
    /// `x -> x`, the limit of `h_n` as `n -> -inf`.
    Identity,
    /// `x -> -x`, the limit of `h_n` as `n -> +inf`.
    NegIdentity,
}

impl ZFunctional {
    pub fn eval(self, x: i64) -> i64 {
        match self {
            ZFunctional::Point(n) => (x - n).abs() - n.abs(),
            ZFunctional::Identity => x,
            ZFunctional::NegIdentity => -x,
        }
    }
}

/// `sup_x |a(x) - b(x)|`, or `None` when unbounded.
pub fn sup_difference_z(a: ZFunctional, b: ZFunctional) -> Option<i64> {
    use ZFunctional::*;
    match (a, b) {
        (Point(n), Point(m)) => Some((n - m).abs() + (m.abs() - n.abs()).abs()),
        (Identity, Identity) | (NegIdentity, NegIdentity) => Some(0),
        _ => None,
    }
}

/// Partition into bounded-difference classes, each listed by input index.
/// Classes are ordered by their first member.
pub fn reduced_classify_z(functionals: &[ZFunctional]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, &f) in functionals.iter().enumerate() {
        match classes
            .iter_mut()
            .find(|c| sup_difference_z(functionals[c[0]], f).is_some())
        {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivergenceReport {
    /// `(radius, sup of |f - g| over the samples at that radius)`.
    pub sups: Vec<(f64, f64)>,
    pub threshold: f64,
    /// Heuristic verdict: the last sup reached the threshold.
    pub likely_unbounded: bool,
}

/// Growing-ball estimate of `sup |f - g|`. Finite data cannot decide
/// boundedness; the verdict is a heuristic.
pub fn divergence_heuristic<S, F, G>(
    f: &F,
    g: &G,
    space: &S,
    radii: &[f64],
    samples: impl Fn(f64) -> Vec<S::Point>,
    threshold: f64,
) -> Result<DivergenceReport>
where
    S: MetricSpace + ?Sized,
    F: Functional<S> + ?Sized,
    G: Functional<S> + ?Sized,
{
    if radii.is_empty() {
        return Err(Error::Precondition("no radii".into()));
    }
    let mut sups = Vec::with_capacity(radii.len());
    let mut running = 0.0f64;
    for &r in radii {
        for y in samples(r) {
            running = running.max((f.eval(space, &y)? - g.eval(space, &y)?).to_f64().abs());
        }
        sups.push((r, running));
    }
    Ok(DivergenceReport {
        sups,
        threshold,
        likely_unbounded: running >= threshold,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointViolation {
    pub index: usize,
    pub difference: String,
    pub bound: String,
}

/// Checks `|h(g^-1 x) - h(x)| <= d(g^-1 x0, x0) + tol` over `samples`.
pub fn reduced_fixed_point_audit<S, F>(
    space: &S,
    g_inv: impl Fn(&S::Point) -> Result<S::Point>,
    h: &F,
    samples: &[S::Point],
    tol: S::Scalar,
) -> Result<Verdict<FixedPointViolation>>
where
    S: MetricSpace + ?Sized,
    F: Functional<S> + ?Sized,
{
    let x0 = space.base_point();
    let bound = space.distance(&g_inv(&x0)?, &x0)?;
    for (index, x) in samples.iter().enumerate() {
        let diff = h.eval(space, &g_inv(x)?)? - h.eval(space, x)?;
        let diff = diff.abs();
        if diff > bound + tol {
            return Ok(Verdict::Fail(FixedPointViolation {
                index,
                difference: diff.to_text(),
                bound: bound.to_text(),
            }));
        }
    }
    Ok(Verdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::ModelFunctional;
    use crate::groups::{CayleyGraph, Group, GroupElement};
    use crate::scalar::rat;
    use crate::spaces::HyperbolicModel;
    use num_complex::Complex64;
    use ZFunctional::*;

    #[test]
    fn closed_form_matches_brute_force() {
        for n in -6..=6 {
            for m in -6..=6 {
                let brute = (-60..=60)
                    .map(|x| (Point(n).eval(x) - Point(m).eval(x)).abs())
                    .max()
                    .unwrap();
                assert_eq!(
                    sup_difference_z(Point(n), Point(m)),
                    Some(brute),
                    "n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn classification_fixtures() {
        assert_eq!(
            reduced_classify_z(&[Point(0), Point(5), Identity, NegIdentity]),
            vec![vec![0, 1], vec![2], vec![3]]
        );
        assert_eq!(reduced_classify_z(&[Point(3), Point(3)]).len(), 1);
        assert_eq!(reduced_classify_z(&[Identity, NegIdentity]).len(), 2);
    }

    #[test]
    fn divergence_heuristic_labels() {
        let z = CayleyGraph::standard(Group::Zd { dim: 1 }, 10_000);
        let id = |p: &GroupElement| match p {
            GroupElement::Zd(v) => Ok(rat(v[0])),
            _ => unreachable!(),
        };
        let neg = |p: &GroupElement| id(p).map(|v| -v);
        let shell = |r: f64| {
            vec![
                GroupElement::Zd(vec![r as i64]),
                GroupElement::Zd(vec![-(r as i64)]),
            ]
        };
        let rep = divergence_heuristic(&id, &neg, &z, &[1.0, 10.0, 100.0], shell, 50.0).unwrap();
        assert!(rep.likely_unbounded);
        assert_eq!(rep.sups.last().unwrap().1, 200.0);
        let rep = divergence_heuristic(&id, &id, &z, &[1.0, 10.0, 100.0], shell, 50.0).unwrap();
        assert!(!rep.likely_unbounded);
    }

    #[test]
    fn fixed_point_fixtures() {
        let z = CayleyGraph::standard(Group::Zd { dim: 1 }, 10_000);
        let step_back = |p: &GroupElement| match p {
            GroupElement::Zd(v) => Ok(GroupElement::Zd(vec![v[0] - 1])),
            _ => unreachable!(),
        };
        let neg = |p: &GroupElement| match p {
            GroupElement::Zd(v) => Ok(rat(-v[0])),
            _ => unreachable!(),
        };
        let samples: Vec<GroupElement> = (-20..=20).map(|n| GroupElement::Zd(vec![n])).collect();
        assert!(
            reduced_fixed_point_audit(&z, step_back, &neg, &samples, rat(0))
                .unwrap()
                .is_pass()
        );
        let twice = |p: &GroupElement| match p {
            GroupElement::Zd(v) => Ok(rat(-2 * v[0])),
            _ => unreachable!(),
        };
        assert!(
            !reduced_fixed_point_audit(&z, step_back, &twice, &samples, rat(0))
                .unwrap()
                .is_pass()
        );

        let hp = HyperbolicModel::half_plane();
        let shift = |z: &Complex64| Ok(z - 1.0);
        let pts: Vec<Complex64> = (0..50)
            .map(|k| Complex64::new(k as f64 * 0.7 - 10.0, 0.1 + k as f64 * 0.3))
            .collect();
        let h = ModelFunctional::HalfPlaneBusemannAtInfinity;
        assert!(reduced_fixed_point_audit(&hp, shift, &h, &pts, 1e-12)
            .unwrap()
            .is_pass());
    }
}

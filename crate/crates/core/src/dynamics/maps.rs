use num_traits::Signed;
use serde::Serialize;

use crate::error::Result;
use crate::groups::{CayleyGraph, GroupElement};
use crate::metric::{MetricSpace, Verdict};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    SemiContraction,
    Isometry,
}

/// A 1-Lipschitz self-map of a metric space.
pub trait SelfMap<S: MetricSpace + ?Sized>: Send + Sync {
    fn apply(&self, space: &S, x: &S::Point) -> Result<S::Point>;

    fn kind(&self) -> MapKind;

    /// `a_k = d(x0, f^k(x0))` for `k = 0..=n`.
    fn displacements(&self, space: &S, x0: &S::Point, n: usize) -> Result<Vec<S::Scalar>> {
        let mut out = Vec::with_capacity(n + 1);
        let mut x = x0.clone();
        out.push(space.distance(x0, x0)?);
        for _ in 0..n {
            x = self.apply(space, &x)?;
            out.push(space.distance(x0, &x)?);
        }
        Ok(out)
    }

    /// Closed-form translation number, when known.
    fn translation_length(&self) -> Option<f64> {
        None
    }
}

/// A self-map given by a closure.
pub struct FnMap<S: MetricSpace + ?Sized> {
    f: Box<dyn Fn(&S::Point) -> Result<S::Point> + Send + Sync>,
    kind: MapKind,
}

impl<S: MetricSpace + ?Sized> FnMap<S> {
    pub fn new(
        kind: MapKind,
        f: impl Fn(&S::Point) -> Result<S::Point> + Send + Sync + 'static,
    ) -> Self {
        FnMap {
            f: Box::new(f),
            kind,
        }
    }
}

impl<S: MetricSpace + ?Sized> SelfMap<S> for FnMap<S> {
    fn apply(&self, _space: &S, x: &S::Point) -> Result<S::Point> {
        (self.f)(x)
    }

    fn kind(&self) -> MapKind {
        self.kind
    }
}

/// Left translation `x -> g x` of a Cayley graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupTranslation {
    pub g: GroupElement,
}

impl SelfMap<CayleyGraph> for GroupTranslation {
    fn apply(&self, space: &CayleyGraph, x: &GroupElement) -> Result<GroupElement> {
        space.group.multiply(&self.g, x)
    }

    fn kind(&self) -> MapKind {
        MapKind::Isometry
    }

    fn displacements(
        &self,
        space: &CayleyGraph,
        x0: &GroupElement,
        n: usize,
    ) -> Result<Vec<crate::Rat>> {
        // d(x0, g^k x0) = |x0^-1 g^k x0|
        let x0_inv = space.group.inverse(x0)?;
        let mut out = Vec::with_capacity(n + 1);
        let mut gk = space.group.identity();
        for k in 0..=n {
            if k > 0 {
                gk = space.group.multiply(&gk, &self.g)?;
            }
            let conj = space
                .group
                .multiply(&space.group.multiply(&x0_inv, &gk)?, x0)?;
            out.push(crate::rat(space.word_length(&conj)? as i64));
        }
        Ok(out)
    }
}

/// `outer . inner`.
pub struct Composition<'a, S: MetricSpace + ?Sized> {
    pub outer: &'a dyn SelfMap<S>,
    pub inner: &'a dyn SelfMap<S>,
}

impl<S: MetricSpace + ?Sized> SelfMap<S> for Composition<'_, S> {
    fn apply(&self, space: &S, x: &S::Point) -> Result<S::Point> {
        self.outer.apply(space, &self.inner.apply(space, x)?)
    }

    fn kind(&self) -> MapKind {
        if self.outer.kind() == MapKind::Isometry && self.inner.kind() == MapKind::Isometry {
            MapKind::Isometry
        } else {
            MapKind::SemiContraction
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MapViolation {
    pub indices: (usize, usize),
    pub before: String,
    pub after: String,
}

/// Checks `d(f x, f y) <= d(x, y) + tol` on all sample pairs, and equality
/// within `tol` for declared isometries.
pub fn audit_self_map<S, F>(
    space: &S,
    f: &F,
    samples: &[S::Point],
    tol: S::Scalar,
) -> Result<Verdict<MapViolation>>
where
    S: MetricSpace + ?Sized,
    F: SelfMap<S> + ?Sized,
{
    let images = samples
        .iter()
        .map(|x| f.apply(space, x))
        .collect::<Result<Vec<_>>>()?;
    let isometry = f.kind() == MapKind::Isometry;
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            let before = space.distance(&samples[i], &samples[j])?;
            let after = space.distance(&images[i], &images[j])?;
            let bad = if isometry {
                (after - before).abs() > tol
            } else {
                after > before + tol
            };
            if bad {
                return Ok(Verdict::Fail(MapViolation {
                    indices: (i, j),
                    before: before.to_text(),
                    after: after.to_text(),
                }));
            }
        }
    }
    Ok(Verdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FiniteGroup, GeneratingSet, Group};
    use crate::metric::discrete_ball;
    use crate::rat;
    use crate::spaces::LpSpace;

    #[test]
    fn translations_are_isometries() {
        let h = CayleyGraph::standard(Group::Heisenberg, 40);
        let pts: Vec<GroupElement> = discrete_ball(&h, rat(2), 1000)
            .unwrap()
            .into_iter()
            .map(|p| p.0)
            .collect();
        let t = GroupTranslation {
            g: GroupElement::Heisenberg([1, -1, 2]),
        };
        assert!(audit_self_map(&h, &t, &pts, rat(0)).unwrap().is_pass());
    }

    #[test]
    fn halving_is_a_semi_contraction_but_not_an_isometry() {
        let line = LpSpace::new(2.0, 1).unwrap();
        let pts: Vec<Vec<f64>> = (-5..=5).map(|k| vec![k as f64]).collect();
        let half = FnMap::<LpSpace>::new(MapKind::SemiContraction, |x| Ok(vec![x[0] / 2.0]));
        assert!(audit_self_map(&line, &half, &pts, 0.0).unwrap().is_pass());
        let fake = FnMap::<LpSpace>::new(MapKind::Isometry, |x| Ok(vec![x[0] / 2.0]));
        assert!(!audit_self_map(&line, &fake, &pts, 0.0).unwrap().is_pass());
        let double = FnMap::<LpSpace>::new(MapKind::SemiContraction, |x| Ok(vec![x[0] * 2.0]));
        assert!(!audit_self_map(&line, &double, &pts, 0.0).unwrap().is_pass());
    }

    #[test]
    fn conjugated_displacements() {
        let c12 = Group::Finite(FiniteGroup::cyclic(12).unwrap());
        let gens = GeneratingSet::new(&c12, vec![GroupElement::Finite(1)]).unwrap();
        let space = CayleyGraph::new(c12, gens, 12);
        let rot = GroupTranslation {
            g: GroupElement::Finite(3),
        };
        let d = rot
            .displacements(&space, &GroupElement::Finite(5), 4)
            .unwrap();
        assert_eq!(d, vec![rat(0), rat(3), rat(6), rat(3), rat(0)]);
    }
}

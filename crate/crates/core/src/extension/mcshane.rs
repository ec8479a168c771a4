use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{Functional, MetricSpace};
use crate::scalar::Scalar;

/// A 1-Lipschitz function on a subset `A`. For an infinite `A` the domain is a
/// finite cover with every point of `A` within `cover_radius` of it.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFunctional<P, T> {
    pub domain: Vec<P>,
    pub values: Vec<T>,
    pub cover_radius: T,
}

impl<P: Clone + PartialEq + std::fmt::Debug, T: Scalar> PartialFunctional<P, T> {
    /// A finite domain, checked over all pairs with zero tolerance.
    pub fn new<S>(space: &S, domain: Vec<P>, values: Vec<T>) -> Result<Self>
    where
        S: MetricSpace<Point = P, Scalar = T> + ?Sized,
    {
        Self::with_tolerance(space, domain, values, T::zero())
    }

    pub fn with_tolerance<S>(space: &S, domain: Vec<P>, values: Vec<T>, tol: T) -> Result<Self>
    where
        S: MetricSpace<Point = P, Scalar = T> + ?Sized,
    {
        let f = PartialFunctional {
            domain,
            values,
            cover_radius: T::zero(),
        };
        f.check(space, tol)?;
        Ok(f)
    }

    /// A finite cover of an infinite domain.
    pub fn covering<S>(
        space: &S,
        cover: Vec<P>,
        values: Vec<T>,
        cover_radius: T,
        tol: T,
    ) -> Result<Self>
    where
        S: MetricSpace<Point = P, Scalar = T> + ?Sized,
    {
        if cover_radius < T::zero() {
            return Err(Error::InvalidParameter("negative cover radius".into()));
        }
        let mut f = Self::with_tolerance(space, cover, values, tol)?;
        f.cover_radius = cover_radius;
        Ok(f)
    }

    fn check<S>(&self, space: &S, tol: T) -> Result<()>
    where
        S: MetricSpace<Point = P, Scalar = T> + ?Sized,
    {
        if self.domain.len() != self.values.len() {
            return Err(Error::InvalidParameter(format!(
                "{} domain points but {} values",
                self.domain.len(),
                self.values.len()
            )));
        }
        if self.domain.is_empty() {
            return Err(Error::InvalidParameter("empty domain".into()));
        }
        for i in 0..self.domain.len() {
            for j in i + 1..self.domain.len() {
                let d = space.distance(&self.domain[i], &self.domain[j])?;
                let gap = (self.values[i] - self.values[j]).abs();
                if gap > d + tol {
                    return Err(Error::NotLipschitz {
                        a: format!("{:?}", self.domain[i]),
                        b: format!("{:?}", self.domain[j]),
                        gap: gap.to_text(),
                        dist: d.to_text(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn value_at(&self, a: &P) -> Option<T> {
        self.domain
            .iter()
            .position(|p| p == a)
            .map(|i| self.values[i])
    }
}

impl<P: Serialize, T: Scalar> Serialize for PartialFunctional<P, T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PartialFunctional", 2)?;
        st.serialize_field("domain", &self.domain)?;
        let values: Vec<String> = self.values.iter().map(|v| v.to_text()).collect();
        st.serialize_field("values", &values)?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum McShaneMode {
    /// `sup_a f(a) - d(a, b)`, the smallest 1-Lipschitz extension.
    Sup,
    /// `inf_a f(a) + d(a, b)`, the largest 1-Lipschitz extension.
    Inf,
}

#[derive(Debug, Clone)]
pub struct McShaneExtension<'a, P, T> {
    pub f: &'a PartialFunctional<P, T>,
    pub mode: McShaneMode,
}

impl<P, T: Scalar> McShaneExtension<'_, P, T> {
    /// Bound on the distance to the extension over the full domain: the
    /// summand is 2-Lipschitz in `a`.
    pub fn error_bound(&self) -> T {
        self.f.cover_radius + self.f.cover_radius
    }
}

pub fn mcshane_extend<P, T>(
    f: &PartialFunctional<P, T>,
    mode: McShaneMode,
) -> McShaneExtension<'_, P, T> {
    McShaneExtension { f, mode }
}

impl<S> Functional<S> for McShaneExtension<'_, S::Point, S::Scalar>
where
    S: MetricSpace + ?Sized,
{
    fn eval(&self, space: &S, b: &S::Point) -> Result<S::Scalar> {
        let terms = self
            .f
            .domain
            .par_iter()
            .zip(self.f.values.par_iter())
            .map(|(a, &fa)| {
                let d = space.distance(a, b)?;
                Ok(match self.mode {
                    McShaneMode::Sup => fa - d,
                    McShaneMode::Inf => fa + d,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let pick = match self.mode {
            McShaneMode::Sup => S::Scalar::max_of,
            McShaneMode::Inf => S::Scalar::min_of,
        };
        terms
            .into_iter()
            .reduce(pick)
            .ok_or_else(|| Error::InvalidParameter("empty domain".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::lipschitz_check;
    use crate::metric::FiniteMetricSpace;
    use crate::scalar::{frac, rat, Rat};
    use crate::spaces::{SpokePoint, SpokeRaySpace};
    use num_traits::Signed;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_point_formulas() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let space = FiniteMetricSpace::random(7, 9, 2, &mut rng);
        let f = PartialFunctional::new(&space, vec![space.base_index()], vec![rat(0)]).unwrap();
        for b in space.points() {
            let d = space.distance(&space.base_index(), &b).unwrap();
            assert_eq!(
                mcshane_extend(&f, McShaneMode::Sup)
                    .eval(&space, &b)
                    .unwrap(),
                -d
            );
            assert_eq!(
                mcshane_extend(&f, McShaneMode::Inf)
                    .eval(&space, &b)
                    .unwrap(),
                d
            );
        }
    }

    #[test]
    fn full_domain_is_reproduced() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let space = FiniteMetricSpace::random(6, 9, 3, &mut rng);
        let values: Vec<Rat> = space
            .points()
            .iter()
            .map(|&p| space.distance(&p, &4).unwrap() - rat(1))
            .collect();
        let f = PartialFunctional::new(&space, space.points(), values.clone()).unwrap();
        for mode in [McShaneMode::Sup, McShaneMode::Inf] {
            let ext = mcshane_extend(&f, mode);
            for p in space.points() {
                assert_eq!(ext.eval(&space, &p).unwrap(), values[p]);
            }
        }
    }

    #[test]
    fn rejects_non_lipschitz_input() {
        let space =
            FiniteMetricSpace::new(vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]], 0).unwrap();
        let err = PartialFunctional::new(&space, vec![0, 1], vec![rat(0), frac(3, 2)]).unwrap_err();
        assert!(matches!(err, Error::NotLipschitz { ref gap, .. } if gap == "3/2"));
    }

    #[test]
    fn covered_ray_domain() {
        // A = the ray, f = -t; cover by integer points
        let space = SpokeRaySpace;
        let cover: Vec<SpokePoint> = (0..=40).map(|t| space.gamma(rat(t)).unwrap()).collect();
        let values: Vec<Rat> = (0..=40).map(|t| rat(-t)).collect();
        let f = PartialFunctional::covering(&space, cover, values, frac(1, 2), rat(0)).unwrap();
        let ext = mcshane_extend(&f, McShaneMode::Inf);
        assert_eq!(ext.error_bound(), rat(1));
        let y = space.gamma(frac(7, 2)).unwrap();
        let v = ext.eval(&space, &y).unwrap();
        assert!((v - frac(-7, 2)).abs() <= ext.error_bound());
        let heads: Vec<SpokePoint> = (1..10).map(|n| SpokePoint::head(n).unwrap()).collect();
        assert!(lipschitz_check(&ext, &space, &heads, rat(0))
            .unwrap()
            .is_pass());
    }
}

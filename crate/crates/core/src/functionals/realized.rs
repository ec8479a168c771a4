//! Functionals defined as pointwise limits `lim d(y, x_k) - d(x0, x_k)` along
//! a witness sequence.

use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::metric::{Functional, MetricSpace};
use crate::scalar::{Scalar, ScalarKind};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealizedConfig {
    /// Maximum number of witnesses examined per evaluation.
    pub budget: usize,
    /// Exact metrics: length of the constant run that counts as stabilized.
    pub window: usize,
    /// Float metrics: stop once successive values differ by less than `tol / 10`.
    pub tol: f64,
}

impl Default for RealizedConfig {
    fn default() -> Self {
        RealizedConfig {
            budget: 100_000,
            window: 128,
            tol: 1e-9,
        }
    }
}

/// A limit value with its stabilization index. `residual` is the last
/// successive difference for float metrics and zero for exact ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Realized<T> {
    pub value: T,
    pub residual: f64,
    pub stabilized_at: usize,
}

type Witness<P> = Box<dyn Fn(usize) -> Result<P> + Send + Sync>;

pub struct RealizedFunctional<S: MetricSpace> {
    witness: Witness<S::Point>,
    pub config: RealizedConfig,
    cache: Mutex<Vec<(S::Point, Realized<S::Scalar>)>>,
}

impl<S: MetricSpace> std::fmt::Debug for RealizedFunctional<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RealizedFunctional")
            .field("config", &self.config)
            .finish_non_exhaustive()
    }
}

impl<S: MetricSpace> RealizedFunctional<S> {
    /// `witness(k)` is the `k`-th point `x_k`, `k = 0, 1, ...`.
    pub fn new(
        witness: impl Fn(usize) -> Result<S::Point> + Send + Sync + 'static,
        config: RealizedConfig,
    ) -> Self {
        RealizedFunctional {
            witness: Box::new(witness),
            config,
            cache: Mutex::new(Vec::new()),
        }
    }

    /// Witnesses taken from a finite list; the budget is capped at its length.
    pub fn from_points(points: Vec<S::Point>, mut config: RealizedConfig) -> Self
    where
        S::Point: 'static,
    {
        config.budget = config.budget.min(points.len());
        Self::new(
            move |k| {
                points
                    .get(k)
                    .cloned()
                    .ok_or_else(|| Error::BudgetExhausted {
                        what: "witness list exhausted".into(),
                        iterations: k,
                    })
            },
            config,
        )
    }

    pub fn witness(&self, k: usize) -> Result<S::Point> {
        (self.witness)(k)
    }

    /// Limit evaluation at `y`; an explicit budget error if the sequence does
    /// not settle within `config.budget` witnesses.
    pub fn evaluate(&self, space: &S, y: &S::Point) -> Result<Realized<S::Scalar>> {
        if let Some(hit) = self
            .cache
            .lock()
            .expect("cache lock")
            .iter()
            .find(|(p, _)| p == y)
        {
            return Ok(hit.1);
        }
        let result = self.evaluate_uncached(space, y)?;
        self.cache
            .lock()
            .expect("cache lock")
            .push((y.clone(), result));
        Ok(result)
    }

    fn evaluate_uncached(&self, space: &S, y: &S::Point) -> Result<Realized<S::Scalar>> {
        let exact = <S::Scalar as Scalar>::KIND == ScalarKind::Exact;
        let mut prev: Option<S::Scalar> = None;
        let mut run_start = 0;
        for k in 0..self.config.budget {
            let x = self.witness(k)?;
            let v = space.point_functional_value(y, &x)?;
            if let Some(p) = prev {
                if exact {
                    if v != p {
                        run_start = k;
                    } else if k + 1 - run_start >= self.config.window {
                        return Ok(Realized {
                            value: v,
                            residual: 0.0,
                            stabilized_at: run_start,
                        });
                    }
                } else {
                    let diff = (v - p).to_f64().abs();
                    if diff < self.config.tol / 10.0 {
                        return Ok(Realized {
                            value: v,
                            residual: diff,
                            stabilized_at: k,
                        });
                    }
                }
            }
            prev = Some(v);
        }
        Err(Error::BudgetExhausted {
            what: format!("limit at {y:?} did not stabilize"),
            iterations: self.config.budget,
        })
    }
}

impl<S: MetricSpace> Functional<S> for RealizedFunctional<S> {
    fn eval(&self, space: &S, y: &S::Point) -> Result<S::Scalar> {
        self.evaluate(space, y).map(|r| r.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, rat};
    use crate::spaces::{SpokePoint, SpokeRaySpace};

    #[test]
    fn busemann_along_spoke_ray_stabilizes() {
        let space = SpokeRaySpace;
        let h = RealizedFunctional::<SpokeRaySpace>::new(
            |k| SpokePoint::ray(rat(k as i64)),
            RealizedConfig::default(),
        );
        for n in 1..=40u64 {
            let r = h.evaluate(&space, &SpokePoint::head(n).unwrap()).unwrap();
            assert_eq!(r.value, frac(-1, 2));
            assert_eq!(r.stabilized_at, n as usize);
        }
        let r = h
            .evaluate(&space, &SpokePoint::ray(frac(7, 2)).unwrap())
            .unwrap();
        assert_eq!(r.value, frac(-7, 2));
    }

    #[test]
    fn non_stabilizing_is_reported() {
        let space = SpokeRaySpace;
        let cfg = RealizedConfig {
            budget: 20,
            ..RealizedConfig::default()
        };
        let h = RealizedFunctional::<SpokeRaySpace>::new(|k| SpokePoint::ray(rat(k as i64)), cfg);
        assert!(matches!(
            h.evaluate(&space, &SpokePoint::Hub),
            Err(Error::BudgetExhausted { .. })
        ));
    }
}

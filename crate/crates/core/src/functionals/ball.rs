use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::metric::{Functional, MetricSpace};
use crate::scalar::{rat, rat_to_string, Rat};
use num_traits::Signed;

/// The exact restriction of a metric functional to a ball `B(x0, r)`.
///
/// `order` lists the ball's points canonically; `values[i]` is the value at
/// `order[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BallFunctional<P> {
    pub radius: Rat,
    pub order: Vec<P>,
    pub values: Vec<Rat>,
}

impl<P: Clone + PartialEq + std::fmt::Debug> BallFunctional<P> {
    /// Builds the restriction and checks its invariants exactly: zero at the
    /// base point, 1-Lipschitz, and bounded by the distance to the base point.
    pub fn new<S>(space: &S, radius: Rat, order: Vec<P>, values: Vec<Rat>) -> Result<Self>
    where
        S: MetricSpace<Point = P, Scalar = Rat> + ?Sized,
    {
        let f = Self::new_unchecked(radius, order, values)?;
        f.check_invariants(space)?;
        Ok(f)
    }

    pub fn new_unchecked(radius: Rat, order: Vec<P>, values: Vec<Rat>) -> Result<Self> {
        if order.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "{} points but {} values",
                order.len(),
                values.len()
            )));
        }
        Ok(BallFunctional {
            radius,
            order,
            values,
        })
    }

    /// `h_x` restricted to the given ball points.
    pub fn from_point<S>(space: &S, radius: Rat, order: Vec<P>, x: &P) -> Result<Self>
    where
        S: MetricSpace<Point = P, Scalar = Rat> + ?Sized,
    {
        let offset = space.distance(&space.base_point(), x)?;
        let values = order
            .iter()
            .map(|y| Ok(space.distance(y, x)? - offset))
            .collect::<Result<Vec<_>>>()?;
        Ok(BallFunctional {
            radius,
            order,
            values,
        })
    }

    pub fn check_invariants<S>(&self, space: &S) -> Result<()>
    where
        S: MetricSpace<Point = P, Scalar = Rat> + ?Sized,
    {
        let x0 = space.base_point();
        match self.order.iter().position(|p| *p == x0) {
            Some(i) if self.values[i] == rat(0) => {}
            Some(i) => {
                return Err(Error::InvalidParameter(format!(
                    "value at the base point is {}",
                    self.values[i]
                )))
            }
            None => {
                return Err(Error::InvalidParameter(
                    "ball does not contain the base point".into(),
                ))
            }
        }
        for (p, v) in self.order.iter().zip(&self.values) {
            let r = space.distance(&x0, p)?;
            if r > self.radius {
                return Err(Error::InvalidParameter(format!(
                    "{p:?} lies outside the ball"
                )));
            }
            if v.abs() > r {
                return Err(Error::InvalidParameter(format!(
                    "|h({p:?})| = {} exceeds d(x0, p) = {r}",
                    v.abs()
                )));
            }
        }
        for i in 0..self.order.len() {
            for j in i + 1..self.order.len() {
                let d = space.distance(&self.order[i], &self.order[j])?;
                let gap = (self.values[i] - self.values[j]).abs();
                if gap > d {
                    return Err(Error::NotLipschitz {
                        a: format!("{:?}", self.order[i]),
                        b: format!("{:?}", self.order[j]),
                        gap: rat_to_string(&gap),
                        dist: rat_to_string(&d),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn value_at(&self, y: &P) -> Result<Rat> {
        self.order
            .iter()
            .position(|p| p == y)
            .map(|i| self.values[i])
            .ok_or_else(|| {
                Error::Domain(format!(
                    "{y:?} is outside the ball of radius {}",
                    self.radius
                ))
            })
    }

    /// Smallest value over the points selected by `pred`.
    pub fn min_over(&self, mut pred: impl FnMut(&P) -> bool) -> Option<Rat> {
        self.order
            .iter()
            .zip(&self.values)
            .filter(|(p, _)| pred(p))
            .map(|(_, v)| *v)
            .min()
    }
}

impl<S> Functional<S> for BallFunctional<S::Point>
where
    S: MetricSpace<Scalar = Rat> + ?Sized,
{
    fn eval(&self, _space: &S, y: &S::Point) -> Result<Rat> {
        self.value_at(y)
    }
}

impl<P: Serialize> Serialize for BallFunctional<P> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BallFunctional", 3)?;
        st.serialize_field("radius", &rat_to_string(&self.radius))?;
        st.serialize_field("order", &self.order)?;
        let values: Vec<String> = self.values.iter().map(rat_to_string).collect();
        st.serialize_field("values", &values)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{CayleyGraph, Group, GroupElement};
    use crate::metric::discrete_ball;

    fn z_ball(r: i64) -> (CayleyGraph, Vec<GroupElement>) {
        let z = CayleyGraph::standard(Group::Zd { dim: 1 }, 1000);
        let pts = discrete_ball(&z, rat(r), 1000)
            .unwrap()
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        (z, pts)
    }

    #[test]
    fn restriction_of_point_functional() {
        let (z, pts) = z_ball(3);
        let x = GroupElement::Zd(vec![5]);
        let f = BallFunctional::from_point(&z, rat(3), pts.clone(), &x).unwrap();
        f.check_invariants(&z).unwrap();
        assert_eq!(f.value_at(&GroupElement::Zd(vec![3])).unwrap(), rat(-3));
        assert!(matches!(
            f.value_at(&GroupElement::Zd(vec![4])),
            Err(Error::Domain(_))
        ));
        assert_eq!(f.min_over(|_| true), Some(rat(-3)));
    }

    #[test]
    fn corrupted_values_rejected() {
        let (z, pts) = z_ball(2);
        let x = GroupElement::Zd(vec![-7]);
        let mut f = BallFunctional::from_point(&z, rat(2), pts, &x).unwrap();
        let i = f
            .order
            .iter()
            .position(|p| *p == GroupElement::Zd(vec![1]))
            .unwrap();
        f.values[i] += rat(2);
        assert!(BallFunctional::new(&z, f.radius, f.order.clone(), f.values.clone()).is_err());
    }

    #[test]
    fn json_shape() {
        let (z, pts) = z_ball(1);
        let f = BallFunctional::from_point(&z, rat(1), pts, &GroupElement::Zd(vec![4])).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"radius":"1/1","order":[[0],[-1],[1]],"values":["0/1","1/1","-1/1"]}"#
        );
    }
}

//! Intervals `[0, n]` for every `n >= 1`, all glued at `0` to a hub.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::scalar::{rat, rat_string, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StarPoint {
    Hub,
    Interval {
        n: u64,
        #[serde(with = "rat_string")]
        s: Rat,
    },
}

impl StarPoint {
    /// The point at distance `s` from the hub on interval `n`.
    pub fn interval(n: u64, s: Rat) -> Result<Self> {
        StarPoint::Interval { n, s }.normalized()
    }

    /// The far endpoint `x_n`.
    pub fn endpoint(n: u64) -> Result<Self> {
        Self::interval(n, rat(n as i64))
    }

    pub fn normalized(self) -> Result<Self> {
        match self {
            StarPoint::Interval { n: 0, .. } => {
                Err(Error::InvalidPoint("interval index must be >= 1".into()))
            }
            StarPoint::Interval { n, s } if s < rat(0) || s > rat(n as i64) => Err(
                Error::InvalidPoint(format!("parameter {s} outside [0, {n}]")),
            ),
            StarPoint::Interval { s, .. } if s == rat(0) => Ok(StarPoint::Hub),
            p => Ok(p),
        }
    }

    fn coords(&self) -> Result<(u64, Rat)> {
        match self.clone().normalized()? {
            StarPoint::Hub => Ok((0, rat(0))),
            StarPoint::Interval { n, s } => Ok((n, s)),
        }
    }
}

pub fn star_tree_distance(u: &StarPoint, v: &StarPoint) -> Result<Rat> {
    let (n, s) = u.coords()?;
    let (m, t) = v.coords()?;
    Ok(if n == m { (s - t).abs() } else { s + t })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StarTreeSpace;

impl MetricSpace for StarTreeSpace {
    type Point = StarPoint;
    type Scalar = Rat;

    fn distance(&self, a: &StarPoint, b: &StarPoint) -> Result<Rat> {
        star_tree_distance(a, b)
    }

    fn base_point(&self) -> StarPoint {
        StarPoint::Hub
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    #[test]
    fn endpoint_distances() {
        for n in 1..30u64 {
            let xn = StarPoint::endpoint(n).unwrap();
            assert_eq!(
                star_tree_distance(&xn, &StarPoint::Hub).unwrap(),
                rat(n as i64)
            );
            for m in 1..30u64 {
                let xm = StarPoint::endpoint(m).unwrap();
                let expected = if n == m { rat(0) } else { rat((n + m) as i64) };
                assert_eq!(star_tree_distance(&xn, &xm).unwrap(), expected);
            }
        }
    }

    #[test]
    fn same_interval() {
        let a = StarPoint::interval(5, rat(2)).unwrap();
        let b = StarPoint::interval(5, frac(9, 2)).unwrap();
        assert_eq!(star_tree_distance(&a, &b).unwrap(), frac(5, 2));
    }

    #[test]
    fn endpoint_shift_is_base_distance_off_interval() {
        for n in 1..12u64 {
            let xn = StarPoint::endpoint(n).unwrap();
            for m in (1..12u64).filter(|&m| m != n) {
                for k in 0..=(2 * m) {
                    let y = StarPoint::interval(m, frac(k as i64, 2)).unwrap();
                    let lhs = star_tree_distance(&xn, &y).unwrap() - rat(n as i64);
                    assert_eq!(lhs, star_tree_distance(&StarPoint::Hub, &y).unwrap());
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(StarPoint::interval(3, frac(7, 2)).is_err());
        assert!(StarPoint::interval(3, rat(-1)).is_err());
        assert!(StarPoint::interval(0, rat(0)).is_err());
        assert_eq!(StarPoint::interval(4, rat(0)).unwrap(), StarPoint::Hub);
    }
}

//! A geodesic ray with infinitely many spokes: heads at distance 1 from the
//! origin and 2 from each other, head `n` joined to ray point `n` by a
//! segment of length `n - 1/2`.
//!
//! The space is a metric graph. A point lies on a segment whose endpoints
//! are graph vertices (`Ray(k)` for integers `k >= 0`, `Head(n)` for `n >= 1`);
//! distances are the minimum of the direct route along a shared segment and
//! exit-through-endpoint routes combined with vertex distances. Vertex
//! distances enumerate the route families explicitly: along the ray, through
//! the hub, down the head's own spoke, or across another spoke head.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::scalar::{frac, rat, rat_string, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpokePoint {
    /// The ray origin, which is also the base point.
    Hub,
    Ray {
        #[serde(with = "rat_string")]
        t: Rat,
    },
    SpokeHead {
        n: u64,
    },
    /// Distance `s` along spoke `n`, measured from its head.
    SpokeInterior {
        n: u64,
        #[serde(with = "rat_string")]
        s: Rat,
    },
}

impl SpokePoint {
    /// `RayPoint(t)`; `t = 0` is the hub.
    pub fn ray(t: Rat) -> Result<Self> {
        SpokePoint::Ray { t }.normalized()
    }

    pub fn head(n: u64) -> Result<Self> {
        SpokePoint::SpokeHead { n }.normalized()
    }

    pub fn interior(n: u64, s: Rat) -> Result<Self> {
        SpokePoint::SpokeInterior { n, s }.normalized()
    }

    /// Checks ranges and maps `Ray { t: 0 }` to `Hub`.
    pub fn normalized(self) -> Result<Self> {
        match self {
            SpokePoint::Ray { t } if t < rat(0) => Err(Error::InvalidPoint(format!(
                "ray parameter {t} is negative"
            ))),
            SpokePoint::Ray { t } if t == rat(0) => Ok(SpokePoint::Hub),
            SpokePoint::SpokeHead { n: 0 } | SpokePoint::SpokeInterior { n: 0, .. } => {
                Err(Error::InvalidPoint("spoke index must be >= 1".into()))
            }
            SpokePoint::SpokeInterior { n, s } if s <= rat(0) || s >= spoke_length(n) => {
                Err(Error::InvalidPoint(format!(
                    "spoke {n} interior parameter {s} outside (0, {})",
                    spoke_length(n)
                )))
            }
            p => Ok(p),
        }
    }
}

pub fn spoke_length(n: u64) -> Rat {
    rat(n as i64) - frac(1, 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Vertex {
    Ray(u64),
    Head(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Segment {
    Ray(u64),
    Spoke(u64),
}

/// Where a point sits: its segment (if interior), the parameter along it, and
/// the endpoints with their offsets.
struct Location {
    segment: Option<(Segment, Rat)>,
    exits: Vec<(Vertex, Rat)>,
}

fn locate(p: &SpokePoint) -> Result<Location> {
    let p = p.clone().normalized()?;
    Ok(match p {
        SpokePoint::Hub => Location {
            segment: None,
            exits: vec![(Vertex::Ray(0), rat(0))],
        },
        SpokePoint::Ray { t } if t.is_integer() => Location {
            segment: None,
            exits: vec![(Vertex::Ray(t.to_integer() as u64), rat(0))],
        },
        SpokePoint::Ray { t } => {
            let k = t.floor().to_integer() as u64;
            Location {
                segment: Some((Segment::Ray(k), t)),
                exits: vec![
                    (Vertex::Ray(k), t - rat(k as i64)),
                    (Vertex::Ray(k + 1), rat(k as i64 + 1) - t),
                ],
            }
        }
        SpokePoint::SpokeHead { n } => Location {
            segment: None,
            exits: vec![(Vertex::Head(n), rat(0))],
        },
        SpokePoint::SpokeInterior { n, s } => Location {
            segment: Some((Segment::Spoke(n), s)),
            exits: vec![(Vertex::Head(n), s), (Vertex::Ray(n), spoke_length(n) - s)],
        },
    })
}

fn head_to_ray(a: u64, b: u64) -> Rat {
    let b_r = rat(b as i64);
    let a_r = rat(a as i64);
    let hub = rat(1) + b_r;
    let own_spoke = spoke_length(a) + (a_r - b_r).abs();
    // Cheapest other spoke m != a from the hub side: 2 + (m - 1/2) + |m - b|.
    let best_other = (1..=b.max(1) + 1)
        .filter(|&m| m != a)
        .map(|m| rat(2) + spoke_length(m) + (rat(m as i64) - b_r).abs())
        .min()
        .expect("at least one other spoke");
    hub.min(own_spoke).min(best_other)
}

fn vertex_distance(u: Vertex, v: Vertex) -> Rat {
    match (u, v) {
        (Vertex::Ray(a), Vertex::Ray(b)) => (rat(a as i64) - rat(b as i64)).abs(),
        (Vertex::Head(a), Vertex::Head(b)) if a == b => rat(0),
        (Vertex::Head(a), Vertex::Head(b)) => {
            let through_spokes =
                spoke_length(a) + (rat(a as i64) - rat(b as i64)).abs() + spoke_length(b);
            rat(2).min(through_spokes)
        }
        (Vertex::Head(a), Vertex::Ray(b)) | (Vertex::Ray(b), Vertex::Head(a)) => head_to_ray(a, b),
    }
}

/// Exact distance in the spoke-ray space.
pub fn spoke_ray_distance(u: &SpokePoint, v: &SpokePoint) -> Result<Rat> {
    let lu = locate(u)?;
    let lv = locate(v)?;
    let mut best: Option<Rat> = None;
    if let (Some((su, pu)), Some((sv, pv))) = (lu.segment, lv.segment) {
        if su == sv {
            best = Some((pu - pv).abs());
        }
    }
    for &(eu, ou) in &lu.exits {
        for &(ev, ov) in &lv.exits {
            let d = ou + vertex_distance(eu, ev) + ov;
            best = Some(best.map_or(d, |b| b.min(d)));
        }
    }
    Ok(best.expect("every point has an exit"))
}

/// The spoke-ray space with base point at the hub.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpokeRaySpace;

impl SpokeRaySpace {
    /// The geodesic ray `gamma(t)`.
    pub fn gamma(&self, t: Rat) -> Result<SpokePoint> {
        SpokePoint::ray(t)
    }
}

impl MetricSpace for SpokeRaySpace {
    type Point = SpokePoint;
    type Scalar = Rat;

    fn distance(&self, a: &SpokePoint, b: &SpokePoint) -> Result<Rat> {
        spoke_ray_distance(a, b)
    }

    fn base_point(&self) -> SpokePoint {
        SpokePoint::Hub
    }
}

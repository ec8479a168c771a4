//! JSON space descriptors: `{"type": ..., "params": {...}, "base": ...}`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::groups::{CayleyGraph, FiniteGroup, GeneratingSet, Group};
use crate::metric::{
    discrete_ball, validate_metric, validate_metric_sampled, FiniteMetricSpace, MetricViolation,
    Verdict, DEFAULT_TRIPLE_SAMPLES,
};
use crate::scalar::{frac, rat, value_to_rat, Rat};
use crate::spaces::{
    DistortedLine, Distortion, HyperbolicModel, LpSpace, SpokePoint, SpokeRaySpace, StarPoint,
    StarTreeSpace,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceType {
    Finite,
    Zd,
    Free,
    Heisenberg,
    FiniteGroup,
    SpokeRay,
    StarTree,
    DistortedLine,
    PoincareDisk,
    HalfPlane,
    Lp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    #[serde(rename = "type")]
    pub kind: SpaceType,
    #[serde(default)]
    pub params: Value,
    #[serde(default)]
    pub base: Option<Value>,
}

/// Default word-length bound for Cayley graph distances.
pub const DEFAULT_WORD_BOUND: u32 = 64;

#[derive(Debug, Clone)]
pub enum BuiltSpace {
    Finite(FiniteMetricSpace),
    Cayley(CayleyGraph),
    SpokeRay(SpokeRaySpace),
    StarTree(StarTreeSpace),
    Distorted(DistortedLine),
    Hyperbolic(HyperbolicModel),
    Lp(LpSpace),
}

fn param_u64(params: &Value, key: &str) -> Result<Option<u64>> {
    match params.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_u64()
            .map(Some)
            .ok_or_else(|| Error::Parse(format!("`{key}` must be a nonnegative integer"))),
    }
}

fn required_u64(params: &Value, key: &str) -> Result<u64> {
    param_u64(params, key)?.ok_or_else(|| Error::Parse(format!("missing parameter `{key}`")))
}

/// The group of a Cayley-type descriptor.
pub fn group_from_params(kind: SpaceType, params: &Value) -> Result<Group> {
    Ok(match kind {
        SpaceType::Zd => Group::Zd {
            dim: required_u64(params, "dim")? as usize,
        },
        SpaceType::Free => Group::Free {
            rank: required_u64(params, "rank")? as usize,
        },
        SpaceType::Heisenberg => Group::Heisenberg,
        SpaceType::FiniteGroup => match (params.get("table"), param_u64(params, "order")?) {
            (Some(t), _) => {
                let table: Vec<Vec<usize>> = serde_json::from_value(t.clone())
                    .map_err(|e| Error::Parse(format!("bad table: {e}")))?;
                Group::Finite(FiniteGroup::from_table(table)?)
            }
            (None, Some(n)) => Group::Finite(FiniteGroup::cyclic(n as usize)?),
            (None, None) => {
                return Err(Error::Parse("finite_group needs `table` or `order`".into()))
            }
        },
        other => return Err(Error::FamilyMismatch(format!("{other:?} is not a group"))),
    })
}

/// Generators from `params.generators`, else the standard ones.
pub fn generators_from_params(group: &Group, params: &Value) -> Result<GeneratingSet> {
    match params.get("generators") {
        None | Some(Value::Null) => Ok(group.standard_generators()),
        Some(Value::Array(items)) => GeneratingSet::new(
            group,
            items
                .iter()
                .map(|v| group.parse_element(v))
                .collect::<Result<_>>()?,
        ),
        Some(v) => Err(Error::Parse(format!(
            "`generators` must be an array, got {v}"
        ))),
    }
}

/// `"sqrt"`, `"log1p"`, `"square"`, or `{"kind": "table", "table": [[t, D(t)], ...]}`.
pub fn distortion_from_value(v: &Value) -> Result<Distortion> {
    match v {
        Value::String(s) if s == "sqrt" => Ok(Distortion::Sqrt),
        Value::String(s) if s == "log1p" => Ok(Distortion::Log1p),
        Value::String(s) if s == "square" => Ok(Distortion::Square),
        Value::Object(_) => serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("bad distortion: {e}"))),
        other => Err(Error::Parse(format!("unknown distortion {other}"))),
    }
}

impl SpaceDescriptor {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("space descriptor: {e}")))
    }

    pub fn build(&self) -> Result<BuiltSpace> {
        let p = &self.params;
        let fixed_base = |what: &str| match &self.base {
            None | Some(Value::Null) => Ok(()),
            Some(_) => Err(Error::Unsupported(format!("{what} has a fixed base point"))),
        };
        Ok(match self.kind {
            SpaceType::Finite => {
                let rows = p
                    .get("matrix")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("finite space needs a `matrix`".into()))?;
                let matrix = rows
                    .iter()
                    .map(|row| {
                        row.as_array()
                            .ok_or_else(|| Error::Parse("matrix rows must be arrays".into()))?
                            .iter()
                            .map(value_to_rat)
                            .collect::<Result<Vec<Rat>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let base = match &self.base {
                    None | Some(Value::Null) => 0,
                    Some(v) => v
                        .as_u64()
                        .ok_or_else(|| Error::Parse("finite base must be an index".into()))?
                        as usize,
                };
                BuiltSpace::Finite(FiniteMetricSpace::new(matrix, base)?)
            }
            SpaceType::Zd | SpaceType::Free | SpaceType::Heisenberg | SpaceType::FiniteGroup => {
                fixed_base("a Cayley graph")?;
                let group = group_from_params(self.kind, p)?;
                let gens = generators_from_params(&group, p)?;
                let bound = param_u64(p, "bound")?.map_or(DEFAULT_WORD_BOUND, |b| b as u32);
                BuiltSpace::Cayley(CayleyGraph::new(group, gens, bound))
            }
            SpaceType::SpokeRay => {
                fixed_base("the spoke space")?;
                BuiltSpace::SpokeRay(SpokeRaySpace)
            }
            SpaceType::StarTree => {
                fixed_base("the star tree")?;
                BuiltSpace::StarTree(StarTreeSpace)
            }
            SpaceType::DistortedLine => {
                fixed_base("the distorted line")?;
                let d = distortion_from_value(p.get("distortion").unwrap_or(&Value::Null))?;
                BuiltSpace::Distorted(DistortedLine::new(d))
            }
            SpaceType::PoincareDisk => {
                fixed_base("the disk")?;
                BuiltSpace::Hyperbolic(HyperbolicModel::disk())
            }
            SpaceType::HalfPlane => {
                fixed_base("the half-plane")?;
                BuiltSpace::Hyperbolic(HyperbolicModel::half_plane())
            }
            SpaceType::Lp => {
                fixed_base("l^p")?;
                let pv = p
                    .get("p")
                    .and_then(Value::as_f64)
                    .ok_or_else(|| Error::Parse("lp needs `p`".into()))?;
                BuiltSpace::Lp(LpSpace::new(pv, required_u64(p, "dim")? as usize)?)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub space: SpaceType,
    pub points: usize,
    /// All triples checked (otherwise `triples` random ones).
    pub exhaustive: bool,
    pub triples: usize,
    pub verdict: Verdict<MetricViolation>,
}

const EXHAUSTIVE_MAX: usize = 60;

fn check<S: crate::metric::MetricSpace>(
    space: &S,
    pts: &[S::Point],
    triples: usize,
    seed: u64,
    tol: S::Scalar,
    kind: SpaceType,
) -> Result<ValidationReport> {
    let exhaustive = pts.len() <= EXHAUSTIVE_MAX;
    let verdict = if exhaustive {
        validate_metric(space, pts, tol)?
    } else {
        validate_metric_sampled(space, pts, triples, seed, tol)?
    };
    let n = pts.len();
    Ok(ValidationReport {
        space: kind,
        points: n,
        exhaustive,
        triples: if exhaustive { n * n * n } else { triples },
        verdict,
    })
}

/// Validates the metric axioms on a canonical sample of the space: every
/// point of a finite space, a word-metric ball, or seeded random points.
pub fn validate_descriptor(
    desc: &SpaceDescriptor,
    points: usize,
    seed: u64,
    ball_limit: usize,
) -> Result<ValidationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples = DEFAULT_TRIPLE_SAMPLES;
    match desc.build()? {
        BuiltSpace::Finite(s) => {
            let pts = s.points();
            let verdict = validate_metric(&s, &pts, rat(0))?;
            let n = pts.len();
            Ok(ValidationReport {
                space: desc.kind,
                points: n,
                exhaustive: true,
                triples: n * n * n,
                verdict,
            })
        }
        BuiltSpace::Cayley(s) => {
            let mut pts = Vec::new();
            for r in 0.. {
                let ball = discrete_ball(&s, rat(r), ball_limit)?;
                let done = ball.len() >= points || ball.len() == pts.len();
                pts = ball.into_iter().map(|p| p.0).collect::<Vec<_>>();
                if done {
                    break;
                }
            }
            pts.truncate(points);
            check(&s, &pts, triples, seed, rat(0), desc.kind)
        }
        BuiltSpace::SpokeRay(s) => {
            let mut pts = vec![SpokePoint::Hub];
            for k in 0..points {
                let n = (k % 8 + 1) as u64;
                let q = rng.gen_range(1..8);
                pts.push(match k % 3 {
                    0 => s.gamma(frac(rng.gen_range(1..=40), 2))?,
                    1 => SpokePoint::head(n)?,
                    _ => SpokePoint::interior(n, frac(q, 8) * crate::spaces::spoke_length(n))?,
                });
            }
            pts.dedup();
            check(&s, &pts, triples, seed, rat(0), desc.kind)
        }
        BuiltSpace::StarTree(s) => {
            let mut pts = vec![StarPoint::Hub];
            for k in 0..points {
                let n = (k % 8 + 1) as u64;
                pts.push(StarPoint::interval(
                    n,
                    frac(rng.gen_range(1..=4 * n as i64), 4),
                )?);
            }
            check(&s, &pts, triples, seed, rat(0), desc.kind)
        }
        BuiltSpace::Distorted(s) => {
            let pts: Vec<f64> = (0..points).map(|_| rng.gen_range(-100.0..100.0)).collect();
            check(&s, &pts, triples, seed, 1e-9, desc.kind)
        }
        BuiltSpace::Hyperbolic(s) => {
            let pts: Vec<Complex64> = (0..points)
                .map(|_| {
                    let w = Complex64::from_polar(
                        0.95 * rng.gen::<f64>().sqrt(),
                        rng.gen_range(0.0..std::f64::consts::TAU),
                    );
                    match s.variant {
                        crate::spaces::HyperbolicVariant::Disk => w,
                        crate::spaces::HyperbolicVariant::HalfPlane => {
                            crate::spaces::cayley_to_half_plane(w)
                        }
                    }
                })
                .collect();
            check(&s, &pts, triples, seed, 1e-9, desc.kind)
        }
        BuiltSpace::Lp(s) => {
            let pts: Vec<Vec<f64>> = (0..points)
                .map(|_| (0..s.dim).map(|_| rng.gen_range(-5.0..5.0)).collect())
                .collect();
            check(&s, &pts, triples, seed, 1e-9, desc.kind)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_type() {
        let cases = [
            r#"{"type": "finite", "params": {"matrix": [["0", "1/2"], ["1/2", "0"]]}, "base": 1}"#,
            r#"{"type": "zd", "params": {"dim": 2}}"#,
            r#"{"type": "free", "params": {"rank": 2, "generators": ["a", "ab"]}}"#,
            r#"{"type": "heisenberg"}"#,
            r#"{"type": "finite_group", "params": {"order": 12, "generators": [1]}}"#,
            r#"{"type": "spoke_ray"}"#,
            r#"{"type": "star_tree"}"#,
            r#"{"type": "distorted_line", "params": {"distortion": "log1p"}}"#,
            r#"{"type": "poincare_disk"}"#,
            r#"{"type": "half_plane"}"#,
            r#"{"type": "lp", "params": {"p": 3, "dim": 4}}"#,
        ];
        for c in cases {
            let d = SpaceDescriptor::parse(c).unwrap();
            let rep = validate_descriptor(&d, 30, 0, 100_000).unwrap();
            assert!(rep.verdict.is_pass(), "{c}: {rep:?}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            SpaceDescriptor::parse(r#"{"type": "torus"}"#),
            Err(Error::Parse(_))
        ));
        let d = SpaceDescriptor::parse(r#"{"type": "zd", "params": {}}"#).unwrap();
        assert!(d.build().is_err());
        let d = SpaceDescriptor::parse(r#"{"type": "spoke_ray", "base": 3}"#).unwrap();
        assert!(matches!(d.build(), Err(Error::Unsupported(_))));
        let bad = r#"{"type": "finite", "params": {"matrix": [["0", "1"], ["2", "0"]]}}"#;
        assert!(SpaceDescriptor::parse(bad).unwrap().build().is_err());
    }

    #[test]
    fn square_distortion_fails_validation() {
        let d = SpaceDescriptor::parse(
            r#"{"type": "distorted_line", "params": {"distortion": "square"}}"#,
        )
        .unwrap();
        let rep = validate_descriptor(&d, 40, 0, 1000).unwrap();
        assert!(!rep.verdict.is_pass());
    }
}

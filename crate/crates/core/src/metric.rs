//! The metric-space abstraction, finite metric spaces, metric validation and
//! point functionals `h_x(y) = d(y, x) - d(x0, x)`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{rat, Rat, Scalar, ScalarKind};

/// Default number of random triples checked for spaces that are not finite.
pub const DEFAULT_TRIPLE_SAMPLES: usize = 10_000;

/// Default ball size limit (elements).
pub const DEFAULT_BALL_LIMIT: usize = 1_000_000;

/// A distance oracle with a distinguished base point.
pub trait MetricSpace: Send + Sync {
    type Point: Clone + PartialEq + Debug + Send + Sync;
    type Scalar: Scalar;

    fn distance(&self, a: &Self::Point, b: &Self::Point) -> Result<Self::Scalar>;

    fn base_point(&self) -> Self::Point;

    /// `d(y, x) - d(x0, x)`. Spaces override this with a cancellation-free
    /// form when `x` is far from both points.
    fn point_functional_value(&self, y: &Self::Point, x: &Self::Point) -> Result<Self::Scalar> {
        Ok(self.distance(y, x)? - self.distance(&self.base_point(), x)?)
    }

    fn scalar_kind(&self) -> ScalarKind {
        <Self::Scalar as Scalar>::KIND
    }

    fn is_discrete(&self) -> bool {
        self.scalar_kind() == ScalarKind::Exact
    }
}

/// A real-valued function on the points of a space.
pub trait Functional<S: MetricSpace + ?Sized> {
    fn eval(&self, space: &S, y: &S::Point) -> Result<S::Scalar>;
}

impl<S, F> Functional<S> for F
where
    S: MetricSpace + ?Sized,
    F: Fn(&S::Point) -> Result<S::Scalar>,
{
    fn eval(&self, _space: &S, y: &S::Point) -> Result<S::Scalar> {
        self(y)
    }
}

/// Outcome of an audit: `Pass`, or `Fail` carrying the first witness found.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum Verdict<W> {
    Pass,
    Fail(W),
}

impl<W> Verdict<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricAxiom {
    ZeroDiagonal,
    Symmetry,
    Triangle,
}

/// A violating index triple into the validated sample. For the triangle
/// inequality `(i, j, k)` means `d(i, k) > d(i, j) + d(j, k)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricViolation {
    pub axiom: MetricAxiom,
    pub indices: (usize, usize, usize),
    pub points: Vec<String>,
}

fn checked_distance<S: MetricSpace + ?Sized>(
    space: &S,
    a: &S::Point,
    b: &S::Point,
) -> Result<S::Scalar> {
    let d = space.distance(a, b)?;
    if !d.is_finite_value() {
        return Err(Error::InvalidSpace {
            a: format!("{a:?}"),
            b: format!("{b:?}"),
            reason: format!("non-finite ({d})"),
        });
    }
    if d.is_negative() {
        return Err(Error::InvalidSpace {
            a: format!("{a:?}"),
            b: format!("{b:?}"),
            reason: format!("negative ({d})"),
        });
    }
    Ok(d)
}

fn distance_table<S: MetricSpace + ?Sized>(
    space: &S,
    sample: &[S::Point],
) -> Result<Vec<Vec<S::Scalar>>> {
    sample
        .iter()
        .map(|a| {
            sample
                .iter()
                .map(|b| checked_distance(space, a, b))
                .collect()
        })
        .collect()
}

fn violation<P: Debug>(
    axiom: MetricAxiom,
    idx: (usize, usize, usize),
    sample: &[P],
) -> MetricViolation {
    let points = [idx.0, idx.1, idx.2]
        .iter()
        .map(|&i| format!("{:?}", sample[i]))
        .collect();
    MetricViolation {
        axiom,
        indices: idx,
        points,
    }
}

/// Exhaustive check of the metric axioms over every pair and triple of
/// `sample`, scanning triples in lexicographic order. `tol` is zero for exact
/// spaces.
pub fn validate_metric<S: MetricSpace + ?Sized>(
    space: &S,
    sample: &[S::Point],
    tol: S::Scalar,
) -> Result<Verdict<MetricViolation>> {
    if sample.is_empty() {
        return Err(Error::Precondition("validation sample is empty".into()));
    }
    let d = distance_table(space, sample)?;
    let n = sample.len();
    for i in 0..n {
        if d[i][i] > tol {
            return Ok(Verdict::Fail(violation(
                MetricAxiom::ZeroDiagonal,
                (i, i, i),
                sample,
            )));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if (d[i][j] - d[j][i]).abs() > tol {
                return Ok(Verdict::Fail(violation(
                    MetricAxiom::Symmetry,
                    (i, j, j),
                    sample,
                )));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if d[i][k] > d[i][j] + d[j][k] + tol {
                    return Ok(Verdict::Fail(violation(
                        MetricAxiom::Triangle,
                        (i, j, k),
                        sample,
                    )));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Checks `count` random triples drawn from `sample` with a fixed seed.
/// Pairs are checked for symmetry and zero diagonal along the way.
pub fn validate_metric_sampled<S: MetricSpace + ?Sized>(
    space: &S,
    sample: &[S::Point],
    count: usize,
    seed: u64,
    tol: S::Scalar,
) -> Result<Verdict<MetricViolation>> {
    if sample.is_empty() {
        return Err(Error::Precondition("validation sample is empty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sample.len();
    for _ in 0..count {
        let (i, j, k) = (
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
        );
        let (a, b, c) = (&sample[i], &sample[j], &sample[k]);
        if checked_distance(space, a, a)? > tol {
            return Ok(Verdict::Fail(violation(
                MetricAxiom::ZeroDiagonal,
                (i, i, i),
                sample,
            )));
        }
        let dab = checked_distance(space, a, b)?;
        if (dab - checked_distance(space, b, a)?).abs() > tol {
            return Ok(Verdict::Fail(violation(
                MetricAxiom::Symmetry,
                (i, j, j),
                sample,
            )));
        }
        let dac = checked_distance(space, a, c)?;
        let dbc = checked_distance(space, b, c)?;
        if dac > dab + dbc + tol {
            return Ok(Verdict::Fail(violation(
                MetricAxiom::Triangle,
                (i, j, k),
                sample,
            )));
        }
    }
    Ok(Verdict::Pass)
}

/// The point functional `h_x(y) = d(y, x) - d(x0, x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointFunctional<P, T> {
    pub anchor: P,
    pub base_offset: T,
}

impl<P: Clone, T: Scalar> PointFunctional<P, T> {
    pub fn new<S>(space: &S, anchor: P) -> Result<Self>
    where
        S: MetricSpace<Point = P, Scalar = T> + ?Sized,
    {
        let base_offset = space.distance(&space.base_point(), &anchor)?;
        Ok(PointFunctional {
            anchor,
            base_offset,
        })
    }
}

impl<S: MetricSpace + ?Sized> Functional<S> for PointFunctional<S::Point, S::Scalar> {
    fn eval(&self, space: &S, y: &S::Point) -> Result<S::Scalar> {
        Ok(space.distance(y, &self.anchor)? - self.base_offset)
    }
}

/// `d(y, x) - d(x0, x)`.
pub fn point_functional_eval<S: MetricSpace + ?Sized>(
    space: &S,
    x: &S::Point,
    y: &S::Point,
) -> Result<S::Scalar> {
    let x0 = space.base_point();
    Ok(space.distance(y, x)? - space.distance(&x0, x)?)
}

/// Spaces whose balls can be enumerated from a neighbor oracle with positive
/// exact edge lengths (graph metrics realize distances as shortest paths).
pub trait LocallyFinite: MetricSpace<Scalar = Rat>
where
    Self::Point: Ord + Hash,
{
    fn neighbors(&self, p: &Self::Point) -> Result<Vec<(Self::Point, Rat)>>;
}

/// All points within distance `r` of the base point, each with its exact
/// distance, ordered by `(distance, point)`.
pub fn discrete_ball<S>(space: &S, r: Rat, limit: usize) -> Result<Vec<(S::Point, Rat)>>
where
    S: LocallyFinite + ?Sized,
    S::Point: Ord + Hash,
{
    if r < rat(0) {
        return Err(Error::InvalidParameter(format!("negative radius {r}")));
    }
    let base = space.base_point();
    let mut best: HashMap<S::Point, Rat> = HashMap::new();
    let mut heap = BinaryHeap::new();
    best.insert(base.clone(), rat(0));
    heap.push(Reverse((rat(0), base)));
    let mut done: Vec<(S::Point, Rat)> = Vec::new();
    while let Some(Reverse((dist, p))) = heap.pop() {
        if best.get(&p).is_some_and(|&b| b < dist) {
            continue;
        }
        if done.len() >= limit {
            return Err(Error::ResourceLimit {
                limit,
                radius: dist.floor().to_integer() as usize,
            });
        }
        for (q, w) in space.neighbors(&p)? {
            if w <= rat(0) {
                return Err(Error::InvalidSpace {
                    a: format!("{p:?}"),
                    b: format!("{q:?}"),
                    reason: format!("non-positive edge length {w}"),
                });
            }
            let nd = dist + w;
            if nd > r {
                continue;
            }
            if best.get(&q).map_or(true, |&b| nd < b) {
                best.insert(q.clone(), nd);
                heap.push(Reverse((nd, q)));
            }
        }
        done.push((p, dist));
    }
    done.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(done)
}

/// A finite metric space with an exact rational distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    matrix: Vec<Vec<Rat>>,
    base_index: usize,
}

impl FiniteMetricSpace {
    /// Builds the space, checking every axiom over all `n^3` triples.
    pub fn new(matrix: Vec<Vec<Rat>>, base_index: usize) -> Result<Self> {
        let space = Self::new_unchecked(matrix, base_index)?;
        let points: Vec<usize> = (0..space.len()).collect();
        if let Verdict::Fail(v) = validate_metric(&space, &points, rat(0))? {
            return Err(Error::InvalidSpace {
                a: v.points[0].clone(),
                b: v.points[2].clone(),
                reason: format!("{:?} violated at {:?}", v.axiom, v.indices),
            });
        }
        Ok(space)
    }

    /// Builds without the axiom check; used to validate candidate matrices.
    pub fn new_unchecked(matrix: Vec<Vec<Rat>>, base_index: usize) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::InvalidParameter("empty distance matrix".into()));
        }
        if let Some(row) = matrix.iter().position(|row| row.len() != n) {
            return Err(Error::InvalidParameter(format!(
                "row {row} does not have {n} entries"
            )));
        }
        if base_index >= n {
            return Err(Error::InvalidParameter(format!(
                "base index {base_index} out of range"
            )));
        }
        Ok(FiniteMetricSpace { matrix, base_index })
    }

    /// A random metric on `n` points: shortest-path closure of random
    /// symmetric weights `k / den` with `1 <= k <= max_num`.
    pub fn random(n: usize, max_num: i64, den: i64, rng: &mut impl Rng) -> Self {
        let mut m = vec![vec![rat(0); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let w = Rat::new(rng.gen_range(1..=max_num), den);
                m[i][j] = w;
                m[j][i] = w;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = m[i][k] + m[k][j];
                    if via < m[i][j] {
                        m[i][j] = via;
                    }
                }
            }
        }
        FiniteMetricSpace {
            matrix: m,
            base_index: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }

    pub fn base_index(&self) -> usize {
        self.base_index
    }

    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.matrix
    }

    pub fn points(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }
}

impl MetricSpace for FiniteMetricSpace {
    type Point = usize;
    type Scalar = Rat;

    fn distance(&self, a: &usize, b: &usize) -> Result<Rat> {
        let n = self.len();
        if *a >= n || *b >= n {
            return Err(Error::InvalidPoint(format!(
                "index {} out of range 0..{n}",
                a.max(b)
            )));
        }
        Ok(self.matrix[*a][*b])
    }

    fn base_point(&self) -> usize {
        self.base_index
    }
}

impl LocallyFinite for FiniteMetricSpace {
    fn neighbors(&self, p: &usize) -> Result<Vec<(usize, Rat)>> {
        Ok((0..self.len())
            .filter(|q| q != p)
            .map(|q| (q, self.matrix[*p][q]))
            .collect())
    }
}

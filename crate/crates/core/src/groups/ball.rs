use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::element::{GeneratingSet, Group, GroupElement};
use crate::error::{Error, Result};
use crate::metric::{LocallyFinite, MetricSpace};
use crate::scalar::{rat, Rat};

/// The radius-`R` ball of a Cayley graph around the identity.
///
/// Elements are ordered by `(word length, element)`; for free groups this is
/// shortlex. `sphere_offsets[r]..sphere_offsets[r + 1]` indexes `S(r)`.
#[derive(Debug, Clone, Serialize)]
pub struct CayleyBall {
    pub radius: usize,
    pub elements: Vec<GroupElement>,
    pub lengths: Vec<u32>,
    /// `[i, j, s]` with `elements[j] = elements[i] * gens[s]`.
    pub edges: Vec<[usize; 3]>,
    #[serde(skip)]
    pub sphere_offsets: Vec<usize>,
    #[serde(skip)]
    index: HashMap<GroupElement, usize>,
}

impl CayleyBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn length_of(&self, g: &GroupElement) -> Option<u32> {
        self.index_of(g).map(|i| self.lengths[i])
    }

    pub fn sphere(&self, r: usize) -> &[GroupElement] {
        if r > self.radius {
            return &[];
        }
        &self.elements[self.sphere_offsets[r]..self.sphere_offsets[r + 1]]
    }

    /// The sub-ball `B(r)` as a prefix of the element list.
    pub fn ball(&self, r: usize) -> &[GroupElement] {
        &self.elements[..self.sphere_offsets[r.min(self.radius) + 1]]
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.sphere_offsets
            .windows(2)
            .map(|w| w[1] - w[0])
            .collect()
    }
}

/// Breadth-first construction of `B(R)`. Layers are expanded in parallel and
/// merged by canonical sort, so the result does not depend on scheduling.
pub fn cayley_ball(
    group: &Group,
    gens: &GeneratingSet,
    radius: usize,
    limit: usize,
) -> Result<CayleyBall> {
    for s in gens.elements() {
        group.check(s)?;
    }
    let id = group.identity();
    let mut seen: HashSet<GroupElement> = HashSet::from([id.clone()]);
    let mut elements = vec![id];
    let mut lengths = vec![0u32];
    let mut sphere_offsets = vec![0, 1];
    let mut frontier_start = 0;
    for r in 1..=radius {
        let frontier = &elements[frontier_start..];
        let mut layer: Vec<GroupElement> = frontier
            .par_iter()
            .flat_map_iter(|g| {
                gens.elements()
                    .iter()
                    .map(move |s| group.multiply_unchecked(g, s))
            })
            .filter(|h| !seen.contains(h))
            .collect();
        layer.par_sort_unstable();
        layer.dedup();
        if elements.len() + layer.len() > limit {
            return Err(Error::ResourceLimit {
                limit,
                radius: r - 1,
            });
        }
        frontier_start = elements.len();
        seen.extend(layer.iter().cloned());
        lengths.extend(std::iter::repeat(r as u32).take(layer.len()));
        elements.extend(layer);
        sphere_offsets.push(elements.len());
    }
    let index: HashMap<GroupElement, usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, g)| (g, i))
        .collect();
    let edges = elements
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, g)| {
            let index = &index;
            gens.elements()
                .iter()
                .enumerate()
                .filter_map(move |(s_idx, s)| {
                    index
                        .get(&group.multiply_unchecked(g, s))
                        .map(|&j| [i, j, s_idx])
                })
        })
        .collect();
    Ok(CayleyBall {
        radius,
        elements,
        lengths,
        edges,
        sphere_offsets,
        index,
    })
}

/// Word length of `g` by bidirectional breadth-first search, or `None` when
/// it exceeds `bound`.
pub fn word_length(
    group: &Group,
    gens: &GeneratingSet,
    g: &GroupElement,
    bound: u32,
) -> Result<Option<u32>> {
    group.check(g)?;
    let id = group.identity();
    if *g == id {
        return Ok(Some(0));
    }
    let mut fwd: HashMap<GroupElement, u32> = HashMap::from([(id.clone(), 0)]);
    let mut bwd: HashMap<GroupElement, u32> = HashMap::from([(g.clone(), 0)]);
    let mut fwd_frontier = vec![id];
    let mut bwd_frontier = vec![g.clone()];
    let (mut fwd_depth, mut bwd_depth) = (0u32, 0u32);
    while fwd_depth + bwd_depth < bound {
        let expand_fwd = fwd_frontier.len() <= bwd_frontier.len();
        let (frontier, visited, other, depth) = if expand_fwd {
            (&mut fwd_frontier, &mut fwd, &bwd, &mut fwd_depth)
        } else {
            (&mut bwd_frontier, &mut bwd, &fwd, &mut bwd_depth)
        };
        *depth += 1;
        let mut next = Vec::new();
        let mut best: Option<u32> = None;
        for x in frontier.iter() {
            for s in gens.elements() {
                let y = group.multiply_unchecked(x, s);
                if visited.contains_key(&y) {
                    continue;
                }
                if let Some(&d) = other.get(&y) {
                    let total = *depth + d;
                    best = Some(best.map_or(total, |b| b.min(total)));
                }
                visited.insert(y.clone(), *depth);
                next.push(y);
            }
        }
        if let Some(b) = best {
            return Ok((b <= bound).then_some(b));
        }
        if next.is_empty() {
            // finite group: the component of the identity is exhausted
            return Ok(None);
        }
        *frontier = next;
    }
    Ok(None)
}

/// A Cayley graph as a metric space with base point the identity. Distances
/// are word lengths `|a^-1 b|` computed up to `bound`.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    pub group: Group,
    pub gens: GeneratingSet,
    pub bound: u32,
}

impl CayleyGraph {
    pub fn new(group: Group, gens: GeneratingSet, bound: u32) -> Self {
        CayleyGraph { group, gens, bound }
    }

    pub fn standard(group: Group, bound: u32) -> Self {
        let gens = group.standard_generators();
        CayleyGraph { group, gens, bound }
    }

    pub fn word_length(&self, g: &GroupElement) -> Result<u32> {
        word_length(&self.group, &self.gens, g, self.bound)?.ok_or_else(|| Error::BudgetExhausted {
            what: format!("word length of {g} exceeds {}", self.bound),
            iterations: self.bound as usize,
        })
    }
}

impl MetricSpace for CayleyGraph {
    type Point = GroupElement;
    type Scalar = Rat;

    fn distance(&self, a: &GroupElement, b: &GroupElement) -> Result<Rat> {
        let diff = self.group.multiply(&self.group.inverse(a)?, b)?;
        Ok(rat(self.word_length(&diff)? as i64))
    }

    fn base_point(&self) -> GroupElement {
        self.group.identity()
    }
}

impl LocallyFinite for CayleyGraph {
    fn neighbors(&self, p: &GroupElement) -> Result<Vec<(GroupElement, Rat)>> {
        self.group.check(p)?;
        Ok(self
            .gens
            .elements()
            .iter()
            .map(|s| (self.group.multiply_unchecked(p, s), rat(1)))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;
    use crate::metric::{discrete_ball, validate_metric};

    /// Number of points of Z^d at l1 distance exactly r.
    fn l1_sphere(d: u32, r: u32) -> usize {
        if r == 0 {
            return 1;
        }
        // sum_k 2^k C(d,k) C(r-1,k-1)
        let binom = |n: u64, k: u64| -> u64 {
            if k > n {
                return 0;
            }
            (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
        };
        (1..=d as u64)
            .map(|k| (1u64 << k) * binom(d as u64, k) * binom(r as u64 - 1, k - 1))
            .sum::<u64>() as usize
    }

    #[test]
    fn integer_ball() {
        let z = Group::Zd { dim: 1 };
        let ball = cayley_ball(&z, &z.standard_generators(), 3, 1000).unwrap();
        assert_eq!(ball.sphere_sizes(), vec![1, 2, 2, 2]);
    }

    #[test]
    fn lattice_spheres_match_l1_counts() {
        for d in 1..=3usize {
            let g = Group::Zd { dim: d };
            let ball = cayley_ball(&g, &g.standard_generators(), 10, 1_000_000).unwrap();
            let expected: Vec<usize> = (0..=10).map(|r| l1_sphere(d as u32, r)).collect();
            assert_eq!(ball.sphere_sizes(), expected, "d = {d}");
        }
    }

    #[test]
    fn free_spheres() {
        for k in 1..=3usize {
            let g = Group::Free { rank: k };
            let radius = if k == 3 { 6 } else { 8 };
            let ball = cayley_ball(&g, &g.standard_generators(), radius, 1_000_000).unwrap();
            for (r, &size) in ball.sphere_sizes().iter().enumerate().skip(1) {
                assert_eq!(size, 2 * k * (2 * k - 1).pow(r as u32 - 1));
            }
        }
    }

    #[test]
    fn heisenberg_spheres_regression() {
        let h = Group::Heisenberg;
        let ball = cayley_ball(&h, &h.standard_generators(), 6, 1_000_000).unwrap();
        assert_eq!(ball.sphere_sizes(), vec![1, 4, 12, 36, 82, 164, 294]);
    }

    #[test]
    fn adjacent_lengths_differ_by_at_most_one() {
        for group in [
            Group::Zd { dim: 2 },
            Group::Free { rank: 2 },
            Group::Heisenberg,
        ] {
            let gens = group.standard_generators();
            let ball = cayley_ball(&group, &gens, 5, 1_000_000).unwrap();
            for &[i, j, _] in &ball.edges {
                assert!(ball.lengths[i].abs_diff(ball.lengths[j]) <= 1);
            }
            for (i, g) in ball.elements.iter().enumerate() {
                let inv = group.inverse(g).unwrap();
                assert_eq!(ball.length_of(&inv), Some(ball.lengths[i]));
            }
        }
    }

    #[test]
    fn size_limit() {
        let g = Group::Free { rank: 2 };
        match cayley_ball(&g, &g.standard_generators(), 10, 100) {
            Err(Error::ResourceLimit { limit: 100, radius }) => assert_eq!(radius, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn word_lengths() {
        let z2 = Group::Zd { dim: 2 };
        let len = word_length(
            &z2,
            &z2.standard_generators(),
            &GroupElement::Zd(vec![3, 4]),
            20,
        )
        .unwrap();
        assert_eq!(len, Some(7));
        let none = word_length(
            &z2,
            &z2.standard_generators(),
            &GroupElement::Zd(vec![3, 4]),
            6,
        )
        .unwrap();
        assert_eq!(none, None);
        let f2 = Group::Free { rank: 2 };
        let w = GroupElement::Free(crate::groups::FreeWord::parse("abA").unwrap());
        assert_eq!(
            word_length(&f2, &f2.standard_generators(), &w, 10).unwrap(),
            Some(3)
        );
    }

    #[test]
    fn word_length_agrees_with_ball() {
        let h = Group::Heisenberg;
        let gens = h.standard_generators();
        let ball = cayley_ball(&h, &gens, 7, 1_000_000).unwrap();
        for (g, &l) in ball.elements.iter().zip(&ball.lengths).step_by(7) {
            assert_eq!(word_length(&h, &gens, g, 7).unwrap(), Some(l));
        }
    }

    #[test]
    fn discrete_balls_through_the_graph() {
        let z = CayleyGraph::standard(Group::Zd { dim: 1 }, 100);
        assert_eq!(discrete_ball(&z, rat(3), 100).unwrap().len(), 7);
        let f2 = CayleyGraph::standard(Group::Free { rank: 2 }, 100);
        assert_eq!(discrete_ball(&f2, rat(2), 100).unwrap().len(), 17);
        let z2 = CayleyGraph::standard(Group::Zd { dim: 2 }, 100);
        let ball = discrete_ball(&z2, rat(2), 100).unwrap();
        assert_eq!(ball.len(), 13);
        let points: Vec<GroupElement> = ball.into_iter().map(|(p, _)| p).collect();
        assert!(validate_metric(&z2, &points, rat(0)).unwrap().is_pass());
    }

    #[test]
    fn finite_cyclic_word_length() {
        let c = Group::Finite(FiniteGroup::cyclic(12).unwrap());
        let gens = GeneratingSet::new(&c, vec![GroupElement::Finite(1)]).unwrap();
        assert_eq!(
            word_length(&c, &gens, &GroupElement::Finite(6), 20).unwrap(),
            Some(6)
        );
        assert_eq!(
            word_length(&c, &gens, &GroupElement::Finite(9), 20).unwrap(),
            Some(3)
        );
    }
}

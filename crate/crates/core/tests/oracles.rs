mod common;

use std::collections::BTreeSet;

use common::*;
use horokit::boundary::{limit_restrictions, sphere_restrictions, Certificate};
use horokit::extension::{mcshane_extend, McShaneMode, PartialFunctional};
use horokit::groups::{cayley_ball, Group, GroupElement};
use horokit::spaces::{spoke_ray_distance, SpokePoint};
use horokit::{frac, rat, FiniteMetricSpace, Functional, Rat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const LIMIT: usize = 2_000_000;

fn accepted_set(
    group: &Group,
    r: usize,
    r_max: usize,
    window: usize,
) -> (Vec<GroupElement>, BTreeSet<Vec<Rat>>, Certificate) {
    let set =
        limit_restrictions(group, &group.standard_generators(), r, r_max, window, LIMIT).unwrap();
    let values = set.accepted.iter().map(|f| f.values.clone()).collect();
    (set.order, values, set.certificate)
}

#[test]
fn free_group_restrictions_are_tree_ends() {
    for (r, count) in [(1, 4), (2, 12), (3, 36)] {
        let (order, got, cert) = accepted_set(&Group::Free { rank: 2 }, r, r + 5, 2);
        assert!(matches!(cert, Certificate::Stabilized { .. }));
        assert_eq!(got.len(), count);
        assert_eq!(got, tree_end_restrictions(2, r, &order));
    }
    let (order, got, _) = accepted_set(&Group::Free { rank: 3 }, 1, 7, 2);
    assert_eq!(got, tree_end_restrictions(3, 1, &order));
}

#[test]
fn lattice_spheres_match_l1_arithmetic() {
    let g = Group::Zd { dim: 2 };
    let ball = cayley_ball(&g, &g.standard_generators(), 13, LIMIT).unwrap();
    let order = ball.ball(1).to_vec();
    for big_r in 4..=12 {
        let got: BTreeSet<Vec<Rat>> = sphere_restrictions(&g, &ball, 1, big_r)
            .unwrap()
            .into_iter()
            .map(|f| f.values)
            .collect();
        assert_eq!(
            got,
            l1_sphere_restrictions(2, big_r as i64, &order),
            "R = {big_r}"
        );
        assert_eq!(got.len(), 8);
    }
}

#[test]
fn lattice_limits_match_coordinate_oracle() {
    for (dim, r, r_max, count) in [(1, 3, 20, 2), (2, 1, 12, 8), (2, 2, 14, 16), (3, 1, 10, 26)] {
        let (order, got, cert) = accepted_set(&Group::Zd { dim }, r, r_max, 4);
        assert!(
            matches!(cert, Certificate::Stabilized { .. }),
            "dim {dim} r {r}"
        );
        assert_eq!(got.len(), count, "dim {dim} r {r}");
        assert_eq!(got, lattice_limit_oracle(dim, r as i64, &order));
    }
}

#[test]
fn heisenberg_center_lengths() {
    let g = Group::Heisenberg;
    let ball = cayley_ball(&g, &g.standard_generators(), 26, LIMIT).unwrap();
    let frozen = [
        0, 4, 6, 8, 8, 10, 10, 12, 12, 12, 14, 14, 14, 16, 16, 16, 16,
    ];
    for (k, &d) in frozen.iter().enumerate() {
        assert_eq!(
            ball.length_of(&GroupElement::Heisenberg([0, 0, k as i64])),
            Some(d),
            "z^{k}"
        );
    }
    for k in 1..=40i64 {
        let expected = 2 * (2.0 * (k as f64).sqrt()).ceil() as u32;
        assert_eq!(
            ball.length_of(&GroupElement::Heisenberg([0, 0, k])),
            Some(expected),
            "z^{k}"
        );
    }
}

fn spoke_sample() -> Vec<SpokePoint> {
    let mut pts = vec![SpokePoint::Hub];
    for q in 1..=16 {
        pts.push(SpokePoint::ray(frac(q, 4)).unwrap());
    }
    for n in 1..=4u64 {
        pts.push(SpokePoint::head(n).unwrap());
        for s in 1..(4 * n as i64 - 2) {
            pts.push(SpokePoint::interior(n, frac(s, 4)).unwrap());
        }
    }
    pts
}

#[test]
fn spoke_distances_match_dijkstra() {
    let graph = SpokeGraph::new(16, 16);
    let pts = spoke_sample();
    for p in &pts {
        let dist = graph.distances_from(p);
        for q in &pts {
            assert_eq!(spoke_ray_distance(p, q).unwrap(), dist[q], "{p:?} -> {q:?}");
        }
    }
}

#[test]
fn mcshane_extensions_are_the_extremal_ones() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for trial in 0..40 {
        let n = 3 + trial % 4;
        let space = FiniteMetricSpace::random(n, 4, 2, &mut rng);
        let domain: Vec<usize> = (0..n).filter(|i| i % 2 == 0).collect();
        // a 1-Lipschitz function on the domain: distance to the last point
        let values: Vec<Rat> = domain.iter().map(|&a| space.matrix()[a][n - 1]).collect();
        let f = PartialFunctional::new(&space, domain.clone(), values.clone()).unwrap();
        let (lo, hi) = brute_force_extension_envelope(&space, &domain, &values, frac(1, 2));
        let sup = mcshane_extend(&f, McShaneMode::Sup);
        let inf = mcshane_extend(&f, McShaneMode::Inf);
        for p in 0..n {
            assert_eq!(
                sup.eval(&space, &p).unwrap(),
                lo[p],
                "trial {trial} point {p}"
            );
            assert_eq!(
                inf.eval(&space, &p).unwrap(),
                hi[p],
                "trial {trial} point {p}"
            );
        }
    }
    // a zero-tolerance domain violation is rejected
    let space =
        FiniteMetricSpace::new(vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]], 0).unwrap();
    assert!(PartialFunctional::new(&space, vec![0, 1], vec![rat(0), frac(3, 2)]).is_err());
}

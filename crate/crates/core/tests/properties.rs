use horokit::boundary::{
    drift_homomorphism, sup_difference_z, CoordBehavior, DriftMeasure, LatticeFunctional,
    ZFunctional,
};
use horokit::dynamics::MoebiusMap;
use horokit::extension::{mcshane_extend, McShaneMode, PartialFunctional};
use horokit::functionals::{lipschitz_check, ModelFunctional};
use horokit::groups::{word_length, FreeWord, Group, GroupElement};
use horokit::spaces::{hyperbolic_distance, spoke_ray_distance, HyperbolicModel, SpokePoint};
use horokit::{frac, rat, FiniteMetricSpace, Functional, MetricSpace, PointFunctional};
use num_complex::Complex64;
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn finite_space() -> impl Strategy<Value = FiniteMetricSpace> {
    (2usize..9, any::<u64>()).prop_map(|(n, seed)| {
        FiniteMetricSpace::random(n, 12, 3, &mut ChaCha8Rng::seed_from_u64(seed))
    })
}

fn spoke_point() -> impl Strategy<Value = SpokePoint> {
    prop_oneof![
        Just(SpokePoint::Hub),
        (1i64..60).prop_map(|q| SpokePoint::ray(frac(q, 4)).unwrap()),
        (1u64..8).prop_map(|n| SpokePoint::head(n).unwrap()),
        (1u64..8, 1i64..100).prop_map(|(n, k)| {
            let len = rat(n as i64) - frac(1, 2);
            SpokePoint::interior(n, len * frac(k, 101)).unwrap()
        }),
    ]
}

fn half_plane_point() -> impl Strategy<Value = Complex64> {
    (-5.0f64..5.0, 0.05f64..5.0).prop_map(|(x, y)| Complex64::new(x, y))
}

fn sl2() -> impl Strategy<Value = [f64; 4]> {
    (0.3f64..3.0, -3.0f64..3.0, -3.0f64..3.0).prop_map(|(a, b, c)| [a, b, c, (1.0 + b * c) / a])
}

fn free_word() -> impl Strategy<Value = FreeWord> {
    prop::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 0..12)
        .prop_map(FreeWord::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn point_functionals_are_one_lipschitz(space in finite_space(), anchor in 0usize..9) {
        let x = anchor % space.len();
        let h = PointFunctional::new(&space, x).unwrap();
        let pts = space.points();
        prop_assert!(lipschitz_check(&h, &space, &pts, rat(0)).unwrap().is_pass());
        for y in &pts {
            let v = h.eval(&space, y).unwrap();
            prop_assert!(v.abs() <= space.distance(y, &space.base_point()).unwrap());
        }
    }

    #[test]
    fn mcshane_pair_is_ordered(space in finite_space(), mask in 1u32..256) {
        let n = space.len();
        let domain: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        prop_assume!(!domain.is_empty());
        let values: Vec<_> = domain.iter().map(|&a| space.matrix()[a][0]).collect();
        let f = PartialFunctional::new(&space, domain.clone(), values.clone()).unwrap();
        let (lo, hi) = (mcshane_extend(&f, McShaneMode::Sup), mcshane_extend(&f, McShaneMode::Inf));
        let pts = space.points();
        prop_assert!(lipschitz_check(&lo, &space, &pts, rat(0)).unwrap().is_pass());
        prop_assert!(lipschitz_check(&hi, &space, &pts, rat(0)).unwrap().is_pass());
        for p in &pts {
            prop_assert!(lo.eval(&space, p).unwrap() <= hi.eval(&space, p).unwrap());
        }
        for (a, v) in domain.iter().zip(&values) {
            prop_assert_eq!(lo.eval(&space, a).unwrap(), *v);
            prop_assert_eq!(hi.eval(&space, a).unwrap(), *v);
        }
    }

    #[test]
    fn lattice_word_length_is_l1(v in prop::collection::vec(-6i64..6, 1..4)) {
        let g = Group::Zd { dim: v.len() };
        let l1: i64 = v.iter().map(|x| x.abs()).sum();
        let len = word_length(&g, &g.standard_generators(), &GroupElement::Zd(v), 64).unwrap();
        prop_assert_eq!(len, Some(l1 as u32));
    }

    #[test]
    fn free_word_length_is_reduced_length(w in free_word()) {
        let g = Group::Free { rank: 2 };
        let len = word_length(&g, &g.standard_generators(), &GroupElement::Free(w.clone()), 64).unwrap();
        prop_assert_eq!(len, Some(w.len() as u32));
        let inv = g.inverse(&GroupElement::Free(w.clone())).unwrap();
        prop_assert_eq!(g.multiply(&GroupElement::Free(w), &inv).unwrap(), g.identity());
    }

    #[test]
    fn heisenberg_is_a_group(a in prop::array::uniform3(-5i64..5), b in prop::array::uniform3(-5i64..5), c in prop::array::uniform3(-5i64..5)) {
        let g = Group::Heisenberg;
        let (a, b, c) = (GroupElement::Heisenberg(a), GroupElement::Heisenberg(b), GroupElement::Heisenberg(c));
        let ab_c = g.multiply(&g.multiply(&a, &b).unwrap(), &c).unwrap();
        let a_bc = g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(g.multiply(&a, &g.inverse(&a).unwrap()).unwrap(), g.identity());
    }

    #[test]
    fn moebius_maps_are_isometries(m in sl2(), z in half_plane_point(), w in half_plane_point()) {
        let hp = HyperbolicModel::half_plane();
        let f = MoebiusMap::half_plane(m).unwrap();
        let d = hyperbolic_distance(&hp, z, w).unwrap();
        let e = hyperbolic_distance(&hp, f.orbit_point(z, 1), f.orbit_point(w, 1)).unwrap();
        prop_assert!((d - e).abs() <= 1e-8 * (1.0 + d), "{d} vs {e}");
    }

    #[test]
    fn product_traces_commute(m in sl2(), n in sl2()) {
        let (f, g) = (MoebiusMap::half_plane(m).unwrap(), MoebiusMap::half_plane(n).unwrap());
        prop_assert_eq!(f.compose(&g).unwrap().trace, g.compose(&f).unwrap().trace);
    }

    #[test]
    fn busemann_functionals_are_one_lipschitz(theta in 0.0f64..std::f64::consts::TAU, z in half_plane_point(), w in half_plane_point()) {
        let hp = HyperbolicModel::half_plane();
        let h = ModelFunctional::disk_busemann(Complex64::from_polar(1.0, theta));
        let gap = (h.eval(&hp, &z).unwrap() - h.eval(&hp, &w).unwrap()).abs();
        prop_assert!(gap <= hyperbolic_distance(&hp, z, w).unwrap() + 1e-9);
    }

    #[test]
    fn spoke_distance_is_a_metric(p in spoke_point(), q in spoke_point(), r in spoke_point()) {
        let pq = spoke_ray_distance(&p, &q).unwrap();
        prop_assert_eq!(pq, spoke_ray_distance(&q, &p).unwrap());
        prop_assert!(pq <= spoke_ray_distance(&p, &r).unwrap() + spoke_ray_distance(&r, &q).unwrap());
        prop_assert_eq!(pq == rat(0), p == q);
    }

    #[test]
    fn drift_is_additive_and_bounded(signs in prop::collection::vec(any::<bool>(), 1..4), g in prop::collection::vec(-10i64..10, 3), h in prop::collection::vec(-10i64..10, 3)) {
        let dim = signs.len();
        let f = LatticeFunctional(signs.iter().map(|&s| if s { CoordBehavior::ToPlus } else { CoordBehavior::ToMinus }).collect());
        let mu = DriftMeasure::point_mass(f).unwrap();
        let (g, h) = (g[..dim].to_vec(), h[..dim].to_vec());
        let gh: Vec<i64> = g.iter().zip(&h).map(|(a, b)| a + b).collect();
        let t = |v: &Vec<i64>| drift_homomorphism(&mu, &GroupElement::Zd(v.clone())).unwrap();
        prop_assert_eq!(t(&gh), t(&g) + t(&h));
        prop_assert!(t(&g).abs() <= rat(g.iter().map(|x| x.abs()).sum()));
    }

    #[test]
    fn reduced_sup_matches_brute_force(a in -10i64..=10, b in -10i64..=10) {
        let (fa, fb) = (ZFunctional::Point(a), ZFunctional::Point(b));
        let brute = (-60..=60).map(|x| (fa.eval(x) - fb.eval(x)).abs()).max().unwrap();
        prop_assert_eq!(sup_difference_z(fa, fb), Some(brute));
    }
}

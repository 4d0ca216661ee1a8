use std::f64::consts::TAU;

use fuchsian_entropy::dynamics::{BoundaryMap, GeodesicPair, MarkovData};
use fuchsian_entropy::hyperbolic::*;
use fuchsian_entropy::polygon::{sigma, side_count, MarkedPolygon};
use num_complex::Complex64;
use proptest::prelude::*;

fn disk_point() -> impl Strategy<Value = DiskPoint> {
    (0.0..0.95f64, 0.0..TAU).prop_map(|(r, t)| DiskPoint::new(Complex64::from_polar(r, t)).unwrap())
}

fn automorphism() -> impl Strategy<Value = DiskMoebius> {
    (0.0..TAU, 0.0..0.9f64, 0.0..TAU, 0.1..10.0f64)
        .prop_map(|(theta, r, t, k)| DiskMoebius::automorphism(theta, Complex64::from_polar(r, t)).scale(Complex64::new(k, 0.0)))
}

fn geodesic() -> impl Strategy<Value = Geodesic> {
    (0.0..TAU, 1e-3..TAU - 1e-3).prop_map(|(u, d)| Geodesic::from_angles(u, u + d).unwrap())
}

fn map_point(m: &DiskMoebius, p: &DiskPoint) -> DiskPoint {
    DiskPoint::new(m.apply(p.z()).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn distance_is_moebius_invariant(m in automorphism(), p in disk_point(), q in disk_point()) {
        let d = hyp_distance(&p, &q);
        let e = hyp_distance(&map_point(&m, &p), &map_point(&m, &q));
        prop_assert!((d - e).abs() < 1e-9 * d.max(1.0), "{d} vs {e}");
        prop_assert!((d - hyp_distance(&q, &p)).abs() == 0.0);
    }

    #[test]
    fn boundary_is_preserved(m in automorphism(), t in 0.0..TAU) {
        let z = m.apply(Complex64::from_polar(1.0, t)).unwrap();
        prop_assert!((z.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn derivative_chain_rule(m1 in automorphism(), m2 in automorphism(), p in disk_point()) {
        let z = p.z();
        let lhs = m1.compose(&m2).derivative_modulus(z).unwrap();
        let rhs = m1.derivative_modulus(m2.apply(z).unwrap()).unwrap() * m2.derivative_modulus(z).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs);
    }

    #[test]
    fn intersection_is_symmetric(g1 in geodesic(), g2 in geodesic()) {
        let a = geodesic_intersection(&g1, &g2);
        let b = geodesic_intersection(&g2, &g1);
        match (a, b) {
            (Ok(Some(x)), Ok(Some(y))) => prop_assert!((x.z() - y.z()).norm() < 1e-9),
            (Ok(None), Ok(None)) => {}
            (Err(_), Err(_)) => {}
            other => prop_assert!(false, "{other:?}"),
        }
    }

    #[test]
    fn segment_crossing_matches_sampling(g in geodesic(), p in disk_point(), q in disk_point()) {
        // Walk the segment pq in the frame where p sits at the origin.
        let m = DiskMoebius::automorphism(0.0, p.z());
        let back = m.inverse();
        let end = m.apply(q.z()).unwrap();
        let signs: Vec<f64> = (0..=400)
            .map(|k| {
                let z = back.apply(end * (k as f64 / 400.0)).unwrap();
                side_of_geodesic(&g, &DiskPoint::new(z).unwrap())
            })
            .collect();
        let sampled = signs.windows(2).any(|w| w[0].signum() != w[1].signum()) || signs.contains(&0.0);
        let margin = signs.iter().map(|s| s.abs()).fold(f64::INFINITY, f64::min);
        prop_assume!(margin > 1e-6 || sampled);
        prop_assert_eq!(crosses_segment(&g, &p, &q), sampled);
    }

    #[test]
    fn half_open_branches_partition_the_circle(g in 2usize..5, t in 0.0..TAU) {
        let bm = BoundaryMap::new(&MarkedPolygon::regular(g).unwrap()).unwrap();
        let poly = bm.polygon();
        let x = BoundaryPoint::new(t);
        let i = bm.branch(x);
        let start = poly.p(i).angle();
        prop_assert!(ccw(start, t) < ccw(start, poly.p(i + 1).angle()));
        prop_assert_eq!(bm.branch(poly.p(i)), i);
    }

    #[test]
    fn natural_extension_factors_through_f(u in 0.0..TAU, d in 1e-6..TAU - 1e-6) {
        let bm = BoundaryMap::new(&MarkedPolygon::regular(2).unwrap()).unwrap();
        let p = GeodesicPair::from_angles(u, u + d).unwrap();
        prop_assert_eq!(bm.natural_extension(&p).w, bm.f(p.w).0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fixed_points_are_fixed(g in 2usize..6, k in 0usize..1000) {
        let poly = MarkedPolygon::regular(g).unwrap();
        let t = poly.t(k % poly.n() + 1);
        let (a, r) = t.fixed_points().unwrap();
        for fp in [a, r] {
            prop_assert!(t.apply_boundary(fp).unwrap().circular_distance(&fp) < 1e-9);
        }
    }
}

#[test]
fn sigma_is_a_fixed_point_free_involution() {
    for g in 2..=10 {
        let n = side_count(g).unwrap();
        for i in 1..=n {
            let j = sigma(i, g).unwrap();
            assert_ne!(i, j, "g = {g}");
            assert_eq!(sigma(j, g).unwrap(), i, "g = {g}");
        }
    }
}

#[test]
fn markov_intervals_tile_the_circle() {
    for g in 2..=4 {
        let bm = BoundaryMap::new(&MarkedPolygon::regular(g).unwrap()).unwrap();
        let md = MarkovData::build(&bm).unwrap();
        let m = md.points.len();
        let total: f64 = (0..m)
            .map(|k| ccw(md.points[k].angle(), md.points[(k + 1) % m].angle()))
            .sum();
        assert!((total - TAU).abs() < 1e-12);
        assert!((0..m).all(|k| ccw(md.points[k].angle(), md.points[(k + 1) % m].angle()) > 0.0));
    }
}

use std::f64::consts::TAU;

use fuchsian_entropy::dynamics::*;
use fuchsian_entropy::hyperbolic::{geodesic_intersection, hyp_distance, BoundaryPoint};
use fuchsian_entropy::maskit::{sample_polygons, SAMPLE_SEED};
use fuchsian_entropy::polygon::MarkedPolygon;
use fuchsian_entropy::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn regular_map(g: usize) -> BoundaryMap {
    BoundaryMap::new(&MarkedPolygon::regular(g).unwrap()).unwrap()
}

fn random_pair(rng: &mut ChaCha8Rng) -> GeodesicPair {
    loop {
        if let Ok(p) = GeodesicPair::from_angles(rng.random_range(0.0..TAU), rng.random_range(0.0..TAU)) {
            return p;
        }
    }
}

/// Random pairs whose geodesic crosses the polygon.
fn domain_pairs(poly: &MarkedPolygon, count: usize, seed: u64) -> Vec<GeodesicPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let p = random_pair(&mut rng);
        if let Ok(Some(_)) = exit_side(poly, &p) {
            out.push(p);
        }
    }
    out
}

fn pair_distance(a: &GeodesicPair, b: &GeodesicPair) -> f64 {
    a.u.circular_distance(&b.u).max(a.w.circular_distance(&b.w))
}

#[test]
fn regular_genus_two_matrix() {
    let md = MarkovData::build(&regular_map(2)).unwrap();
    assert_eq!(md.size(), 24);
    assert!(md.is_irreducible());
    for (k, row) in md.matrix.iter().enumerate() {
        let ones: usize = row.iter().map(|&x| x as usize).sum();
        assert_eq!(ones, if k % 2 == 0 { 2 } else { 2 * 12 - 7 }, "row {}", k + 1);
    }
}

#[test]
fn analytic_eigenpair_for_genus_two_to_six() {
    for g in 2..=6 {
        let md = MarkovData::build(&regular_map(g)).unwrap();
        let (lambda, v) = analytic_eigenpair(g).unwrap();
        assert!(eigenpair_residual(&md, lambda, &v) < 1e-9, "g = {g}");
        let (root, _) = perron_root(&md).unwrap();
        assert!(root >= lambda - 1e-9, "g = {g}: {root} < {lambda}");
    }
    let (l2, _) = analytic_eigenpair(2).unwrap();
    assert!((l2 - (5.0 + 2.0 * 6f64.sqrt())).abs() < 1e-14);
}

#[test]
fn topological_entropy_lower_bounds() {
    let h2 = topological_entropy(&MarkovData::build(&regular_map(2)).unwrap()).unwrap();
    let h3 = topological_entropy(&MarkovData::build(&regular_map(3)).unwrap()).unwrap();
    assert!(h2 >= (5.0 + 2.0 * 6f64.sqrt()).ln() - 1e-9);
    assert!(h3 >= (9.0 + 4.0 * 5f64.sqrt()).ln() - 1e-9);
    assert!((h2 - 2.2924).abs() < 1e-4);
}

#[test]
fn matrix_is_the_same_across_maskit_polygons() {
    let reference = MarkovData::build(&regular_map(2)).unwrap().to_text();
    for (params, poly) in sample_polygons(20, SAMPLE_SEED) {
        let md = MarkovData::build(&BoundaryMap::new(&poly).unwrap()).unwrap();
        assert_eq!(md.to_text(), reference, "{params:?}");
    }
}

#[test]
fn branch_endpoints_map_to_q() {
    for (_, poly) in sample_polygons(5, 3) {
        let bm = BoundaryMap::new(&poly).unwrap();
        for i in 1..=12 {
            let (x, b) = bm.f(poly.p(i));
            assert_eq!(b, i);
            assert!(x.circular_distance(&poly.q(poly.sigma(i) + 1)) < 1e-8);
        }
    }
}

#[test]
fn expanding_at_arc_midpoint() {
    let bm = regular_map(2);
    let poly = bm.polygon();
    let (a, b) = (poly.p(1).angle(), poly.p(2).angle());
    let mid = BoundaryPoint::new(a + (b - a).rem_euclid(TAU) / 2.0);
    assert!(bm.log_derivative(mid) > 0.0);
}

#[test]
fn factor_identity_and_half_open_branch() {
    let bm = regular_map(2);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let p = random_pair(&mut rng);
        assert_eq!(bm.natural_extension(&p).w, bm.f(p.w).0);
    }
    let at_p1 = GeodesicPair::new(bm.polygon().q(6), bm.polygon().p(1)).unwrap();
    assert_eq!(bm.branch(at_p1.w), 1);
}

#[test]
fn rectangles_carry_the_perimeter_off_the_regular_point() {
    for (_, poly) in sample_polygons(10, 5) {
        let mass: f64 = omega_p_rectangles(&poly).iter().map(NuRectangle::nu_mass).sum();
        assert!((mass - poly.perimeter()).abs() < 1e-10);
    }
}

#[test]
fn omega_p_membership_matches_rectangles() {
    let bm = regular_map(2);
    let rects = omega_p_rectangles(bm.polygon());
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..2000 {
        let p = random_pair(&mut rng);
        assert_eq!(bm.in_omega_p(&p), rects.iter().any(|r| r.contains(&p)));
    }
}

#[test]
fn natural_extension_maps_omega_p_into_itself() {
    for bm in [regular_map(2), BoundaryMap::new(&sample_polygons(1, 23)[0].1).unwrap()] {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let mut checked = 0;
        while checked < 1000 {
            let p = random_pair(&mut rng);
            if !bm.in_omega_p(&p) {
                continue;
            }
            assert!(bm.in_omega_p(&bm.natural_extension(&p)));
            checked += 1;
        }
    }
}

#[test]
fn iterates_are_attracted_to_omega_p() {
    let bm = regular_map(2);
    for p in attractor_sample(&bm, 500, 100, 31) {
        assert!(bm.in_omega_p(&p), "{p:?}");
    }
}

#[test]
fn exit_point_lies_on_the_side_ahead_of_the_entry() {
    let poly = MarkedPolygon::regular(2).unwrap();
    for p in domain_pairs(&poly, 500, 37) {
        let i = exit_side(&poly, &p).unwrap().unwrap();
        let g = p.geodesic().unwrap();
        let x = geodesic_intersection(&g, poly.side(i)).unwrap().unwrap();
        let reversed = GeodesicPair::new(p.w, p.u).unwrap();
        let j = exit_side(&poly, &reversed).unwrap().unwrap();
        let y = geodesic_intersection(&g, poly.side(j)).unwrap().unwrap();
        assert!((x.z() - p.w.to_complex()).norm() < (y.z() - p.w.to_complex()).norm());
        let (a, b) = (poly.vertex(i), poly.vertex(i + 1));
        assert!(hyp_distance(&x, &a) + hyp_distance(&x, &b) - hyp_distance(&a, &b) < 1e-9);
    }
}

#[test]
fn geometric_map_keeps_geodesics_on_the_polygon() {
    let poly = &sample_polygons(1, 41)[0].1;
    for p in domain_pairs(poly, 1000, 43) {
        match exit_side(poly, &f_geo(poly, &p).unwrap()) {
            Ok(side) => assert!(side.is_some()),
            Err(e) => assert_eq!(e, Error::Ambiguous),
        }
    }
}

#[test]
fn phi_conjugates_geometric_and_rectilinear_maps() {
    for poly in [MarkedPolygon::regular(2).unwrap(), sample_polygons(1, 47)[0].1.clone()] {
        let bm = BoundaryMap::new(&poly).unwrap();
        for p in domain_pairs(&poly, 1000, 53) {
            let Ok(image) = f_geo(&poly, &p) else { continue };
            let Ok(lhs) = phi(&bm, &image) else { continue };
            let rhs = bm.natural_extension(&phi(&bm, &p).unwrap());
            assert!(pair_distance(&lhs, &rhs) < 1e-9, "{p:?}");
        }
    }
}

#[test]
fn phi_is_identity_on_the_overlap_and_lands_in_omega_p() {
    let bm = regular_map(2);
    let poly = bm.polygon();
    let images: Vec<GeodesicPair> = domain_pairs(poly, 1000, 59)
        .iter()
        .map(|p| {
            let q = phi(&bm, p).unwrap();
            if bm.in_omega_p(p) {
                assert_eq!(&q, p);
            }
            assert!(bm.in_omega_p(&q));
            q
        })
        .collect();
    for (k, a) in images.iter().enumerate() {
        for b in &images[k + 1..] {
            assert!(pair_distance(a, b) > 1e-10);
        }
    }
}

#[test]
fn phi_rejects_pairs_missing_the_polygon() {
    let bm = regular_map(2);
    let (q1, p2) = (bm.polygon().q(1).angle(), bm.polygon().p(2).angle());
    let p = GeodesicPair::from_angles(q1 + 1e-4, q1 + 2e-4).unwrap();
    assert!(p2 > q1);
    assert_eq!(phi(&bm, &p), Err(Error::NotInDomain));
}

#[test]
fn orbit_avoids_partition_endpoints() {
    let bm = regular_map(2);
    let poly = bm.polygon();
    let ends: Vec<BoundaryPoint> = (1..=12).flat_map(|i| [poly.p(i), poly.q(i)]).collect();
    let mut x = BoundaryPoint::new(0.123456789);
    let mut closest = f64::INFINITY;
    for _ in 0..100_000 {
        closest = ends.iter().map(|e| e.circular_distance(&x)).fold(closest, f64::min);
        x = bm.f(x).0;
    }
    assert!(closest > 1e-13, "closest approach {closest:e}");
}

#[test]
fn derivative_sum_is_additive() {
    let bm = regular_map(2);
    let x0 = BoundaryPoint::new(0.3);
    let one = orbit_derivative_sum(&bm, x0, 1);
    assert!((one - bm.log_derivative(x0)).abs() < 1e-15);
    let mut x = x0;
    for _ in 0..500 {
        x = bm.f(x).0;
    }
    let whole = orbit_derivative_sum(&bm, x0, 1000);
    let split = orbit_derivative_sum(&bm, x0, 500) + orbit_derivative_sum(&bm, x, 500);
    assert!((whole - split).abs() < 1e-9 * whole.abs());
}

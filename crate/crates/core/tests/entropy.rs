use std::f64::consts::PI;

use fuchsian_entropy::dynamics::{BoundaryMap, MarkovData};
use fuchsian_entropy::entropy::*;
use fuchsian_entropy::hyperbolic::DiskMoebius;
use fuchsian_entropy::maskit::{build_polygon, sample_polygons, FenchelNielsen6, SAMPLE_SEED};
use fuchsian_entropy::polygon::MarkedPolygon;
use fuchsian_entropy::Error;

// 40-digit evaluations of the closed forms.
const H2: f64 = 1.978408832131029500162457436466250926199;
const H3: f64 = 2.285309381627788457449300966047319410615;
const H10: f64 = 2.655796677663408098874133230044231068002;
const H_LIMIT: f64 = 2.799495170505522591696255786964007215062;
const PERIMETER_G2: f64 = 19.95463069270345290782982046895287271439;

fn stretched() -> FenchelNielsen6 {
    let r = FenchelNielsen6::regular();
    FenchelNielsen6 { beta: 1.5 * r.beta, ..r }
}

#[test]
fn closed_forms() {
    let poly = MarkedPolygon::regular(2).unwrap();
    assert!((entropy_formula(&poly) - H2).abs() < 1e-12);
    assert!((poly.perimeter() - PERIMETER_G2).abs() < 1e-12);
    assert!((h_max(2).unwrap() - H2).abs() < 1e-15);
    assert!((h_max(3).unwrap() - H3).abs() < 1e-14);
    assert!((h_max(10).unwrap() - H10).abs() < 1e-14);
    assert!((h_max_limit() - H_LIMIT).abs() < 1e-15);
}

#[test]
fn h_max_increases_towards_its_limit() {
    let values: Vec<f64> = (2..=50).map(|g| h_max(g).unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] < w[1]));
    assert!(values.iter().all(|&h| h < h_max_limit()));
    assert!(h_max_limit() < 2.8);
    assert!(h_max_limit() - h_max(2000).unwrap() < 1e-3);
}

#[test]
fn stretched_polygon_has_lower_entropy() {
    let poly = build_polygon(&stretched()).unwrap();
    let h = entropy_formula(&poly);
    assert!(h < H2);
    assert!((entropy_area_form(&poly) - h).abs() < 1e-9);
}

#[test]
fn nu_mass_matches_perimeter() {
    let poly = MarkedPolygon::regular(2).unwrap();
    let e = nu_mass_quadrature(&poly, 1_000_000, SAMPLE_SEED).unwrap();
    assert!((e.value - PERIMETER_G2).abs() < 3.0 * e.stderr, "{e:?}");
    assert!(e.stderr / e.value < 0.01);
    let maskit = build_polygon(&stretched()).unwrap();
    let e = nu_mass_quadrature(&maskit, 1_000_000, SAMPLE_SEED).unwrap();
    assert!((e.value - maskit.perimeter()).abs() < 3.0 * e.stderr, "{e:?}");
}

#[test]
fn stderr_scales_like_inverse_root() {
    let poly = MarkedPolygon::regular(2).unwrap();
    let a = nu_mass_quadrature(&poly, 200_000, 1).unwrap();
    let b = nu_mass_quadrature(&poly, 400_000, 1).unwrap();
    let ratio = b.stderr / a.stderr;
    assert!((ratio * 2f64.sqrt() - 1.0).abs() < 0.2, "ratio {ratio}");
}

#[test]
fn quadrature_is_independent_of_thread_count() {
    let poly = MarkedPolygon::regular(2).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| nu_mass_quadrature(&poly, 50_000, 9).unwrap())
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one.value.to_bits(), four.value.to_bits());
    assert_eq!(one.stderr.to_bits(), four.stderr.to_bits());
}

#[test]
fn strips_carry_side_lengths() {
    let side = (1.0 + 3f64.sqrt()).acosh();
    let poly = MarkedPolygon::regular(2).unwrap();
    let masses: Vec<f64> = (1..=12).map(|i| strip_mass(&poly, i, 500).unwrap()).collect();
    assert!(masses.iter().all(|m| (m - side).abs() < 1e-3));
    assert!((masses.iter().sum::<f64>() - PERIMETER_G2).abs() < 1e-2);
    for (_, poly) in sample_polygons(3, 61) {
        let lengths = poly.metrics().side_lengths;
        for i in 1..=12 {
            assert!((strip_mass(&poly, i, 500).unwrap() - lengths[i - 1]).abs() < 1e-3);
        }
    }
    assert!((strip_mass_current_form(side, 200) - side).abs() < 1e-4);
    assert!(strip_mass(&poly, 13, 500).is_err());
    assert!(strip_mass(&poly, 1, 10).is_err());
}

#[test]
fn birkhoff_average_approaches_formula() {
    let bm = BoundaryMap::new(&MarkedPolygon::regular(2).unwrap()).unwrap();
    let b = birkhoff_entropy(&bm, 1_000_000, 5, SAMPLE_SEED).unwrap();
    assert!((b.value - H2).abs() < 0.02 * H2, "{b:?}");
    let one = birkhoff_entropy(&bm, 1, 1, 4).unwrap();
    assert_eq!(one.spread, 0.0);
    let maskit = build_polygon(&stretched()).unwrap();
    let b = birkhoff_entropy(&BoundaryMap::new(&maskit).unwrap(), 1_000_000, 5, SAMPLE_SEED).unwrap();
    assert!((b.value - entropy_formula(&maskit)).abs() < 0.02 * entropy_formula(&maskit));
}

#[test]
fn solver_hits_targets() {
    for target in [1.0, 1.5, 1.9] {
        let s = solve_target_entropy(target, 1e-8).unwrap();
        let h = entropy_formula(&build_polygon(&s.params).unwrap());
        assert!((h - target).abs() <= 1e-8, "{target}: {h}");
        assert!(s.params.beta > FenchelNielsen6::regular().beta);
    }
    let top = solve_target_entropy(h_max(2).unwrap(), 1e-8).unwrap();
    assert_eq!(top.params, FenchelNielsen6::regular());
}

#[test]
fn solver_rejects_bad_requests() {
    assert!(matches!(solve_target_entropy(3.0, 1e-8), Err(Error::TargetOutOfRange { .. })));
    assert!(matches!(solve_target_entropy(0.0, 1e-8), Err(Error::TargetOutOfRange { .. })));
    assert!(matches!(solve_target_entropy(1.0, 1e-12), Err(Error::InvalidInput(_))));
}

#[test]
fn beta_sweep_peaks_at_regular_value() {
    let regular = FenchelNielsen6::regular().beta;
    let values = linspace(0.8, 3.0, 110);
    let rows = sweep("beta", &values).unwrap();
    // Short β leaves the chart; only the low end of the range is skipped.
    let first = rows[0].value;
    assert!(first < 1.4);
    assert_eq!(rows.len(), values.iter().filter(|&&v| v >= first).count());
    for r in &rows {
        assert!((r.entropy * r.perimeter - 4.0 * PI * PI).abs() < 1e-9);
        assert!((r.h_top - rows[0].h_top).abs() < 1e-12);
        assert!(r.entropy <= H2 + 1e-9);
    }
    let peak = rows.iter().max_by(|a, b| a.entropy.total_cmp(&b.entropy)).unwrap();
    assert!((peak.value - regular).abs() <= 0.02 + 1e-12);
    assert!((peak.entropy - H2).abs() < 1e-3);
    let csv = sweep_csv(&rows[..2]);
    assert!(csv.starts_with("param,value,perimeter,entropy,h_top\nbeta,"));
    assert!(sweep("delta", &values).is_err());
}

#[test]
fn report_respects_bounds() {
    let opts = ReportOptions { samples: 100_000, nsteps: 100_000, ..Default::default() };
    for poly in [MarkedPolygon::regular(2).unwrap(), build_polygon(&stretched()).unwrap()] {
        let r = EntropyReport::compute(&poly, &opts).unwrap();
        assert!(r.formula_value <= r.h_of_g + 1e-9);
        assert!(r.formula_value < r.h_top);
        assert!((r.formula_value - r.area_form_value).abs() < 1e-9);
        assert!((r.nu_mass.value - r.perimeter).abs() < 3.0 * r.nu_mass.stderr);
    }
}

#[test]
fn verification_passes_and_catches_corruption() {
    let opts = ReportOptions { samples: 50_000, nsteps: 100_000, ..Default::default() };
    let poly = MarkedPolygon::regular(2).unwrap();
    let lines = verify(&poly, &opts, true);
    assert!(lines.iter().all(|l| l.passed), "{lines:#?}");
    let bad = poly.with_pairing(1, poly.t(1).compose(&DiskMoebius::rotation(1e-3)));
    let lines = verify(&bad, &opts, true);
    let endpoint = lines.iter().find(|l| l.name == "endpoint_mapping").unwrap();
    assert!(!endpoint.passed);
    assert!(lines[0].to_string().starts_with("PASS circular_order"));
}

#[test]
fn matrix_is_constant_along_a_twist() {
    let reference = MarkovData::build(&BoundaryMap::new(&MarkedPolygon::regular(2).unwrap()).unwrap()).unwrap();
    for tau in [-0.35, -0.2, 0.1, 0.3] {
        let p = FenchelNielsen6::regular().with("tau", tau).unwrap();
        let poly = build_polygon(&p).unwrap();
        let md = MarkovData::build(&BoundaryMap::new(&poly).unwrap()).unwrap();
        assert_eq!(md.matrix, reference.matrix);
    }
}

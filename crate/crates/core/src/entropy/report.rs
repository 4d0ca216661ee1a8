use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynamics::{
    analytic_eigenpair, eigenpair_residual, topological_entropy, BoundaryMap, MarkovData,
};
use crate::maskit::SAMPLE_SEED;
use crate::polygon::MarkedPolygon;
use crate::Result;

use super::{
    birkhoff_entropy, entropy_area_form, entropy_formula, h_max, nu_mass_quadrature,
    regular_side_length, BirkhoffEstimate, Estimate,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportOptions {
    pub samples: usize,
    pub nsteps: usize,
    pub nseeds: usize,
    pub seed: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            samples: 100_000,
            nsteps: 100_000,
            nseeds: 5,
            seed: SAMPLE_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub genus: usize,
    pub formula_value: f64,
    pub area_form_value: f64,
    /// `π²(4g-4) / ν-mass`.
    pub quadrature_value: Estimate,
    pub birkhoff_value: BirkhoffEstimate,
    pub h_top: f64,
    #[serde(rename = "H_of_g")]
    pub h_of_g: f64,
    pub perimeter: f64,
    pub area: f64,
    pub nu_mass: Estimate,
    pub samples: usize,
    pub seed: u64,
}

impl EntropyReport {
    pub fn compute(poly: &MarkedPolygon, opts: &ReportOptions) -> Result<Self> {
        let bm = BoundaryMap::new(poly)?;
        let md = MarkovData::build(&bm)?;
        let metrics = poly.metrics();
        let nu_mass = nu_mass_quadrature(poly, opts.samples, opts.seed)?;
        let k = PI * PI * (4.0 * poly.genus() as f64 - 4.0);
        let q = k / nu_mass.value;
        Ok(EntropyReport {
            genus: poly.genus(),
            formula_value: entropy_formula(poly),
            area_form_value: entropy_area_form(poly),
            quadrature_value: Estimate {
                value: q,
                stderr: q * nu_mass.stderr / nu_mass.value,
            },
            birkhoff_value: birkhoff_entropy(&bm, opts.nsteps, opts.nseeds, opts.seed)?,
            h_top: topological_entropy(&md)?,
            h_of_g: h_max(poly.genus())?,
            perimeter: metrics.perimeter,
            area: metrics.area,
            nu_mass,
            samples: opts.samples,
            seed: opts.seed,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    /// `|observed - expected| ≤ tolerance`.
    Within,
    /// `observed ≥ expected - tolerance`.
    AtLeast,
    /// `observed ≤ expected + tolerance`.
    AtMost,
    /// `observed < expected`.
    Below,
}

/// One line of the verification suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyLine {
    pub name: String,
    pub observed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
}

impl VerifyLine {
    pub fn new(name: impl Into<String>, observed: f64, expected: f64, tolerance: f64, comparison: Comparison) -> Self {
        let passed = match comparison {
            Comparison::Within => (observed - expected).abs() <= tolerance,
            Comparison::AtLeast => observed >= expected - tolerance,
            Comparison::AtMost => observed <= expected + tolerance,
            Comparison::Below => observed < expected,
        };
        VerifyLine {
            name: name.into(),
            observed,
            expected,
            tolerance,
            comparison,
            passed,
        }
    }

    fn failed(name: impl Into<String>, expected: f64, tolerance: f64) -> Self {
        VerifyLine {
            name: name.into(),
            observed: f64::NAN,
            expected,
            tolerance,
            comparison: Comparison::Within,
            passed: false,
        }
    }
}

impl fmt::Display for VerifyLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {:e} {:e} {:e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.observed,
            self.expected,
            self.tolerance
        )
    }
}

/// Polygon invariants, Markov structure and the oracle triangle. Failures
/// of intermediate steps become `FAIL` lines rather than errors, so the
/// whole suite is always reported.
pub fn verify(poly: &MarkedPolygon, opts: &ReportOptions, regular: bool) -> Vec<VerifyLine> {
    use Comparison::*;
    let mut lines: Vec<VerifyLine> = poly
        .checks()
        .into_iter()
        .map(|c| VerifyLine::new(c.name, c.observed, 0.0, c.tolerance, Within))
        .collect();
    let g = poly.genus();
    let metrics = poly.metrics();
    if regular {
        let side = regular_side_length(g).unwrap_or(f64::NAN);
        let worst_side = metrics.side_lengths.iter().map(|l| (l - side).abs()).fold(0.0, f64::max);
        let worst_angle = metrics
            .interior_angles
            .iter()
            .map(|a| (a - FRAC_PI_2).abs())
            .fold(0.0, f64::max);
        lines.push(VerifyLine::new("regular_side_lengths", worst_side, 0.0, 1e-7, Within));
        lines.push(VerifyLine::new("regular_angles", worst_angle, 0.0, 1e-7, Within));
    }
    let formula = entropy_formula(poly);
    let h_of_g = h_max(g).unwrap_or(f64::NAN);
    lines.push(VerifyLine::new("formula_area_form", entropy_area_form(poly), formula, 1e-9, Within));
    lines.push(VerifyLine::new("formula_at_most_H", formula, h_of_g, 1e-9, AtMost));

    let bm = BoundaryMap::new(poly);
    let md = bm.as_ref().map_err(Clone::clone).and_then(MarkovData::build);
    match (&md, analytic_eigenpair(g)) {
        (Ok(md), Ok((lambda, v))) => {
            lines.push(VerifyLine::new("markov_eigenpair", eigenpair_residual(md, lambda, &v), 0.0, 1e-9, Within));
            match topological_entropy(md) {
                Ok(h_top) => {
                    lines.push(VerifyLine::new("h_top_lower_bound", h_top, lambda.ln(), 1e-9, AtLeast));
                    lines.push(VerifyLine::new("entropy_below_h_top", formula, h_top, 0.0, Below));
                }
                Err(_) => lines.push(VerifyLine::failed("h_top_lower_bound", lambda.ln(), 1e-9)),
            }
        }
        _ => lines.push(VerifyLine::failed("markov_eigenpair", 0.0, 1e-9)),
    }
    match nu_mass_quadrature(poly, opts.samples, opts.seed) {
        Ok(e) => lines.push(VerifyLine::new("nu_mass_perimeter", e.value, metrics.perimeter, 3.0 * e.stderr, Within)),
        Err(_) => lines.push(VerifyLine::failed("nu_mass_perimeter", metrics.perimeter, f64::NAN)),
    }
    let birkhoff = bm.and_then(|bm| birkhoff_entropy(&bm, opts.nsteps, opts.nseeds, opts.seed));
    match birkhoff {
        Ok(b) => lines.push(VerifyLine::new("birkhoff_formula", b.value, formula, 0.02 * formula, Within)),
        Err(_) => lines.push(VerifyLine::failed("birkhoff_formula", formula, 0.02 * formula)),
    }
    lines
}

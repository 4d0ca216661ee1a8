//! Entropy of the boundary map: the closed form `π²(4g-4)/Perimeter`, its
//! maximum over genus-`g` surfaces, and the numerical oracles that check it.

mod birkhoff;
mod quadrature;
mod report;
mod solver;
mod sweep;

pub use birkhoff::{birkhoff_entropy, BirkhoffEstimate};
pub use quadrature::{
    nu_mass_quadrature, strip_mass, strip_mass_current_form, Estimate, MIN_SAMPLES, MIN_STRIP_GRID,
    STRATA,
};
pub use report::{verify, EntropyReport, ReportOptions, VerifyLine};
pub use solver::{solve_target_entropy, Solution};
pub use sweep::{linspace, sweep, sweep_csv, SweepRow, SWEEP_HEADER};

use std::f64::consts::PI;

use crate::polygon::{side_count, MarkedPolygon};
use crate::Result;

/// `π²(4g-4) / Perimeter`.
pub fn entropy_formula(poly: &MarkedPolygon) -> f64 {
    PI * PI * (4.0 * poly.genus() as f64 - 4.0) / poly.perimeter()
}

/// `π · Area / Perimeter`, with the area from the angle defect.
pub fn entropy_area_form(poly: &MarkedPolygon) -> f64 {
    let m = poly.metrics();
    PI * m.area / m.perimeter
}

/// Side length of the regular `(8g-4)`-gon with right angles.
pub fn regular_side_length(genus: usize) -> Result<f64> {
    let n = side_count(genus)?;
    Ok((1.0 + 2.0 * (PI / (n as f64 / 2.0)).cos()).acosh())
}

/// `H(g) = π²(4g-4) / ((8g-4) cosh⁻¹(1 + 2cos(π/(4g-2))))`.
pub fn h_max(genus: usize) -> Result<f64> {
    let n = side_count(genus)? as f64;
    Ok(PI * PI * (4.0 * genus as f64 - 4.0) / (n * regular_side_length(genus)?))
}

/// `lim H(g) = π² / (2 cosh⁻¹ 3)`.
pub fn h_max_limit() -> f64 {
    PI * PI / (2.0 * 3f64.acosh())
}

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{exit_side, GeodesicPair};
use crate::hyperbolic::{ccw, far_endpoint, BoundaryPoint, DiskPoint};
use crate::polygon::MarkedPolygon;
use crate::sum::Neumaier;
use crate::{Error, Result};

/// Strata per angle coordinate.
pub const STRATA: usize = 64;
pub const MIN_SAMPLES: usize = 10_000;
pub const MIN_STRIP_GRID: usize = 100;

/// A Monte Carlo value with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

/// Density of `dν = |du||dw|/|u-w|²` in angle coordinates.
fn nu_density(u: f64, w: f64) -> f64 {
    let s = ((u - w) / 2.0).sin();
    1.0 / (4.0 * s * s)
}

/// `ν` of the geodesics crossing the polygon, by Monte Carlo stratified over
/// a `64×64` grid of `(θ_u, θ_w)` cells. Stratum `k` draws from the ChaCha8
/// stream `k` of `seed`, so the result does not depend on the thread count.
/// Vertex-grazing draws get weight zero.
pub fn nu_mass_quadrature(poly: &MarkedPolygon, samples: usize, seed: u64) -> Result<Estimate> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidInput(format!(
            "at least {MIN_SAMPLES} samples are needed (got {samples})"
        )));
    }
    let cells = STRATA * STRATA;
    let h = TAU / STRATA as f64;
    let parts: Vec<(f64, f64)> = (0..cells)
        .into_par_iter()
        .map(|k| {
            let count = samples / cells + usize::from(k < samples % cells);
            let (ru, rw) = ((k / STRATA) as f64 * h, (k % STRATA) as f64 * h);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let (mut mean, mut m2) = (0.0f64, 0.0f64);
            for j in 0..count {
                let u = ru + h * rng.random::<f64>();
                let w = rw + h * rng.random::<f64>();
                let f = match GeodesicPair::from_angles(u, w) {
                    Ok(p) => match exit_side(poly, &p) {
                        Ok(Some(_)) => nu_density(u, w),
                        _ => 0.0,
                    },
                    Err(_) => 0.0,
                };
                let d = f - mean;
                mean += d / (j + 1) as f64;
                m2 += d * (f - mean);
            }
            let area = h * h;
            let var = m2 / (count - 1) as f64;
            (area * mean, area * area * var / count as f64)
        })
        .collect();
    let value: Neumaier = parts.iter().map(|p| p.0).collect();
    let var: Neumaier = parts.iter().map(|p| p.1).collect();
    Ok(Estimate {
        value: value.value(),
        stderr: var.value().sqrt(),
    })
}

/// `ν` of the strip of geodesics leaving the polygon through side `i`.
///
/// For `u` on the inner arc `(Q_{i+1}, P_i)` the admissible `w` run between
/// the far endpoints of the geodesics from `u` through `V_i` and `V_{i+1}`,
/// and the `w`-integral is `½(cot(φ_a/2) - cot(φ_b/2))` with `φ = ccw(u, w)`.
/// The outer integral is a midpoint rule on `grid` nodes after the
/// substitution `t ↦ (1 - cos πt)/2`, which clusters nodes at the arc ends.
pub fn strip_mass(poly: &MarkedPolygon, i: usize, grid: usize) -> Result<f64> {
    if grid < MIN_STRIP_GRID {
        return Err(Error::InvalidInput(format!(
            "strip grid must be at least {MIN_STRIP_GRID} (got {grid})"
        )));
    }
    let n = poly.n();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let (va, vb) = (poly.vertex(i), poly.vertex(i + 1));
    let start = poly.q(i + 1).angle();
    let span = ccw(start, poly.p(i).angle());
    let mut acc = Neumaier::default();
    for k in 0..grid {
        let t = (k as f64 + 0.5) / grid as f64;
        let s = 0.5 * (1.0 - (PI * t).cos());
        let ds = 0.5 * PI * (PI * t).sin() / grid as f64;
        let theta = start + span * s;
        let u = BoundaryPoint::new(theta);
        let phi = |v: &DiskPoint| ccw(theta, far_endpoint(u, *v).angle());
        let cot = |x: f64| 1.0 / (x / 2.0).tan();
        let inner = 0.5 * (cot(phi(&va)) - cot(phi(&vb))).abs();
        acc.add(inner * span * ds);
    }
    Ok(acc.value())
}

/// The same strip in the coordinates `½ sin θ dθ dx`, `θ ∈ (0, π)`,
/// `x ∈ (0, length)`, by a `grid × grid` midpoint rule.
pub fn strip_mass_current_form(length: f64, grid: usize) -> f64 {
    let h = PI / grid as f64;
    let inner: Neumaier = (0..grid).map(|k| 0.5 * ((k as f64 + 0.5) * h).sin() * h).collect();
    let dx = length / grid as f64;
    (0..grid).map(|_| inner.value() * dx).collect::<Neumaier>().value()
}

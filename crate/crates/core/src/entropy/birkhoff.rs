use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{orbit_derivative_sum, BoundaryMap};
use crate::hyperbolic::BoundaryPoint;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BirkhoffEstimate {
    /// Median over seeds of `(1/nsteps) Σ log|f_P'(x_k)|`.
    pub value: f64,
    /// Largest minus smallest per-seed average.
    pub spread: f64,
    pub nsteps: usize,
    pub nseeds: usize,
}

/// Orbit averages of `log|f_P'|` from `nseeds` starting points; starting
/// point `k` is drawn from the ChaCha8 stream `k` of `seed`.
pub fn birkhoff_entropy(bm: &BoundaryMap, nsteps: usize, nseeds: usize, seed: u64) -> Result<BirkhoffEstimate> {
    if nsteps == 0 || nseeds == 0 {
        return Err(Error::InvalidInput("nsteps and nseeds must be positive".into()));
    }
    let mut averages: Vec<f64> = (0..nseeds)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let x0 = BoundaryPoint::new(rng.random_range(0.0..TAU));
            orbit_derivative_sum(bm, x0, nsteps) / nsteps as f64
        })
        .collect();
    averages.sort_by(f64::total_cmp);
    let mid = nseeds / 2;
    let value = if nseeds % 2 == 1 {
        averages[mid]
    } else {
        0.5 * (averages[mid - 1] + averages[mid])
    };
    Ok(BirkhoffEstimate {
        value,
        spread: averages[nseeds - 1] - averages[0],
        nsteps,
        nseeds,
    })
}

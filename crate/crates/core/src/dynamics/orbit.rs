use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hyperbolic::BoundaryPoint;
use crate::sum::Neumaier;

use super::{BoundaryMap, GeodesicPair};

/// `Σ_{k<nsteps} log|f_P'(x_k)|` along the orbit of `x0`.
pub fn orbit_derivative_sum(bm: &BoundaryMap, x0: BoundaryPoint, nsteps: usize) -> f64 {
    let mut acc = Neumaier::default();
    let mut x = x0;
    for _ in 0..nsteps {
        let branch = bm.branch_map(bm.branch(x));
        let z = x.to_complex();
        acc.add(branch.log_derivative(z));
        x = BoundaryPoint::from_complex(branch.apply(z));
    }
    acc.value()
}

/// `points` uniformly random pairs pushed forward `iters` times by `F_P`.
pub fn attractor_sample(bm: &BoundaryMap, points: usize, iters: usize, seed: u64) -> Vec<GeodesicPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = std::f64::consts::TAU;
    (0..points)
        .map(|_| {
            let mut p = GeodesicPair {
                u: BoundaryPoint::new(rng.random_range(0.0..tau)),
                w: BoundaryPoint::new(rng.random_range(0.0..tau)),
            };
            for _ in 0..iters {
                p = bm.natural_extension(&p);
            }
            p
        })
        .collect()
}

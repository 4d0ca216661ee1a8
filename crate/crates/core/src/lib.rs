//! Bowen–Series boundary maps for closed hyperbolic surfaces.
//!
//! A surface of genus `g` is presented by a marked `(8g-4)`-sided fundamental
//! polygon in the Poincaré disk. From the polygon this crate builds the
//! piecewise-Möbius boundary map, its two-dimensional extensions, the Markov
//! partition and transition matrix, and evaluates the measure-theoretic
//! entropy `π²(4g-4)/Perimeter` against independent numerical oracles
//! (a ν-quadrature over geodesics crossing the polygon, and Birkhoff averages
//! of `log|f'|` along orbits).
//!
//! Genus-2 surfaces away from the regular one come from Maskit's
//! Fenchel–Nielsen generators in [`maskit`].

pub mod dd;
pub mod dynamics;
pub mod entropy;
pub mod error;
pub mod hyperbolic;
pub mod maskit;
pub mod polygon;
pub mod serial;
pub mod sum;
pub mod tolerance;

pub use error::{Error, Result};

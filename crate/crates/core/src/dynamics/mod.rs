//! Boundary dynamics of a marked polygon: the piecewise Möbius circle map
//! `f_P`, its two-coordinate extension `F_P`, the geometric map `F_geo`,
//! the bulge/corner map `Φ` and the Markov structure.

mod geometric;
mod markov;
mod orbit;

pub use geometric::{exit_side, f_geo, omega_p_rectangles, phi, NuRectangle};
pub use markov::{
    analytic_eigenpair, eigenpair_residual, perron_root, topological_entropy, MarkovData,
};
pub use orbit::{attractor_sample, orbit_derivative_sum};

use num_complex::Complex64;

use crate::hyperbolic::{ccw, BoundaryPoint, Geodesic};
use crate::polygon::MarkedPolygon;
use crate::tolerance;
use crate::{Error, Result};

/// A point of `S×S∖Δ`: the oriented geodesic from `u` to `w`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeodesicPair {
    pub u: BoundaryPoint,
    pub w: BoundaryPoint,
}

impl GeodesicPair {
    pub fn new(u: BoundaryPoint, w: BoundaryPoint) -> Result<Self> {
        if u.circular_distance(&w) <= tolerance::ENDPOINT_SEPARATION {
            return Err(Error::InvalidInput(format!(
                "geodesic endpoints coincide ({} and {})",
                u.angle(),
                w.angle()
            )));
        }
        Ok(GeodesicPair { u, w })
    }

    pub fn from_angles(u: f64, w: f64) -> Result<Self> {
        GeodesicPair::new(BoundaryPoint::new(u), BoundaryPoint::new(w))
    }

    pub fn geodesic(&self) -> Result<Geodesic> {
        Geodesic::new(self.u, self.w)
    }
}

/// A det-1 branch map in plain form for the orbit loops.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Branch {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl Branch {
    pub(crate) fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    pub(crate) fn apply_boundary(&self, x: BoundaryPoint) -> BoundaryPoint {
        BoundaryPoint::from_complex(self.apply(x.to_complex()))
    }

    /// `log|T'(z)| = -2 log|cz+d|` for `det T = 1`.
    pub(crate) fn log_derivative(&self, z: Complex64) -> f64 {
        -(self.c * z + self.d).norm_sqr().ln()
    }
}

/// The circle map `f_P(x) = T_i x` for `x ∈ [P_i, P_{i+1})`.
#[derive(Clone, Debug)]
pub struct BoundaryMap {
    polygon: MarkedPolygon,
    /// `ccw(P_1, P_i)`, increasing from 0.
    offsets: Vec<f64>,
    branches: Vec<Branch>,
}

impl BoundaryMap {
    pub fn new(polygon: &MarkedPolygon) -> Result<Self> {
        let n = polygon.n();
        let start = polygon.p(1).angle();
        let offsets: Vec<f64> = (1..=n).map(|i| ccw(start, polygon.p(i).angle())).collect();
        if offsets.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput("points P are not in circular order".into()));
        }
        let branches = polygon
            .pairings()
            .iter()
            .map(|t| {
                let m = t.normalized()?;
                Ok(Branch { a: m.a, b: m.b, c: m.c, d: m.d })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundaryMap {
            polygon: polygon.clone(),
            offsets,
            branches,
        })
    }

    pub fn polygon(&self) -> &MarkedPolygon {
        &self.polygon
    }

    pub fn n(&self) -> usize {
        self.offsets.len()
    }

    /// The `i` with `x ∈ [P_i, P_{i+1})`.
    pub fn branch(&self, x: BoundaryPoint) -> usize {
        let off = ccw(self.polygon.p(1).angle(), x.angle());
        let i = self.offsets.partition_point(|&o| o <= off);
        let next = self.offsets.get(i).copied().unwrap_or(std::f64::consts::TAU);
        let gap = (off - self.offsets[i - 1]).min(next - off);
        if gap < tolerance::ARC_ENDPOINT {
            log::warn!(
                "point {} is within {gap:e} of a branch endpoint; using [P_{i}, P_{})",
                x.angle(),
                i % self.n() + 1
            );
        }
        i
    }

    pub(crate) fn branch_map(&self, i: usize) -> &Branch {
        &self.branches[i - 1]
    }

    /// `f_P(x)` and its branch index.
    pub fn f(&self, x: BoundaryPoint) -> (BoundaryPoint, usize) {
        let i = self.branch(x);
        (self.branches[i - 1].apply_boundary(x), i)
    }

    /// `log|f_P'(x)|`.
    pub fn log_derivative(&self, x: BoundaryPoint) -> f64 {
        self.branches[self.branch(x) - 1].log_derivative(x.to_complex())
    }

    /// `F_P(u, w) = (T_i u, T_i w)` with `w ∈ [P_i, P_{i+1})`.
    pub fn natural_extension(&self, p: &GeodesicPair) -> GeodesicPair {
        let (w, i) = self.f(p.w);
        GeodesicPair {
            u: self.branches[i - 1].apply_boundary(p.u),
            w,
        }
    }

    /// Whether `p` lies in the rectilinear domain `Ω_P`.
    pub fn in_omega_p(&self, p: &GeodesicPair) -> bool {
        let poly = &self.polygon;
        let n = self.n();
        let i = self.branch(p.w);
        let lo = poly.q(i + 2).angle();
        let hi = if ccw(poly.p(i).angle(), p.w.angle()) < ccw(poly.p(i).angle(), poly.q(i).angle()) {
            poly.p(i + n - 1).angle()
        } else {
            poly.p(i).angle()
        };
        ccw(lo, p.u.angle()) <= ccw(lo, hi)
    }
}

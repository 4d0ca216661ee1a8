//! Poincaré-disk geometry: Möbius maps, boundary points, geodesics.
//!
//! Long geodesics are also carried as unit spacelike normals on the
//! hyperboloid `-x0² + x1² + x2² = -1`, where `⟨n, X⟩` is the hyperbolic
//! sine of the signed distance from `X`. Short ones (endpoints close
//! together) use their Euclidean circle, which is better conditioned.

mod geodesic;
mod moebius;

pub use geodesic::{
    crosses_segment, geodesic_intersection, hyp_distance, side_of_geodesic, EuclideanRepr,
    Geodesic,
};
pub use moebius::DiskMoebius;
pub(crate) use geodesic::far_endpoint;

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::tolerance;
use crate::{Error, Result};

/// Reduces an angle to `[0, 2π)`.
pub fn reduce_angle(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Counterclockwise angular distance from `a` to `b`, in `[0, 2π)`.
pub fn ccw(a: f64, b: f64) -> f64 {
    reduce_angle(b - a)
}

/// `x ∈ [a, b)` on the circle, traversed counterclockwise.
pub fn in_arc(x: f64, a: f64, b: f64) -> bool {
    ccw(a, x) < ccw(a, b)
}

/// A point on the circle at infinity.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct BoundaryPoint {
    angle: f64,
}

impl BoundaryPoint {
    pub fn new(angle: f64) -> Self {
        BoundaryPoint {
            angle: reduce_angle(angle),
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        BoundaryPoint::new(z.im.atan2(z.re))
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.angle)
    }

    /// Shorter arc length to `other`, in `[0, π]`.
    pub fn circular_distance(&self, other: &BoundaryPoint) -> f64 {
        let d = ccw(self.angle, other.angle);
        d.min(TAU - d)
    }

    pub fn approx_eq(&self, other: &BoundaryPoint, tol: f64) -> bool {
        self.circular_distance(other) < tol
    }

    /// Null vector `(1, cos θ, sin θ)` on the light cone.
    pub fn lift(&self) -> [f64; 3] {
        [1.0, self.angle.cos(), self.angle.sin()]
    }
}

/// A point strictly inside the unit disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint {
    z: Complex64,
}

impl DiskPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if z.norm() < 1.0 - tolerance::DISK_INTERIOR {
            Ok(DiskPoint { z })
        } else {
            Err(Error::InvalidInput(format!(
                "point {z} is not inside the disk"
            )))
        }
    }

    pub fn origin() -> Self {
        DiskPoint {
            z: Complex64::new(0.0, 0.0),
        }
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    /// `1 - |z|²`, computed without cancellation.
    pub fn conformal_factor(&self) -> f64 {
        let r = self.z.norm();
        (1.0 - r) * (1.0 + r)
    }

    /// Hyperboloid coordinates `((1+|z|²), 2 Re z, 2 Im z) / (1-|z|²)`.
    pub fn lift(&self) -> [f64; 3] {
        let k = self.conformal_factor();
        [
            (1.0 + self.z.norm_sqr()) / k,
            2.0 * self.z.re / k,
            2.0 * self.z.im / k,
        ]
    }

    /// Inverse of [`DiskPoint::lift`] for a future-pointing unit timelike vector.
    pub fn from_lift(x: [f64; 3]) -> Result<Self> {
        DiskPoint::new(Complex64::new(x[1], x[2]) / (1.0 + x[0]))
    }
}

/// Minkowski form `-x0y0 + x1y1 + x2y2`.
pub(crate) fn minkowski(x: &[f64; 3], y: &[f64; 3]) -> f64 {
    -x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles_reduce_and_compare() {
        let p = BoundaryPoint::new(-0.5);
        assert!((p.angle() - (TAU - 0.5)).abs() < 1e-15);
        assert!(BoundaryPoint::new(TAU - 1e-14).approx_eq(&BoundaryPoint::new(0.0), 1e-12));
        assert!(in_arc(0.1, 6.0, 0.2));
        assert!(!in_arc(0.2, 6.0, 0.2));
        assert!(in_arc(6.0, 6.0, 0.2));
    }

    #[test]
    fn lift_round_trip() {
        let p = DiskPoint::new(Complex64::new(0.3, -0.8)).unwrap();
        let x = p.lift();
        assert!((minkowski(&x, &x) + 1.0).abs() < 1e-12);
        let q = DiskPoint::from_lift(x).unwrap();
        assert!((q.z() - p.z()).norm() < 1e-15);
    }

    #[test]
    fn disk_point_rejects_boundary() {
        assert!(DiskPoint::new(Complex64::new(1.0, 0.0)).is_err());
        assert!(DiskPoint::new(Complex64::new(0.0, 1.0 - 1e-13)).is_err());
    }
}

use num_complex::Complex64;

use super::{ccw, minkowski, BoundaryPoint, DiskPoint};
use crate::tolerance;
use crate::{Error, Result};

/// Euclidean shape of a geodesic in the disk model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EuclideanRepr {
    /// Straight line through the origin with unit direction `u → w`.
    Diameter { direction: Complex64 },
    /// Arc of the circle orthogonal to the unit circle.
    Circle { center: Complex64, radius: f64 },
}

/// Oriented geodesic from `u` to `w`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geodesic {
    u: BoundaryPoint,
    w: BoundaryPoint,
    normal: [f64; 3],
    repr: EuclideanRepr,
}

impl Geodesic {
    pub fn new(u: BoundaryPoint, w: BoundaryPoint) -> Result<Self> {
        if u.circular_distance(&w) <= tolerance::ENDPOINT_SEPARATION {
            return Err(Error::InvalidInput(format!(
                "geodesic endpoints coincide at angle {}",
                u.angle()
            )));
        }
        let half = ccw(u.angle(), w.angle()) / 2.0;
        let mid = u.angle() + half;
        let (sh, ch) = half.sin_cos();
        let (sm, cm) = mid.sin_cos();
        let normal = [-ch / sh, -cm / sh, -sm / sh];
        let repr = if ch.abs() < tolerance::DIAMETER {
            EuclideanRepr::Diameter {
                direction: w.to_complex(),
            }
        } else {
            EuclideanRepr::Circle {
                center: Complex64::new(cm, sm) / ch,
                radius: (sh / ch).abs(),
            }
        };
        Ok(Geodesic { u, w, normal, repr })
    }

    pub fn from_angles(u: f64, w: f64) -> Result<Self> {
        Geodesic::new(BoundaryPoint::new(u), BoundaryPoint::new(w))
    }

    /// Geodesic through two disk points, oriented from `p` to `q`.
    pub fn through_points(p: DiskPoint, q: DiskPoint) -> Result<Self> {
        let pz = p.z();
        let qq = (q.z() - pz) / (1.0 - pz.conj() * q.z());
        if qq.norm() == 0.0 {
            return Err(Error::InvalidInput("geodesic through a single point".into()));
        }
        let dir = qq / qq.norm();
        let back = |z: Complex64| (z + pz) / (1.0 + pz.conj() * z);
        Geodesic::new(
            BoundaryPoint::from_complex(back(-dir)),
            BoundaryPoint::from_complex(back(dir)),
        )
    }

    /// Geodesic leaving `u` and passing through `p`.
    pub fn through(u: BoundaryPoint, p: DiskPoint) -> Result<Self> {
        Geodesic::new(u, far_endpoint(u, p))
    }

    pub fn u(&self) -> BoundaryPoint {
        self.u
    }

    pub fn w(&self) -> BoundaryPoint {
        self.w
    }

    pub fn reversed(&self) -> Self {
        let n = self.normal;
        Geodesic {
            u: self.w,
            w: self.u,
            normal: [-n[0], -n[1], -n[2]],
            repr: match self.repr {
                EuclideanRepr::Diameter { direction } => EuclideanRepr::Diameter {
                    direction: -direction,
                },
                r => r,
            },
        }
    }

    pub fn euclidean(&self) -> EuclideanRepr {
        self.repr
    }

    /// Unit spacelike normal; `⟨n, X⟩ > 0` on the left of `u → w`.
    pub fn normal(&self) -> [f64; 3] {
        self.normal
    }

    /// Deviation of the cached Euclidean form from the endpoints.
    pub fn euclidean_residual(&self) -> f64 {
        match self.repr {
            EuclideanRepr::Diameter { direction } => {
                let a = (direction - self.w.to_complex()).norm();
                let b = (direction + self.u.to_complex()).norm();
                a.max(b)
            }
            EuclideanRepr::Circle { center, radius } => {
                let a = ((self.u.to_complex() - center).norm() - radius).abs();
                let b = ((self.w.to_complex() - center).norm() - radius).abs();
                a.max(b) / radius.max(1.0)
            }
        }
    }

    /// Unit Euclidean tangent at a point of the geodesic, pointing toward `w`.
    pub fn tangent_at(&self, z: Complex64) -> Complex64 {
        match self.repr {
            EuclideanRepr::Diameter { direction } => direction,
            EuclideanRepr::Circle { center, .. } => {
                let t = Complex64::new(0.0, 1.0) * (z - center);
                let t = t / t.norm();
                // The arc inside the disk subtends less than a half-circle,
                // so the chord toward w leans the same way as the tangent.
                let chord = self.w.to_complex() - z;
                if (t * chord.conj()).re < 0.0 {
                    -t
                } else {
                    t
                }
            }
        }
    }
}

/// Other endpoint of the geodesic from `u` through `p`.
pub(crate) fn far_endpoint(u: BoundaryPoint, p: DiskPoint) -> BoundaryPoint {
    let pz = p.z();
    let x = u.to_complex();
    let m = (x - pz) / (1.0 - pz.conj() * x);
    let y = -m;
    BoundaryPoint::from_complex((y + pz) / (1.0 + pz.conj() * y))
}

/// Hyperbolic sine of the signed distance from `p` to `g`; positive on the
/// left of `u → w`.
pub fn side_of_geodesic(g: &Geodesic, p: &DiskPoint) -> f64 {
    match g.repr {
        // Short geodesics: the normal has entries of size 1/radius, so use
        // (|z-c|² - ρ²) / (ρ (1-|z|²)) instead.
        EuclideanRepr::Circle { center, radius } if radius < 1.0 => {
            let r = (p.z() - center).norm();
            let sign = if ccw(g.u.angle(), g.w.angle()) < std::f64::consts::PI {
                1.0
            } else {
                -1.0
            };
            sign * (r - radius) * (r + radius) / (radius * p.conformal_factor())
        }
        _ => minkowski(&g.normal, &p.lift()),
    }
}

/// Distance for the metric `2|dz|/(1-|z|²)`.
pub fn hyp_distance(p: &DiskPoint, q: &DiskPoint) -> f64 {
    let num = (p.z() - q.z()).norm();
    let den = (p.conformal_factor() * q.conformal_factor()).sqrt();
    2.0 * (num / den).asinh()
}

/// `x` lies strictly inside the counterclockwise arc `(a, b)`.
fn strictly_inside(x: f64, a: f64, b: f64, tol: f64) -> bool {
    let t = ccw(a, x);
    t > tol && t < ccw(a, b) - tol
}

/// Crossing point of two geodesics inside the disk, if any.
///
/// Computed in upper-half-plane coordinates with `∞` placed in the widest
/// gap between the four endpoints, using only pairwise endpoint
/// differences so that nearby endpoints do not cancel.
pub fn geodesic_intersection(g1: &Geodesic, g2: &Geodesic) -> Result<Option<DiskPoint>> {
    let tol = tolerance::BOUNDARY_EQ;
    let same = (g1.u.approx_eq(&g2.u, tol) && g1.w.approx_eq(&g2.w, tol))
        || (g1.u.approx_eq(&g2.w, tol) && g1.w.approx_eq(&g2.u, tol));
    if same {
        return Err(Error::DegenerateGeodesics);
    }
    let shared = [g2.u, g2.w]
        .iter()
        .any(|x| x.approx_eq(&g1.u, tol) || x.approx_eq(&g1.w, tol));
    if shared {
        return Ok(None);
    }
    let (a, b) = (g1.u.angle(), g1.w.angle());
    let in_u = strictly_inside(g2.u.angle(), a, b, 0.0);
    let in_w = strictly_inside(g2.w.angle(), a, b, 0.0);
    if in_u == in_w {
        return Ok(None);
    }
    let angles = [a, b, g2.u.angle(), g2.w.angle()];
    let mut sorted = angles;
    sorted.sort_by(f64::total_cmp);
    let (mut gap, mut inf) = (0.0, 0.0);
    for k in 0..4 {
        let g = ccw(sorted[k], sorted[(k + 1) % 4]);
        if g > gap {
            gap = g;
            inf = sorted[k] + g / 2.0;
        }
    }
    // Boundary angle θ sits at x = -cot(φ/2) with φ = ccw(∞, θ).
    let phi = angles.map(|t| ccw(inf, t));
    let x = |i: usize| -1.0 / (phi[i] / 2.0).tan();
    let diff = |i: usize, j: usize| {
        ((phi[i] - phi[j]) / 2.0).sin() / ((phi[i] / 2.0).sin() * (phi[j] / 2.0).sin())
    };
    // Endpoints (0, 1) and (2, 3); the crossing satisfies
    // (x-a)(x-b) = (x-c)(x-d).
    let (ca, da, cb, db) = (diff(2, 0), diff(3, 0), diff(2, 1), diff(3, 1));
    let den = if ca.signum() == db.signum() { ca + db } else { da + cb };
    let re = x(0) + ca * da / den;
    let y2 = -(ca * da) * (cb * db);
    if !(y2 > 0.0) {
        return Ok(None);
    }
    let w = Complex64::new(re, y2.sqrt() / den.abs());
    let i = Complex64::new(0.0, 1.0);
    let z = Complex64::from_polar(1.0, inf) * (w - i) / (w + i);
    Ok(DiskPoint::new(z).ok())
}

/// Whether `g` meets the closed geodesic segment `[p, q]`.
pub fn crosses_segment(g: &Geodesic, p: &DiskPoint, q: &DiskPoint) -> bool {
    let a = side_of_geodesic(g, p);
    let b = side_of_geodesic(g, q);
    !((a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn dp(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn axes_meet_at_origin() {
        let real = Geodesic::from_angles(PI, 0.0).unwrap();
        let imag = Geodesic::from_angles(3.0 * FRAC_PI_2, FRAC_PI_2).unwrap();
        let x = geodesic_intersection(&real, &imag).unwrap().unwrap();
        assert!(x.z().norm() < 1e-15);
        assert!(matches!(real.euclidean(), EuclideanRepr::Diameter { .. }));
    }

    #[test]
    fn interleaving_decides_crossing() {
        let g1 = Geodesic::from_angles(0.0, 2.0).unwrap();
        let g2 = Geodesic::from_angles(1.0, 3.0).unwrap();
        let g3 = Geodesic::from_angles(2.5, 3.0).unwrap();
        let x = geodesic_intersection(&g1, &g2).unwrap().unwrap();
        assert!(side_of_geodesic(&g1, &x).abs() < 1e-12);
        assert!(side_of_geodesic(&g2, &x).abs() < 1e-12);
        assert!(geodesic_intersection(&g1, &g3).unwrap().is_none());
        assert!(matches!(
            geodesic_intersection(&g1, &g1.reversed()),
            Err(Error::DegenerateGeodesics)
        ));
    }

    #[test]
    fn left_side_is_positive() {
        let g = Geodesic::from_angles(PI, 0.0).unwrap();
        assert!(side_of_geodesic(&g, &dp(0.0, 0.5)) > 0.0);
        assert!(side_of_geodesic(&g, &dp(0.0, -0.5)) < 0.0);
        // sinh of the distance from tanh(1/2)·i to the real axis.
        let s = side_of_geodesic(&g, &dp(0.0, (0.5f64).tanh()));
        assert!((s - 1f64.sinh()).abs() < 1e-14);
    }

    #[test]
    fn segment_crossing() {
        let g = Geodesic::from_angles(PI, 0.0).unwrap();
        assert!(crosses_segment(&g, &dp(0.0, -0.5), &dp(0.0, 0.5)));
        assert!(!crosses_segment(&g, &dp(0.2, 0.5), &dp(0.2, 0.7)));
    }

    #[test]
    fn distance_special_values() {
        let o = DiskPoint::origin();
        assert_eq!(hyp_distance(&o, &o), 0.0);
        let r = dp((0.5f64).tanh(), 0.0);
        assert!((hyp_distance(&o, &r) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn through_points_contains_both() {
        let p = dp(0.3, 0.2);
        let q = dp(-0.5, 0.6);
        let g = Geodesic::through_points(p, q).unwrap();
        assert!(side_of_geodesic(&g, &p).abs() < 1e-13);
        assert!(side_of_geodesic(&g, &q).abs() < 1e-13);
        assert!(g.euclidean_residual() < 1e-12);
        // The tangent at p points toward q.
        let t = g.tangent_at(p.z());
        assert!((t * (q.z() - p.z()).conj()).re > 0.0);
        let h = Geodesic::through(g.u(), q).unwrap();
        assert!(h.w().approx_eq(&g.w(), 1e-12));
    }
}

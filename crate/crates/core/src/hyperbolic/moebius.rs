use num_complex::Complex64;

use super::BoundaryPoint;
use crate::dd::Cdd;
use crate::tolerance;
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Möbius transformation `z ↦ (az+b)/(cz+d)`, stored unnormalized.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskMoebius {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl DiskMoebius {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        DiskMoebius { a, b, c, d }
    }

    pub fn identity() -> Self {
        DiskMoebius::new(ONE, ZERO, ZERO, ONE)
    }

    /// Rotation by `theta`, as `diag(e^{iθ/2}, e^{-iθ/2})`.
    pub fn rotation(theta: f64) -> Self {
        let h = Complex64::from_polar(1.0, theta / 2.0);
        DiskMoebius::new(h, ZERO, ZERO, h.conj())
    }

    /// `z ↦ e^{iθ}(z - p)/(1 - p̄z)`, the general disk automorphism.
    pub fn automorphism(theta: f64, p: Complex64) -> Self {
        let r = Complex64::from_polar(1.0, theta);
        DiskMoebius::new(r, -r * p, -p.conj(), ONE)
    }

    /// Conjugates an upper-half-plane matrix to the disk by
    /// `½(i 1; 1 i)·M·(-i 1; 1 -i)`.
    pub fn from_half_plane(m: [[Complex64; 2]; 2]) -> Self {
        let left = [[I, ONE], [ONE, I]];
        let right = [[-I, ONE], [ONE, -I]];
        let p = mat_mul(mat_mul(left, m), right);
        DiskMoebius::new(p[0][0] * 0.5, p[0][1] * 0.5, p[1][0] * 0.5, p[1][1] * 0.5)
    }

    /// The unique map sending `z1, z2, z3` to `w1, w2, w3`.
    pub fn map_points(z: [Complex64; 3], w: [Complex64; 3]) -> Result<Self> {
        let hz = to_zero_one_inf(z)?;
        let hw = to_zero_one_inf(w)?;
        Ok(hw.adjugate().compose(&hz))
    }

    /// `ad - bc`, accumulated in double-double: the entries of long
    /// translations are large and the products cancel.
    pub fn det(&self) -> Complex64 {
        let [a, b, c, d] = self.to_array().map(Cdd::from);
        (a * d - b * c).to_c64()
    }

    pub fn apply(&self, z: Complex64) -> Result<Complex64> {
        let den = self.c * z + self.d;
        let n = den.norm();
        if n <= tolerance::POLE {
            return Err(Error::PoleAtInput { denominator: n });
        }
        Ok((self.a * z + self.b) / den)
    }

    /// Image of a boundary point, re-projected onto the circle.
    pub fn apply_boundary(&self, x: BoundaryPoint) -> Result<BoundaryPoint> {
        self.apply(x.to_complex()).map(BoundaryPoint::from_complex)
    }

    /// `self ∘ other`.
    pub fn compose(&self, o: &DiskMoebius) -> Self {
        DiskMoebius::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    /// Inverse as a matrix (adjugate divided by det).
    pub fn inverse(&self) -> Self {
        let k = self.det().inv();
        DiskMoebius::new(self.d * k, -self.b * k, -self.c * k, self.a * k)
    }

    fn adjugate(&self) -> Self {
        DiskMoebius::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        DiskMoebius::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    /// Scaled to determinant one (sign of the square root is arbitrary).
    pub fn normalized(&self) -> Result<Self> {
        let det = self.det();
        if det.norm() <= tolerance::DET_MIN {
            return Err(Error::InvalidInput(format!(
                "singular matrix (|det| = {:e})",
                det.norm()
            )));
        }
        Ok(self.scale(det.sqrt().inv()))
    }

    /// Trace after det-1 normalization.
    pub fn normalized_trace(&self) -> Result<Complex64> {
        let n = self.normalized()?;
        Ok(n.a + n.d)
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.normalized_trace()
            .map(|t| t.norm() > 2.0 + tolerance::HYPERBOLIC_MARGIN)
            .unwrap_or(false)
    }

    /// `|m'(z)| = |det| / |cz+d|²`.
    pub fn derivative_modulus(&self, z: Complex64) -> Result<f64> {
        let den = (self.c * z + self.d).norm();
        if den <= tolerance::POLE {
            return Err(Error::PoleAtInput { denominator: den });
        }
        Ok(self.det().norm() / (den * den))
    }

    /// Fixed points of a hyperbolic map as `(attracting, repelling)`.
    pub fn fixed_points(&self) -> Result<(BoundaryPoint, BoundaryPoint)> {
        let m = self.normalized()?;
        let tr = m.a + m.d;
        if tr.norm() <= 2.0 + tolerance::HYPERBOLIC_MARGIN {
            return Err(Error::NotHyperbolic { trace: tr.norm() });
        }
        // c z² + (d - a) z - b = 0; pick the non-cancelling root first.
        let disc = (tr * tr - 4.0).sqrt();
        let amd = m.a - m.d;
        let big = if (amd + disc).norm() >= (amd - disc).norm() {
            amd + disc
        } else {
            amd - disc
        };
        if m.c.norm() < f64::MIN_POSITIVE {
            // Fixes ∞, so it has no pair of fixed points on the circle.
            return Err(Error::NotHyperbolic { trace: tr.norm() });
        }
        let z1 = big / (2.0 * m.c);
        let z2 = -2.0 * m.b / big;
        let k1 = m.derivative_modulus(z1)?;
        let k2 = m.derivative_modulus(z2)?;
        let (att, rep) = if k1 < k2 { (z1, z2) } else { (z2, z1) };
        Ok((BoundaryPoint::from_complex(att), BoundaryPoint::from_complex(rep)))
    }

    /// Largest deviation `||m(z)| - 1|` over `samples` equally spaced
    /// boundary points.
    pub fn disk_residual(&self, samples: usize) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..samples {
            let z = Complex64::from_polar(1.0, 0.1 + std::f64::consts::TAU * k as f64 / samples as f64);
            match self.apply(z) {
                Ok(w) => worst = worst.max((w.norm() - 1.0).abs()),
                Err(_) => return f64::INFINITY,
            }
        }
        worst
    }

    /// Deviation from the `SU(1,1)` shape `d = ā`, `c = b̄` after
    /// normalization, relative to the matrix size.
    pub fn su11_residual(&self) -> f64 {
        match self.normalized() {
            Ok(n) => {
                let size = n.a.norm().max(1.0);
                ((n.d - n.a.conj()).norm()).max((n.c - n.b.conj()).norm()) / size
            }
            Err(_) => f64::INFINITY,
        }
    }

    fn frobenius(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()).sqrt()
    }

    /// Distance from `±Id` after det-1 normalization (Frobenius norm, which
    /// bounds the operator norm).
    pub fn distance_to_identity(&self) -> f64 {
        self.projective_distance(&DiskMoebius::identity())
    }

    /// Distance between two maps as points of `PSL(2,C)`: both matrices
    /// are scaled to unit Frobenius norm and aligned in phase.
    pub fn projective_distance(&self, other: &DiskMoebius) -> f64 {
        let (nx, ny) = (self.frobenius(), other.frobenius());
        if !(nx > 0.0 && ny > 0.0) {
            return f64::INFINITY;
        }
        let x = self.to_array().map(|v| v / nx);
        let y = other.to_array().map(|v| v / ny);
        let inner: Complex64 = x.iter().zip(&y).map(|(p, q)| p * q.conj()).sum();
        let phase = if inner.norm() > 0.0 { inner / inner.norm() } else { ONE };
        x.iter()
            .zip(&y)
            .map(|(p, q)| (p - phase * q).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn to_array(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn from_array(m: [Complex64; 4]) -> Self {
        DiskMoebius::new(m[0], m[1], m[2], m[3])
    }
}

fn mat_mul(x: [[Complex64; 2]; 2], y: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    [
        [
            x[0][0] * y[0][0] + x[0][1] * y[1][0],
            x[0][0] * y[0][1] + x[0][1] * y[1][1],
        ],
        [
            x[1][0] * y[0][0] + x[1][1] * y[1][0],
            x[1][0] * y[0][1] + x[1][1] * y[1][1],
        ],
    ]
}

/// Map sending `z1, z2, z3` to `0, 1, ∞`.
fn to_zero_one_inf(z: [Complex64; 3]) -> Result<DiskMoebius> {
    let [z1, z2, z3] = z;
    let sep = (z1 - z2).norm().min((z2 - z3).norm()).min((z1 - z3).norm());
    if sep <= tolerance::ENDPOINT_SEPARATION {
        return Err(Error::InvalidInput(
            "three-point correspondence needs distinct points".into(),
        ));
    }
    let p = z2 - z3;
    let q = z2 - z1;
    Ok(DiskMoebius::new(p, -z1 * p, q, -z3 * q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_and_rotation() {
        let z = c(0.3, 0.1);
        assert_eq!(DiskMoebius::identity().apply(z).unwrap(), z);
        let w = DiskMoebius::rotation(FRAC_PI_2).apply(c(1.0, 0.0)).unwrap();
        assert!((w - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn pole_is_reported() {
        let m = DiskMoebius::new(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(-0.5, 0.0));
        assert!(matches!(m.apply(c(0.5, 0.0)), Err(Error::PoleAtInput { .. })));
        assert!(matches!(
            m.derivative_modulus(c(0.5, 0.0)),
            Err(Error::PoleAtInput { .. })
        ));
    }

    #[test]
    fn compose_and_inverse() {
        let m = DiskMoebius::automorphism(0.7, c(0.2, -0.4));
        assert!(m.compose(&DiskMoebius::identity()).projective_distance(&m) < 1e-15);
        assert!(m.inverse().inverse().projective_distance(&m) < 1e-14);
        assert!(m.compose(&m.inverse()).distance_to_identity() < 1e-14);
    }

    #[test]
    fn half_plane_dilation_fixed_points() {
        let l: f64 = 3.0;
        let m = DiskMoebius::from_half_plane([
            [c(l.sqrt(), 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(1.0 / l.sqrt(), 0.0)],
        ]);
        // The Cayley-type change sends 0 ↦ -i and ∞ ↦ i; z ↦ 3z attracts to ∞.
        let (att, rep) = m.fixed_points().unwrap();
        assert!((att.to_complex() - c(0.0, 1.0)).norm() < 1e-12);
        assert!((rep.to_complex() - c(0.0, -1.0)).norm() < 1e-12);
        assert!(m.disk_residual(64) < 1e-14);
        let k = m.derivative_modulus(rep.to_complex()).unwrap();
        assert!((k - l).abs() < 1e-12);
    }

    #[test]
    fn identity_is_not_hyperbolic() {
        assert!(matches!(
            DiskMoebius::identity().fixed_points(),
            Err(Error::NotHyperbolic { .. })
        ));
        assert!(matches!(
            DiskMoebius::rotation(1.0).fixed_points(),
            Err(Error::NotHyperbolic { .. })
        ));
    }

    #[test]
    fn repelling_multiplier_matches_finite_difference() {
        let m = DiskMoebius::automorphism(0.3, c(0.5, 0.2));
        let (_, rep) = m.fixed_points().unwrap();
        let t = rep.angle();
        let h = 1e-6;
        let arg = |s: f64| m.apply(Complex64::from_polar(1.0, s)).unwrap().arg();
        let mut delta = arg(t + h) - arg(t - h);
        if delta > PI {
            delta -= 2.0 * PI;
        } else if delta < -PI {
            delta += 2.0 * PI;
        }
        let fd = delta / (2.0 * h);
        let exact = m.derivative_modulus(rep.to_complex()).unwrap();
        assert!(exact > 1.0);
        assert!((fd - exact).abs() < 1e-4);
    }

    #[test]
    fn three_point_map() {
        let z = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)];
        let w = [c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        let m = DiskMoebius::map_points(z, w).unwrap();
        for k in 0..3 {
            assert!((m.apply(z[k]).unwrap() - w[k]).norm() < 1e-14);
        }
        assert!(m.projective_distance(&DiskMoebius::rotation(FRAC_PI_2)) < 1e-14);
        let id = DiskMoebius::map_points(z, z).unwrap();
        assert!(id.distance_to_identity() < 1e-15);
    }

    #[test]
    fn su11_shape() {
        let m = DiskMoebius::automorphism(2.0, c(-0.6, 0.3)).scale(c(0.0, 5.0));
        assert!(m.su11_residual() < 1e-14);
    }
}

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::MarkedPolygon;
use crate::hyperbolic::hyp_distance;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygonMetrics {
    pub perimeter: f64,
    pub area: f64,
    pub side_lengths: Vec<f64>,
    pub interior_angles: Vec<f64>,
}

/// Terms of `Perimeter² ≥ 4 n tan(Area/2n) · Area`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Isoareal {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

impl MarkedPolygon {
    /// Side lengths and angles are computed from chord cross-ratios of the
    /// marks `P`, `Q` (via their gaps), which stay accurate when vertices
    /// crowd the boundary.
    pub fn metrics(&self) -> PolygonMetrics {
        let n = self.n();
        let side_lengths: Vec<f64> = (1..=n).map(|i| self.side_length(i)).collect();
        let interior_angles: Vec<f64> = (1..=n).map(|i| self.interior_angle(i)).collect();
        let perimeter = side_lengths.iter().sum();
        let area = (n as f64 - 2.0) * PI - interior_angles.iter().sum::<f64>();
        PolygonMetrics {
            perimeter,
            area,
            side_lengths,
            interior_angles,
        }
    }

    /// Length of side `i` on `(a, b) = (P_i, Q_{i+1})`, cut by the
    /// extensions `(P_{i-1}, Q_i)` and `(P_{i+1}, Q_{i+2})`. In half-plane
    /// coordinates with `a = 0`, `b = ∞` a geodesic `(c, d)` crosses at
    /// height `√|cd|`.
    pub fn side_length(&self, i: usize) -> f64 {
        let n = self.n();
        let chord = |x, y| self.mark_chord(x, y);
        let (a, b) = (self.mark_p(i), self.mark_q(i + 1));
        let (c1, d1) = (self.mark_p(i + n - 1), self.mark_q(i));
        let (c2, d2) = (self.mark_p(i + 1), self.mark_q(i + 2));
        let height = |c, d| (chord(c, a) * chord(d, a)).ln() - (chord(c, b) * chord(d, b)).ln();
        0.5 * (height(c2, d2) - height(c1, d1)).abs()
    }

    /// Interior angle at `V_i`, from the cross-ratio of the endpoints of
    /// sides `i-1` and `i`.
    pub fn interior_angle(&self, i: usize) -> f64 {
        let n = self.n();
        let chord = |x, y| self.mark_chord(x, y);
        let (a, b) = (self.mark_p(i + n - 1), self.mark_q(i));
        let (c, d) = (self.mark_p(i), self.mark_q(i + 1));
        let k = (chord(c, b) * chord(d, a)) / (chord(c, a) * chord(d, b));
        2.0 * k.sqrt().atan()
    }

    /// Interior angle at `V_i` between the Euclidean tangents of sides
    /// `i-1` and `i` (conformality makes it the hyperbolic angle).
    pub fn interior_angle_euclidean(&self, i: usize) -> f64 {
        let z = self.vertex(i).z();
        let forward = self.side(i).tangent_at(z);
        let back = -self.side(i + self.n() - 1).tangent_at(z);
        let x = forward * back.conj();
        x.im.abs().atan2(x.re)
    }

    /// `Σ d(V_i, V_{i+1})` from the vertex positions.
    pub fn perimeter_from_vertices(&self) -> f64 {
        (1..=self.n())
            .map(|i| hyp_distance(&self.vertex(i), &self.vertex(i + 1)))
            .sum()
    }

    pub fn perimeter(&self) -> f64 {
        (1..=self.n()).map(|i| self.side_length(i)).sum()
    }

    pub fn isoareal_check(&self) -> Isoareal {
        let m = self.metrics();
        let n = self.n() as f64;
        let lhs = m.perimeter * m.perimeter;
        let rhs = 4.0 * n * (m.area / (2.0 * n)).tan() * m.area;
        Isoareal {
            lhs,
            rhs,
            slack: lhs - rhs,
        }
    }
}

/// Perimeter of the regular hyperbolic `n`-gon of the given area:
/// `cosh(L/2n) = cos(π/n) / cos(π/n + A/2n)`.
pub fn regular_perimeter(n: usize, area: f64) -> f64 {
    let nf = n as f64;
    let ratio = (PI / nf).cos() / (PI / nf + area / (2.0 * nf)).cos();
    2.0 * nf * ratio.acosh()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_perimeter_matches_construction() {
        for g in 2..=5 {
            let poly = MarkedPolygon::regular(g).unwrap();
            let m = poly.metrics();
            let want = regular_perimeter(poly.n(), m.area);
            assert!((m.perimeter - want).abs() < 1e-9, "g = {g}");
        }
    }

    #[test]
    fn cross_ratio_metrics_match_vertex_geometry() {
        let poly = MarkedPolygon::regular(2).unwrap();
        let m = poly.metrics();
        assert!((poly.perimeter_from_vertices() - m.perimeter).abs() < 1e-12);
        for i in 1..=12 {
            assert!((poly.interior_angle_euclidean(i) - m.interior_angles[i - 1]).abs() < 1e-12);
        }
    }

    #[test]
    fn perimeter_is_sum_of_sides() {
        let m = MarkedPolygon::regular(3).unwrap().metrics();
        let s: f64 = m.side_lengths.iter().sum();
        assert_eq!(s, m.perimeter);
        let side = (1.0 + 2.0 * (PI / 10.0).cos()).acosh();
        assert!((m.side_lengths[0] - side).abs() < 1e-9);
    }
}

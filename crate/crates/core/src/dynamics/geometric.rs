use crate::hyperbolic::{ccw, side_of_geodesic, BoundaryPoint, DiskMoebius};
use crate::polygon::MarkedPolygon;
use crate::tolerance;
use crate::{Error, Result};

use super::{BoundaryMap, GeodesicPair};

/// Side through which the oriented geodesic `u → w` leaves the polygon, or
/// `None` if it misses it.
///
/// Vertices are counterclockwise and `side_of_geodesic` is positive on the
/// left, so the exit side `[V_j, V_{j+1}]` is where the vertex signs go from
/// negative to positive.
pub fn exit_side(poly: &MarkedPolygon, p: &GeodesicPair) -> Result<Option<usize>> {
    let g = p.geodesic()?;
    let n = poly.n();
    let signs: Vec<f64> = poly.vertices().iter().map(|v| side_of_geodesic(&g, v)).collect();
    if signs.iter().any(|s| s.abs() < tolerance::VERTEX_GRAZE) {
        return Err(Error::Ambiguous);
    }
    Ok((0..n)
        .find(|&j| signs[j] < 0.0 && signs[(j + 1) % n] > 0.0)
        .map(|j| j + 1))
}

/// `F_geo(u, w) = (T_i u, T_i w)` where `uw` exits through side `i`.
pub fn f_geo(poly: &MarkedPolygon, p: &GeodesicPair) -> Result<GeodesicPair> {
    let i = exit_side(poly, p)?.ok_or(Error::NotInDomain)?;
    apply_pair(poly.t(i), p)
}

/// The bulge-to-corner map: identity on `Ω_geo ∩ Ω_P`, and
/// `T_{σ(i)-1} T_i` on the bulge with `w ∈ [P_i, P_{i+1})`.
pub fn phi(bm: &BoundaryMap, p: &GeodesicPair) -> Result<GeodesicPair> {
    let poly = bm.polygon();
    if exit_side(poly, p)?.is_none() {
        return Err(Error::NotInDomain);
    }
    if bm.in_omega_p(p) {
        return Ok(*p);
    }
    let i = bm.branch(p.w);
    let n = poly.n();
    let m = poly.t(poly.sigma(i) + n - 1).compose(poly.t(i));
    apply_pair(&m, p)
}

fn apply_pair(m: &DiskMoebius, p: &GeodesicPair) -> Result<GeodesicPair> {
    GeodesicPair::new(m.apply_boundary(p.u)?, m.apply_boundary(p.w)?)
}

/// Product of closed arcs `u ∈ [u0, u1]`, `w ∈ [w0, w1]` (counterclockwise).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NuRectangle {
    pub u: (BoundaryPoint, BoundaryPoint),
    pub w: (BoundaryPoint, BoundaryPoint),
}

impl NuRectangle {
    /// `ν = log(|a-c||b-d| / (|a-d||b-c|))` for `[a, b] × [c, d]`.
    pub fn nu_mass(&self) -> f64 {
        let chord = |x: BoundaryPoint, y: BoundaryPoint| 2.0 * (ccw(x.angle(), y.angle()) / 2.0).sin().abs();
        let (a, b) = self.u;
        let (c, d) = self.w;
        ((chord(a, c) * chord(b, d)).ln() - (chord(a, d) * chord(b, c)).ln()).abs()
    }

    pub fn contains(&self, p: &GeodesicPair) -> bool {
        let inside = |x: BoundaryPoint, (lo, hi): (BoundaryPoint, BoundaryPoint)| {
            ccw(lo.angle(), x.angle()) <= ccw(lo.angle(), hi.angle())
        };
        inside(p.u, self.u) && inside(p.w, self.w)
    }
}

/// The `2n` rectangles making up `Ω_P`:
/// `[Q_{i+2}, P_{i-1}] × [P_i, Q_i]` and `[Q_{i+2}, P_i] × [Q_i, P_{i+1}]`.
pub fn omega_p_rectangles(poly: &MarkedPolygon) -> Vec<NuRectangle> {
    let n = poly.n();
    (1..=n)
        .flat_map(|i| {
            [
                NuRectangle {
                    u: (poly.q(i + 2), poly.p(i + n - 1)),
                    w: (poly.p(i), poly.q(i)),
                },
                NuRectangle {
                    u: (poly.q(i + 2), poly.p(i)),
                    w: (poly.q(i), poly.p(i + 1)),
                },
            ]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn diameter_exits_towards_w() {
        let poly = MarkedPolygon::regular(2).unwrap();
        let p = GeodesicPair::from_angles(PI + 0.05, 0.05).unwrap();
        let i = exit_side(&poly, &p).unwrap().unwrap();
        let (a, b) = (poly.p(i).angle(), poly.q(i + 1).angle());
        assert!(ccw(a, 0.05) < ccw(a, b));
    }

    #[test]
    fn short_geodesic_misses() {
        let poly = MarkedPolygon::regular(2).unwrap();
        let (q1, p2) = (poly.q(1).angle(), poly.p(2).angle());
        let mid = q1 + ccw(q1, p2) / 2.0;
        let p = GeodesicPair::from_angles(mid - 1e-3, mid + 1e-3).unwrap();
        assert_eq!(exit_side(&poly, &p).unwrap(), None);
    }

    #[test]
    fn rectangles_carry_the_perimeter() {
        let poly = MarkedPolygon::regular(2).unwrap();
        let mass: f64 = omega_p_rectangles(&poly).iter().map(NuRectangle::nu_mass).sum();
        assert!((mass - poly.perimeter()).abs() < 1e-12);
    }
}

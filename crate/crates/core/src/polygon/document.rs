use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{MarkedPolygon, PolygonMetrics};
use crate::hyperbolic::{BoundaryPoint, DiskMoebius};
use crate::Result;

/// Polygon JSON document. Matrices are `[Re a, Im a, Re b, Im b, …]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygonDocument {
    pub genus: usize,
    #[serde(rename = "P")]
    pub p: Vec<f64>,
    #[serde(rename = "Q")]
    pub q: Vec<f64>,
    pub vertices: Vec<[f64; 2]>,
    #[serde(rename = "T")]
    pub t: Vec<[f64; 8]>,
    pub metrics: PolygonMetrics,
}

impl From<&MarkedPolygon> for PolygonDocument {
    fn from(poly: &MarkedPolygon) -> Self {
        PolygonDocument {
            genus: poly.genus(),
            p: poly.p_points().iter().map(|b| b.angle()).collect(),
            q: poly.q_points().iter().map(|b| b.angle()).collect(),
            vertices: poly.vertices().iter().map(|v| [v.z().re, v.z().im]).collect(),
            t: poly
                .pairings()
                .iter()
                .map(|m| {
                    let [a, b, c, d] = m.to_array();
                    [a.re, a.im, b.re, b.im, c.re, c.im, d.re, d.im]
                })
                .collect(),
            metrics: poly.metrics(),
        }
    }
}

impl PolygonDocument {
    /// Rebuilds the polygon from `P`, `Q` and `T`; vertices and metrics in
    /// the document are recomputed, not trusted. Invariants are not checked.
    pub fn to_polygon(&self) -> Result<MarkedPolygon> {
        let p = self.p.iter().map(|&a| BoundaryPoint::new(a)).collect();
        let q = self.q.iter().map(|&a| BoundaryPoint::new(a)).collect();
        let t = self
            .t
            .iter()
            .map(|m| {
                DiskMoebius::new(
                    Complex64::new(m[0], m[1]),
                    Complex64::new(m[2], m[3]),
                    Complex64::new(m[4], m[5]),
                    Complex64::new(m[6], m[7]),
                )
            })
            .collect();
        MarkedPolygon::assemble(self.genus, p, q, t)
    }
}

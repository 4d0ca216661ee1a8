//! Marked `(8g-4)`-gons: side pairing, construction and invariant checks.

mod document;
mod metrics;

pub use document::PolygonDocument;
pub use metrics::{regular_perimeter, Isoareal, PolygonMetrics};

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::hyperbolic::{
    ccw, geodesic_intersection, side_of_geodesic, BoundaryPoint, DiskMoebius, DiskPoint, Geodesic,
};
use crate::tolerance;
use crate::{Error, Result};

/// Largest disagreement between supplied gaps and those of the rounded angles.
const GAP_AGREEMENT: f64 = 1e-12;

/// Number of sides `8g - 4`.
pub fn side_count(genus: usize) -> Result<usize> {
    if genus < 2 {
        return Err(Error::InvalidGenus(genus));
    }
    Ok(8 * genus - 4)
}

/// Side paired with side `i`: `4g - i` for odd `i`, `2 - i` for even `i`,
/// reduced mod `8g - 4` into `1..=n`.
pub fn sigma(i: usize, genus: usize) -> Result<usize> {
    let n = side_count(genus)?;
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let raw = if i % 2 == 1 {
        4 * genus as i64 - i as i64
    } else {
        2 - i as i64
    };
    Ok(wrap(raw, n))
}

/// Representative of `i mod n` in `1..=n`.
pub fn wrap(i: i64, n: usize) -> usize {
    (i - 1).rem_euclid(n as i64) as usize + 1
}

/// One named invariant check.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub observed: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.observed <= self.tolerance
    }

    fn into_result(self) -> Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(Error::InvariantViolation {
                name: self.name.to_string(),
                observed: self.observed,
                tolerance: self.tolerance,
            })
        }
    }
}

/// Fundamental polygon with its marked boundary points and side pairings.
/// All index arguments are 1-based and taken mod `n`.
#[derive(Clone, Debug)]
pub struct MarkedPolygon {
    genus: usize,
    vertices: Vec<DiskPoint>,
    p: Vec<BoundaryPoint>,
    q: Vec<BoundaryPoint>,
    pairings: Vec<DiskMoebius>,
    sides: Vec<Geodesic>,
    /// Counterclockwise gaps between consecutive marks `P_1, Q_1, P_2, …, Q_n`.
    gaps: Vec<f64>,
}

impl MarkedPolygon {
    /// Computes vertices from the side extensions `P_i Q_{i+1}` without
    /// checking the pairing invariants.
    pub fn assemble(
        genus: usize,
        p: Vec<BoundaryPoint>,
        q: Vec<BoundaryPoint>,
        pairings: Vec<DiskMoebius>,
    ) -> Result<Self> {
        let n = side_count(genus)?;
        if p.len() != n || q.len() != n || pairings.len() != n {
            return Err(Error::InvalidInput(format!(
                "genus {genus} needs {n} points P, {n} points Q and {n} pairings"
            )));
        }
        check_order(&p, &q)?;
        let sides = (0..n)
            .map(|k| Geodesic::new(p[k], q[(k + 1) % n]))
            .collect::<Result<Vec<_>>>()?;
        let mut vertices = vec![DiskPoint::origin(); n];
        for k in 0..n {
            let next = (k + 1) % n;
            let v = geodesic_intersection(&sides[k], &sides[next])?.ok_or(Error::NoVertex {
                side: k + 1,
                next: next + 1,
            })?;
            vertices[next] = v;
        }
        let marks: Vec<f64> = p.iter().zip(&q).flat_map(|(a, b)| [a.angle(), b.angle()]).collect();
        let gaps = (0..2 * n).map(|k| ccw(marks[k], marks[(k + 1) % (2 * n)])).collect();
        Ok(MarkedPolygon {
            genus,
            vertices,
            p,
            q,
            pairings,
            sides,
            gaps,
        })
    }

    /// Replaces the gaps between consecutive marks by more accurate values,
    /// e.g. from an extended-precision construction. Marks crowded to within
    /// the rounding of their angles keep their relative positions this way.
    pub fn with_gaps(mut self, gaps: Vec<f64>) -> Result<Self> {
        if gaps.len() != self.gaps.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} gaps, got {}",
                self.gaps.len(),
                gaps.len()
            )));
        }
        if let Some(k) = (0..gaps.len()).find(|&k| !((gaps[k] - self.gaps[k]).abs() <= GAP_AGREEMENT)) {
            return Err(Error::InvalidInput(format!(
                "gap {} is {} but the angles give {}",
                k + 1,
                gaps[k],
                self.gaps[k]
            )));
        }
        self.gaps = gaps;
        Ok(self)
    }

    /// Builds the polygon from its side extensions and pairings and checks
    /// every invariant.
    pub fn from_side_geodesics(
        genus: usize,
        p: Vec<BoundaryPoint>,
        q: Vec<BoundaryPoint>,
        pairings: Vec<DiskMoebius>,
    ) -> Result<Self> {
        let poly = MarkedPolygon::assemble(genus, p, q, pairings)?;
        poly.validate()?;
        Ok(poly)
    }

    /// The regular polygon with all interior angles `π/2`, vertex `V_1` on
    /// the positive real axis.
    pub fn regular(genus: usize) -> Result<Self> {
        let n = side_count(genus)?;
        let nf = n as f64;
        // cosh R = cot(π/n); the vertex sits at Euclidean radius tanh(R/2).
        let cosh_r = 1.0 / (PI / nf).tan();
        let radius = ((cosh_r - 1.0) / (cosh_r + 1.0)).sqrt();
        let vertices: Vec<DiskPoint> = (0..n)
            .map(|k| DiskPoint::new(Complex64::from_polar(radius, TAU * k as f64 / nf)))
            .collect::<Result<_>>()?;
        let mut p = vec![BoundaryPoint::new(0.0); n];
        let mut q = vec![BoundaryPoint::new(0.0); n];
        for k in 0..n {
            let g = Geodesic::through_points(vertices[k], vertices[(k + 1) % n])?;
            p[k] = g.u();
            q[(k + 1) % n] = g.w();
        }
        let mut pairings = Vec::with_capacity(n);
        for i in 1..=n {
            let s = sigma(i, genus)?;
            let src = [p[i - 1], q[i % n]].map(|b| b.to_complex());
            let dst = [q[s % n], p[s - 1]].map(|b| b.to_complex());
            pairings.push(pairing_from_correspondence(
                [src[0], src[1], vertices[i - 1].z()],
                [dst[0], dst[1], vertices[s % n].z()],
            )?);
        }
        MarkedPolygon::from_side_geodesics(genus, p, q, pairings)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    fn at(&self, i: usize) -> usize {
        (i + self.n() - 1) % self.n()
    }

    pub fn vertex(&self, i: usize) -> DiskPoint {
        self.vertices[self.at(i)]
    }

    pub fn p(&self, i: usize) -> BoundaryPoint {
        self.p[self.at(i)]
    }

    pub fn q(&self, i: usize) -> BoundaryPoint {
        self.q[self.at(i)]
    }

    pub fn t(&self, i: usize) -> &DiskMoebius {
        &self.pairings[self.at(i)]
    }

    /// Geodesic `P_i → Q_{i+1}` carrying side `i`.
    pub fn side(&self, i: usize) -> &Geodesic {
        &self.sides[self.at(i)]
    }

    pub fn sigma(&self, i: usize) -> usize {
        sigma(self.at(i) + 1, self.genus).expect("index reduced into range")
    }

    pub fn vertices(&self) -> &[DiskPoint] {
        &self.vertices
    }

    pub fn p_points(&self) -> &[BoundaryPoint] {
        &self.p
    }

    pub fn q_points(&self) -> &[BoundaryPoint] {
        &self.q
    }

    pub fn pairings(&self) -> &[DiskMoebius] {
        &self.pairings
    }

    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    /// Position of `P_i` in the mark sequence `P_1, Q_1, …, Q_n`.
    pub(crate) fn mark_p(&self, i: usize) -> usize {
        2 * self.at(i)
    }

    pub(crate) fn mark_q(&self, i: usize) -> usize {
        2 * self.at(i) + 1
    }

    /// Euclidean chord between two marks, from the summed gaps along the
    /// shorter way round.
    pub(crate) fn mark_chord(&self, j: usize, k: usize) -> f64 {
        let m = self.gaps.len();
        let (from, len) = if (k + m - j) % m <= m / 2 { (j, (k + m - j) % m) } else { (k, (j + m - k) % m) };
        let arc: f64 = (0..len).map(|s| self.gaps[(from + s) % m]).sum();
        2.0 * (arc / 2.0).sin()
    }

    /// Replaces one pairing without re-validating (negative controls).
    pub fn with_pairing(&self, i: usize, m: DiskMoebius) -> Self {
        let mut out = self.clone();
        let k = self.at(i);
        out.pairings[k] = m;
        out
    }

    /// Image under a disk automorphism, pairings conjugated accordingly.
    pub fn transformed(&self, m: &DiskMoebius) -> Result<Self> {
        let img = |b: &BoundaryPoint| m.apply_boundary(*b);
        let p = self.p.iter().map(img).collect::<Result<Vec<_>>>()?;
        let q = self.q.iter().map(img).collect::<Result<Vec<_>>>()?;
        let inv = m.inverse();
        let pairings = self
            .pairings
            .iter()
            .map(|t| m.compose(t).compose(&inv))
            .collect();
        MarkedPolygon::assemble(self.genus, p, q, pairings)
    }

    /// Rotated so that `V_1` lies on the positive real axis.
    pub fn canonical(&self) -> Result<Self> {
        let arg = self.vertices[0].z().arg();
        self.transformed(&DiskMoebius::rotation(-arg))
    }

    /// Largest Euclidean distance between corresponding vertices.
    pub fn vertex_distance(&self, other: &MarkedPolygon) -> f64 {
        self.vertices
            .iter()
            .zip(&other.vertices)
            .map(|(a, b)| (a.z() - b.z()).norm())
            .fold(0.0, f64::max)
    }

    /// Every invariant of a marked polygon with its observed deviation.
    pub fn checks(&self) -> Vec<Check> {
        let n = self.n();
        let m = self.metrics();
        let mut on_side = 0.0f64;
        let mut lengths = 0.0f64;
        let mut angles = 0.0f64;
        let mut endpoints = 0.0f64;
        let mut involution = 0.0f64;
        let mut disk = 0.0f64;
        for i in 1..=n {
            let s = self.sigma(i);
            let side = self.side(i);
            on_side = on_side
                .max(side_of_geodesic(side, &self.vertex(i)).abs())
                .max(side_of_geodesic(side, &self.vertex(i + 1)).abs());
            lengths = lengths.max((m.side_lengths[i - 1] - m.side_lengths[s - 1]).abs());
            let opposite = m.interior_angles[self.at(s + 1)];
            angles = angles.max((m.interior_angles[i - 1] + opposite - PI).abs());
            let t = self.t(i);
            let miss = |x: BoundaryPoint, y: BoundaryPoint| {
                t.apply_boundary(x)
                    .map(|z| z.circular_distance(&y))
                    .unwrap_or(f64::INFINITY)
            };
            endpoints = endpoints
                .max(miss(self.p(i), self.q(s + 1)))
                .max(miss(self.q(i + 1), self.p(s)));
            involution = involution.max(self.t(s).projective_distance(&t.inverse()));
            disk = disk.max(t.disk_residual(16));
        }
        let order = match check_order(&self.p, &self.q) {
            Ok(()) => 0.0,
            Err(_) => 1.0,
        };
        let expected_area = TAU * (2.0 * self.genus as f64 - 2.0);
        vec![
            Check { name: "circular_order", observed: order, tolerance: 0.0 },
            Check { name: "vertices_on_sides", observed: on_side, tolerance: tolerance::POLYGON },
            Check { name: "paired_side_lengths", observed: lengths, tolerance: tolerance::POLYGON },
            Check { name: "paired_angle_sum", observed: angles, tolerance: tolerance::POLYGON },
            Check { name: "endpoint_mapping", observed: endpoints, tolerance: tolerance::POLYGON },
            Check { name: "pairing_involution", observed: involution, tolerance: tolerance::POLYGON },
            Check { name: "disk_preserving", observed: disk, tolerance: tolerance::POLYGON },
            Check {
                name: "gauss_bonnet_area",
                observed: (m.area - expected_area).abs(),
                tolerance: tolerance::AREA,
            },
        ]
    }

    pub fn validate(&self) -> Result<()> {
        self.checks().into_iter().try_for_each(Check::into_result)
    }
}

/// Circular order `P_1, Q_1, P_2, Q_2, …, P_n, Q_n`, strictly increasing
/// counterclockwise from `P_1`.
fn check_order(p: &[BoundaryPoint], q: &[BoundaryPoint]) -> Result<()> {
    let start = p[0].angle();
    let mut last = 0.0;
    for k in 1..2 * p.len() {
        let x = if k % 2 == 0 { p[k / 2] } else { q[k / 2] };
        let c = ccw(start, x.angle());
        if c <= last + tolerance::ENDPOINT_SEPARATION {
            return Err(Error::OrderViolation { position: k + 1 });
        }
        last = c;
    }
    Ok(())
}

/// The map sending the source triple to the target triple, which must
/// preserve the disk.
pub fn pairing_from_correspondence(src: [Complex64; 3], dst: [Complex64; 3]) -> Result<DiskMoebius> {
    let m = DiskMoebius::map_points(src, dst)?;
    let residual = m.disk_residual(16);
    if residual > tolerance::POLYGON {
        return Err(Error::NotDiskPreserving { residual });
    }
    Ok(m)
}

//! Numerical tolerances shared by every module.

/// Smallest admissible `|det|` of a Möbius matrix after normalization.
pub const DET_MIN: f64 = 1e-12;
/// `|cz + d|` at or below this is treated as a pole.
pub const POLE: f64 = 1e-14;
/// Boundary preservation and SU(1,1) shape of disk maps.
pub const DISK_PRESERVING: f64 = 1e-9;
/// `|trace| > 2 + HYPERBOLIC_MARGIN` classifies a det-1 map as hyperbolic.
pub const HYPERBOLIC_MARGIN: f64 = 1e-10;
/// Disk points must satisfy `|z| < 1 - DISK_INTERIOR`.
pub const DISK_INTERIOR: f64 = 1e-12;
/// Minimal circular distance between geodesic endpoints.
pub const ENDPOINT_SEPARATION: f64 = 1e-12;
/// Antipodal endpoints within this are treated as a diameter.
pub const DIAMETER: f64 = 1e-10;
/// Default circular tolerance for `BoundaryPoint` equality.
pub const BOUNDARY_EQ: f64 = 1e-12;
/// Polygon invariants (side pairing, angle sums, endpoint maps).
pub const POLYGON: f64 = 1e-8;
/// Area versus `2π(2g-2)`.
pub const AREA: f64 = 1e-7;
/// A geodesic closer than this (as `sinh` of the distance) to a vertex is
/// vertex-grazing.
pub const VERTEX_GRAZE: f64 = 1e-10;
/// Points this close to a partition endpoint get a half-open warning.
pub const ARC_ENDPOINT: f64 = 1e-13;
/// Matching of Markov image endpoints against partition points.
pub const MARKOV_MATCH: f64 = 1e-6;
/// Relative stopping tolerance of the Perron power iteration.
pub const PERRON_REL: f64 = 1e-12;
/// Iteration cap of the Perron power iteration.
pub const PERRON_MAX_ITER: usize = 100_000;
/// Largest β the flexibility solver will try.
pub const SOLVER_BETA_CAP: f64 = 1e3;

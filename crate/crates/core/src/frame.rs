//! Points, tangent vectors and the left-invariant frame
//! `e1 = ∂x − (y/2)∂z`, `e2 = ∂y + (x/2)∂z`, `e3 = ∂z`.
//!
//! Frame components are the canonical representation of tangent vectors;
//! coordinate components only appear at the boundary (immersions, geodesic
//! states, file output). The frame is orthonormal for both the Riemannian
//! metric `dx² + dy² + (dz + ½(y dx − x dy))²` and its Lorentzian partner
//! in which the last square enters with a minus sign.

use std::fmt;

use nalgebra::Vector3;

use crate::error::{GeomError, Result};

/// A point of the Heisenberg group in model coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModelPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ModelPoint {
    pub const ORIGIN: ModelPoint = ModelPoint { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_vector(v: Vector3<f64>) -> Self {
        Self::new(v.x, v.y, v.z)
    }

    pub fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Euclidean distance in model coordinates.
    pub fn euclidean_distance(&self, other: &ModelPoint) -> f64 {
        (self.to_vector() - other.to_vector()).norm()
    }
}

impl fmt::Display for ModelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Tangent vector in coordinate components `u ∂x + v ∂y + w ∂z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoordVector {
    pub base: ModelPoint,
    pub comps: Vector3<f64>,
}

impl CoordVector {
    pub fn new(base: ModelPoint, u: f64, v: f64, w: f64) -> Self {
        Self { base, comps: Vector3::new(u, v, w) }
    }
}

/// Tangent vector in frame components `a1 e1 + a2 e2 + a3 e3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameVector {
    pub base: ModelPoint,
    pub comps: Vector3<f64>,
}

impl FrameVector {
    pub fn new(base: ModelPoint, a1: f64, a2: f64, a3: f64) -> Self {
        Self { base, comps: Vector3::new(a1, a2, a3) }
    }

    pub fn from_comps(base: ModelPoint, comps: Vector3<f64>) -> Self {
        Self { base, comps }
    }

    /// The frame field `e_i` (1-based) at `base`.
    pub fn basis(base: ModelPoint, i: usize) -> Self {
        let mut comps = Vector3::zeros();
        comps[i - 1] = 1.0;
        Self { base, comps }
    }

    pub fn a1(&self) -> f64 {
        self.comps.x
    }

    pub fn a2(&self) -> f64 {
        self.comps.y
    }

    pub fn a3(&self) -> f64 {
        self.comps.z
    }
}

/// Signature selector for the two left-invariant metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Riemannian,
    Lorentzian,
}

impl MetricKind {
    pub const BOTH: [MetricKind; 2] = [MetricKind::Riemannian, MetricKind::Lorentzian];

    /// `⟨e3, e3⟩` under this metric.
    pub fn e3_sign(self) -> f64 {
        match self {
            MetricKind::Riemannian => 1.0,
            MetricKind::Lorentzian => -1.0,
        }
    }

    /// Diagonal of the metric in the frame.
    pub fn signature(self) -> [f64; 3] {
        [1.0, 1.0, self.e3_sign()]
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricKind::Riemannian => f.write_str("riemannian"),
            MetricKind::Lorentzian => f.write_str("lorentzian"),
        }
    }
}

/// Coordinate components of the frame vector with components `a` at `p`.
pub fn frame_to_coord_comps(p: &ModelPoint, a: &Vector3<f64>) -> Vector3<f64> {
    Vector3::new(a.x, a.y, a.z - 0.5 * a.x * p.y + 0.5 * a.y * p.x)
}

/// Frame components of the coordinate vector with components `c` at `p`.
pub fn coord_to_frame_comps(p: &ModelPoint, c: &Vector3<f64>) -> Vector3<f64> {
    Vector3::new(c.x, c.y, c.z + 0.5 * (p.y * c.x - p.x * c.y))
}

pub fn frame_to_coord(v: &FrameVector) -> CoordVector {
    CoordVector { base: v.base, comps: frame_to_coord_comps(&v.base, &v.comps) }
}

pub fn coord_to_frame(v: &CoordVector) -> FrameVector {
    FrameVector { base: v.base, comps: coord_to_frame_comps(&v.base, &v.comps) }
}

/// Inner product of frame components under `kind`.
pub fn metric_dot(kind: MetricKind, a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    a.x * b.x + a.y * b.y + kind.e3_sign() * a.z * b.z
}

/// Exterior product of frame components.
///
/// The Lorentzian product is the determinant with `−e3` in the top row, so
/// only its third component differs from the Euclidean cross product.
pub fn cross_comps(kind: MetricKind, a: &Vector3<f64>, b: &Vector3<f64>) -> Vector3<f64> {
    let third = match kind {
        MetricKind::Riemannian => a.x * b.y - a.y * b.x,
        MetricKind::Lorentzian => a.y * b.x - a.x * b.y,
    };
    Vector3::new(a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, third)
}

fn same_base(v: &FrameVector, w: &FrameVector) -> Result<()> {
    if v.base == w.base {
        Ok(())
    } else {
        Err(GeomError::BasePointMismatch)
    }
}

pub fn inner(v: &FrameVector, w: &FrameVector, kind: MetricKind) -> Result<f64> {
    same_base(v, w)?;
    Ok(metric_dot(kind, &v.comps, &w.comps))
}

pub fn cross(v: &FrameVector, w: &FrameVector, kind: MetricKind) -> Result<FrameVector> {
    same_base(v, w)?;
    Ok(FrameVector { base: v.base, comps: cross_comps(kind, &v.comps, &w.comps) })
}

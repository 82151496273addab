//! Geodesics of the Riemannian metric.
//!
//! Writing `J = z' + ½(x'y − xy')` for the `e3` component of the velocity,
//! the geodesic equations are
//!
//! ```text
//! x'' = −y' J,   y'' = x' J,   J' = 0.
//! ```
//!
//! `J` is carried as a constant of the reduced first-order system, so the
//! integrator advances `(x, y, z, x', y')` and recovers `z'` from `J`.

use std::io::{self, Write};

use nalgebra::Vector3;

use crate::error::{GeomError, Result};
use crate::frame::{coord_to_frame_comps, frame_to_coord_comps, ModelPoint};

/// Tolerance for the straight-line geodesic condition.
pub const LINE_CONDITION_TOL: f64 = 1e-10;
/// Tolerance for treating an `e3` component as zero.
pub const HORIZONTAL_TOL: f64 = 1e-12;

/// Position and coordinate velocity.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GeodesicState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub dx: f64,
    pub dy: f64,
    pub dz: f64,
}

/// Time derivative of a [`GeodesicState`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GeodesicDerivative {
    pub dx: f64,
    pub dy: f64,
    pub dz: f64,
    pub ddx: f64,
    pub ddy: f64,
    pub ddz: f64,
}

impl GeodesicState {
    pub fn new(position: ModelPoint, velocity: Vector3<f64>) -> Self {
        Self { x: position.x, y: position.y, z: position.z, dx: velocity.x, dy: velocity.y, dz: velocity.z }
    }

    pub fn position(&self) -> ModelPoint {
        ModelPoint::new(self.x, self.y, self.z)
    }

    pub fn velocity(&self) -> Vector3<f64> {
        Vector3::new(self.dx, self.dy, self.dz)
    }

    pub fn frame_velocity(&self) -> Vector3<f64> {
        coord_to_frame_comps(&self.position(), &self.velocity())
    }

    pub fn momentum(&self) -> f64 {
        momentum(self)
    }

    fn is_finite(&self) -> bool {
        [self.x, self.y, self.z, self.dx, self.dy, self.dz].iter().all(|v| v.is_finite())
    }
}

/// `J = z' + ½(x'y − xy')`, the `e3` component of the velocity.
pub fn momentum(s: &GeodesicState) -> f64 {
    s.dz + 0.5 * (s.dx * s.y - s.x * s.dy)
}

/// Right-hand side of the geodesic equations.
pub fn geodesic_rhs(s: &GeodesicState) -> GeodesicDerivative {
    let j = momentum(s);
    let ddx = -s.dy * j;
    let ddy = s.dx * j;
    // From J' = z'' + ½(x''y − xy'') = 0.
    let ddz = -0.5 * (ddx * s.y - s.x * ddy);
    GeodesicDerivative { dx: s.dx, dy: s.dy, dz: s.dz, ddx, ddy, ddz }
}

/// A Euclidean straight line `t ↦ base + t·dir`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line3 {
    pub base: ModelPoint,
    pub dir: Vector3<f64>,
}

impl Line3 {
    pub fn new(base: ModelPoint, dir: Vector3<f64>) -> Result<Self> {
        if dir.norm() > 0.0 {
            Ok(Self { base, dir })
        } else {
            Err(GeomError::ZeroDirection)
        }
    }

    pub fn point_at(&self, t: f64) -> ModelPoint {
        ModelPoint::from_vector(self.base.to_vector() + t * self.dir)
    }
}

/// Uniformly sampled solution of the geodesic equations.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicTrace {
    pub step: f64,
    pub samples: Vec<(f64, GeodesicState)>,
}

impl GeodesicTrace {
    pub fn last(&self) -> &GeodesicState {
        &self.samples.last().expect("trace has at least one sample").1
    }

    /// `max_t |J(t) − J(0)|`, recomputed from the stored states.
    pub fn max_momentum_drift(&self) -> f64 {
        let j0 = self.samples[0].1.momentum();
        self.samples.iter().map(|(_, s)| (s.momentum() - j0).abs()).fold(0.0, f64::max)
    }

    /// Largest Euclidean distance between the trace and `f(t)`.
    pub fn max_deviation<F: Fn(f64) -> ModelPoint>(&self, f: F) -> f64 {
        self.samples.iter().map(|(t, s)| s.position().euclidean_distance(&f(*t))).fold(0.0, f64::max)
    }

    /// CSV with header `t,x,y,z,dx,dy,dz,J` and 17 significant digits.
    /// `comment` lines are written first, prefixed by `# `.
    pub fn write_csv<W: Write>(&self, mut out: W, comment: Option<&str>) -> io::Result<()> {
        if let Some(c) = comment {
            for line in c.lines() {
                writeln!(out, "# {line}")?;
            }
        }
        writeln!(out, "t,x,y,z,dx,dy,dz,J")?;
        for (t, s) in &self.samples {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                t,
                s.x,
                s.y,
                s.z,
                s.dx,
                s.dy,
                s.dz,
                s.momentum()
            )?;
        }
        Ok(())
    }
}

type Reduced = [f64; 5];

fn reduced_rhs(u: &Reduced, j: f64) -> Reduced {
    let [x, y, _z, vx, vy] = *u;
    [vx, vy, j - 0.5 * (vx * y - x * vy), -vy * j, vx * j]
}

fn axpy(a: f64, x: &Reduced, y: &Reduced) -> Reduced {
    std::array::from_fn(|i| y[i] + a * x[i])
}

fn rk4_step(u: &Reduced, j: f64, h: f64) -> Reduced {
    let k1 = reduced_rhs(u, j);
    let k2 = reduced_rhs(&axpy(0.5 * h, &k1, u), j);
    let k3 = reduced_rhs(&axpy(0.5 * h, &k2, u), j);
    let k4 = reduced_rhs(&axpy(h, &k3, u), j);
    std::array::from_fn(|i| u[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

fn to_state(u: &Reduced, j: f64) -> GeodesicState {
    let [x, y, z, dx, dy] = *u;
    GeodesicState { x, y, z, dx, dy, dz: j - 0.5 * (dx * y - x * dy) }
}

fn step_count(t_max: f64, step: f64) -> Result<usize> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(GeomError::NonPositiveStep(step));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(GeomError::InvalidParameter(format!("t_max must be positive, got {t_max}")));
    }
    Ok(((t_max / step) - 1e-9).ceil().max(1.0) as usize)
}

/// Fixed-step classical Runge–Kutta integration from `p0` with frame
/// velocity `v0`. The step is shrunk slightly, if needed, so that the last
/// sample lands exactly on `t_max`.
pub fn integrate_geodesic(p0: ModelPoint, v0: Vector3<f64>, t_max: f64, step: f64) -> Result<GeodesicTrace> {
    let n = step_count(t_max, step)?;
    let h = t_max / n as f64;
    let coord = frame_to_coord_comps(&p0, &v0);
    let j = v0.z;
    let mut u: Reduced = [p0.x, p0.y, p0.z, coord.x, coord.y];
    let mut samples = Vec::with_capacity(n + 1);
    samples.push((0.0, to_state(&u, j)));
    for i in 1..=n {
        u = rk4_step(&u, j, h);
        let t = i as f64 * h;
        let state = to_state(&u, j);
        if !state.is_finite() {
            return Err(GeomError::NonFinite { t });
        }
        samples.push((t, state));
    }
    Ok(GeodesicTrace { step: h, samples })
}

/// Integrates the unreduced six-dimensional system given by
/// [`geodesic_rhs`]. Only used to cross-check the reduced integrator.
pub fn integrate_geodesic_unreduced(start: GeodesicState, t_max: f64, step: f64) -> Result<GeodesicTrace> {
    let n = step_count(t_max, step)?;
    let h = t_max / n as f64;
    let f = |s: &GeodesicState| {
        let d = geodesic_rhs(s);
        [d.dx, d.dy, d.dz, d.ddx, d.ddy, d.ddz]
    };
    let pack = |s: &GeodesicState| [s.x, s.y, s.z, s.dx, s.dy, s.dz];
    let unpack = |v: [f64; 6]| GeodesicState { x: v[0], y: v[1], z: v[2], dx: v[3], dy: v[4], dz: v[5] };
    let mut s = start;
    let mut samples = Vec::with_capacity(n + 1);
    samples.push((0.0, s));
    for i in 1..=n {
        let u = pack(&s);
        let k1 = f(&s);
        let k2 = f(&unpack(std::array::from_fn(|k| u[k] + 0.5 * h * k1[k])));
        let k3 = f(&unpack(std::array::from_fn(|k| u[k] + 0.5 * h * k2[k])));
        let k4 = f(&unpack(std::array::from_fn(|k| u[k] + h * k3[k])));
        s = unpack(std::array::from_fn(|k| u[k] + h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k])));
        let t = i as f64 * h;
        if !s.is_finite() {
            return Err(GeomError::NonFinite { t });
        }
        samples.push((t, s));
    }
    Ok(GeodesicTrace { step: h, samples })
}

/// The geodesic with horizontal initial velocity: a straight line whose `z`
/// slope is `−½(x'(0)y(0) − x(0)y'(0))`.
pub fn horizontal_geodesic(p0: ModelPoint, v0: Vector3<f64>) -> Result<Line3> {
    if v0.z.abs() > HORIZONTAL_TOL {
        return Err(GeomError::NotHorizontal(v0.z));
    }
    let dz = -0.5 * (v0.x * p0.y - p0.x * v0.y);
    Line3::new(p0, Vector3::new(v0.x, v0.y, dz))
}

/// Left translation by `p`: `q ↦ (p.x + q.x, p.y + q.y, p.z + q.z + ½(p.x q.y − p.y q.x))`.
/// Preserves frame components of tangent vectors.
pub fn left_translate(p: &ModelPoint, q: &ModelPoint) -> ModelPoint {
    ModelPoint::new(p.x + q.x, p.y + q.y, p.z + q.z + 0.5 * (p.x * q.y - p.y * q.x))
}

/// Exact geodesic through `p0` with frame velocity `v0`, evaluated at `t`.
///
/// From the origin, with horizontal speed `c` at angle `φ` and `J = v0.z`:
///
/// ```text
/// x = (c/J)(sin(Jt + φ) − sin φ),  y = (c/J)(cos φ − cos(Jt + φ)),
/// z = Jt + (c²/2J)(t − sin(Jt)/J),
/// ```
///
/// and a straight line when `J = 0`. The general case is its left translate.
pub fn geodesic_closed_form(p0: ModelPoint, v0: Vector3<f64>, t: f64) -> ModelPoint {
    let j = v0.z;
    let c2 = v0.x * v0.x + v0.y * v0.y;
    // Below this |Jt| the series avoids cancellation in sin(Jt)/J.
    let q = if (j * t).abs() < 1e-4 {
        let jt = j * t;
        let (s1, c1) = (1.0 - jt * jt / 6.0, 0.5 * jt - jt * jt * jt / 24.0);
        // sin(Jt)/J ≈ t s1, (1 − cos Jt)/J ≈ t c1, (t − sin(Jt)/J)/J ≈ t² jt/6 / t.
        let x = t * (v0.x * s1 - v0.y * c1);
        let y = t * (v0.y * s1 + v0.x * c1);
        ModelPoint::new(x, y, j * t + 0.5 * c2 * t * t * t * j / 6.0 * (1.0 - jt * jt / 20.0))
    } else {
        let (sj, cj) = (j * t).sin_cos();
        // Rotating (v0.x, v0.y) by Jt and integrating.
        let x = (v0.x * sj - v0.y * (1.0 - cj)) / j;
        let y = (v0.y * sj + v0.x * (1.0 - cj)) / j;
        ModelPoint::new(x, y, j * t + 0.5 * c2 / j * (t - sj / j))
    };
    left_translate(&p0, &q)
}

/// Whether the straight line is (the trace of) a geodesic: either vertical,
/// or `a3 = −½(a1 b2 − a2 b1)` for direction `a` and base `b`.
pub fn is_geodesic_line(l: &Line3) -> Result<bool> {
    let a = l.dir;
    let scale = a.norm();
    if scale == 0.0 {
        return Err(GeomError::ZeroDirection);
    }
    if a.x.abs() <= HORIZONTAL_TOL * scale && a.y.abs() <= HORIZONTAL_TOL * scale {
        return Ok(true);
    }
    let b = l.base;
    Ok((a.z + 0.5 * (a.x * b.y - a.y * b.x)).abs() <= LINE_CONDITION_TOL)
}

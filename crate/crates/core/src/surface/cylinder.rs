//! Vertical cylinders `(s, t) ↦ (x(s), y(s), t)` over plane curves.

use nalgebra::Vector3;

use crate::error::{GeomError, Result};
use crate::frame::ModelPoint;
use crate::surface::immersion::{Immersion, Jet};

/// Below this speed the curve is treated as singular.
pub const SINGULAR_SPEED: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CurveJet {
    pub x: f64,
    pub y: f64,
    pub dx: f64,
    pub dy: f64,
    pub ddx: f64,
    pub ddy: f64,
}

pub trait PlaneCurve {
    fn jet(&self, s: f64) -> CurveJet;
}

impl<F: Fn(f64) -> CurveJet> PlaneCurve for F {
    fn jet(&self, s: f64) -> CurveJet {
        self(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub radius: f64,
}

impl PlaneCurve for Circle {
    fn jet(&self, s: f64) -> CurveJet {
        let (sn, cs) = s.sin_cos();
        let r = self.radius;
        CurveJet { x: r * cs, y: r * sn, dx: -r * sn, dy: r * cs, ddx: -r * cs, ddy: -r * sn }
    }
}

/// The line `s ↦ (s, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct XAxis;

impl PlaneCurve for XAxis {
    fn jet(&self, s: f64) -> CurveJet {
        CurveJet { x: s, dx: 1.0, ..CurveJet::default() }
    }
}

/// Signed planar curvature `(x″y′ − x′y″)/(x′² + y′²)^{3/2}`.
pub fn cylinder_mean_curvature<C: PlaneCurve + ?Sized>(curve: &C, s: f64) -> Result<f64> {
    let j = curve.jet(s);
    let speed2 = j.dx * j.dx + j.dy * j.dy;
    if speed2.sqrt() < SINGULAR_SPEED {
        return Err(GeomError::SingularCurve(s));
    }
    Ok((j.ddx * j.dy - j.dx * j.ddy) / speed2.powf(1.5))
}

pub struct VerticalCylinder<C>(pub C);

impl<C: PlaneCurve> Immersion for VerticalCylinder<C> {
    fn point(&self, s: f64, t: f64) -> ModelPoint {
        let j = self.0.jet(s);
        ModelPoint::new(j.x, j.y, t)
    }

    fn analytic_jet(&self, s: f64, t: f64) -> Option<Jet> {
        let j = self.0.jet(s);
        Some(Jet {
            point: ModelPoint::new(j.x, j.y, t),
            xs: Vector3::new(j.dx, j.dy, 0.0),
            xt: Vector3::new(0.0, 0.0, 1.0),
            xss: Vector3::new(j.ddx, j.ddy, 0.0),
            xst: Vector3::zeros(),
            xtt: Vector3::zeros(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::MetricKind;
    use crate::surface::forms::mean_curvature;
    use crate::surface::immersion::NumericOnly;

    #[test]
    fn curvature_examples() {
        for &s in &[0.0, 0.4, 2.5, -1.2] {
            assert_eq!(cylinder_mean_curvature(&XAxis, s).unwrap(), 0.0);
            assert!((cylinder_mean_curvature(&Circle { radius: 1.0 }, s).unwrap() + 1.0).abs() < 1e-14);
            assert!((cylinder_mean_curvature(&Circle { radius: 2.0 }, s).unwrap() + 0.5).abs() < 1e-14);
        }
        let stalled = |_s: f64| CurveJet::default();
        assert_eq!(cylinder_mean_curvature(&stalled, 0.3), Err(GeomError::SingularCurve(0.3)));
    }

    #[test]
    fn pipeline_is_half_the_curve_formula() {
        let ellipse = |s: f64| CurveJet {
            x: 2.0 * s.cos(),
            y: s.sin(),
            dx: -2.0 * s.sin(),
            dy: s.cos(),
            ddx: -2.0 * s.cos(),
            ddy: -s.sin(),
        };
        let cyl = VerticalCylinder(ellipse);
        for &(s, t) in &[(0.0, 0.0), (0.7, 1.3), (2.1, -0.4), (4.0, 3.0)] {
            let k = cylinder_mean_curvature(&ellipse, s).unwrap();
            let hr = mean_curvature(&cyl, (s, t), MetricKind::Riemannian).unwrap();
            let hl = mean_curvature(&cyl, (s, t), MetricKind::Lorentzian).unwrap();
            assert!((hr - 0.5 * k).abs() < 1e-12, "{hr} vs {k}");
            assert!((hl.abs() - 0.5 * k.abs()).abs() < 1e-12);
        }
        let unit = VerticalCylinder(Circle { radius: 1.0 });
        let h = mean_curvature(&unit, (0.3, 0.2), MetricKind::Riemannian).unwrap();
        assert!((h.abs() - 0.5).abs() < 1e-12);
        let numeric = NumericOnly { inner: unit, fd: Default::default() };
        let hn = mean_curvature(&numeric, (0.3, 0.2), MetricKind::Riemannian).unwrap();
        assert!((hn - h).abs() < 1e-6);
    }
}

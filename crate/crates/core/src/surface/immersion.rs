use nalgebra::Vector3;

use crate::connection::connection;
use crate::diff::FiniteDiff;
use crate::frame::{coord_to_frame_comps, MetricKind, ModelPoint};
use crate::isometry::IsometryElement;

/// Coordinate derivatives of a map `(s, t) ↦ (x, y, z)` up to second order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub point: ModelPoint,
    pub xs: Vector3<f64>,
    pub xt: Vector3<f64>,
    pub xss: Vector3<f64>,
    pub xst: Vector3<f64>,
    pub xtt: Vector3<f64>,
}

/// Frame components of `X_s`, `X_t` and their covariant derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameJet {
    pub xs: Vector3<f64>,
    pub xt: Vector3<f64>,
    /// `∇_{X_s} X_s`
    pub ss: Vector3<f64>,
    /// `∇_{X_t} X_s`, equal to `∇_{X_s} X_t`
    pub st: Vector3<f64>,
    /// `∇_{X_t} X_t`
    pub tt: Vector3<f64>,
}

impl Jet {
    /// Derivative along direction `a` of the frame components of the
    /// coordinate field `b`, given `∂_a b`.
    fn frame_partial(&self, a: &Vector3<f64>, b: &Vector3<f64>, db: &Vector3<f64>) -> Vector3<f64> {
        let p = &self.point;
        Vector3::new(db.x, db.y, db.z + 0.5 * (a.y * b.x + p.y * db.x - a.x * b.y - p.x * db.y))
    }

    pub fn frame(&self, kind: MetricKind) -> FrameJet {
        let table = connection(kind);
        let fs = coord_to_frame_comps(&self.point, &self.xs);
        let ft = coord_to_frame_comps(&self.point, &self.xt);
        let ss = self.frame_partial(&self.xs, &self.xs, &self.xss) + table.contract(&fs, &fs);
        let st = self.frame_partial(&self.xt, &self.xs, &self.xst) + table.contract(&ft, &fs);
        let tt = self.frame_partial(&self.xt, &self.xt, &self.xtt) + table.contract(&ft, &ft);
        FrameJet { xs: fs, xt: ft, ss, st, tt }
    }

    /// `∇_{X_s} X_t`, computed independently of [`FrameJet::st`].
    pub fn covariant_ts(&self, kind: MetricKind) -> Vector3<f64> {
        let fs = coord_to_frame_comps(&self.point, &self.xs);
        let ft = coord_to_frame_comps(&self.point, &self.xt);
        self.frame_partial(&self.xs, &self.xt, &self.xst) + connection(kind).contract(&fs, &ft)
    }
}

/// A parametrized surface `(s, t) ↦ ModelPoint`.
///
/// Implementors with closed-form derivatives override [`Immersion::analytic_jet`];
/// everything else falls back to central differences with
/// [`Immersion::finite_diff`].
pub trait Immersion {
    fn point(&self, s: f64, t: f64) -> ModelPoint;

    fn analytic_jet(&self, _s: f64, _t: f64) -> Option<Jet> {
        None
    }

    fn finite_diff(&self) -> FiniteDiff {
        FiniteDiff::default()
    }
}

impl<I: Immersion + ?Sized> Immersion for &I {
    fn point(&self, s: f64, t: f64) -> ModelPoint {
        (**self).point(s, t)
    }

    fn analytic_jet(&self, s: f64, t: f64) -> Option<Jet> {
        (**self).analytic_jet(s, t)
    }

    fn finite_diff(&self) -> FiniteDiff {
        (**self).finite_diff()
    }
}

pub fn numeric_jet<I: Immersion + ?Sized>(imm: &I, s: f64, t: f64, fd: &FiniteDiff) -> Jet {
    let p = |s: f64, t: f64| imm.point(s, t).to_vector();
    Jet {
        point: imm.point(s, t),
        xs: fd.first(|u| p(u, t), s),
        xt: fd.first(|u| p(s, u), t),
        xss: fd.second(|u| p(u, t), s),
        xst: fd.mixed(p, s, t),
        xtt: fd.second(|u| p(s, u), t),
    }
}

pub fn jet<I: Immersion + ?Sized>(imm: &I, s: f64, t: f64) -> Jet {
    imm.analytic_jet(s, t).unwrap_or_else(|| numeric_jet(imm, s, t, &imm.finite_diff()))
}

/// An immersion given by a closure; derivatives by finite differences.
pub struct ParamSurface<F> {
    map: F,
    fd: FiniteDiff,
}

impl<F: Fn(f64, f64) -> ModelPoint> ParamSurface<F> {
    pub fn new(map: F) -> Self {
        Self { map, fd: FiniteDiff::default() }
    }

    pub fn with_finite_diff(mut self, fd: FiniteDiff) -> Self {
        self.fd = fd;
        self
    }
}

impl<F: Fn(f64, f64) -> ModelPoint> Immersion for ParamSurface<F> {
    fn point(&self, s: f64, t: f64) -> ModelPoint {
        (self.map)(s, t)
    }

    fn finite_diff(&self) -> FiniteDiff {
        self.fd
    }
}

/// Drops any analytic jet so the finite-difference path is exercised.
pub struct NumericOnly<I> {
    pub inner: I,
    pub fd: FiniteDiff,
}

impl<I: Immersion> Immersion for NumericOnly<I> {
    fn point(&self, s: f64, t: f64) -> ModelPoint {
        self.inner.point(s, t)
    }

    fn finite_diff(&self) -> FiniteDiff {
        self.fd
    }
}

/// The image of an immersion under an isometry. The action is affine in
/// model coordinates, so jets transform through the constant Jacobian.
pub struct IsometricImage<I> {
    pub inner: I,
    pub iso: IsometryElement,
}

impl<I: Immersion> Immersion for IsometricImage<I> {
    fn point(&self, s: f64, t: f64) -> ModelPoint {
        self.iso.apply(&self.inner.point(s, t))
    }

    fn analytic_jet(&self, s: f64, t: f64) -> Option<Jet> {
        let j = self.inner.analytic_jet(s, t)?;
        let m = self.iso.jacobian();
        Some(Jet {
            point: self.iso.apply(&j.point),
            xs: m * j.xs,
            xt: m * j.xt,
            xss: m * j.xss,
            xst: m * j.xst,
            xtt: m * j.xtt,
        })
    }

    fn finite_diff(&self) -> FiniteDiff {
        self.inner.finite_diff()
    }
}

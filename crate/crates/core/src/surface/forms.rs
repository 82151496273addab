//! First and second fundamental forms and mean curvature of an immersion
//! under either metric.
//!
//! The unit normal is `X_s × X_t` (exterior product of the chosen metric)
//! normalized so that `|⟨n, n⟩| = 1`. For a Lorentzian graph this is
//! `(−p e1 − q e2 − e3)/W`.

use nalgebra::Vector3;

use crate::error::{GeomError, Result};
use crate::frame::{cross_comps, metric_dot, MetricKind};
use crate::surface::immersion::{jet, Immersion, Jet};

/// Threshold below which a normal or a first-form determinant counts as zero.
pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    /// `EG − F²`, signed: negative at timelike points of a Lorentzian surface.
    pub w2: f64,
    /// Unit normal in frame components.
    pub normal: Vector3<f64>,
}

impl FundamentalForms {
    /// `½ (Gl − 2Fm + En)/(EG − F²)`; `None` when `EG − F²` vanishes.
    pub fn mean_curvature(&self) -> Option<f64> {
        (self.w2.abs() > DEGENERACY_TOL)
            .then(|| 0.5 * (self.g * self.l - 2.0 * self.f * self.m + self.e * self.n) / self.w2)
    }
}

/// Unit normal from frame tangents, or the reason there is none.
pub fn unit_normal(xs: &Vector3<f64>, xt: &Vector3<f64>, kind: MetricKind, at: (f64, f64)) -> Result<Vector3<f64>> {
    let raw = cross_comps(kind, xs, xt);
    if raw.norm() < DEGENERACY_TOL {
        return Err(GeomError::Degenerate { s: at.0, t: at.1 });
    }
    let nn = metric_dot(kind, &raw, &raw);
    if nn.abs() < DEGENERACY_TOL {
        return Err(GeomError::Lightlike { s: at.0, t: at.1 });
    }
    Ok(raw / nn.abs().sqrt())
}

pub fn forms_from_jet(j: &Jet, kind: MetricKind, at: (f64, f64)) -> Result<FundamentalForms> {
    let fj = j.frame(kind);
    let normal = unit_normal(&fj.xs, &fj.xt, kind, at)?;
    let dot = |a: &Vector3<f64>, b: &Vector3<f64>| metric_dot(kind, a, b);
    let (e, f, g) = (dot(&fj.xs, &fj.xs), dot(&fj.xs, &fj.xt), dot(&fj.xt, &fj.xt));
    Ok(FundamentalForms {
        e,
        f,
        g,
        l: dot(&fj.ss, &normal),
        m: dot(&fj.st, &normal),
        n: dot(&fj.tt, &normal),
        w2: e * g - f * f,
        normal,
    })
}

pub fn fundamental_forms<I: Immersion + ?Sized>(imm: &I, at: (f64, f64), kind: MetricKind) -> Result<FundamentalForms> {
    forms_from_jet(&jet(imm, at.0, at.1), kind, at)
}

pub fn mean_curvature<I: Immersion + ?Sized>(imm: &I, at: (f64, f64), kind: MetricKind) -> Result<f64> {
    let forms = fundamental_forms(imm, at, kind)?;
    forms.mean_curvature().ok_or(GeomError::Lightlike { s: at.0, t: at.1 })
}

//! Graphs `z = f(x, y)` and their zero-mean-curvature equations.
//!
//! With the slopes `p = f_x + y/2` and `q = f_y − x/2`:
//!
//! ```text
//! Riemannian:  (1 + q²) f_xx − 2pq f_xy + (1 + p²) f_yy = 0
//! Lorentzian:  (1 − q²) f_xx + 2pq f_xy + (1 − p²) f_yy = 0
//! ```
//!
//! Half their difference is `q² f_xx − 2pq f_xy + p² f_yy` and half their
//! sum is the Laplacian, so a graph that is zero-mean-curvature for both
//! metrics has harmonic height.

use std::fmt;

use nalgebra::Vector3;

use crate::error::{GeomError, Result};
use crate::frame::{cross_comps, FrameVector, MetricKind, ModelPoint};
use crate::surface::forms::{FundamentalForms, DEGENERACY_TOL};
use crate::surface::immersion::{Immersion, Jet};

/// Width of the band around `p² + q² = 1` reported as lightlike.
pub const LIGHTLIKE_BAND: f64 = 1e-12;

/// Height and analytic partials up to second order at `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GraphJet {
    pub x: f64,
    pub y: f64,
    pub f: f64,
    pub fx: f64,
    pub fy: f64,
    pub fxx: f64,
    pub fxy: f64,
    pub fyy: f64,
}

impl GraphJet {
    pub fn p(&self) -> f64 {
        self.fx + 0.5 * self.y
    }

    pub fn q(&self) -> f64 {
        self.fy - 0.5 * self.x
    }
}

pub trait GraphFunction: Send + Sync {
    fn jet(&self, x: f64, y: f64) -> GraphJet;
}

impl<G: GraphFunction + ?Sized> GraphFunction for &G {
    fn jet(&self, x: f64, y: f64) -> GraphJet {
        (**self).jet(x, y)
    }
}

impl<G: GraphFunction + ?Sized> GraphFunction for Box<G> {
    fn jet(&self, x: f64, y: f64) -> GraphJet {
        (**self).jet(x, y)
    }
}

/// A polynomial `Σ c x^i y^j`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolynomialGraph {
    pub terms: Vec<(u32, u32, f64)>,
}

/// `k`-th derivative of `v^i`.
fn monomial(v: f64, i: u32, k: u32) -> f64 {
    if k > i {
        return 0.0;
    }
    let falling: f64 = (0..k).map(|m| (i - m) as f64).product();
    falling * v.powi((i - k) as i32)
}

impl PolynomialGraph {
    pub fn new(terms: Vec<(u32, u32, f64)>) -> Self {
        Self { terms }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `z = −xy/2`.
    pub fn hyperbolic_paraboloid() -> Self {
        Self::new(vec![(1, 1, -0.5)])
    }

    fn partial(&self, x: f64, y: f64, kx: u32, ky: u32) -> f64 {
        self.terms.iter().map(|&(i, j, c)| c * monomial(x, i, kx) * monomial(y, j, ky)).sum()
    }
}

impl GraphFunction for PolynomialGraph {
    fn jet(&self, x: f64, y: f64) -> GraphJet {
        GraphJet {
            x,
            y,
            f: self.partial(x, y, 0, 0),
            fx: self.partial(x, y, 1, 0),
            fy: self.partial(x, y, 0, 1),
            fxx: self.partial(x, y, 2, 0),
            fxy: self.partial(x, y, 1, 1),
            fyy: self.partial(x, y, 0, 2),
        }
    }
}

impl fmt::Display for PolynomialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(i, j, c)| format!("{c}*x^{i}*y^{j}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The helicoid `tan(λz) = y/x` as the graph `z = atan(y/x)/λ` over `x > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelicoidGraph {
    lambda: f64,
}

impl HelicoidGraph {
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(GeomError::InvalidParameter(format!("helicoid needs a finite nonzero lambda, got {lambda}")));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

impl GraphFunction for HelicoidGraph {
    fn jet(&self, x: f64, y: f64) -> GraphJet {
        let k = 1.0 / self.lambda;
        let r2 = x * x + y * y;
        let r4 = r2 * r2;
        GraphJet {
            x,
            y,
            f: k * y.atan2(x),
            fx: -k * y / r2,
            fy: k * x / r2,
            fxx: 2.0 * k * x * y / r4,
            fxy: k * (y * y - x * x) / r4,
            fyy: -2.0 * k * x * y / r4,
        }
    }
}

/// A height function given only by values; partials by central differences.
pub struct NumericGraph<F> {
    f: F,
    step: f64,
}

impl<F: Fn(f64, f64) -> f64 + Send + Sync> NumericGraph<F> {
    pub fn new(f: F, step: f64) -> Result<Self> {
        if step.is_nan() || step <= 0.0 {
            return Err(GeomError::NonPositiveStep(step));
        }
        Ok(Self { f, step })
    }
}

impl<F: Fn(f64, f64) -> f64 + Send + Sync> GraphFunction for NumericGraph<F> {
    fn jet(&self, x: f64, y: f64) -> GraphJet {
        let (h, f) = (self.step, &self.f);
        let c = f(x, y);
        GraphJet {
            x,
            y,
            f: c,
            fx: (f(x + h, y) - f(x - h, y)) / (2.0 * h),
            fy: (f(x, y + h) - f(x, y - h)) / (2.0 * h),
            fxx: (f(x + h, y) - 2.0 * c + f(x - h, y)) / (h * h),
            fxy: (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4.0 * h * h),
            fyy: (f(x, y + h) - 2.0 * c + f(x, y - h)) / (h * h),
        }
    }
}

/// `(s, t) ↦ (s, t, f(s, t))` with analytic jets.
pub struct GraphImmersion<G>(pub G);

impl<G: GraphFunction> Immersion for GraphImmersion<G> {
    fn point(&self, s: f64, t: f64) -> ModelPoint {
        ModelPoint::new(s, t, self.0.jet(s, t).f)
    }

    fn analytic_jet(&self, s: f64, t: f64) -> Option<Jet> {
        let j = self.0.jet(s, t);
        Some(Jet {
            point: ModelPoint::new(s, t, j.f),
            xs: Vector3::new(1.0, 0.0, j.fx),
            xt: Vector3::new(0.0, 1.0, j.fy),
            xss: Vector3::new(0.0, 0.0, j.fxx),
            xst: Vector3::new(0.0, 0.0, j.fxy),
            xtt: Vector3::new(0.0, 0.0, j.fyy),
        })
    }
}

pub fn graph_minimal_residual<G: GraphFunction + ?Sized>(f: &G, x: f64, y: f64) -> f64 {
    let j = f.jet(x, y);
    let (p, q) = (j.p(), j.q());
    (1.0 + q * q) * j.fxx - 2.0 * p * q * j.fxy + (1.0 + p * p) * j.fyy
}

pub fn graph_lorentz_residual<G: GraphFunction + ?Sized>(f: &G, x: f64, y: f64) -> f64 {
    let j = f.jet(x, y);
    let (p, q) = (j.p(), j.q());
    (1.0 - q * q) * j.fxx + 2.0 * p * q * j.fxy + (1.0 - p * p) * j.fyy
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoublyZero {
    /// `q² f_xx − 2pq f_xy + p² f_yy`
    pub difference: f64,
    /// `f_xx + f_yy`
    pub sum: f64,
}

/// Both combinations, computed directly from the jet rather than from the
/// two residuals.
pub fn doubly_zero_residuals<G: GraphFunction + ?Sized>(f: &G, x: f64, y: f64) -> DoublyZero {
    let j = f.jet(x, y);
    let (p, q) = (j.p(), j.q());
    DoublyZero { difference: q * q * j.fxx - 2.0 * p * q * j.fxy + p * p * j.fyy, sum: j.fxx + j.fyy }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CausalType {
    Spacelike,
    Timelike,
    Lightlike,
}

impl fmt::Display for CausalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CausalType::Spacelike => "spacelike",
            CausalType::Timelike => "timelike",
            CausalType::Lightlike => "lightlike",
        })
    }
}

pub fn causal_type<G: GraphFunction + ?Sized>(f: &G, x: f64, y: f64) -> CausalType {
    let j = f.jet(x, y);
    let r = j.p() * j.p() + j.q() * j.q();
    if r < 1.0 - LIGHTLIKE_BAND {
        CausalType::Spacelike
    } else if r <= 1.0 + LIGHTLIKE_BAND {
        CausalType::Lightlike
    } else {
        CausalType::Timelike
    }
}

/// Closed-form fundamental forms of a graph in the parametrization
/// `r(x, y) = (x, y, f)`, with `r_x = e1 + p e3` and `r_y = e2 + q e3`.
pub fn graph_forms<G: GraphFunction + ?Sized>(f: &G, x: f64, y: f64, kind: MetricKind) -> Result<FundamentalForms> {
    let j = f.jet(x, y);
    let (p, q) = (j.p(), j.q());
    let (e, ff, g, l, m, n, w2, normal) = match kind {
        MetricKind::Riemannian => {
            let w = (1.0 + p * p + q * q).sqrt();
            (
                1.0 + p * p,
                p * q,
                1.0 + q * q,
                (p * q + j.fxx) / w,
                (0.5 * q * q - 0.5 * p * p + j.fxy) / w,
                (-p * q + j.fyy) / w,
                w * w,
                Vector3::new(-p, -q, 1.0) / w,
            )
        }
        MetricKind::Lorentzian => {
            let w2 = 1.0 - p * p - q * q;
            if w2.abs() < DEGENERACY_TOL {
                return Err(GeomError::Lightlike { s: x, t: y });
            }
            let w = w2.abs().sqrt();
            (
                1.0 - p * p,
                -p * q,
                1.0 - q * q,
                (-p * q + j.fxx) / w,
                (0.5 * p * p - 0.5 * q * q + j.fxy) / w,
                (p * q + j.fyy) / w,
                w2,
                Vector3::new(-p, -q, -1.0) / w,
            )
        }
    };
    Ok(FundamentalForms { e, f: ff, g, l, m, n, w2, normal })
}

/// The horizontal tangent field `X = −q e1 + p e2` of a graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RulingField {
    pub field: FrameVector,
    /// `∇_X X`
    pub acceleration: FrameVector,
    /// `X × ∇_X X`; only the `e3` component can be nonzero.
    pub defect: FrameVector,
}

pub fn ruling_field<G: GraphFunction + ?Sized>(f: &G, x: f64, y: f64) -> RulingField {
    let j = f.jet(x, y);
    let (p, q) = (j.p(), j.q());
    let base = ModelPoint::new(x, y, j.f);
    let field = Vector3::new(-q, p, 0.0);
    let acc = Vector3::new(q * (j.fxy - 0.5) - p * j.fyy, p * (j.fxy + 0.5) - q * j.fxx, 0.0);
    let defect = cross_comps(MetricKind::Riemannian, &field, &acc);
    RulingField {
        field: FrameVector::from_comps(base, field),
        acceleration: FrameVector::from_comps(base, acc),
        defect: FrameVector::from_comps(base, defect),
    }
}

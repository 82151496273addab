//! Profile functions of one variable with two derivatives.

use std::fmt;
use std::sync::Arc;

/// A scalar function `s ↦ (f, f′, f″)`.
pub trait ScalarProfile: Send + Sync {
    fn jet(&self, s: f64) -> [f64; 3];

    fn value(&self, s: f64) -> f64 {
        self.jet(s)[0]
    }
}

impl<F: Fn(f64) -> [f64; 3] + Send + Sync> ScalarProfile for F {
    fn jet(&self, s: f64) -> [f64; 3] {
        self(s)
    }
}

pub type SharedProfile = Arc<dyn ScalarProfile>;

/// `Σ c_k s^k`, coefficients in increasing degree.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial1 {
    pub coeffs: Vec<f64>,
}

impl Polynomial1 {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    pub fn linear(c0: f64, c1: f64) -> Self {
        Self::new(vec![c0, c1])
    }

    /// The polynomial with prescribed `f(0)`, `f′(0)`, `f″(0)`.
    pub fn from_jet0(f0: f64, d1: f64, d2: f64) -> Self {
        Self::new(vec![f0, d1, 0.5 * d2])
    }

    pub fn shared(self) -> SharedProfile {
        Arc::new(self)
    }
}

impl ScalarProfile for Polynomial1 {
    fn jet(&self, s: f64) -> [f64; 3] {
        // Horner for the value and both derivatives at once.
        let (mut v, mut d1, mut d2) = (0.0, 0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            d2 = d2 * s + 2.0 * d1;
            d1 = d1 * s + v;
            v = v * s + c;
        }
        [v, d1, d2]
    }
}

impl fmt::Display for Polynomial1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(";"))
    }
}

/// `s ↦ f(s + by)`.
pub struct Shifted {
    pub inner: SharedProfile,
    pub by: f64,
}

impl ScalarProfile for Shifted {
    fn jet(&self, s: f64) -> [f64; 3] {
        self.inner.jet(s + self.by)
    }
}

/// `s ↦ f(s) + c`.
pub struct Offset {
    pub inner: SharedProfile,
    pub by: f64,
}

impl ScalarProfile for Offset {
    fn jet(&self, s: f64) -> [f64; 3] {
        let [v, d1, d2] = self.inner.jet(s);
        [v + self.by, d1, d2]
    }
}

/// Values of `h`, `α`, `g` and their derivatives at one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RuledJet {
    pub h: f64,
    pub dh: f64,
    pub ddh: f64,
    pub alpha: f64,
    pub dalpha: f64,
    pub ddalpha: f64,
    pub g: f64,
    pub dg: f64,
}

/// Data of a ruled surface whose rulings are the geodesics with initial
/// velocity `h cos α e1 − h sin α e2 + e3` leaving a base curve with velocity
/// `sin α e1 + cos α e2 + g e3`.
#[derive(Clone)]
pub struct RuledProfile {
    pub h: SharedProfile,
    pub alpha: SharedProfile,
    pub g: SharedProfile,
}

impl RuledProfile {
    pub fn new(h: SharedProfile, alpha: SharedProfile, g: SharedProfile) -> Self {
        Self { h, alpha, g }
    }

    pub fn polynomial(h: Polynomial1, alpha: Polynomial1, g: Polynomial1) -> Self {
        Self::new(h.shared(), alpha.shared(), g.shared())
    }

    /// `h`, `α`, `g` all constant.
    pub fn constant(h: f64, alpha: f64, g: f64) -> Self {
        Self::polynomial(Polynomial1::constant(h), Polynomial1::constant(alpha), Polynomial1::constant(g))
    }

    pub fn jet(&self, s: f64) -> RuledJet {
        let [h, dh, ddh] = self.h.jet(s);
        let [alpha, dalpha, ddalpha] = self.alpha.jet(s);
        let [g, dg, _] = self.g.jet(s);
        RuledJet { h, dh, ddh, alpha, dalpha, ddalpha, g, dg }
    }

    /// The same surface reparametrized by `s ↦ s + by`.
    pub fn shifted(&self, by: f64) -> Self {
        let wrap = |p: &SharedProfile| -> SharedProfile { Arc::new(Shifted { inner: p.clone(), by }) };
        Self::new(wrap(&self.h), wrap(&self.alpha), wrap(&self.g))
    }

    /// The image under the rotation about the `z`-axis that makes `α(0) = 0`.
    pub fn rotated_to_zero(&self) -> Self {
        let a0 = self.alpha.value(0.0);
        Self::new(self.h.clone(), Arc::new(Offset { inner: self.alpha.clone(), by: -a0 }), self.g.clone())
    }
}

/// Profile of a surface ruled by horizontal geodesics: rulings in direction
/// `cos α e1 + sin α e2`, base curve velocity
/// `cos β (−sin α e1 + cos α e2) + sin β e3`.
#[derive(Clone)]
pub struct HorizontalRuledProfile {
    pub alpha: SharedProfile,
    pub beta: SharedProfile,
}

impl HorizontalRuledProfile {
    pub fn new(alpha: SharedProfile, beta: SharedProfile) -> Self {
        Self { alpha, beta }
    }

    pub fn polynomial(alpha: Polynomial1, beta: Polynomial1) -> Self {
        Self::new(alpha.shared(), beta.shared())
    }

    /// `α(s) = a s`, `β ≡ b`.
    pub fn helicoidal(a: f64, b: f64) -> Self {
        Self::polynomial(Polynomial1::linear(0.0, a), Polynomial1::constant(b))
    }
}

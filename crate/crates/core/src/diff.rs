//! Central finite differences with optional Richardson extrapolation.

use nalgebra::Vector3;

use crate::error::{GeomError, Result};

/// Default step for first derivatives.
pub const DEFAULT_STEP: f64 = 1e-5;

/// Second derivatives are taken with this multiple of the first-derivative step.
pub const SECOND_STEP_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteDiff {
    pub step: f64,
    pub richardson: bool,
}

impl Default for FiniteDiff {
    fn default() -> Self {
        Self { step: DEFAULT_STEP, richardson: false }
    }
}

impl FiniteDiff {
    pub fn new(step: f64) -> Result<Self> {
        if step > 0.0 && step.is_finite() {
            Ok(Self { step, richardson: false })
        } else {
            Err(GeomError::NonPositiveStep(step))
        }
    }

    pub fn with_richardson(mut self, on: bool) -> Self {
        self.richardson = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.step).map(|_| ())
    }

    /// First derivative of `f` at `x`.
    pub fn first<F>(&self, f: F, x: f64) -> Vector3<f64>
    where
        F: Fn(f64) -> Vector3<f64>,
    {
        let h = self.step;
        let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
        if self.richardson {
            (4.0 * d(0.5 * h) - d(h)) / 3.0
        } else {
            d(h)
        }
    }

    /// Second derivative of `f` at `x`.
    pub fn second<F>(&self, f: F, x: f64) -> Vector3<f64>
    where
        F: Fn(f64) -> Vector3<f64>,
    {
        let h = self.step * SECOND_STEP_FACTOR;
        let f0 = f(x);
        let d = |h: f64| (f(x + h) - 2.0 * f0 + f(x - h)) / (h * h);
        if self.richardson {
            (4.0 * d(0.5 * h) - d(h)) / 3.0
        } else {
            d(h)
        }
    }

    /// Mixed partial `∂²f/∂s∂t` at `(s, t)`.
    pub fn mixed<F>(&self, f: F, s: f64, t: f64) -> Vector3<f64>
    where
        F: Fn(f64, f64) -> Vector3<f64>,
    {
        let h = self.step * SECOND_STEP_FACTOR;
        let d = |h: f64| (f(s + h, t + h) - f(s + h, t - h) - f(s - h, t + h) + f(s - h, t - h)) / (4.0 * h * h);
        if self.richardson {
            (4.0 * d(0.5 * h) - d(h)) / 3.0
        } else {
            d(h)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic(x: f64) -> Vector3<f64> {
        Vector3::new(x * x * x, x.sin(), (2.0 * x).exp())
    }

    #[test]
    fn first_derivative_is_second_order() {
        let x = 0.4_f64;
        let exact = Vector3::new(3.0 * x * x, x.cos(), 2.0 * (2.0 * x).exp());
        let e1 = (FiniteDiff::new(1e-2).unwrap().first(cubic, x) - exact).amax();
        let e2 = (FiniteDiff::new(5e-3).unwrap().first(cubic, x) - exact).amax();
        assert!((e1 / e2 - 4.0).abs() < 0.1, "ratio {}", e1 / e2);
    }

    #[test]
    fn richardson_beats_plain() {
        let x = 0.4_f64;
        let exact = Vector3::new(3.0 * x * x, x.cos(), 2.0 * (2.0 * x).exp());
        let fd = FiniteDiff::new(1e-2).unwrap();
        let plain = (fd.first(cubic, x) - exact).amax();
        let rich = (fd.with_richardson(true).first(cubic, x) - exact).amax();
        assert!(rich < plain * 1e-2);
    }

    #[test]
    fn second_and_mixed() {
        let fd = FiniteDiff::default();
        let d2 = fd.second(cubic, 0.3);
        assert!((d2.x - 1.8).abs() < 1e-6);
        let m = fd.mixed(|s, t| Vector3::new(s * t, s * s * t, 0.0), 0.5, 2.0);
        assert!((m.x - 1.0).abs() < 1e-7 && (m.y - 1.0).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_steps() {
        assert_eq!(FiniteDiff::new(0.0), Err(GeomError::NonPositiveStep(0.0)));
        assert!(FiniteDiff::new(-1e-3).is_err());
        assert!(FiniteDiff::new(f64::NAN).is_err());
    }
}

//! Surfaces ruled by horizontal geodesics.
//!
//! With rulings in direction `cos α e1 + sin α e2` and base curve velocity
//! `cos β (−sin α e1 + cos α e2) + sin β e3`, the tangents are
//!
//! ```text
//! Y_t = (cos α, sin α, 0)
//! Y_s = (−cos β sin α − tα′ sin α, cos β cos α + tα′ cos α, sin β − t cos β − t²α′/2)
//! ```
//!
//! and the surface is minimal exactly where
//! `β′ + t(α′β′cos β − α″sin β) + (t²/2)(α′β′sin β + α″cos β)` vanishes.

use nalgebra::Vector3;

use crate::error::{GeomError, Result};
use crate::frame::{frame_to_coord_comps, ModelPoint};
use crate::ruled::profile::HorizontalRuledProfile;
use crate::surface::immersion::{Immersion, Jet};

/// RK4 steps used for the base curve, independent of `s` so that the
/// surface is a smooth function of its parameters.
pub const DEFAULT_BASE_STEPS: usize = 2000;
/// `|1 + cos 2b + 4a sin b|` at or below this is the plane case.
pub const PLANE_CASE_TOL: f64 = 1e-12;

pub fn horizontal_ruled_residual(p: &HorizontalRuledProfile, s: f64, t: f64) -> f64 {
    let [_, da, dda] = p.alpha.jet(s);
    let [b, db, _] = p.beta.jet(s);
    let (sb, cb) = b.sin_cos();
    db + t * (da * db * cb - dda * sb) + 0.5 * t * t * (da * db * sb + dda * cb)
}

/// Frame components of `Y_s` and `Y_t`.
pub fn horizontal_tangents(p: &HorizontalRuledProfile, s: f64, t: f64) -> (Vector3<f64>, Vector3<f64>) {
    let [a, da, _] = p.alpha.jet(s);
    let [b, _, _] = p.beta.jet(s);
    let (sa, ca) = a.sin_cos();
    let (sb, cb) = b.sin_cos();
    (
        Vector3::new(-cb * sa - t * da * sa, cb * ca + t * da * ca, sb - t * cb - 0.5 * t * t * da),
        Vector3::new(ca, sa, 0.0),
    )
}

pub struct HorizontalRuledSurface {
    pub profile: HorizontalRuledProfile,
    pub base: ModelPoint,
    pub steps: usize,
}

impl HorizontalRuledSurface {
    fn base_velocity(&self, s: f64, at: &Vector3<f64>) -> Vector3<f64> {
        let (frame, _) = horizontal_tangents(&self.profile, s, 0.0);
        frame_to_coord_comps(&ModelPoint::from_vector(*at), &frame)
    }

    /// The base curve `Y(s, 0)`, integrated from `base` at `s = 0`.
    pub fn base_curve(&self, s: f64) -> ModelPoint {
        let h = s / self.steps as f64;
        let mut y = self.base.to_vector();
        let mut u = 0.0;
        for _ in 0..self.steps {
            let k1 = self.base_velocity(u, &y);
            let k2 = self.base_velocity(u + 0.5 * h, &(y + 0.5 * h * k1));
            let k3 = self.base_velocity(u + 0.5 * h, &(y + 0.5 * h * k2));
            let k4 = self.base_velocity(u + h, &(y + h * k3));
            y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            u += h;
        }
        ModelPoint::from_vector(y)
    }
}

/// The surface through `base` built from `profile`: the base curve is
/// integrated numerically and each ruling is the horizontal line through it.
pub fn horizontal_ruled_surface(profile: HorizontalRuledProfile, base: ModelPoint) -> HorizontalRuledSurface {
    HorizontalRuledSurface { profile, base, steps: DEFAULT_BASE_STEPS }
}

impl Immersion for HorizontalRuledSurface {
    fn point(&self, s: f64, t: f64) -> ModelPoint {
        let c = self.base_curve(s);
        let (sa, ca) = self.profile.alpha.value(s).sin_cos();
        ModelPoint::new(c.x + t * ca, c.y + t * sa, c.z + 0.5 * t * (c.x * sa - c.y * ca))
    }

    fn analytic_jet(&self, s: f64, t: f64) -> Option<Jet> {
        let p = self.point(s, t);
        let [a, da, dda] = self.profile.alpha.jet(s);
        let [b, db, _] = self.profile.beta.jet(s);
        let (sa, ca) = a.sin_cos();
        let (sb, cb) = b.sin_cos();
        let (fs, ft) = horizontal_tangents(&self.profile, s, t);
        let ds = Vector3::new(
            db * sb * sa - cb * ca * da - t * dda * sa - t * da * da * ca,
            -db * sb * ca - cb * sa * da + t * dda * ca - t * da * da * sa,
            db * cb + t * db * sb - 0.5 * t * t * dda,
        );
        let dt = Vector3::new(-da * sa, da * ca, -cb - t * da);
        let xs = frame_to_coord_comps(&p, &fs);
        let xt = frame_to_coord_comps(&p, &ft);
        let lift = |d: &Vector3<f64>, extra: f64| Vector3::new(d.x, d.y, d.z + 0.5 * (p.x * d.y - p.y * d.x) + extra);
        Some(Jet {
            point: p,
            xs,
            xt,
            xss: lift(&ds, 0.0),
            xst: lift(&dt, 0.5 * (ca * fs.y - sa * fs.x)),
            xtt: Vector3::zeros(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HelicoidCase {
    Helicoid { lambda: f64 },
    Plane,
}

/// Classification of the surface with `α(s) = a s`, `β ≡ b`.
pub fn helicoid_lambda(a: f64, b: f64) -> Result<HelicoidCase> {
    if a == 0.0 {
        return Err(GeomError::InvalidParameter(
            "a = 0 gives a hyperbolic paraboloid or a plane, not a helicoid".into(),
        ));
    }
    let denom = 1.0 + (2.0 * b).cos() + 4.0 * a * b.sin();
    if denom.abs() <= PLANE_CASE_TOL {
        Ok(HelicoidCase::Plane)
    } else {
        Ok(HelicoidCase::Helicoid { lambda: 4.0 * a * a / denom })
    }
}

/// The base point that puts the `α = a s`, `β ≡ b` surface on an
/// origin-centered helicoid.
pub fn helicoid_base(a: f64, b: f64) -> ModelPoint {
    ModelPoint::new(b.cos() / a, 0.0, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diff::FiniteDiff;
    use crate::frame::MetricKind;
    use crate::ruled::profile::Polynomial1;
    use crate::surface::forms::mean_curvature;
    use crate::surface::immersion::numeric_jet;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn residual_examples() {
        let helix = HorizontalRuledProfile::helicoidal(1.3, 0.4);
        let quad =
            HorizontalRuledProfile::polynomial(Polynomial1::new(vec![0.0, 0.0, 1.0]), Polynomial1::constant(0.0));
        let twist = HorizontalRuledProfile::polynomial(Polynomial1::constant(0.0), Polynomial1::linear(0.0, 1.0));
        for &(s, t) in &[(0.0, 0.0), (0.5, 1.0), (-1.0, 2.0)] {
            assert_eq!(horizontal_ruled_residual(&helix, s, t), 0.0);
            assert_eq!(horizontal_ruled_residual(&twist, s, t), 1.0);
        }
        assert_eq!(horizontal_ruled_residual(&quad, 0.7, 1.0), 1.0);
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(helicoid_lambda(1.0, 0.0).unwrap(), HelicoidCase::Helicoid { lambda: 2.0 });
        assert_eq!(helicoid_lambda(0.75, 7.0 * PI / 6.0).unwrap(), HelicoidCase::Plane);
        match helicoid_lambda(1.0, FRAC_PI_2).unwrap() {
            HelicoidCase::Helicoid { lambda } => assert!((lambda - 1.0).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        assert!(helicoid_lambda(0.0, 1.0).is_err());
    }

    #[test]
    fn helicoidal_surface_matches_closed_form() {
        let (a, b) = (0.8, 0.3);
        let surf = horizontal_ruled_surface(HorizontalRuledProfile::helicoidal(a, b), helicoid_base(a, b));
        let k = b.cos() / a;
        for &(s, t) in &[(0.0, 0.0), (0.6, -0.5), (-1.0, 1.2)] {
            let p = surf.point(s, t);
            let q = ModelPoint::new(
                (t + k) * (a * s).cos(),
                (t + k) * (a * s).sin(),
                s * (1.0 + (2.0 * b).cos() + 4.0 * a * b.sin()) / (4.0 * a),
            );
            assert!(p.euclidean_distance(&q) < 1e-12, "{p} vs {q}");
        }
    }

    #[test]
    fn paraboloid_and_plane_cases() {
        let b = 0.5_f64;
        let hp = horizontal_ruled_surface(
            HorizontalRuledProfile::polynomial(Polynomial1::constant(0.0), Polynomial1::constant(b)),
            ModelPoint::new(-b.tan(), 0.0, 0.0),
        );
        for &(s, t) in &[(0.3, 0.2), (-0.8, 1.1)] {
            let p = hp.point(s, t);
            let q = ModelPoint::new(t - b.tan(), s * b.cos(), -0.5 * s * t * b.cos() + 0.5 * s * b.sin());
            assert!(p.euclidean_distance(&q) < 1e-12);
            assert!((p.z + 0.5 * p.x * p.y).abs() < 1e-12);
        }
        let xz = horizontal_ruled_surface(
            HorizontalRuledProfile::polynomial(Polynomial1::constant(0.0), Polynomial1::constant(FRAC_PI_2)),
            ModelPoint::ORIGIN,
        );
        for &(s, t) in &[(0.3, 0.2), (-0.8, 1.1)] {
            assert!(xz.point(s, t).y.abs() < 1e-15);
        }
    }

    #[test]
    fn analytic_jet_matches_differences() {
        let p = HorizontalRuledProfile::polynomial(
            Polynomial1::new(vec![0.1, 0.7, -0.3]),
            Polynomial1::new(vec![0.4, 0.5, 0.2]),
        );
        let surf = horizontal_ruled_surface(p, ModelPoint::new(0.2, -0.1, 0.3));
        let fd = FiniteDiff::new(1e-4).unwrap();
        for &(s, t) in &[(0.0, 0.0), (0.5, 0.8), (-0.6, -1.2)] {
            let a = surf.analytic_jet(s, t).unwrap();
            let n = numeric_jet(&surf, s, t, &fd);
            for (x, y) in [(a.xs, n.xs), (a.xt, n.xt), (a.xss, n.xss), (a.xst, n.xst), (a.xtt, n.xtt)] {
                assert!((x - y).amax() < 1e-6, "{x:?} vs {y:?}");
            }
        }
    }

    #[test]
    fn minimal_members_have_zero_mean_curvature() {
        let surf = horizontal_ruled_surface(HorizontalRuledProfile::helicoidal(1.1, -0.7), helicoid_base(1.1, -0.7));
        for &(s, t) in &[(0.0, 0.1), (0.4, -0.6), (-0.9, 0.9)] {
            assert!(mean_curvature(&surf, (s, t), MetricKind::Riemannian).unwrap().abs() < 1e-10);
        }
        let bent = horizontal_ruled_surface(
            HorizontalRuledProfile::polynomial(Polynomial1::constant(0.0), Polynomial1::linear(0.0, 1.0)),
            ModelPoint::ORIGIN,
        );
        assert!(mean_curvature(&bent, (0.2, 0.3), MetricKind::Riemannian).unwrap().abs() > 1e-3);
    }
}

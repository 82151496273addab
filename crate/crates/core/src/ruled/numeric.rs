//! A ruled surface rebuilt numerically from its profile: the base curve is
//! integrated from its prescribed velocity and every ruling is integrated as
//! a geodesic. Serves as an oracle for the closed forms.

use nalgebra::Vector3;

use crate::frame::{coord_to_frame_comps, frame_to_coord_comps, ModelPoint};
use crate::geodesic::integrate_geodesic;
use crate::ruled::closed_form::RuledTangents;
use crate::ruled::profile::RuledProfile;
use crate::surface::immersion::Immersion;

pub struct NumericRuledSurface {
    pub profile: RuledProfile,
    pub base: ModelPoint,
    pub base_steps: usize,
    pub ruling_step: f64,
}

impl NumericRuledSurface {
    pub fn new(profile: RuledProfile) -> Self {
        Self { profile, base: ModelPoint::ORIGIN, base_steps: 2000, ruling_step: 1e-3 }
    }

    fn base_velocity(&self, s: f64, at: &Vector3<f64>) -> Vector3<f64> {
        let j = self.profile.jet(s);
        let frame = Vector3::new(j.alpha.sin(), j.alpha.cos(), j.g);
        frame_to_coord_comps(&ModelPoint::from_vector(*at), &frame)
    }

    pub fn base_curve(&self, s: f64) -> ModelPoint {
        let h = s / self.base_steps as f64;
        let mut y = self.base.to_vector();
        let mut u = 0.0;
        for _ in 0..self.base_steps {
            let k1 = self.base_velocity(u, &y);
            let k2 = self.base_velocity(u + 0.5 * h, &(y + 0.5 * h * k1));
            let k3 = self.base_velocity(u + 0.5 * h, &(y + 0.5 * h * k2));
            let k4 = self.base_velocity(u + h, &(y + h * k3));
            y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            u += h;
        }
        ModelPoint::from_vector(y)
    }

    /// Initial frame velocity of the ruling through `s`.
    pub fn ruling_velocity(&self, s: f64) -> Vector3<f64> {
        let j = self.profile.jet(s);
        Vector3::new(j.h * j.alpha.cos(), -j.h * j.alpha.sin(), 1.0)
    }

    /// Position and frame velocity at `(s, t)`.
    fn state(&self, s: f64, t: f64) -> (ModelPoint, Vector3<f64>) {
        let p0 = self.base_curve(s);
        let v0 = self.ruling_velocity(s);
        if t == 0.0 {
            return (p0, v0);
        }
        let sign = t.signum();
        let trace =
            integrate_geodesic(p0, sign * v0, t.abs(), self.ruling_step).expect("ruling integration with finite data");
        let last = trace.last();
        (last.position(), sign * last.frame_velocity())
    }

    /// `X_t` from the ruling velocity, `X_s` by central differences with `step`.
    pub fn tangents(&self, s: f64, t: f64, step: f64) -> RuledTangents {
        let (p, xt) = self.state(s, t);
        let fwd = self.point(s + step, t).to_vector();
        let back = self.point(s - step, t).to_vector();
        RuledTangents { xs: coord_to_frame_comps(&p, &((fwd - back) / (2.0 * step))), xt }
    }
}

impl Immersion for NumericRuledSurface {
    fn point(&self, s: f64, t: f64) -> ModelPoint {
        self.state(s, t).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ruled::closed_form::ruled_tangents;
    use crate::ruled::profile::Polynomial1;

    #[test]
    fn tangents_match_closed_forms() {
        let p = RuledProfile::polynomial(
            Polynomial1::new(vec![0.8, 0.3, -0.4]),
            Polynomial1::new(vec![0.2, 0.6, 0.25]),
            Polynomial1::new(vec![-0.3, 0.5, 0.1]),
        );
        let surf = NumericRuledSurface::new(p.clone());
        for &(s, t) in &[(0.0, 0.0), (-1.0, 1.0), (0.5, 3.0), (1.0, 6.0)] {
            let num = surf.tangents(s, t, 1e-4);
            let closed = ruled_tangents(&p, s, t);
            assert!((num.xs - closed.xs).amax() < 1e-6, "X_s at ({s},{t}): {:?} vs {:?}", num.xs, closed.xs);
            assert!((num.xt - closed.xt).amax() < 1e-9);
        }
    }
}

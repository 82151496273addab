//! The identity component `SO(2) ⋉ R³` of the isometry group.
//!
//! An element `(θ, A, B, C)` rotates the `(x, y)` plane by `θ` and then
//! left-translates by `(A, B, C)`:
//!
//! ```text
//! x' = x cosθ − y sinθ + A
//! y' = x sinθ + y cosθ + B
//! z' = ½(A sinθ − B cosθ) x + ½(A cosθ + B sinθ) y + z + C
//! ```

use nalgebra::{Matrix3, Vector3};

use crate::frame::{coord_to_frame_comps, frame_to_coord_comps, FrameVector, ModelPoint};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryElement {
    pub theta: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Default for IsometryElement {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl IsometryElement {
    pub const IDENTITY: IsometryElement = IsometryElement { theta: 0.0, a: 0.0, b: 0.0, c: 0.0 };

    pub fn new(theta: f64, a: f64, b: f64, c: f64) -> Self {
        Self { theta, a, b, c }
    }

    pub fn rotation(theta: f64) -> Self {
        Self { theta, ..Self::IDENTITY }
    }

    /// Left translation by the group element `(a, b, c)`.
    pub fn translation(a: f64, b: f64, c: f64) -> Self {
        Self { theta: 0.0, a, b, c }
    }

    /// Coordinate Jacobian of the (affine) action.
    pub fn jacobian(&self) -> Matrix3<f64> {
        let (sn, cs) = self.theta.sin_cos();
        Matrix3::new(
            cs,
            -sn,
            0.0,
            sn,
            cs,
            0.0,
            0.5 * (self.a * sn - self.b * cs),
            0.5 * (self.a * cs + self.b * sn),
            1.0,
        )
    }

    pub fn apply(&self, p: &ModelPoint) -> ModelPoint {
        let v = self.jacobian() * p.to_vector() + Vector3::new(self.a, self.b, self.c);
        ModelPoint::from_vector(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &IsometryElement) -> IsometryElement {
        let (sn, cs) = self.theta.sin_cos();
        // Rotating other's translation by self.theta, then the group product.
        let u1 = cs * other.a - sn * other.b;
        let u2 = sn * other.a + cs * other.b;
        IsometryElement {
            theta: self.theta + other.theta,
            a: self.a + u1,
            b: self.b + u2,
            c: self.c + other.c + 0.5 * (self.a * u2 - self.b * u1),
        }
    }

    pub fn inverse(&self) -> IsometryElement {
        let (sn, cs) = (-self.theta).sin_cos();
        let (a, b) = (-self.a, -self.b);
        IsometryElement { theta: -self.theta, a: cs * a - sn * b, b: sn * a + cs * b, c: -self.c }
    }

    /// Push a frame vector forward: coordinates through the Jacobian, then
    /// back into the frame at the image point.
    pub fn differential(&self, v: &FrameVector) -> FrameVector {
        let image = self.apply(&v.base);
        let coords = self.jacobian() * frame_to_coord_comps(&v.base, &v.comps);
        FrameVector::from_comps(image, coord_to_frame_comps(&image, &coords))
    }
}

pub fn isometry_apply(iso: &IsometryElement, p: &ModelPoint) -> ModelPoint {
    iso.apply(p)
}

pub fn isometry_differential(iso: &IsometryElement, v: &FrameVector) -> FrameVector {
    iso.differential(v)
}

/// Isometry taking the plane `a x + b y + z + d = 0` onto `z = 0`.
///
/// With `θ = 0` the action gives `z' = a x + b y + z + d` for the element
/// `(0, 2b, −2a, d)`.
pub fn plane_flattening_isometry(a: f64, b: f64, d: f64) -> IsometryElement {
    IsometryElement::new(0.0, 2.0 * b, -2.0 * a, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{inner, MetricKind};
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn close(p: &ModelPoint, q: &ModelPoint, tol: f64) -> bool {
        p.euclidean_distance(q) <= tol
    }

    #[test]
    fn quarter_turn() {
        let p = IsometryElement::rotation(FRAC_PI_2).apply(&ModelPoint::new(1.0, 0.0, 0.0));
        assert!(close(&p, &ModelPoint::new(0.0, 1.0, 0.0), 1e-15));
    }

    #[test]
    fn x_axis_translation() {
        let r = 1.7;
        let p = ModelPoint::new(0.3, -2.0, 0.9);
        let q = IsometryElement::translation(r, 0.0, 0.0).apply(&p);
        assert_eq!(q, ModelPoint::new(p.x + r, p.y, p.z + r * p.y / 2.0));
    }

    #[test]
    fn identity_fixes_points_and_vectors() {
        let p = ModelPoint::new(1.0, 2.0, 3.0);
        assert_eq!(IsometryElement::IDENTITY.apply(&p), p);
        let v = FrameVector::new(p, 0.1, -0.2, 0.3);
        let w = IsometryElement::IDENTITY.differential(&v);
        assert!((w.comps - v.comps).amax() < 1e-15);
    }

    #[test]
    fn flattening_examples() {
        assert_eq!(plane_flattening_isometry(0.0, 0.0, 0.0), IsometryElement::IDENTITY);
        let q = plane_flattening_isometry(1.0, 0.0, 0.0).apply(&ModelPoint::new(1.0, 0.0, -1.0));
        assert_eq!(q.z, 0.0);
    }

    fn element() -> impl Strategy<Value = IsometryElement> {
        (-3.2..3.2f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64)
            .prop_map(|(t, a, b, c)| IsometryElement::new(t, a, b, c))
    }

    fn point() -> impl Strategy<Value = ModelPoint> {
        (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(x, y, z)| ModelPoint::new(x, y, z))
    }

    proptest! {
        #[test]
        fn composition_matches_sequential_application(f in element(), g in element(), p in point()) {
            let lhs = f.compose(&g).apply(&p);
            let rhs = f.apply(&g.apply(&p));
            prop_assert!(close(&lhs, &rhs, 1e-12));
        }

        #[test]
        fn composition_is_associative(f in element(), g in element(), h in element(), p in point()) {
            let lhs = f.compose(&g).compose(&h).apply(&p);
            let rhs = f.compose(&g.compose(&h)).apply(&p);
            prop_assert!(close(&lhs, &rhs, 1e-12));
        }

        #[test]
        fn inverse_undoes(f in element(), p in point()) {
            prop_assert!(close(&f.inverse().compose(&f).apply(&p), &p, 1e-12));
            prop_assert!(close(&f.compose(&f.inverse()).apply(&p), &p, 1e-12));
        }

        #[test]
        fn differential_preserves_both_metrics(
            f in element(), p in point(),
            a in (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64),
            b in (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64),
        ) {
            let v = FrameVector::new(p, a.0, a.1, a.2);
            let w = FrameVector::new(p, b.0, b.1, b.2);
            let (dv, dw) = (f.differential(&v), f.differential(&w));
            for kind in MetricKind::BOTH {
                let before = inner(&v, &w, kind).unwrap();
                let after = inner(&dv, &dw, kind).unwrap();
                prop_assert!((before - after).abs() < 1e-10);
            }
        }

        #[test]
        fn fibres_are_preserved(f in element(), p in point()) {
            let e3 = f.differential(&FrameVector::basis(p, 3));
            prop_assert!((e3.comps - Vector3::new(0.0, 0.0, 1.0)).amax() < 1e-12);
        }

        #[test]
        fn flattening_lands_on_horizontal_plane(a in -3.0..3.0f64, b in -3.0..3.0f64, d in -3.0..3.0f64,
                                                x in -3.0..3.0f64, y in -3.0..3.0f64) {
            let z = -a * x - b * y - d;
            let q = plane_flattening_isometry(a, b, d).apply(&ModelPoint::new(x, y, z));
            prop_assert!(q.z.abs() < 1e-12);
        }
    }
}

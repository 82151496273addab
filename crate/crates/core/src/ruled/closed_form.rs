//! Closed-form tangents, covariant second derivatives and the minimality
//! functional `H̃` of a ruled surface, in frame components.
//!
//! The rulings are geodesics, so `∇_{X_t} X_t = 0` and
//! `H̃ = ⟨X_t,X_t⟩⟨∇_{X_s}X_s, N⟩ − 2⟨X_s,X_t⟩⟨∇_{X_t}X_s, N⟩` with
//! `N = X_s × X_t` vanishes exactly where the mean curvature does.

use nalgebra::Vector3;

use crate::frame::{cross_comps, metric_dot, MetricKind};
use crate::ruled::profile::{RuledJet, RuledProfile};

const R: MetricKind = MetricKind::Riemannian;

/// Frame components of `X_s` and `X_t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuledTangents {
    pub xs: Vector3<f64>,
    pub xt: Vector3<f64>,
}

/// Frame components of `∇_{X_t} X_s` and `∇_{X_s} X_s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuledSecond {
    pub st: Vector3<f64>,
    pub ss: Vector3<f64>,
}

pub fn tangents_at(j: &RuledJet, t: f64) -> RuledTangents {
    let RuledJet { h, dh, alpha: a, dalpha: da, g, .. } = *j;
    let (sa, ca) = a.sin_cos();
    let (sta, cta) = (t - a).sin_cos();
    let st = t.sin();
    RuledTangents {
        xs: Vector3::new(
            sa + dh * sta + dh * sa - h * da * cta + h * da * ca,
            ca - dh * cta + dh * ca - h * da * sta - h * da * sa,
            g - h * st + t * h * dh - h * dh * st + h * h * da - h * h * da * t.cos(),
        ),
        xt: Vector3::new(h * cta, h * sta, 1.0),
    }
}

/// The recurring factor `−g + h(sin t + h′(sin t − t) − 2hα′ sin²(t/2))`.
fn tail(j: &RuledJet, t: f64) -> f64 {
    let half = (0.5 * t).sin();
    -j.g + j.h * (t.sin() + j.dh * (t.sin() - t) - 2.0 * j.h * j.dalpha * half * half)
}

fn mixed(j: &RuledJet, t: f64) -> Vector3<f64> {
    let RuledJet { h, dh, alpha: a, dalpha: da, .. } = *j;
    let (sa, ca) = a.sin_cos();
    let (sta, cta) = (t - a).sin_cos();
    let tl = tail(j, t);
    Vector3::new(
        0.5 * (ca + dh * cta + dh * ca + h * da * sta - h * da * sa - h * sta * tl),
        0.5 * (-sa + dh * sta - dh * sa - h * da * cta - h * da * ca + h * cta * tl),
        0.5 * h * (-t.cos() - dh * (t.cos() - 1.0) + h * da * t.sin()),
    )
}

/// `∇_{X_s} X_s` with the given bracket multiplying the tail term in the
/// first component.
fn along_s(j: &RuledJet, t: f64, bracket1: f64) -> Vector3<f64> {
    let RuledJet { h, dh, ddh, alpha: a, dalpha: da, ddalpha: dda, dg, .. } = *j;
    let (sa, ca) = a.sin_cos();
    let (sta, cta) = (t - a).sin_cos();
    let (st, ct) = t.sin_cos();
    let half = (0.5 * t).sin();
    let tl = tail(j, t);
    Vector3::new(
        da * ca - 2.0 * dh * da * cta + 2.0 * dh * da * ca - h * da * da * sta - h * da * da * sa
            + bracket1 * tl
            + ddh * sta
            + ddh * sa
            - h * dda * cta
            + h * dda * ca,
        -da * sa - 2.0 * dh * da * sta - 2.0 * dh * da * sa + h * da * da * cta - h * da * da * ca
            + (sa + dh * (sta + sa) + 2.0 * h * da * half * (0.5 * t - a).sin()) * tl
            - ddh * cta
            + ddh * ca
            - h * dda * sta
            - h * dda * sa,
        dg + dh * dh * (t - st) - dh * (st - 4.0 * h * da * half * half) + h * (ddh * (t - st) - h * dda * (ct - 1.0)),
    )
}

pub fn second_at(j: &RuledJet, t: f64) -> RuledSecond {
    // The bracket is −X_s2.
    let x2 = tangents_at(j, t).xs.y;
    RuledSecond { st: mixed(j, t), ss: along_s(j, t, -x2) }
}

/// The second derivatives with the first component of `∇_{X_s} X_s` in an
/// alternative transcription whose tail bracket reads
/// `−cos α + cos(t−α) − h′cos α + h sin(t−α) + α′ sin α` instead of `−X_s2`.
/// Kept so that the discrepancy can be measured.
pub fn second_at_alternative(j: &RuledJet, t: f64) -> RuledSecond {
    let (sa, ca) = j.alpha.sin_cos();
    let (sta, cta) = (t - j.alpha).sin_cos();
    let bracket = -ca + cta - j.dh * ca + j.h * sta + j.dalpha * sa;
    RuledSecond { st: mixed(j, t), ss: along_s(j, t, bracket) }
}

pub fn ruled_tangents(profile: &RuledProfile, s: f64, t: f64) -> RuledTangents {
    tangents_at(&profile.jet(s), t)
}

pub fn ruled_second_derivatives(profile: &RuledProfile, s: f64, t: f64) -> RuledSecond {
    second_at(&profile.jet(s), t)
}

pub fn ruled_second_derivatives_alternative(profile: &RuledProfile, s: f64, t: f64) -> RuledSecond {
    second_at_alternative(&profile.jet(s), t)
}

pub fn htilde_from(tan: &RuledTangents, sec: &RuledSecond) -> f64 {
    let n = cross_comps(R, &tan.xs, &tan.xt);
    metric_dot(R, &tan.xt, &tan.xt) * metric_dot(R, &sec.ss, &n)
        - 2.0 * metric_dot(R, &tan.xs, &tan.xt) * metric_dot(R, &sec.st, &n)
}

pub fn htilde_at(j: &RuledJet, t: f64) -> f64 {
    htilde_from(&tangents_at(j, t), &second_at(j, t))
}

pub fn htilde(profile: &RuledProfile, s: f64, t: f64) -> f64 {
    htilde_at(&profile.jet(s), t)
}

/// Mean curvature `½ H̃ / |X_s × X_t|³`, or `None` where the surface is singular.
pub fn ruled_mean_curvature(profile: &RuledProfile, s: f64, t: f64) -> Option<f64> {
    let j = profile.jet(s);
    let tan = tangents_at(&j, t);
    let norm = cross_comps(R, &tan.xs, &tan.xt).norm();
    (norm > 1e-12).then(|| 0.5 * htilde_from(&tan, &second_at(&j, t)) / norm.powi(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::{covariant_derivative_frame, ParamDir};
    use crate::diff::FiniteDiff;
    use crate::ruled::profile::Polynomial1;
    use std::f64::consts::PI;

    fn sample_profile() -> RuledProfile {
        RuledProfile::polynomial(
            Polynomial1::new(vec![0.8, 0.3, -0.4]),
            Polynomial1::new(vec![0.2, 0.6, 0.25]),
            Polynomial1::new(vec![-0.3, 0.5, 0.1]),
        )
    }

    #[test]
    fn tangent_examples() {
        let p = RuledProfile::constant(1.0, 0.0, 0.0);
        for &t in &[0.0, 0.9, 2.4] {
            let tan = ruled_tangents(&p, 0.3, t);
            assert!((tan.xt - Vector3::new(t.cos(), t.sin(), 1.0)).amax() < 1e-15);
        }
        let q = sample_profile();
        for &s in &[-0.5, 0.0, 0.7] {
            let j = q.jet(s);
            let tan = ruled_tangents(&q, s, 0.0);
            assert!((tan.xs - Vector3::new(j.alpha.sin(), j.alpha.cos(), j.g)).amax() < 1e-14);
            assert!((tan.xt - Vector3::new(j.h * j.alpha.cos(), -j.h * j.alpha.sin(), 1.0)).amax() < 1e-14);
        }
        let z = RuledProfile::constant(0.0, 0.0, 0.0);
        let tan = ruled_tangents(&z, 1.0, 2.0);
        assert_eq!(tan.xs, Vector3::new(0.0, 1.0, 0.0));
        assert_eq!(tan.xt, Vector3::new(0.0, 0.0, 1.0));
    }

    #[test]
    fn second_derivative_examples() {
        let p = RuledProfile::constant(1.0, 0.0, 0.0);
        for &t in &[0.0, 1.1, 3.0] {
            assert!((ruled_second_derivatives(&p, 0.0, t).st.z + 0.5 * t.cos()).abs() < 1e-15);
        }
        let z = RuledProfile::constant(0.0, 0.0, 0.0);
        for &(s, t) in &[(0.0, 0.0), (1.0, 2.0), (-0.4, 5.5)] {
            let sec = ruled_second_derivatives(&z, s, t);
            assert_eq!(sec.ss, Vector3::zeros());
            // Constant frame components, but ∇_{e3} e2 = ½ e1.
            assert_eq!(sec.st, Vector3::new(0.5, 0.0, 0.0));
        }
    }

    fn fd_second(p: &RuledProfile, s: f64, t: f64, step: f64) -> RuledSecond {
        let fd = FiniteDiff::new(step).unwrap();
        let xs = |s: f64, t: f64| ruled_tangents(p, s, t).xs;
        let xt = |s: f64, t: f64| ruled_tangents(p, s, t).xt;
        RuledSecond {
            st: covariant_derivative_frame(xs, xt, ParamDir::T, (s, t), R, &fd).unwrap(),
            ss: covariant_derivative_frame(xs, xs, ParamDir::S, (s, t), R, &fd).unwrap(),
        }
    }

    #[test]
    fn closed_forms_match_covariant_differences() {
        let p = sample_profile();
        for &(s, t) in &[(0.0, 0.5), (0.4, 2.0), (-0.7, 4.1), (0.9, 6.0)] {
            let closed = ruled_second_derivatives(&p, s, t);
            let e = |h: f64| {
                let n = fd_second(&p, s, t, h);
                ((n.st - closed.st).amax(), (n.ss - closed.ss).amax())
            };
            let (a, b) = (e(2e-3), e(1e-3));
            assert!(a.0 < 1e-5 && a.1 < 1e-5, "{a:?}");
            assert!((a.0 / b.0 - 4.0).abs() < 0.5, "st ratio {}", a.0 / b.0);
            assert!((a.1 / b.1 - 4.0).abs() < 0.5, "ss ratio {}", a.1 / b.1);
        }
    }

    #[test]
    fn alternative_transcription_disagrees() {
        let p = sample_profile();
        let good = ruled_second_derivatives(&p, 0.3, 1.2).ss;
        let alt = ruled_second_derivatives_alternative(&p, 0.3, 1.2).ss;
        assert!((good.x - alt.x).abs() > 1e-3);
        assert_eq!((good.y, good.z), (alt.y, alt.z));
    }

    #[test]
    fn rulings_are_geodesics() {
        let p = sample_profile();
        let fd = FiniteDiff::new(1e-4).unwrap();
        let xt = |s: f64, t: f64| ruled_tangents(&p, s, t).xt;
        for &(s, t) in &[(0.0, 0.0), (0.5, 1.5), (-1.0, 3.3), (1.0, 6.2)] {
            let acc = covariant_derivative_frame(xt, xt, ParamDir::T, (s, t), R, &fd).unwrap();
            assert!(acc.amax() < 1e-8, "{acc:?}");
        }
    }

    #[test]
    fn htilde_examples() {
        let p = RuledProfile::constant(1.0, 0.0, 0.0);
        let peak = (0..=200).map(|k| htilde(&p, 0.0, 2.0 * PI * k as f64 / 200.0).abs()).fold(0.0, f64::max);
        assert!(peak > 0.1);

        // Vertical cylinder over the unit circle: H̃ = 1.
        let circle = RuledProfile::polynomial(
            Polynomial1::constant(0.0),
            Polynomial1::linear(0.0, 1.0),
            Polynomial1::constant(0.0),
        );
        for &(s, t) in &[(0.0, 0.0), (0.8, 1.7), (-2.0, 4.0)] {
            assert!((htilde(&circle, s, t) - 1.0).abs() < 1e-14);
            assert!((ruled_mean_curvature(&circle, s, t).unwrap() - 0.5).abs() < 1e-14);
        }
        let flat = RuledProfile::constant(0.0, 0.7, 0.0);
        assert_eq!(htilde(&flat, 0.3, 1.0), 0.0);
    }

    #[test]
    fn htilde_is_translation_and_rotation_invariant() {
        let p = sample_profile();
        for &(s, t) in &[(0.0, 0.4), (0.6, 2.2), (-0.3, 5.0)] {
            let base = htilde(&p, s + 0.35, t);
            assert!((htilde(&p.shifted(0.35), s, t) - base).abs() < 1e-12 * (1.0 + base.abs()));
            let rot = htilde(&p.rotated_to_zero(), s, t);
            assert!((rot - htilde(&p, s, t)).abs() < 1e-12 * (1.0 + rot.abs()));
        }
    }
}

//! The slice `H̃(0, t)` of a ruled surface with `α(0) = 0` is an exact
//! combination of sixteen functions of `t`:
//!
//! ```text
//! 1, t, t², t³                                       A0..A3
//! cos t, t cos t, t² cos t, cos 2t, t cos 2t, cos 3t B0..B5
//! sin t, t sin t, t² sin t, sin 2t, t sin 2t, sin 3t C0..C5
//! ```
//!
//! Four coefficients have short closed forms in the jet of the profile at 0.
//! [`extract_expansion_coefficients`] recovers all sixteen by least squares.
//!
//! On a single period the basis is nearly dependent: the equilibrated
//! sample matrix on 64 nodes in `[0, 2π)` has condition number ~5e8, which
//! costs about six digits. The identity holds for every `t`, so the default
//! node set spans four periods instead (condition number ~1e2).

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{GeomError, Result};
use crate::ruled::closed_form::htilde_at;
use crate::ruled::profile::{RuledJet, RuledProfile};

pub const BASIS_LEN: usize = 16;
/// Uniform sample nodes `t_k = span · k / count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeSet {
    pub count: usize,
    pub span: f64,
}

impl NodeSet {
    /// 128 nodes on `[0, 8π)`.
    pub const DEFAULT: NodeSet = NodeSet { count: 128, span: 8.0 * PI };
    /// 64 nodes on `[0, 2π)`.
    pub const SINGLE_PERIOD: NodeSet = NodeSet { count: 64, span: 2.0 * PI };

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.span * k as f64 / self.count as f64).collect()
    }
}

impl Default for NodeSet {
    fn default() -> Self {
        Self::DEFAULT
    }
}
/// Largest accepted ratio of extreme singular values of the sample matrix.
pub const MAX_CONDITION: f64 = 1e12;
/// `|α(0)|` above this is rejected.
pub const ALPHA0_TOL: f64 = 1e-12;

pub const BASIS_NAMES: [&str; BASIS_LEN] =
    ["A0", "A1", "A2", "A3", "B0", "B1", "B2", "B3", "B4", "B5", "C0", "C1", "C2", "C3", "C4", "C5"];

/// The jet of `h`, `α`, `g` at 0 that the four coefficients depend on.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Lemma25Inputs {
    pub h0: f64,
    pub dh0: f64,
    pub ddh0: f64,
    pub dalpha0: f64,
    pub ddalpha0: f64,
    pub g0: f64,
    pub dg0: f64,
}

impl Lemma25Inputs {
    pub fn from_profile(p: &RuledProfile) -> Self {
        let j = p.jet(0.0);
        Self { h0: j.h, dh0: j.dh, ddh0: j.ddh, dalpha0: j.dalpha, ddalpha0: j.ddalpha, g0: j.g, dg0: j.dg }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma25Coefficients {
    pub a3: f64,
    pub b1: f64,
    pub b5: f64,
    pub c5: f64,
}

impl Lemma25Coefficients {
    pub fn as_array(&self) -> [f64; 4] {
        [self.a3, self.b1, self.b5, self.c5]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array().iter().zip(other.as_array()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

pub const COEFFICIENT_NAMES: [&str; 4] = ["A3", "B1", "B5", "C5"];

pub fn lemma25_coefficients(i: &Lemma25Inputs) -> Lemma25Coefficients {
    let (h, h1, h2, a1, g) = (i.h0, i.dh0, i.ddh0, i.dalpha0, i.g0);
    let p = |k: i32| h.powi(k);
    let a3 = p(5) * h1.powi(3);
    let b1 = -3.0 * h * h1 * h1
        - p(3) * h1 * h1
        - 3.0 * h * h1.powi(3)
        - p(3) * h1.powi(3)
        - 2.0 * p(3) * g * h1 * a1
        - 6.0 * g * p(5) * h1 * a1
        - 3.0 * p(3) * h1 * a1 * a1
        - 9.0 * h1 * p(5) * a1 * a1
        - 6.0 * p(7) * h1 * a1 * a1
        - p(4) * h2
        - p(2) * h2;
    let b5 = 0.25
        * (3.0 * p(4) * a1
            + 3.0 * p(6) * a1
            + 6.0 * p(4) * h1 * a1
            + 6.0 * p(6) * h1 * a1
            + 3.0 * p(4) * h1 * h1 * a1
            + 3.0 * h1 * h1 * a1 * p(6)
            - p(6) * a1.powi(3)
            - p(8) * a1.powi(3));
    let c5 = 0.25
        * (p(3)
            + p(5)
            + 3.0 * p(3) * h1
            + 3.0 * p(5) * h1
            + 3.0 * p(3) * h1 * h1
            + 3.0 * p(5) * h1 * h1
            + p(3) * h1.powi(3)
            + p(5) * h1.powi(3)
            - 3.0 * p(5) * a1 * a1
            - 3.0 * p(7) * a1 * a1
            - 3.0 * p(5) * h1 * a1 * a1
            - 3.0 * h1 * p(7) * a1 * a1);
    Lemma25Coefficients { a3, b1, b5, c5 }
}

pub fn basis(t: f64) -> [f64; BASIS_LEN] {
    let (s1, c1) = t.sin_cos();
    let (s2, c2) = (2.0 * t).sin_cos();
    let (s3, c3) = (3.0 * t).sin_cos();
    let t2 = t * t;
    [1.0, t, t2, t2 * t, c1, t * c1, t2 * c1, c2, t * c2, c3, s1, t * s1, t2 * s1, s2, t * s2, s3]
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    pub coeffs: [f64; BASIS_LEN],
    /// Largest absolute misfit over the sample nodes.
    pub residual: f64,
    /// Largest `|H̃(0, t)|` over the sample nodes.
    pub peak: f64,
    /// Condition number of the column-equilibrated sample matrix.
    pub condition: f64,
}

impl Expansion {
    pub fn a3(&self) -> f64 {
        self.coeffs[3]
    }

    pub fn b1(&self) -> f64 {
        self.coeffs[5]
    }

    pub fn b5(&self) -> f64 {
        self.coeffs[9]
    }

    pub fn c5(&self) -> f64 {
        self.coeffs[15]
    }

    pub fn selected(&self) -> Lemma25Coefficients {
        Lemma25Coefficients { a3: self.a3(), b1: self.b1(), b5: self.b5(), c5: self.c5() }
    }
}

/// Least-squares fit of samples `(t, value)` onto the basis.
pub fn fit_expansion(samples: &[(f64, f64)]) -> Result<Expansion> {
    let n = samples.len();
    if n < BASIS_LEN {
        return Err(GeomError::InvalidParameter(format!("need at least {BASIS_LEN} samples, got {n}")));
    }
    let a = DMatrix::from_fn(n, BASIS_LEN, |r, c| basis(samples[r].0)[c]);
    let b = DVector::from_iterator(n, samples.iter().map(|&(_, v)| v));
    // Equilibrate columns: t³ reaches ~250 on the interval while sin 3t stays below 1.
    let scale: Vec<f64> = a.column_iter().map(|c| c.norm()).collect();
    if scale.contains(&0.0) {
        return Err(GeomError::IllConditioned(f64::INFINITY));
    }
    let mut scaled = a.clone();
    for (mut col, s) in scaled.column_iter_mut().zip(&scale) {
        col /= *s;
    }
    let svd = scaled.svd(true, true);
    let (smax, smin) = (svd.singular_values.max(), svd.singular_values.min());
    let condition = smax / smin;
    if !condition.is_finite() || condition > MAX_CONDITION {
        return Err(GeomError::IllConditioned(condition));
    }
    let y = svd.solve(&b, 0.0).map_err(|e| GeomError::InvalidParameter(e.to_string()))?;
    let x = DVector::from_iterator(BASIS_LEN, y.iter().zip(&scale).map(|(v, s)| v / s));
    let residual = (&a * &x - &b).amax();
    let mut coeffs = [0.0; BASIS_LEN];
    coeffs.copy_from_slice(x.as_slice());
    Ok(Expansion { coeffs, residual, peak: b.amax(), condition })
}

pub fn extract_from_jet(j: &RuledJet, nodes: NodeSet) -> Result<Expansion> {
    if j.alpha.abs() > ALPHA0_TOL {
        return Err(GeomError::NotNormalized(j.alpha));
    }
    let samples: Vec<(f64, f64)> = nodes.nodes().into_iter().map(|t| (t, htilde_at(j, t))).collect();
    fit_expansion(&samples)
}

/// Fit of `H̃(0, ·)` with the default node set. Requires `α(0) = 0`; see
/// [`RuledProfile::rotated_to_zero`].
pub fn extract_expansion_coefficients(profile: &RuledProfile) -> Result<Expansion> {
    extract_from_jet(&profile.jet(0.0), NodeSet::DEFAULT)
}

/// Side-by-side comparison of the closed-form and fitted coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma25Comparison {
    pub inputs: Lemma25Inputs,
    pub closed: Lemma25Coefficients,
    pub fitted: Expansion,
}

impl Lemma25Comparison {
    pub fn max_abs_diff(&self) -> f64 {
        self.closed.max_abs_diff(&self.fitted.selected())
    }
}

pub fn compare_lemma25(profile: &RuledProfile) -> Result<Lemma25Comparison> {
    let inputs = Lemma25Inputs::from_profile(profile);
    Ok(Lemma25Comparison {
        inputs,
        closed: lemma25_coefficients(&inputs),
        fitted: extract_expansion_coefficients(profile)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ruled::profile::Polynomial1;
    use proptest::prelude::*;

    fn inputs(h0: f64, dh0: f64) -> Lemma25Inputs {
        Lemma25Inputs { h0, dh0, ..Default::default() }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(lemma25_coefficients(&inputs(1.0, 0.0)).as_array(), [0.0, 0.0, 0.0, 0.5]);
        let z = Lemma25Inputs { h0: 0.0, dh0: 1.3, ddh0: -2.0, dalpha0: 0.7, ddalpha0: 0.1, g0: 4.0, dg0: 1.0 };
        assert_eq!(lemma25_coefficients(&z).as_array().map(f64::abs), [0.0; 4]);
        assert_eq!(lemma25_coefficients(&inputs(1.0, 1.0)).a3, 1.0);
    }

    #[test]
    fn extraction_examples() {
        let unit = RuledProfile::constant(1.0, 0.0, 0.0);
        let e = extract_expansion_coefficients(&unit).unwrap();
        assert!(e.residual < 1e-8);
        assert!(e.selected().max_abs_diff(&lemma25_coefficients(&inputs(1.0, 0.0))) < 1e-6);
        assert!(e.peak > 0.1);

        let zero = RuledProfile::polynomial(
            Polynomial1::constant(0.0),
            Polynomial1::linear(0.0, 0.0),
            Polynomial1::linear(0.0, 0.6),
        );
        let e = extract_expansion_coefficients(&zero).unwrap();
        assert!(e.coeffs.iter().all(|c| c.abs() < 1e-10), "{:?}", e.coeffs);

        let tilted = RuledProfile::polynomial(
            Polynomial1::linear(1.0, 1.0),
            Polynomial1::constant(0.0),
            Polynomial1::constant(0.0),
        );
        let e = extract_expansion_coefficients(&tilted).unwrap();
        assert!((e.a3() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn single_period_nodes_agree_on_the_unit_profile() {
        let j = RuledProfile::constant(1.0, 0.0, 0.0).jet(0.0);
        let one = extract_from_jet(&j, NodeSet::SINGLE_PERIOD).unwrap();
        let four = extract_from_jet(&j, NodeSet::DEFAULT).unwrap();
        assert!(one.condition > 1e8 && four.condition < 1e3);
        assert!(one.selected().max_abs_diff(&four.selected()) < 1e-6);
    }

    #[test]
    fn rejects_unrotated_profile() {
        let p = RuledProfile::constant(1.0, 0.3, 0.0);
        assert_eq!(extract_expansion_coefficients(&p), Err(GeomError::NotNormalized(0.3)));
        assert!(extract_expansion_coefficients(&p.rotated_to_zero()).is_ok());
    }

    #[test]
    fn too_few_nodes_is_an_error() {
        let j = RuledProfile::constant(1.0, 0.0, 0.0).jet(0.0);
        assert!(matches!(
            extract_from_jet(&j, NodeSet { count: 8, span: 2.0 * PI }),
            Err(GeomError::InvalidParameter(_))
        ));
        let repeated: Vec<(f64, f64)> = (0..20).map(|k| ((k % 2) as f64, 1.0)).collect();
        assert!(matches!(fit_expansion(&repeated), Err(GeomError::IllConditioned(_))));
    }

    proptest! {
        #[test]
        fn fitted_matches_closed_form(
            h in proptest::collection::vec(-1.0..1.0f64, 3),
            a in proptest::collection::vec(-1.0..1.0f64, 2),
            g in proptest::collection::vec(-1.0..1.0f64, 2),
        ) {
            let p = RuledProfile::polynomial(
                Polynomial1::new(h),
                Polynomial1::new(vec![0.0, a[0], a[1]]),
                Polynomial1::new(g),
            );
            let c = compare_lemma25(&p).unwrap();
            prop_assert!(c.fitted.residual < 1e-8, "residual {}", c.fitted.residual);
            prop_assert!(c.max_abs_diff() < 1e-6, "{:?} vs {:?}", c.closed, c.fitted.selected());
        }

        #[test]
        fn witness_family_has_nonzero_sine_coefficient(h0 in 0.2..2.0f64, g0 in -1.0..1.0f64, dg0 in -1.0..1.0f64) {
            let p = RuledProfile::polynomial(Polynomial1::constant(h0), Polynomial1::new(vec![0.0, 0.0, 0.8]), Polynomial1::linear(g0, dg0));
            let e = extract_expansion_coefficients(&p).unwrap();
            let expected = 0.25 * h0.powi(3) * (h0 * h0 + 1.0);
            prop_assert!((e.c5() - expected).abs() < 1e-6 * (1.0 + expected));
            prop_assert!(e.peak > 0.0);
        }
    }
}

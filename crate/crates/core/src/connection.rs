//! Levi-Civita connections of the two left-invariant metrics, expressed in
//! the frame `{e1, e2, e3}`, and covariant differentiation of frame fields.

use nalgebra::Vector3;

use crate::diff::FiniteDiff;
use crate::error::Result;
use crate::frame::{coord_to_frame_comps, FrameVector, MetricKind, ModelPoint};

/// Which parameter of a two-parameter map to differentiate along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamDir {
    S,
    T,
}

/// `gamma[i][j][k]` is the `e_k` coefficient of `∇_{e_i} e_j` (0-based indices).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionTable {
    pub kind: MetricKind,
    pub gamma: [[[f64; 3]; 3]; 3],
}

/// The Lie bracket `[e_i, e_j]` of frame fields: only `[e1, e2] = e3` is nonzero.
pub fn bracket(i: usize, j: usize) -> Vector3<f64> {
    match (i, j) {
        (0, 1) => Vector3::new(0.0, 0.0, 1.0),
        (1, 0) => Vector3::new(0.0, 0.0, -1.0),
        _ => Vector3::zeros(),
    }
}

/// Connection table of the metric `kind`.
///
/// Riemannian:
/// `∇₁e₂ = −∇₂e₁ = ½e₃`, `∇₁e₃ = ∇₃e₁ = −½e₂`, `∇₂e₃ = ∇₃e₂ = ½e₁`.
/// Lorentzian: same `e₃` outputs, with the `e₁`, `e₂` outputs negated.
pub fn connection(kind: MetricKind) -> ConnectionTable {
    let s = kind.e3_sign();
    let mut gamma = [[[0.0; 3]; 3]; 3];
    gamma[0][1][2] = 0.5;
    gamma[1][0][2] = -0.5;
    gamma[0][2][1] = -0.5 * s;
    gamma[2][0][1] = -0.5 * s;
    gamma[1][2][0] = 0.5 * s;
    gamma[2][1][0] = 0.5 * s;
    ConnectionTable { kind, gamma }
}

impl ConnectionTable {
    /// `∇_{e_i} e_j` as frame components.
    pub fn derivative_of_basis(&self, i: usize, j: usize) -> Vector3<f64> {
        Vector3::from(self.gamma[i][j])
    }

    /// Bilinear connection term `Σ x_i y_j ∇_{e_i} e_j`.
    pub fn contract(&self, x: &Vector3<f64>, y: &Vector3<f64>) -> Vector3<f64> {
        let mut out = Vector3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                let w = x[i] * y[j];
                if w != 0.0 {
                    out += w * self.derivative_of_basis(i, j);
                }
            }
        }
        out
    }

    /// Overwrite a single coefficient. Used to inject faults into checks.
    pub fn with_entry(mut self, i: usize, j: usize, k: usize, value: f64) -> Self {
        self.gamma[i][j][k] = value;
        self
    }

    /// Largest `|∇_i e_j − ∇_j e_i − [e_i, e_j]|` over all index pairs.
    pub fn torsion_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let t = self.derivative_of_basis(i, j) - self.derivative_of_basis(j, i) - bracket(i, j);
                worst = worst.max(t.amax());
            }
        }
        worst
    }

    /// Largest `|⟨∇_i e_j, e_k⟩ + ⟨e_j, ∇_i e_k⟩|` over all 27 index triples.
    pub fn compatibility_defect(&self) -> f64 {
        let eta = self.kind.signature();
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let d = self.gamma[i][j][k] * eta[k] + self.gamma[i][k][j] * eta[j];
                    worst = worst.max(d.abs());
                }
            }
        }
        worst
    }
}

/// Covariant derivative of a frame field along one parameter direction when
/// the frame components of the direction vector are known.
///
/// `∇_{X_dir} V = Σ ∂_dir V_k e_k + Σ (X_dir)_i V_j ∇_{e_i} e_j`, with the
/// partials of `V` taken by central differences.
pub fn covariant_derivative_frame<F, X>(
    field: F,
    direction_vector: X,
    dir: ParamDir,
    at: (f64, f64),
    kind: MetricKind,
    fd: &FiniteDiff,
) -> Result<Vector3<f64>>
where
    F: Fn(f64, f64) -> Vector3<f64>,
    X: Fn(f64, f64) -> Vector3<f64>,
{
    fd.validate()?;
    let (s, t) = at;
    let partial = match dir {
        ParamDir::S => fd.first(|u| field(u, t), s),
        ParamDir::T => fd.first(|u| field(s, u), t),
    };
    let table = connection(kind);
    Ok(partial + table.contract(&direction_vector(s, t), &field(s, t)))
}

/// Covariant derivative of a frame field along a parametrized map; the
/// direction vector is the finite-difference velocity of `map`.
pub fn covariant_derivative<M, F>(
    map: M,
    field: F,
    dir: ParamDir,
    at: (f64, f64),
    kind: MetricKind,
    fd: &FiniteDiff,
) -> Result<FrameVector>
where
    M: Fn(f64, f64) -> ModelPoint,
    F: Fn(f64, f64) -> Vector3<f64>,
{
    fd.validate()?;
    let velocity = |s: f64, t: f64| {
        let coords = match dir {
            ParamDir::S => fd.first(|u| map(u, t).to_vector(), s),
            ParamDir::T => fd.first(|u| map(s, u).to_vector(), t),
        };
        coord_to_frame_comps(&map(s, t), &coords)
    };
    let comps = covariant_derivative_frame(&field, velocity, dir, at, kind, fd)?;
    Ok(FrameVector::from_comps(map(at.0, at.1), comps))
}

//! Geometry of the three-dimensional Heisenberg group under its left-invariant
//! Riemannian and Lorentzian metrics: frames, connections, isometries,
//! geodesics, surface curvature and ruled zero-mean-curvature surfaces.

pub mod connection;
pub mod diff;
pub mod error;
pub mod frame;
pub mod geodesic;
pub mod grid;
pub mod isometry;
pub mod ruled;
pub mod surface;
pub mod verify;

pub use connection::{connection, covariant_derivative, ConnectionTable, ParamDir};
pub use diff::FiniteDiff;
pub use error::{GeomError, Result};
pub use frame::{coord_to_frame, cross, frame_to_coord, inner, CoordVector, FrameVector, MetricKind, ModelPoint};
pub use geodesic::{
    geodesic_closed_form, horizontal_geodesic, integrate_geodesic, is_geodesic_line, GeodesicState, GeodesicTrace,
    Line3,
};
pub use grid::{Grid, Rect};
pub use isometry::{isometry_apply, isometry_differential, plane_flattening_isometry, IsometryElement};
pub use verify::{verify_all, Check, Suite, Tolerances, VerificationReport, VerifyConfig};

pub mod cylinder;
pub mod forms;
pub mod graph;
pub mod immersion;
pub mod scan;

pub use cylinder::{cylinder_mean_curvature, Circle, CurveJet, PlaneCurve, VerticalCylinder, XAxis};
pub use forms::{fundamental_forms, mean_curvature, unit_normal, FundamentalForms};
pub use graph::{
    causal_type, doubly_zero_residuals, graph_forms, graph_lorentz_residual, graph_minimal_residual, ruling_field,
    CausalType, DoublyZero, GraphFunction, GraphImmersion, GraphJet, HelicoidGraph, NumericGraph, PolynomialGraph,
    RulingField,
};
pub use immersion::{jet, numeric_jet, Immersion, IsometricImage, Jet, NumericOnly, ParamSurface};
pub use scan::{scan_graph, scan_immersion, write_scan_csv, ScanRow, SCAN_HEADER};

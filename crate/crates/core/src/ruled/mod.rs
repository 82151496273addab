pub mod catalog;
pub mod closed_form;
pub mod horizontal;
pub mod lemma25;
pub mod limit;
pub mod mesh;
pub mod numeric;
pub mod profile;

pub use catalog::{catalog_surface, CatalogImmersion, CatalogKind, CatalogSurface};
pub use closed_form::{htilde, ruled_second_derivatives, ruled_tangents, RuledSecond, RuledTangents};
pub use horizontal::{
    helicoid_base, helicoid_lambda, horizontal_ruled_residual, horizontal_ruled_surface, HelicoidCase,
    HorizontalRuledSurface,
};
pub use lemma25::{
    compare_lemma25, extract_expansion_coefficients, lemma25_coefficients, Expansion, Lemma25Coefficients,
    Lemma25Inputs,
};
pub use limit::{convergence_table, helicoid_pullback_height, limit_error, write_limit_csv, LimitRow};
pub use mesh::write_mesh;
pub use numeric::NumericRuledSurface;
pub use profile::{HorizontalRuledProfile, Polynomial1, RuledProfile, ScalarProfile};

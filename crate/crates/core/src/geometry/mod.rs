//! Genuine `∇Φ` data from left-invariant structures on Lie groups, plus point models.

pub mod catalog;
pub mod curvature;
pub mod lie;
pub mod models;
pub mod predicates;
pub mod routes;
pub mod synthetic;

pub use catalog::{catalog_example, default_catalog, Example, ExampleParams, CATALOG};
pub use curvature::CurvatureTensor;
pub use lie::{ConnectionCoefficients, LieAlgebraModel};
pub use models::{
    abelian_model, almost_abelian_model, heisenberg_model, kenmotsu_model, perturbed_heisenberg_model,
    random_lie_model, three_alpha_delta_point_model, two_step_nilpotent_model, ThreeStructurePoint,
};
pub use predicates::{model_predicates, predicates, DefiningTensors, PredicateRow, PredicateSource, PredicateTable};
pub use routes::{two_route_residuals, RouteResiduals};

#[cfg(test)]
mod tests;

//! Chinea–Gonzalez classes as subspaces of 𝒞(V), and the two routes to a label.

pub mod equations;
pub mod flowchart;
pub mod label;
pub mod lambda_mu;
pub mod report;
pub mod subspace;

pub use equations::SumFormula;
pub use flowchart::{flowchart_classify, BranchTest, FlowchartOutcome};
pub use label::{ClassLabel, ClassSet};
pub use lambda_mu::{c_lambda_mu_embed, c_lambda_mu_subspace};
pub use report::{classify_full, ClassificationReport, D1Criteria, Predicates};
pub use subspace::{class_subspace, component_norms, d_class_subspace, formula_dimension, project, sum_formula_subspace, Subspace};

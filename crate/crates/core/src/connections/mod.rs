//! Adapted connections: minimal connection, torsion types, characteristic connection.

pub mod adapted;
pub mod characteristic;
pub mod minimal;
pub mod parallel;
pub mod report;
pub mod torsion;

pub use adapted::{verify_adapted, verify_adapted_pointwise, AdaptedResiduals};
pub use characteristic::{characteristic_exists, characteristic_torsion, torsion_formula, ExistenceRoutes};
pub use minimal::{difference_endos, minimal_connection, minimal_connection_h_parallel, minimality_defect, MinimalityDefect};
pub use parallel::{parallel_torsion_check, ParallelTorsion};
pub use report::{connection_report, CharacteristicReport, ConnectionReport};
pub use torsion::{
    difference_from_torsion, torsion_from_difference, torsion_type_decompose, torsion_type_table, torsion_type_table_check,
    trace_12, TableCheck, TorsionTypes,
};

#[cfg(test)]
mod tests;

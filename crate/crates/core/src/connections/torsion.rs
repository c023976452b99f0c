//! Torsion and the splitting of metric difference tensors into the types 𝒜₁, 𝒜₂, 𝒜₃.

use super::minimal::minimal_connection;
use crate::classify::{class_subspace, ClassLabel};
use crate::space::norm;
use crate::structure::Structure;
use crate::tensor::Tensor3;
use nalgebra::DVector;
use serde::Serialize;

/// `T(X,Y,Z) = A(X,Y,Z) − A(Y,X,Z)`.
pub fn torsion_from_difference(a: &Tensor3) -> Tensor3 {
    a - &a.permute([1, 0, 2])
}

/// `2A(X,Y,Z) = T(X,Y,Z) − T(Y,Z,X) + T(Z,X,Y)`, the metric connection with torsion `T`.
pub fn difference_from_torsion(t: &Tensor3) -> Tensor3 {
    (t - &t.permute([1, 2, 0]) + t.permute([2, 0, 1])) * 0.5
}

/// `c₁₂(A)(Z) = Σ A(e_i, e_i, Z)` over an orthonormal frame.
pub fn trace_12(a: &Tensor3, st: &Structure) -> DVector<f64> {
    let gi = st.g_inv();
    let dim = st.dim();
    DVector::from_fn(dim, |z, _| {
        let mut acc = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                acc += gi[(i, j)] * a[(i, j, z)];
            }
        }
        acc
    })
}

#[derive(Clone, Debug)]
pub struct TorsionTypes {
    pub a1: Tensor3,
    pub a2: Tensor3,
    pub a3: Tensor3,
    /// The 1-form with `A₁(X,Y,Z) = g(X,Y)ϑ(Z) − g(X,Z)ϑ(Y)`.
    pub theta: DVector<f64>,
}

impl TorsionTypes {
    pub fn norms(&self, st: &Structure) -> [f64; 3] {
        [norm(&self.a1, st), norm(&self.a2, st), norm(&self.a3, st)]
    }
}

/// Orthogonal splitting of a metric `A` (skew in the last two slots).
pub fn torsion_type_decompose(a: &Tensor3, st: &Structure) -> TorsionTypes {
    let a3 = a.cyclic_sum() * (1.0 / 3.0);
    let theta = trace_12(a, st) / (st.dim() as f64 - 1.0);
    let g = st.g();
    let a1 = Tensor3::from_fn(st.dim(), |x, y, z| g[(x, y)] * theta[z] - g[(x, z)] * theta[y]);
    let a2 = a - &a1 - a3.clone();
    TorsionTypes { a1, a2, a3, theta }
}

/// Types of the minimal connection allowed for each of 𝒞₅…𝒞₁₂, as a bit mask over 𝒜₁, 𝒜₂, 𝒜₃.
pub fn torsion_type_table(class: u8) -> Option<[bool; 3]> {
    Some(match class {
        5 => [true, false, false],
        6 | 7 | 10 | 11 => [false, true, true],
        8 | 9 => [false, true, false],
        12 => [true, true, false],
        _ => return None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TableCheck {
    pub class: u8,
    pub allowed: [bool; 3],
    /// Largest off-table component norm relative to `‖A‖`, over the basis.
    pub off_table: f64,
    /// Whether some basis element has a visible component of each type.
    pub seen: [bool; 3],
    pub passes: bool,
}

/// Minimal-connection types of every basis element of `𝒞_class` against the table.
pub fn torsion_type_table_check(class: u8, st: &Structure, tol: f64) -> Option<TableCheck> {
    let allowed = torsion_type_table(class)?;
    let mut off_table: f64 = 0.0;
    let mut seen = [false; 3];
    for b in &class_subspace(ClassLabel::irreducible(class), st).basis {
        let a = minimal_connection(b, st);
        let total = norm(&a, st).max(f64::MIN_POSITIVE);
        let norms = torsion_type_decompose(&a, st).norms(st);
        for k in 0..3 {
            let rel = norms[k] / total;
            if allowed[k] {
                seen[k] |= rel > tol;
            } else {
                off_table = off_table.max(rel);
            }
        }
    }
    let passes = off_table < tol;
    Some(TableCheck { class, allowed, off_table, seen, passes })
}

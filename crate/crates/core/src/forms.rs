//! Exterior-algebra helpers in the wedge convention used throughout the crate.

use crate::structure::Structure;
use crate::tensor::Tensor3;
use nalgebra::{DMatrix, DVector};

/// `(η∧ω)(X,Y,Z) = η(X)ω(Y,Z) + η(Y)ω(Z,X) + η(Z)ω(X,Y)`.
pub fn eta_wedge(eta: &DVector<f64>, omega: &DMatrix<f64>) -> Tensor3 {
    Tensor3::from_fn(eta.len(), |x, y, z| {
        eta[x] * omega[(y, z)] + eta[y] * omega[(z, x)] + eta[z] * omega[(x, y)]
    })
}

/// Distance of a tensor from being totally skew, in the structure's metric.
pub fn alternation_defect(t: &Tensor3, st: &Structure) -> f64 {
    let a = t + &t.permute([1, 0, 2]);
    let b = t + &t.permute([0, 2, 1]);
    crate::space::norm(&a, st) + crate::space::norm(&b, st)
}

/// `(ξ⌟T)(X, Y) = T(ξ, X, Y)`.
pub fn interior(v: &DVector<f64>, t: &Tensor3) -> DMatrix<f64> {
    t.contract(0, v)
}

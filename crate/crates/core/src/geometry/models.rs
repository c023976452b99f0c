//! Concrete Lie algebra models and point models.

use super::lie::LieAlgebraModel;
use crate::error::{AcmsError, Result};
use crate::intrinsic::{reconstruct_h_parallel, IntrinsicData};
use crate::sampling::{gaussian, gaussian_matrix, rng};
use crate::structure::{canonical_structure, random_structure, Structure};
use crate::tensor::Tensor3;
use nalgebra::{DMatrix, DVector};
use rand::Rng;

/// The abelian algebra with the canonical structure (cokähler).
pub fn abelian_model(n: usize) -> LieAlgebraModel {
    LieAlgebraModel::new(Tensor3::zeros(2 * n + 1), canonical_structure(n)).expect("abelian model is valid")
}

/// Heisenberg algebra `[τ_i, τ_{n+i}] = 2λ_i ξ` with the canonical structure.
pub fn heisenberg_model(n: usize, lambda: &[f64]) -> Result<LieAlgebraModel> {
    if n == 0 || lambda.len() != n {
        return Err(AcmsError::InvalidArgument(format!("expected {n} values of λ, got {}", lambda.len())));
    }
    let dim = 2 * n + 1;
    let mut c = Tensor3::zeros(dim);
    for (i, &l) in lambda.iter().enumerate() {
        c[(i, n + i, 2 * n)] = 2.0 * l;
        c[(n + i, i, 2 * n)] = -2.0 * l;
    }
    LieAlgebraModel::new(c, canonical_structure(n))
}

/// `[ξ, X] = −βX` on the horizontal part; a β-Kenmotsu model.
pub fn kenmotsu_model(n: usize, beta: f64) -> LieAlgebraModel {
    let dim = 2 * n + 1;
    let mut c = Tensor3::zeros(dim);
    for i in 0..2 * n {
        c[(2 * n, i, i)] = -beta;
        c[(i, 2 * n, i)] = beta;
    }
    LieAlgebraModel::new(c, canonical_structure(n)).expect("almost abelian algebras satisfy Jacobi")
}

/// `ℝ ⋉_A ℝ^{2n}` with `e_0` acting by `A` on the remaining vectors.
pub fn almost_abelian_model(a: &DMatrix<f64>, st: Structure) -> Result<LieAlgebraModel> {
    let dim = st.dim();
    if a.shape() != (dim - 1, dim - 1) {
        return Err(AcmsError::Dimension("A must act on the codimension-one ideal".into()));
    }
    let mut c = Tensor3::zeros(dim);
    for k in 1..dim {
        for m in 1..dim {
            c[(0, k, m)] = a[(m - 1, k - 1)];
            c[(k, 0, m)] = -a[(m - 1, k - 1)];
        }
    }
    LieAlgebraModel::new(c, st)
}

/// A 2-step nilpotent algebra whose brackets land in the span of the last `center` vectors.
pub fn two_step_nilpotent_model(coeffs: &Tensor3, center: usize, st: Structure) -> Result<LieAlgebraModel> {
    let dim = st.dim();
    let base = dim - center;
    let mut c = Tensor3::zeros(dim);
    for i in 0..base {
        for j in (i + 1)..base {
            for k in base..dim {
                c[(i, j, k)] = coeffs[(i, j, k)];
                c[(j, i, k)] = -coeffs[(i, j, k)];
            }
        }
    }
    LieAlgebraModel::new(c, st)
}

/// Random solvable or nilpotent algebra with a random structure, deterministic in `seed`.
pub fn random_lie_model(n: usize, seed: u64) -> LieAlgebraModel {
    let st = random_structure(n, seed.wrapping_mul(31).wrapping_add(7));
    let mut g = rng(seed);
    let dim = 2 * n + 1;
    if seed.is_multiple_of(2) {
        let a = gaussian_matrix(&mut g, dim - 1, dim - 1);
        almost_abelian_model(&a, st).expect("almost abelian algebras satisfy Jacobi")
    } else {
        let center = if dim > 3 { g.random_range(1..=2) } else { 1 };
        let coeffs = Tensor3::from_fn(dim, |_, _, _| gaussian(&mut g));
        two_step_nilpotent_model(&coeffs, center, st).expect("2-step nilpotent algebras satisfy Jacobi")
    }
}

/// Heisenberg algebra whose metric is moved off the adapted one and whose structure is rebuilt
/// from a Gram–Schmidt frame of the new metric.
pub fn perturbed_heisenberg_model(n: usize, lambda: &[f64], eps: f64, seed: u64) -> Result<LieAlgebraModel> {
    let base = heisenberg_model(n, lambda)?;
    let dim = 2 * n + 1;
    let mut g = rng(seed);
    let b = gaussian_matrix(&mut g, dim, dim);
    let frame = DMatrix::identity(dim, dim) + b * eps;
    let st = crate::structure::structure_from_frame(n, &frame)?;
    base.with_structure(st)
}

/// Point-level data of one of the three structures of a 3-(α,δ)-Sasaki space in dimension 7.
#[derive(Clone, Debug)]
pub struct ThreeStructurePoint {
    pub structure: Structure,
    pub intrinsic: IntrinsicData,
    /// The 𝓗-parallel part, rebuilt from `(S_i, P_i = 0)`.
    pub h_parallel: Tensor3,
    /// The horizontal part `2(α−δ)[η_k(X)g(φ_jY,Z) − η_j(X)g(φ_kY,Z)]` on triples orthogonal to `ξ_i`.
    pub horizontal: Tensor3,
}

impl ThreeStructurePoint {
    pub fn alpha(&self) -> Tensor3 {
        &self.h_parallel + &self.horizontal
    }
}

/// The three almost contact structures `φ_1, φ_2, φ_3` on `ℝ⁷ = ℝ⁴ ⊕ ⟨ξ_1, ξ_2, ξ_3⟩`.
pub fn three_structure_tensors() -> [(DMatrix<f64>, DVector<f64>); 3] {
    let mut i1 = DMatrix::zeros(4, 4);
    i1[(1, 0)] = 1.0;
    i1[(0, 1)] = -1.0;
    i1[(3, 2)] = 1.0;
    i1[(2, 3)] = -1.0;
    let mut i2 = DMatrix::zeros(4, 4);
    i2[(2, 0)] = 1.0;
    i2[(0, 2)] = -1.0;
    i2[(3, 1)] = -1.0;
    i2[(1, 3)] = 1.0;
    let i3 = &i1 * &i2;
    let quats = [i1, i2, i3];
    std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let mut phi = DMatrix::zeros(7, 7);
        phi.view_mut((0, 0), (4, 4)).copy_from(&quats[i]);
        phi[(4 + k, 4 + j)] = 1.0;
        phi[(4 + j, 4 + k)] = -1.0;
        let mut xi = DVector::zeros(7);
        xi[4 + i] = 1.0;
        (phi, xi)
    })
}

/// Point model of a 3-(α,δ)-Sasaki space: `S_i = −αφ_i² − (α−δ)(η_j⊗ξ_j + η_k⊗ξ_k)`, `P_i = h_i = 0`.
pub fn three_alpha_delta_point_model(alpha: f64, delta: f64) -> Result<[ThreeStructurePoint; 3]> {
    if alpha == 0.0 {
        return Err(AcmsError::InvalidArgument("α must be nonzero".into()));
    }
    let tensors = three_structure_tensors();
    let g = DMatrix::identity(7, 7);
    let mut out = Vec::with_capacity(3);
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let (phi, xi) = &tensors[i];
        let st = Structure::new(3, g.clone(), phi.clone(), xi.clone(), None)?;
        let (xj, xk) = (&tensors[j].1, &tensors[k].1);
        let s = -(phi * phi) * alpha - (xj * xj.transpose() + xk * xk.transpose()) * (alpha - delta);
        let p = DMatrix::zeros(7, 7);
        let h_parallel = reconstruct_h_parallel(&s, &p, &st)?;
        let (phi_j, phi_k) = (&tensors[j].0, &tensors[k].0);
        let raw = Tensor3::from_fn(7, |x, y, z| {
            2.0 * (alpha - delta) * (xk[x] * phi_j[(z, y)] - xj[x] * phi_k[(z, y)])
        });
        let horizontal = raw.transform(&st.horizontal_projector());
        let h = crate::intrinsic::extract_h(&s, &p, &st);
        out.push(ThreeStructurePoint { structure: st, intrinsic: IntrinsicData { s, h, p }, h_parallel, horizontal });
    }
    Ok(out.try_into().expect("three structures"))
}

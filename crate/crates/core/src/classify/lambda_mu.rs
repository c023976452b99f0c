//! The family 𝒞_{λ,μ} of copies of 𝒞₁₀ inside 𝒞₁₀⊕𝒞₁₁.

use super::label::ClassLabel;
use super::subspace::{class_subspace, project, Subspace};
use crate::error::{AcmsError, Result};
use crate::space::norm;
use crate::structure::Structure;
use crate::tensor::Tensor3;
use crate::DEFAULT_TOL;

/// `α_{λ,μ}(X,Y,Z) = λ(η(Z)α(X,Y,ξ) + η(Y)α(X,ξ,Z)) + μ η(X)α(Y,ξ,Z)` for `α ∈ 𝒞₁₀`.
pub fn c_lambda_mu_embed(alpha10: &Tensor3, lambda: f64, mu: f64, st: &Structure) -> Result<Tensor3> {
    if alpha10.dim() != st.dim() {
        return Err(AcmsError::Dimension(format!("tensor dimension {} vs structure {}", alpha10.dim(), st.dim())));
    }
    if lambda == 0.0 && mu == 0.0 {
        return Err(AcmsError::InvalidArgument("(λ, μ) must be a nonzero pair".into()));
    }
    let off = norm(&(alpha10 - &project(alpha10, ClassLabel::irreducible(10), st)), st);
    if off > DEFAULT_TOL * (1.0 + norm(alpha10, st)) {
        return Err(AcmsError::InvalidArgument(format!("input is not in C10: residual {off:.3e}")));
    }
    let eta = st.eta();
    let xy_xi = alpha10.contract(2, st.xi());
    let x_xi_z = alpha10.contract(1, st.xi());
    Ok(Tensor3::from_fn(st.dim(), |x, y, z| {
        lambda * (eta[z] * xy_xi[(x, y)] + eta[y] * x_xi_z[(x, z)]) + mu * eta[x] * x_xi_z[(y, z)]
    }))
}

/// Orthonormal basis of `{α ∈ 𝒞₁₀⊕𝒞₁₁ : λP = μS}`.
pub fn c_lambda_mu_subspace(lambda: f64, mu: f64, st: &Structure) -> Result<Subspace> {
    Ok(class_subspace(ClassLabel::lambda_mu(lambda, mu)?, st))
}

//! The space 𝒞(V) of tensors with the symmetries of `∇Φ`, and its inner product.

use crate::linalg::{null_space, numeric_rank, RANK_THRESHOLD};
use crate::structure::{canonical_structure, Structure};
use crate::tensor::Tensor3;
use nalgebra::DMatrix;

/// Orthogonal projection of an arbitrary order-3 tensor onto 𝒞(V).
///
/// Each 2-form `α(X,·,·)` is skew-symmetrized and then stripped of its `φ`-invariant
/// horizontal part `½(ω(πY,πZ) + ω(φY,φZ))`.
pub fn cv_project(raw: &Tensor3, s: &Structure) -> Tensor3 {
    let dim = s.dim();
    assert_eq!(raw.dim(), dim, "tensor and structure dimensions differ");
    let pi = s.horizontal_projector();
    let phi = s.phi();
    let mut out = Tensor3::zeros(dim);
    for x in 0..dim {
        let m = raw.slice(x);
        let skew = (&m - m.transpose()) * 0.5;
        let unitary = (pi.transpose() * &skew * &pi + phi.transpose() * &skew * phi) * 0.5;
        let rest = skew - unitary;
        for y in 0..dim {
            for z in 0..dim {
                out[(x, y, z)] = rest[(y, z)];
            }
        }
    }
    out
}

/// `‖α − pr(α)‖`, the distance from 𝒞(V).
pub fn cv_residual(alpha: &Tensor3, s: &Structure) -> f64 {
    norm(&(alpha - &cv_project(alpha, s)), s)
}

/// Full contraction `Σ α_{ijk} β_{lmn} g^{il} g^{jm} g^{kn}`, the sum over any orthonormal frame.
pub fn inner(alpha: &Tensor3, beta: &Tensor3, s: &Structure) -> f64 {
    assert_eq!(alpha.dim(), s.dim(), "tensor and structure dimensions differ");
    assert_eq!(beta.dim(), s.dim(), "tensor and structure dimensions differ");
    alpha.dot(&raise_all(beta, s))
}

/// Checked variant of [`inner`].
pub fn cv_inner_product(alpha: &Tensor3, beta: &Tensor3, s: &Structure) -> crate::Result<f64> {
    if alpha.dim() != s.dim() || beta.dim() != s.dim() {
        return Err(crate::AcmsError::Dimension(format!(
            "tensors of dimension {} and {} over a structure of dimension {}",
            alpha.dim(),
            beta.dim(),
            s.dim()
        )));
    }
    Ok(inner(alpha, beta, s))
}

pub fn norm(alpha: &Tensor3, s: &Structure) -> f64 {
    inner(alpha, alpha, s).max(0.0).sqrt()
}

pub(crate) fn raise_all(t: &Tensor3, s: &Structure) -> Tensor3 {
    let gi = s.g_inv();
    t.apply(0, gi).apply(1, gi).apply(2, gi)
}

/// `(2n+1)(n²+n)`.
pub fn cv_dimension(n: usize) -> usize {
    (2 * n + 1) * (n * n + n)
}

/// Linear constraint rows cutting out 𝒞(V) in `R^{N³}`.
pub fn cv_constraint_matrix(s: &Structure) -> DMatrix<f64> {
    let dim = s.dim();
    let total = dim * dim * dim;
    let columns: Vec<Vec<f64>> = (0..total)
        .map(|c| {
            let e = Tensor3::from_vec(dim, (0..total).map(|r| f64::from(r == c)).collect());
            cv_constraints(&e, s)
        })
        .collect();
    DMatrix::from_fn(columns[0].len(), total, |r, c| columns[c][r])
}

/// Residual entries of the two defining identities of 𝒞(V), linear in `α`.
pub fn cv_constraints(alpha: &Tensor3, s: &Structure) -> Vec<f64> {
    let skew = alpha + &alpha.permute([0, 2, 1]);
    let phi = s.phi();
    let xi = s.xi();
    let eta = s.eta();
    let a_xi_z = alpha.contract(1, xi);
    let a_y_xi = alpha.contract(2, xi);
    let twisted = alpha.apply(1, phi).apply(2, phi);
    let dim = s.dim();
    let rhs = Tensor3::from_fn(dim, |x, y, z| {
        -twisted[(x, y, z)] + eta[y] * a_xi_z[(x, z)] + eta[z] * a_y_xi[(x, y)]
    });
    let mut out = skew.as_slice().to_vec();
    out.extend((alpha - &rhs).as_slice());
    out
}

/// Orthonormal basis of 𝒞(V) for the canonical model, as null space of the constraint system.
pub fn cv_basis_canonical(n: usize) -> Vec<Tensor3> {
    let s = canonical_structure(n);
    let ns = null_space(&cv_constraint_matrix(&s), RANK_THRESHOLD);
    (0..ns.ncols()).map(|c| Tensor3::from_dvector(s.dim(), &ns.column(c).into_owned())).collect()
}

/// Rank of the projector applied to all elementary tensors.
pub fn cv_rank_by_projection(s: &Structure) -> usize {
    let dim = s.dim();
    let total = dim * dim * dim;
    let images: Vec<Tensor3> = (0..total)
        .map(|c| cv_project(&Tensor3::from_vec(dim, (0..total).map(|r| f64::from(r == c)).collect()), s))
        .collect();
    let m = DMatrix::from_fn(total, total, |r, c| images[c].as_slice()[r]);
    numeric_rank(&m, RANK_THRESHOLD)
}

//! The minimal connection `∇ = ∇^g + A`, the unique adapted metric connection with `A` pointwise in 𝔪.

use crate::intrinsic::s_matrix;
use crate::space::norm;
use crate::structure::Structure;
use crate::tensor::Tensor3;
use nalgebra::DMatrix;

/// `2A(X,Y,Z) = −α(X,Y,φZ) + 2α(X,ξ,φY)η(Z) − η(Y)α(X,ξ,φZ)`, with `A(X,Y,Z) = g(A_X Y, Z)`.
pub fn minimal_connection(alpha: &Tensor3, st: &Structure) -> Tensor3 {
    let phi = st.phi();
    let a_phi = alpha.apply(2, phi);
    // b(X, W) = α(X, ξ, φW)
    let b = a_phi.contract(1, st.xi());
    let eta = st.eta();
    Tensor3::from_fn(st.dim(), |x, y, z| 0.5 * (-a_phi[(x, y, z)] + 2.0 * b[(x, y)] * eta[z] - eta[y] * b[(x, z)]))
}

/// The same tensor for 𝓗-parallel data, written in `(S, P)`:
/// `2A = −η(X)g(PY,φZ) + η(X)η(Y)g(Sξ,φZ) + 2η(Z)g(SX,φY) − 2η(Y)g(SX,φZ)`.
pub fn minimal_connection_h_parallel(s: &DMatrix<f64>, p: &DMatrix<f64>, st: &Structure) -> Tensor3 {
    let g = st.g();
    let phi = st.phi();
    let eta = st.eta();
    let p_phi = p.transpose() * g * phi;
    let s_phi = s.transpose() * g * phi;
    let s_xi_phi = (s * st.xi()).transpose() * g * phi;
    Tensor3::from_fn(st.dim(), |x, y, z| {
        0.5 * (-eta[x] * p_phi[(y, z)] + eta[x] * eta[y] * s_xi_phi[z] + 2.0 * eta[z] * s_phi[(x, y)]
            - 2.0 * eta[y] * s_phi[(x, z)])
    })
}

/// `A_{e_i}` as endomorphisms.
pub fn difference_endos(a: &Tensor3, st: &Structure) -> Vec<DMatrix<f64>> {
    (0..st.dim()).map(|i| st.raise(&a.slice(i))).collect()
}

/// Residuals of the two properties singling out the minimal connection among adapted ones.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct MinimalityDefect {
    /// `A(X,Y,Z) + A(X,Z,Y)`.
    pub metric: f64,
    /// `A(X,φY,φZ) + A(X,Y,Z)` on horizontal `Y, Z`.
    pub m_valued: f64,
    /// `A(X,ξ,Z) − g(φSX, Z)`.
    pub xi_row: f64,
}

pub fn minimality_defect(a: &Tensor3, alpha: &Tensor3, st: &Structure) -> MinimalityDefect {
    let pi = st.horizontal_projector();
    let phi = st.phi();
    let ah = a.apply(1, &pi).apply(2, &pi);
    let twisted = ah.apply(1, phi).apply(2, phi);
    let s = s_matrix(alpha, st);
    let row = a.contract(1, st.xi()) - st.lower(&(phi * s));
    MinimalityDefect {
        metric: norm(&(a + &a.permute([0, 2, 1])), st),
        m_valued: norm(&(&twisted + &ah), st),
        xi_row: st.form_norm(&row),
    }
}

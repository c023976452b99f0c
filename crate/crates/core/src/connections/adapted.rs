use super::minimal::difference_endos;
use crate::geometry::LieAlgebraModel;
use crate::intrinsic::s_matrix;
use crate::structure::Structure;
use crate::tensor::Tensor3;
use nalgebra::DMatrix;
use serde::Serialize;

/// Norms of `∇g`, `∇φ`, `∇ξ`, `∇η` for `∇ = ∇^g + A`, summed in quadrature over a basis.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AdaptedResiduals {
    pub metric: f64,
    pub phi: f64,
    pub xi: f64,
    pub eta: f64,
}

impl AdaptedResiduals {
    pub fn max(&self) -> f64 {
        self.metric.max(self.phi).max(self.xi).max(self.eta)
    }
}

#[derive(Default)]
struct Acc([f64; 4]);

impl Acc {
    fn add(&mut self, k: usize, v: f64) {
        self.0[k] += v * v;
    }

    fn finish(self) -> AdaptedResiduals {
        let [metric, phi, xi, eta] = self.0.map(f64::sqrt);
        AdaptedResiduals { metric, phi, xi, eta }
    }
}

/// Checks `∇^g + A` on a Lie algebra, with the Levi-Civita connection from brackets.
pub fn verify_adapted(a: &Tensor3, m: &LieAlgebraModel) -> AdaptedResiduals {
    let st = m.structure();
    let lc = m.levi_civita();
    let phi = st.phi();
    let mut acc = Acc::default();
    for (i, ai) in difference_endos(a, st).into_iter().enumerate() {
        let c = lc.endo(i) + ai;
        let low = st.lower(&c);
        acc.add(0, st.form_norm(&(&low + low.transpose())));
        acc.add(1, st.endo_norm(&(&c * phi - phi * &c)));
        acc.add(2, (&c * st.xi()).norm());
        acc.add(3, (st.eta().transpose() * &c).norm());
    }
    acc.finish()
}

/// Pointwise check from `α` alone: `∇_Xφ = (∇^g_Xφ) + [A_X, φ]`, `∇_Xξ = −φSX + A_Xξ`,
/// `(∇_Xη)Y = g(SX, φY) − η(A_X Y)`.
pub fn verify_adapted_pointwise(a: &Tensor3, alpha: &Tensor3, st: &Structure) -> AdaptedResiduals {
    let phi = st.phi();
    let s = s_matrix(alpha, st);
    let nabla_xi = -(phi * &s);
    let nabla_eta = st.lower(&s) * phi;
    let mut acc = Acc::default();
    for (i, ai) in difference_endos(a, st).into_iter().enumerate() {
        let d: DMatrix<f64> = st.g_inv() * alpha.slice(i);
        let low = st.lower(&ai);
        acc.add(0, st.form_norm(&(&low + low.transpose())));
        acc.add(1, st.endo_norm(&(d + &ai * phi - phi * &ai)));
        acc.add(2, (nabla_xi.column(i) + &ai * st.xi()).norm());
        acc.add(3, (nabla_eta.row(i) - st.eta().transpose() * &ai).norm());
    }
    acc.finish()
}

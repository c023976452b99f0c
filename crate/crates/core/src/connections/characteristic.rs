//! Characteristic connection: the adapted metric connection with totally skew torsion.

use crate::classify::{c_lambda_mu_subspace, component_norms};
use crate::error::{AcmsError, Result};
use crate::forms::{alternation_defect, eta_wedge, interior};
use crate::geometry::{DefiningTensors, LieAlgebraModel};
use crate::intrinsic::{horizontal_norm, Flag, IntrinsicData};
use crate::space::{inner, norm};
use crate::structure::Structure;
use crate::tensor::Tensor3;
use serde::Serialize;

/// The independent existence tests.
#[derive(Clone, Debug, Serialize)]
pub struct ExistenceRoutes {
    /// Distance of `α` from 𝒞₁⊕𝒞₃⊕𝒞₄⊕𝒞₆⊕𝒞₇⊕𝒞_min.
    pub class: Flag,
    /// `ξ` Killing and `P = −h`; only meaningful for 𝓗-parallel input.
    pub killing_p_neg_h: Option<Flag>,
    /// `ξ` Killing and `N_φ` totally skew, with `N_φ` computed from `α`.
    pub killing_skew_n: Flag,
    /// Same test with `N_φ` and `∇ξ` from brackets.
    pub killing_skew_n_model: Option<Flag>,
}

impl ExistenceRoutes {
    fn all(&self) -> impl Iterator<Item = Flag> + '_ {
        [Some(self.class), self.killing_p_neg_h, Some(self.killing_skew_n), self.killing_skew_n_model].into_iter().flatten()
    }

    pub fn exists(&self) -> bool {
        self.class.holds
    }

    pub fn consistent(&self) -> bool {
        self.all().all(|f| f.holds == self.class.holds)
    }
}

fn class_residual(alpha: &Tensor3, st: &Structure) -> f64 {
    let norms = component_norms(alpha, st);
    let outside: f64 = [2u8, 5, 8, 9, 12].iter().map(|&i| norms[(i - 1) as usize].powi(2)).sum();
    let complement = c_lambda_mu_subspace(1.0, 1.0, st).expect("(1,1) is a valid pair");
    let off_min: f64 = complement.basis.iter().map(|b| inner(alpha, b, st).powi(2)).sum();
    (outside + off_min).sqrt()
}

fn killing_skew_n(defs: &DefiningTensors, st: &Structure) -> f64 {
    let low = st.lower(&defs.nabla_xi);
    st.form_norm(&(&low + low.transpose())) + alternation_defect(&defs.nijenhuis, st)
}

/// Runs every applicable existence test; `tol` is relative to `‖α‖`.
pub fn characteristic_exists(alpha: &Tensor3, st: &Structure, model: Option<&LieAlgebraModel>, tol: f64) -> ExistenceRoutes {
    let thr = tol * (1.0 + norm(alpha, st));
    let data = IntrinsicData::from_alpha_unchecked(alpha, st);
    let killing_p_neg_h = (horizontal_norm(alpha, st) <= thr).then(|| {
        let phi_s = st.phi() * &data.s;
        let killing = st.endo_norm(&(&data.s * st.xi() * st.eta().transpose()))
            + st.endo_norm(&((&phi_s + st.adjoint(&phi_s)) * 0.5));
        Flag::new(killing + st.endo_norm(&(&data.p + &data.h)), thr)
    });
    ExistenceRoutes {
        class: Flag::new(class_residual(alpha, st), thr),
        killing_p_neg_h,
        killing_skew_n: Flag::new(killing_skew_n(&DefiningTensors::from_alpha(alpha, st), st), thr),
        killing_skew_n_model: model.map(|m| Flag::new(killing_skew_n(&DefiningTensors::from_model(m), st), thr)),
    }
}

/// `T = η∧dη + N_φ + d^φΦ − η∧(ξ⌟N_φ)` with `d^φΦ(X,Y,Z) = dΦ(φX,φY,φZ)`, evaluated verbatim.
pub fn torsion_formula(defs: &DefiningTensors, st: &Structure) -> Tensor3 {
    let eta = st.eta();
    let d_phi_phi = defs.d_phi.transform(st.phi());
    eta_wedge(eta, &defs.d_eta) + defs.nijenhuis.clone() + d_phi_phi
        - eta_wedge(eta, &interior(st.xi(), &defs.nijenhuis))
}

/// Torsion of the characteristic connection, refused when any route says it does not exist.
pub fn characteristic_torsion(alpha: &Tensor3, st: &Structure, model: Option<&LieAlgebraModel>, tol: f64) -> Result<Tensor3> {
    let routes = characteristic_exists(alpha, st, model, tol);
    if !routes.all().all(|f| f.holds) {
        return Err(AcmsError::NoCharacteristic {
            class_residual: routes.class.residual,
            fi_residual: routes.killing_skew_n.residual,
        });
    }
    let defs = match model {
        Some(m) => DefiningTensors::from_model(m),
        None => DefiningTensors::from_alpha(alpha, st),
    };
    Ok(torsion_formula(&defs, st))
}

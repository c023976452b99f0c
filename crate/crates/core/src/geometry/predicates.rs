//! Geometric properties decided twice: from their definitions and from the `(S, h)` criteria.

use super::lie::LieAlgebraModel;
use crate::intrinsic::{d_eta_from_s, horizontal_norm, nabla_xi_from_s, nijenhuis_from_alpha, Flag, IntrinsicData};
use crate::space::norm;
use crate::structure::Structure;
use crate::tensor::Tensor3;
use nalgebra::DMatrix;
use serde::Serialize;

/// The tensors the definitions are phrased in.
#[derive(Clone, Debug)]
pub struct DefiningTensors {
    pub nijenhuis: Tensor3,
    pub d_eta: DMatrix<f64>,
    pub d_phi: Tensor3,
    pub nabla_xi: DMatrix<f64>,
}

impl DefiningTensors {
    /// Read off `α` through the general formulas.
    pub fn from_alpha(alpha: &Tensor3, st: &Structure) -> Self {
        let data = IntrinsicData::from_alpha_unchecked(alpha, st);
        Self {
            nijenhuis: nijenhuis_from_alpha(alpha, st),
            d_eta: d_eta_from_s(&data.s, st),
            d_phi: alpha.cyclic_sum(),
            nabla_xi: nabla_xi_from_s(&data.s, st),
        }
    }

    /// Computed from brackets and the Levi-Civita connection.
    pub fn from_model(m: &LieAlgebraModel) -> Self {
        Self {
            nijenhuis: m.nijenhuis_direct(),
            d_eta: m.d_eta_bracket(),
            d_phi: m.d_phi_bracket(),
            nabla_xi: m.nabla_xi(),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum PredicateSource {
    /// Definitions evaluated on tensors derived from `α`.
    Tensor,
    /// Definitions evaluated on brackets of a Lie algebra.
    LieModel,
}

#[derive(Clone, Debug, Serialize)]
pub struct PredicateRow {
    pub name: &'static str,
    pub definition: Flag,
    /// `None` when the criterion needs 𝓗-parallelism and the input is not 𝓗-parallel.
    pub criterion: Option<Flag>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PredicateTable {
    pub source: PredicateSource,
    pub h_parallel: bool,
    pub rows: Vec<PredicateRow>,
}

impl PredicateTable {
    pub fn row(&self, name: &str) -> Option<&PredicateRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    /// Verdict of the definition route.
    pub fn holds(&self, name: &str) -> bool {
        self.row(name).is_some_and(|r| r.definition.holds)
    }

    pub fn consistent(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }
}

fn horizontal_restriction(t: &Tensor3, st: &Structure, slots: &[usize]) -> Tensor3 {
    let pi = st.horizontal_projector();
    slots.iter().fold(t.clone(), |acc, &s| acc.apply(s, &pi))
}

fn build(alpha: &Tensor3, st: &Structure, defs: &DefiningTensors, source: PredicateSource, tol: f64) -> PredicateTable {
    let thr = tol * (1.0 + norm(alpha, st));
    let data = IntrinsicData::from_alpha_unchecked(alpha, st);
    let (s, h) = (&data.s, &data.h);
    let phi = st.phi();
    let pi = st.horizontal_projector();
    let eta = st.eta();
    let s_xi = st.endo_norm(&(s * st.xi() * eta.transpose()));
    let endo = |e: &DMatrix<f64>| st.endo_norm(e);
    let skew_part = |e: &DMatrix<f64>| endo(&((e + st.adjoint(e)) * 0.5));
    let sym_part = |e: &DMatrix<f64>| endo(&((e - st.adjoint(e)) * 0.5));

    let hp_crit = Flag::new(horizontal_norm(alpha, st), thr);
    let hp_def = Flag::new(
        norm(&horizontal_restriction(&defs.d_phi, st, &[0, 1, 2]), st)
            + norm(&horizontal_restriction(&defs.nijenhuis, st, &[0, 1, 2]), st),
        thr,
    );
    let h_parallel = hp_crit.holds;
    let gated = |f: Flag| if h_parallel { Some(f) } else { None };

    let comm = s * phi - phi * s;
    let comm_h = &pi * &comm * &pi;
    let cr_crit = gated(Flag::new(sym_part(&comm_h), thr));
    let cr_def = Flag::new(norm(&horizontal_restriction(&defs.nijenhuis, st, &[0, 1]), st), thr);

    let normal_crit = gated(Flag::new(endo(h) + endo(&comm), thr));
    let normal_def = Flag::new(norm(&defs.nijenhuis, st), thr);

    let anti_crit = gated(Flag::new(endo(h) + skew_part(s) + s_xi, thr));
    let target = Tensor3::from_fn(st.dim(), |x, y, z| 2.0 * defs.d_eta[(x, y)] * eta[z]);
    let anti_def = Flag::new(norm(&(&defs.nijenhuis - &target), st), thr);

    let phi_s = phi * s;
    let killing_crit = Some(Flag::new(s_xi + skew_part(&phi_s), thr));
    let lowered = st.lower(&defs.nabla_xi);
    let killing_def = Flag::new(st.form_norm(&(&lowered + lowered.transpose())), thr);

    let closed_crit = Some(Flag::new(s_xi + sym_part(&phi_s), thr));
    let closed_def = Flag::new(st.form_norm(&defs.d_eta), thr);

    let row = |name, definition: Flag, criterion: Option<Flag>| PredicateRow {
        name,
        definition,
        criterion,
        agree: criterion.is_none_or(|c| c.holds == definition.holds),
    };
    PredicateTable {
        source,
        h_parallel,
        rows: vec![
            row("h-parallel", hp_def, Some(hp_crit)),
            row("cr-integrable", cr_def, cr_crit),
            row("normal", normal_def, normal_crit),
            row("anti-normal", anti_def, anti_crit),
            row("xi-killing", killing_def, killing_crit),
            row("d-eta-closed", closed_def, closed_crit),
        ],
    }
}

/// Predicates of a bare tensor: definitions through the `α`-derived tensors.
pub fn predicates(alpha: &Tensor3, st: &Structure, tol: f64) -> PredicateTable {
    build(alpha, st, &DefiningTensors::from_alpha(alpha, st), PredicateSource::Tensor, tol)
}

/// Predicates of a Lie algebra model: definitions through brackets.
pub fn model_predicates(m: &LieAlgebraModel, tol: f64) -> PredicateTable {
    let alpha = m.nabla_phi_tensor();
    build(&alpha, m.structure(), &DefiningTensors::from_model(m), PredicateSource::LieModel, tol)
}

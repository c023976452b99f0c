//! `S`, `h`, `dη` and `N_φ` computed from `∇Φ` and, independently, from the brackets.

use super::lie::LieAlgebraModel;
use crate::intrinsic::{d_eta_from_s, extract_h, nijenhuis_from_alpha, IntrinsicData};
use crate::space::norm;
use serde::Serialize;

/// Relative differences `‖x − y‖ / (1 + ‖y‖)` between the two routes.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RouteResiduals {
    #[serde(rename = "S")]
    pub s: f64,
    pub h: f64,
    pub d_eta: f64,
    pub nijenhuis: f64,
}

impl RouteResiduals {
    pub fn max(&self) -> f64 {
        self.s.max(self.h).max(self.d_eta).max(self.nijenhuis)
    }
}

pub fn two_route_residuals(m: &LieAlgebraModel) -> RouteResiduals {
    let st = m.structure();
    let alpha = m.nabla_phi_tensor();
    let data = IntrinsicData::from_alpha_unchecked(&alpha, st);
    let rel = |a: f64, b: f64| a / (1.0 + b);
    let s_direct = m.s_direct();
    let h_direct = m.h_direct();
    let deta = m.d_eta_bracket();
    let nij = m.nijenhuis_direct();
    RouteResiduals {
        s: rel(st.endo_norm(&(&data.s - &s_direct)), st.endo_norm(&s_direct)),
        h: rel(st.endo_norm(&(extract_h(&data.s, &data.p, st) - &h_direct)), st.endo_norm(&h_direct)),
        d_eta: rel(st.form_norm(&(d_eta_from_s(&data.s, st) - &deta)), st.form_norm(&deta)),
        nijenhuis: rel(norm(&(&nijenhuis_from_alpha(&alpha, st) - &nij), st), norm(&nij, st)),
    }
}

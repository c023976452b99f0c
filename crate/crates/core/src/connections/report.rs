use super::adapted::{verify_adapted, verify_adapted_pointwise, AdaptedResiduals};
use super::characteristic::{characteristic_exists, characteristic_torsion, ExistenceRoutes};
use super::minimal::{minimal_connection, minimality_defect, MinimalityDefect};
use super::parallel::{parallel_torsion_check, ParallelTorsion};
use super::torsion::{difference_from_torsion, torsion_from_difference, torsion_type_decompose};
use crate::forms::eta_wedge;
use crate::geometry::LieAlgebraModel;
use crate::intrinsic::{d_eta_from_s, Flag, IntrinsicData};
use crate::space::norm;
use crate::structure::Structure;
use crate::tensor::Tensor3;
use indexmap::IndexMap;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CharacteristicReport {
    pub exists: bool,
    /// All existence routes returned the same verdict.
    pub consistent: bool,
    pub criteria: ExistenceRoutes,
    #[serde(rename = "T")]
    pub t: Option<Tensor3>,
    /// Adapted-ness of `∇^g + ½T`.
    pub adapted: Option<AdaptedResiduals>,
    /// `‖T − η∧dη‖`.
    pub eta_wedge_d_eta: Option<Flag>,
    /// `‖T − T_min‖`; the two agree exactly when the minimal connection has skew torsion.
    pub matches_minimal: Option<Flag>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectionReport {
    #[serde(rename = "A")]
    pub a: Tensor3,
    #[serde(rename = "T")]
    pub t: Tensor3,
    pub type_norms: IndexMap<String, f64>,
    /// `A = 0`: the minimal connection is the Levi-Civita connection.
    pub levi_civita: bool,
    /// The minimal torsion is totally skew (type 𝒜₃).
    pub minimal_skew: bool,
    pub minimality: MinimalityDefect,
    pub adapted: AdaptedResiduals,
    pub characteristic: CharacteristicReport,
    pub parallel_torsion: Option<ParallelTorsion>,
}

/// Minimal connection, torsion types, characteristic connection and, on Lie models, the
/// parallel-torsion conditions.
pub fn connection_report(alpha: &Tensor3, st: &Structure, model: Option<&LieAlgebraModel>, tol: f64) -> ConnectionReport {
    let thr = tol * (1.0 + norm(alpha, st));
    let a = minimal_connection(alpha, st);
    let t = torsion_from_difference(&a);
    let types = torsion_type_decompose(&a, st);
    let [n1, n2, n3] = types.norms(st);
    let type_norms = [("A1", n1), ("A2", n2), ("A3", n3)].into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    let adapted = match model {
        Some(m) => verify_adapted(&a, m),
        None => verify_adapted_pointwise(&a, alpha, st),
    };

    let criteria = characteristic_exists(alpha, st, model, tol);
    let exists = criteria.exists();
    let consistent = criteria.consistent();
    let tc = characteristic_torsion(alpha, st, model, tol).ok();
    let (mut c_adapted, mut ewd, mut matches_minimal) = (None, None, None);
    if let Some(tc) = &tc {
        let ac = difference_from_torsion(tc);
        c_adapted = Some(match model {
            Some(m) => verify_adapted(&ac, m),
            None => verify_adapted_pointwise(&ac, alpha, st),
        });
        let data = IntrinsicData::from_alpha_unchecked(alpha, st);
        let ew = eta_wedge(st.eta(), &d_eta_from_s(&data.s, st));
        ewd = Some(Flag::new(norm(&(tc - &ew), st), thr));
        matches_minimal = Some(Flag::new(norm(&(tc - &t), st), thr));
    }
    let parallel_torsion = match model {
        Some(m) if exists => Some(parallel_torsion_check(m, tol)),
        _ => None,
    };
    ConnectionReport {
        levi_civita: norm(&a, st) <= thr,
        minimal_skew: n1 + n2 <= thr,
        minimality: minimality_defect(&a, alpha, st),
        a,
        t,
        type_norms,
        adapted,
        characteristic: CharacteristicReport {
            exists,
            consistent,
            criteria,
            t: tc,
            adapted: c_adapted,
            eta_wedge_d_eta: ewd,
            matches_minimal,
        },
        parallel_torsion,
    }
}

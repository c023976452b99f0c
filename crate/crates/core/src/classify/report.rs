//! Full classification: projections for all twelve classes, the flowchart on the 𝓗-parallel
//! part and the 𝒟₁ criteria on the rest.

use super::flowchart::{flowchart_classify, BranchTest};
use super::label::ClassSet;
use super::subspace::component_norms;
use crate::intrinsic::{d1_part, endo_profile_with, nijenhuis_from_alpha, EndoProfile, Flag, IntrinsicData};
use crate::space::norm;
use crate::structure::Structure;
use crate::tensor::Tensor3;
use indexmap::IndexMap;
use serde::Serialize;

/// Membership tests on the 𝒟₁ part through `dΦ` and `N_φ`.
#[derive(Clone, Debug, Serialize)]
pub struct D1Criteria {
    /// `dΦ = 0`, expected exactly on 𝒞₂.
    pub d_phi_zero: Flag,
    /// `N_φ = 0`, expected exactly on 𝒞₃⊕𝒞₄.
    pub nijenhuis_zero: Flag,
    /// `N_φ` totally skew, expected exactly on 𝒞₁⊕𝒞₃⊕𝒞₄.
    pub nijenhuis_three_form: Flag,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Predicates {
    pub s: EndoProfile,
    pub h: EndoProfile,
    pub p: EndoProfile,
    pub d1: D1Criteria,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub component_norms: IndexMap<String, f64>,
    pub norm: f64,
    pub label: ClassSet,
    pub hparallel_label: ClassSet,
    pub d1_label: ClassSet,
    pub h_parallel: bool,
    pub marginal_branches: Vec<String>,
    pub agreement: bool,
    pub parseval_residual: f64,
    pub predicates: Predicates,
    pub branches: Vec<BranchTest>,
}

impl ClassificationReport {
    pub fn norm_of(&self, i: u8) -> f64 {
        self.component_norms[&format!("C{i}")]
    }
}

fn d1_criteria(alpha: &Tensor3, st: &Structure, label: ClassSet, threshold: f64) -> D1Criteria {
    let part = d1_part(alpha, st);
    let dphi = part.cyclic_sum();
    let nij = nijenhuis_from_alpha(&part, st);
    let nij_sym = &nij + &nij.permute([0, 2, 1]);
    let d_phi_zero = Flag::new(norm(&dphi, st), threshold);
    let nijenhuis_zero = Flag::new(norm(&nij, st), threshold);
    let nijenhuis_three_form = Flag::new(norm(&nij_sym, st), threshold);
    let consistent = d_phi_zero.holds == label.is_subset(ClassSet::single(2))
        && nijenhuis_zero.holds == label.is_subset(ClassSet::of(&[3, 4]))
        && nijenhuis_three_form.holds == label.is_subset(ClassSet::of(&[1, 3, 4]));
    D1Criteria { d_phi_zero, nijenhuis_zero, nijenhuis_three_form, consistent }
}

/// Classifies `α ∈ 𝒞(V)`; `tol` is relative to `‖α‖`.
pub fn classify_full(alpha: &Tensor3, st: &Structure, tol: f64) -> ClassificationReport {
    let total = norm(alpha, st);
    let threshold = tol * total;
    let norms = component_norms(alpha, st);
    let present = |i: u8| total > 0.0 && norms[(i - 1) as usize] > threshold;

    let projected_hp: ClassSet = (5..=12u8).filter(|&i| present(i)).fold(ClassSet::EMPTY, |acc, i| acc.union(ClassSet::single(i)));
    let d1_label: ClassSet = (1..=4u8).filter(|&i| present(i)).fold(ClassSet::EMPTY, |acc, i| acc.union(ClassSet::single(i)));

    let flow = flowchart_classify(alpha, st, tol);
    let d1 = d1_criteria(alpha, st, d1_label, threshold);
    let parseval = (norms.iter().map(|x| x * x).sum::<f64>() - total * total).abs();

    let data = IntrinsicData::from_alpha_unchecked(alpha, st);
    let predicates = Predicates {
        s: endo_profile_with(&data.s, st, tol),
        h: endo_profile_with(&data.h, st, tol),
        p: endo_profile_with(&data.p, st, tol),
        d1,
    };

    let component_norms = (1..=12u8).map(|i| (format!("C{i}"), norms[(i - 1) as usize])).collect();
    ClassificationReport {
        component_norms,
        norm: total,
        label: flow.label.union(d1_label),
        hparallel_label: flow.label,
        d1_label,
        h_parallel: flow.h_parallel,
        marginal_branches: flow.marginal_branches(),
        agreement: flow.label == projected_hp && predicates.d1.consistent,
        parseval_residual: parseval,
        predicates,
        branches: flow.branches,
    }
}

//! Algebraic classification of the 𝒟₂⊕𝒟₃ part through `(S, h, P)`.
//!
//! Every branch of the flowchart splits the current intrinsic data into two orthogonal pieces
//! characterized by one algebraic condition. A pure input follows a single path; a mixed input
//! is split and both halves are followed, so the leaves reached are exactly its classes.

use super::label::ClassSet;
use crate::intrinsic::{reconstruct_unchecked, IntrinsicData};
use crate::space::norm;
use crate::structure::Structure;
use crate::tensor::Tensor3;
use nalgebra::DMatrix;
use serde::Serialize;

/// One branch test: the residual of the condition and whether it passed.
#[derive(Clone, Debug, Serialize)]
pub struct BranchTest {
    pub condition: String,
    pub residual: f64,
    pub holds: bool,
    pub marginal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowchartOutcome {
    /// Classes among 𝒞₅…𝒞₁₂ whose component exceeds the threshold.
    pub label: ClassSet,
    /// Algebraic component norms, index `i − 1` (zero for 𝒞₁…𝒞₄).
    pub component_norms: [f64; 12],
    /// Norm of the 𝒟₁ part that the flowchart ignores.
    pub horizontal_residual: f64,
    pub h_parallel: bool,
    pub branches: Vec<BranchTest>,
}

impl FlowchartOutcome {
    pub fn marginal_branches(&self) -> Vec<String> {
        self.branches.iter().filter(|b| b.marginal).map(|b| b.condition.clone()).collect()
    }
}

struct Walker<'a> {
    st: &'a Structure,
    threshold: f64,
    branches: Vec<BranchTest>,
    norms: [f64; 12],
}

impl Walker<'_> {
    fn size(&self, s: &DMatrix<f64>, p: &DMatrix<f64>) -> f64 {
        norm(&reconstruct_unchecked(s, p, self.st), self.st)
    }

    fn test(&mut self, condition: &str, residual: f64) -> bool {
        let holds = residual <= self.threshold;
        let marginal = residual > self.threshold / 10.0 && residual < self.threshold * 10.0;
        self.branches.push(BranchTest { condition: condition.to_string(), residual, holds, marginal });
        holds
    }

    fn leaf(&mut self, i: u8, s: &DMatrix<f64>, p: &DMatrix<f64>) {
        self.norms[(i - 1) as usize] = self.size(s, p);
    }

    /// Root: split off 𝒞₁₂, determined by `Sξ`.
    fn root(&mut self, s: &DMatrix<f64>, p: &DMatrix<f64>) {
        let st = self.st;
        let v = s * st.xi();
        let s12 = &v * st.eta().transpose();
        let p12 = &v * st.eta().transpose() - st.xi() * (st.g() * &v).transpose();
        let (s2, p2) = (s - &s12, p - &p12);
        let n12 = self.size(&s12, &p12);
        let n2 = self.size(&s2, &p2);
        let pure12 = self.test("S|H = 0 and φh = 0", n2);
        let in_d2 = self.test("Sξ = 0", n12);
        if !in_d2 {
            self.leaf(12, &s12, &p12);
        }
        if !pure12 {
            self.d2(&s2, &p2);
        }
    }

    /// 𝒟₂: split into 𝒞₁₁ (`S = 0`) and 𝒞₅…𝒞₁₀ (`P = 0`).
    fn d2(&mut self, s: &DMatrix<f64>, p: &DMatrix<f64>) {
        let zero = DMatrix::zeros(s.nrows(), s.ncols());
        let n11 = self.size(&zero, p);
        let nrest = self.size(s, &zero);
        let s_zero = self.test("S = 0", nrest);
        let p_zero = self.test("P = 0", n11);
        if !p_zero {
            self.leaf(11, &zero, p);
        }
        if !s_zero {
            self.p_zero(s);
        }
    }

    /// `P = 0`: split `S` into its φ-commuting and φ-anticommuting halves.
    fn p_zero(&mut self, s: &DMatrix<f64>) {
        let phi = self.st.phi();
        let zero = DMatrix::zeros(s.nrows(), s.ncols());
        let commuting = (s - phi * s * phi) * 0.5;
        let anti = (s + phi * s * phi) * 0.5;
        let nc = self.size(&commuting, &zero);
        let na = self.size(&anti, &zero);
        let is_anti = self.test("Sφ + φS = 0 (h = S)", nc);
        let is_comm = self.test("Sφ − φS = 0 (h = 0)", na);
        if !is_comm {
            self.anticommuting(&anti);
        }
        if !is_anti {
            self.commuting(&commuting);
        }
    }

    fn sym_skew(&self, s: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
        let adj = self.st.adjoint(s);
        ((s + &adj) * 0.5, (s - &adj) * 0.5)
    }

    /// 𝒞₉⊕𝒞₁₀: symmetric versus skew `S`.
    fn anticommuting(&mut self, s: &DMatrix<f64>) {
        let zero = DMatrix::zeros(s.nrows(), s.ncols());
        let (sym, skew) = self.sym_skew(s);
        let nsym = self.size(&sym, &zero);
        let nskew = self.size(&skew, &zero);
        self.test("C9+C10: S symmetric", nskew);
        self.test("C9+C10: S skew", nsym);
        self.leaf(9, &sym, &zero);
        self.leaf(10, &skew, &zero);
    }

    /// 𝒞₅…𝒞₈: symmetric part in 𝒞₆⊕𝒞₇, skew part in 𝒞₅⊕𝒞₈, then the trace conditions.
    fn commuting(&mut self, s: &DMatrix<f64>) {
        let st = self.st;
        let zero = DMatrix::zeros(s.nrows(), s.ncols());
        let (sym, skew) = self.sym_skew(s);
        let nsym = self.size(&sym, &zero);
        let nskew = self.size(&skew, &zero);
        let two_n = 2.0 * st.n() as f64;
        let is_sym = self.test("C5..C8: S symmetric", nskew);
        let is_skew = self.test("C5..C8: S skew", nsym);

        if !is_sym {
            let beta = -(st.phi() * &skew).trace() / two_n;
            let s5 = st.phi() * beta;
            let s8 = &skew - &s5;
            let n5 = self.size(&s5, &zero);
            let n8 = self.size(&s8, &zero);
            self.test("S = βφ, β = −tr(φS)/2n", n8);
            self.test("tr(φS) = 0", n5);
            self.leaf(5, &s5, &zero);
            self.leaf(8, &s8, &zero);
        }
        if !is_skew {
            let a = sym.trace() / two_n;
            let s6 = st.horizontal_projector() * a;
            let s7 = &sym - &s6;
            let n6 = self.size(&s6, &zero);
            let n7 = self.size(&s7, &zero);
            self.test("S = α(I − η⊗ξ), α = tr(S)/2n", n7);
            self.test("tr(S) = 0", n6);
            self.leaf(6, &s6, &zero);
            self.leaf(7, &s7, &zero);
        }
    }
}

/// Classifies the 𝒟₂⊕𝒟₃ component of `α` by the flowchart.
///
/// `tol` is relative to `‖α‖`. The 𝒟₁ part, if any, is reported through `horizontal_residual`.
pub fn flowchart_classify(alpha: &Tensor3, st: &Structure, tol: f64) -> FlowchartOutcome {
    let data = IntrinsicData::from_alpha_unchecked(alpha, st);
    let total = norm(alpha, st);
    let threshold = tol * total;
    let hpart = reconstruct_unchecked(&data.s, &data.p, st);
    let horizontal_residual = norm(&(alpha - &hpart), st);
    let mut w = Walker { st, threshold, branches: Vec::new(), norms: [0.0; 12] };
    if total > 0.0 {
        w.root(&data.s, &data.p);
    }
    let mut label = ClassSet::EMPTY;
    for i in 5..=12u8 {
        if w.norms[(i - 1) as usize] > threshold && total > 0.0 {
            label.insert(i);
        }
    }
    FlowchartOutcome {
        label,
        component_norms: w.norms,
        horizontal_residual,
        h_parallel: horizontal_residual <= threshold,
        branches: w.branches,
    }
}

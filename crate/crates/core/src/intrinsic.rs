//! Intrinsic endomorphisms `S`, `h`, `P` and the forms derived from them.

use crate::error::{AcmsError, Result};
use crate::space::{cv_residual, norm};
use crate::structure::Structure;
use crate::tensor::Tensor3;
use crate::DEFAULT_TOL;
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

/// The triple `(S, h, P)` read off a tensor of 𝒞(V).
#[derive(Clone, Debug)]
pub struct IntrinsicData {
    pub s: DMatrix<f64>,
    pub h: DMatrix<f64>,
    pub p: DMatrix<f64>,
}

impl IntrinsicData {
    pub fn from_alpha(alpha: &Tensor3, st: &Structure) -> Result<Self> {
        let s = extract_s(alpha, st)?;
        let p = extract_p(alpha, st)?;
        let h = extract_h(&s, &p, st);
        Ok(Self { s, h, p })
    }

    pub(crate) fn from_alpha_unchecked(alpha: &Tensor3, st: &Structure) -> Self {
        let s = s_matrix(alpha, st);
        let p = p_matrix(alpha, st);
        let h = extract_h(&s, &p, st);
        Self { s, h, p }
    }
}

fn check_cv(alpha: &Tensor3, st: &Structure) -> Result<()> {
    if alpha.dim() != st.dim() {
        return Err(AcmsError::Dimension(format!("tensor dimension {} vs structure {}", alpha.dim(), st.dim())));
    }
    let residual = cv_residual(alpha, st);
    if residual > DEFAULT_TOL * (1.0 + norm(alpha, st)) {
        return Err(AcmsError::NotInCv { residual });
    }
    Ok(())
}

/// `g(SX, Z) = α(X, ξ, Z)`.
pub fn extract_s(alpha: &Tensor3, st: &Structure) -> Result<DMatrix<f64>> {
    check_cv(alpha, st)?;
    Ok(s_matrix(alpha, st))
}

/// `g(PY, Z) = α(ξ, Y, Z)`.
pub fn extract_p(alpha: &Tensor3, st: &Structure) -> Result<DMatrix<f64>> {
    check_cv(alpha, st)?;
    Ok(p_matrix(alpha, st))
}

pub(crate) fn s_matrix(alpha: &Tensor3, st: &Structure) -> DMatrix<f64> {
    st.raise(&alpha.contract(1, st.xi()))
}

pub(crate) fn p_matrix(alpha: &Tensor3, st: &Structure) -> DMatrix<f64> {
    st.raise(&alpha.contract(0, st.xi()))
}

/// `h = (S + φSφ − P) / 2`.
pub fn extract_h(s: &DMatrix<f64>, p: &DMatrix<f64>, st: &Structure) -> DMatrix<f64> {
    (s + st.phi() * s * st.phi() - p) * 0.5
}

/// `P = −2h + φSφ + S`.
pub fn p_from_s_h(s: &DMatrix<f64>, h: &DMatrix<f64>, st: &Structure) -> DMatrix<f64> {
    h * -2.0 + st.phi() * s * st.phi() + s
}

/// Residuals of the admissibility conditions on `(S, P)`.
#[derive(Clone, Debug, Serialize)]
pub struct Admissibility {
    pub eta_s: f64,
    pub p_skew: f64,
    pub p_xi_minus_s_xi: f64,
    pub p_horizontal_invariant_part: f64,
}

impl Admissibility {
    pub fn max(&self) -> f64 {
        self.eta_s.max(self.p_skew).max(self.p_xi_minus_s_xi).max(self.p_horizontal_invariant_part)
    }
}

pub fn admissibility(s: &DMatrix<f64>, p: &DMatrix<f64>, st: &Structure) -> Admissibility {
    let pf = st.lower(p);
    let pi = st.horizontal_projector();
    let ph = pi.transpose() * &pf * &pi;
    let invariant = (&ph + st.phi().transpose() * &ph * st.phi()) * 0.5;
    Admissibility {
        eta_s: (st.eta().transpose() * s).norm(),
        p_skew: st.form_norm(&(&pf + pf.transpose())),
        p_xi_minus_s_xi: (st.g() * (p * st.xi() - s * st.xi())).norm(),
        p_horizontal_invariant_part: st.form_norm(&invariant),
    }
}

/// `α(X,Y,Z) = −η(X) g(PφY, φZ) + η(Y) g(SX, Z) − η(Z) g(SX, Y)`.
///
/// Rejects `(S, P)` unless `η∘S = 0`, `P` is skew, `Pξ = Sξ` and `P|_𝓗` is φ-anti-invariant.
pub fn reconstruct_h_parallel(s: &DMatrix<f64>, p: &DMatrix<f64>, st: &Structure) -> Result<Tensor3> {
    let dim = st.dim();
    if s.shape() != (dim, dim) || p.shape() != (dim, dim) {
        return Err(AcmsError::Dimension("S and P must be square of the structure's dimension".into()));
    }
    let adm = admissibility(s, p, st);
    let scale = 1.0 + st.endo_norm(s) + st.endo_norm(p);
    if adm.max() > DEFAULT_TOL * scale {
        return Err(AcmsError::Inconsistent(format!(
            "η∘S {:.2e}, P+Pᵀ {:.2e}, Pξ−Sξ {:.2e}, u(n) part of P {:.2e}",
            adm.eta_s, adm.p_skew, adm.p_xi_minus_s_xi, adm.p_horizontal_invariant_part
        )));
    }
    Ok(reconstruct_unchecked(s, p, st))
}

pub(crate) fn reconstruct_unchecked(s: &DMatrix<f64>, p: &DMatrix<f64>, st: &Structure) -> Tensor3 {
    let phi = st.phi();
    let q = phi.transpose() * p.transpose() * st.g() * phi;
    let b = st.lower(s);
    let eta = st.eta();
    Tensor3::from_fn(st.dim(), |x, y, z| -eta[x] * q[(y, z)] + eta[y] * b[(x, z)] - eta[z] * b[(x, y)])
}

/// A boolean test together with the residual that decided it.
#[derive(Clone, Copy, Debug, Serialize, PartialEq)]
pub struct Flag {
    pub holds: bool,
    pub residual: f64,
}

impl Flag {
    pub fn new(residual: f64, threshold: f64) -> Self {
        Self { holds: residual <= threshold, residual }
    }
}

/// Algebraic profile of an endomorphism, as used by the classification flowchart.
#[derive(Clone, Debug, Serialize)]
pub struct EndoProfile {
    pub is_symmetric: Flag,
    pub is_skew: Flag,
    pub commutes_phi: Flag,
    pub anticommutes_phi: Flag,
    pub vanishes_on_h: Flag,
    pub kills_xi: Flag,
    pub trace: f64,
    pub trace_phi_composed: f64,
}

pub fn endo_profile(e: &DMatrix<f64>, st: &Structure) -> EndoProfile {
    endo_profile_with(e, st, DEFAULT_TOL)
}

pub fn endo_profile_with(e: &DMatrix<f64>, st: &Structure, tol: f64) -> EndoProfile {
    let thr = tol * (1.0 + st.endo_norm(e));
    let adj = st.adjoint(e);
    let phi = st.phi();
    EndoProfile {
        is_symmetric: Flag::new(st.endo_norm(&(e - &adj)), thr),
        is_skew: Flag::new(st.endo_norm(&(e + &adj)), thr),
        commutes_phi: Flag::new(st.endo_norm(&(e * phi - phi * e)), thr),
        anticommutes_phi: Flag::new(st.endo_norm(&(e * phi + phi * e)), thr),
        vanishes_on_h: Flag::new(st.endo_norm(&(e * st.horizontal_projector())), thr),
        kills_xi: Flag::new((st.g() * (e * st.xi())).dot(&(e * st.xi())).max(0.0).sqrt(), thr),
        trace: e.trace(),
        trace_phi_composed: (phi * e).trace(),
    }
}

/// `dη(X,Y) = g(X, φSY) − g(φSX, Y)`.
pub fn d_eta_from_s(s: &DMatrix<f64>, st: &Structure) -> DMatrix<f64> {
    let m = st.g() * st.phi() * s;
    &m - m.transpose()
}

/// `(∇_X η)(Y) = g(SX, φY)`.
pub fn nabla_eta_from_s(s: &DMatrix<f64>, st: &Structure) -> DMatrix<f64> {
    st.lower(s) * st.phi()
}

/// `∇_X ξ = −φSX`.
pub fn nabla_xi_from_s(s: &DMatrix<f64>, st: &Structure) -> DMatrix<f64> {
    -(st.phi() * s)
}

/// `dΦ`, the cyclic sum of `α`.
pub fn d_phi_from_alpha(alpha: &Tensor3) -> Tensor3 {
    alpha.cyclic_sum()
}

/// `N_φ(X,Y,Z) = g(N_φ(X,Y), Z)` from `α`, with `g((∇_Xφ)Y, Z) = −α(X,Y,Z)` and `∇ξ = −φS`.
pub fn nijenhuis_from_alpha(alpha: &Tensor3, st: &Structure) -> Tensor3 {
    let phi = st.phi();
    let a1 = alpha.apply(1, phi);
    let a0 = alpha.apply(0, phi);
    let s = s_matrix(alpha, st);
    let w = st.lower(&(phi * &s));
    let eta = st.eta();
    Tensor3::from_fn(st.dim(), |x, y, z| {
        -a1[(x, y, z)] + a1[(y, x, z)] - a0[(x, y, z)] + a0[(y, x, z)] - eta[x] * w[(y, z)]
            + eta[y] * w[(x, z)]
    })
}

/// `(δη, δΦ)` with `δη = tr(φS)` and `δΦ(Z) = −Σ α(e_i, e_i, Z)`.
pub fn codifferentials(alpha: &Tensor3, st: &Structure) -> (f64, DVector<f64>) {
    let s = s_matrix(alpha, st);
    let delta_eta = (st.phi() * s).trace();
    let gi = st.g_inv();
    let dim = st.dim();
    let delta_phi = DVector::from_fn(dim, |z, _| {
        let mut acc = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                acc += gi[(i, j)] * alpha[(i, j, z)];
            }
        }
        -acc
    });
    (delta_eta, delta_phi)
}

/// Closed form `δΦ(Z) = η(Z) tr S − g(Sξ, Z)`, valid on 𝒟₂⊕𝒟₃.
pub fn delta_phi_h_parallel(s: &DMatrix<f64>, st: &Structure) -> DVector<f64> {
    st.eta() * s.trace() - st.g() * (s * st.xi())
}

/// Part of `α` vanishing whenever `ξ` is inserted, i.e. the 𝒟₁ component.
pub fn d1_part(alpha: &Tensor3, st: &Structure) -> Tensor3 {
    let data = IntrinsicData::from_alpha_unchecked(alpha, st);
    alpha - &reconstruct_unchecked(&data.s, &data.p, st)
}

/// Largest value of `α` on horizontal triples, measured in an adapted frame.
pub fn horizontal_norm(alpha: &Tensor3, st: &Structure) -> f64 {
    let fr = st.adapted_frame();
    let a = fr.to_frame(alpha);
    let h = 2 * st.n();
    let mut acc = 0.0;
    for i in 0..h {
        for j in 0..h {
            for k in 0..h {
                acc += a[(i, j, k)].powi(2);
            }
        }
    }
    acc.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_admissible_sp, random_cv, rng};
    use crate::structure::{canonical_structure, random_structure};

    fn close(a: &DMatrix<f64>, b: &DMatrix<f64>) -> bool {
        (a - b).norm() < 1e-9 * (1.0 + a.norm())
    }

    #[test]
    fn zero_tensor_gives_zero_data() {
        let st = canonical_structure(2);
        let d = IntrinsicData::from_alpha(&Tensor3::zeros(5), &st).unwrap();
        assert_eq!(d.s.norm() + d.p.norm() + d.h.norm(), 0.0);
        let (de, dp) = codifferentials(&Tensor3::zeros(5), &st);
        assert_eq!(de, 0.0);
        assert_eq!(dp.norm(), 0.0);
    }

    #[test]
    fn non_cv_input_is_rejected() {
        let st = canonical_structure(1);
        let bad = Tensor3::unit(3, 0, 0, 0);
        assert!(matches!(extract_s(&bad, &st), Err(AcmsError::NotInCv { .. })));
    }

    #[test]
    fn round_trip_and_horizontal_vanishing() {
        for seed in 0..10 {
            let st = random_structure(2, seed);
            let (s, p) = random_admissible_sp(&st, &mut rng(seed + 100));
            let alpha = reconstruct_h_parallel(&s, &p, &st).unwrap();
            assert!(cv_residual(&alpha, &st) < 1e-9);
            assert!(close(&extract_s(&alpha, &st).unwrap(), &s));
            assert!(close(&extract_p(&alpha, &st).unwrap(), &p));
            assert!(horizontal_norm(&alpha, &st) < 1e-9);
        }
    }

    #[test]
    fn inconsistent_pair_is_rejected() {
        let st = canonical_structure(2);
        let s = st.horizontal_projector() * st.xi() * st.eta().transpose();
        let mut s2 = DMatrix::zeros(5, 5);
        s2[(0, 4)] = 1.0;
        assert!(reconstruct_h_parallel(&s2, &DMatrix::zeros(5, 5), &st).is_err());
        assert!(reconstruct_h_parallel(&s, &DMatrix::zeros(5, 5), &st).is_ok());
    }

    #[test]
    fn extract_h_remark_cases() {
        let st = canonical_structure(2);
        let z = DMatrix::zeros(5, 5);
        assert_eq!(extract_h(&z, &z, &st).norm(), 0.0);
        // h0 skew, anticommuting with φ.
        let mut h0 = DMatrix::zeros(5, 5);
        h0[(0, 1)] = 1.0;
        h0[(1, 0)] = -1.0;
        h0[(2, 3)] = -1.0;
        h0[(3, 2)] = 1.0;
        assert!((&h0 * st.phi() + st.phi() * &h0).norm() < 1e-12);
        let h = extract_h(&z, &(&h0 * -2.0), &st);
        assert!(close(&h, &h0));
    }

    #[test]
    fn profiles_of_standard_endomorphisms() {
        let st = canonical_structure(2);
        let p = endo_profile(st.phi(), &st);
        assert!(p.is_skew.holds && p.commutes_phi.holds && !p.anticommutes_phi.holds);
        assert_eq!(p.trace, 0.0);
        assert_eq!(p.trace_phi_composed, -4.0);
        let q = endo_profile(&st.horizontal_projector(), &st);
        assert!(q.is_symmetric.holds && q.commutes_phi.holds);
        assert_eq!(q.trace, 4.0);
    }

    #[test]
    fn d_eta_of_model_endomorphisms() {
        let st = random_structure(2, 4);
        let beta = 1.7;
        assert!(d_eta_from_s(&(st.phi() * beta), &st).norm() < 1e-10);
        let s = st.horizontal_projector() * beta;
        assert!(close(&d_eta_from_s(&s, &st), &(st.fundamental_form() * (2.0 * beta))));
        assert_eq!(d_eta_from_s(&DMatrix::zeros(5, 5), &st).norm(), 0.0);
    }

    #[test]
    fn d_eta_xi_row_consistency() {
        let st = random_structure(2, 12);
        let (s, _) = random_admissible_sp(&st, &mut rng(3));
        let de = d_eta_from_s(&s, &st);
        let lhs = st.xi().transpose() * &de;
        let rhs = (st.g() * (&s * st.xi())).transpose() * st.phi();
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn h_parallel_forms_and_nijenhuis_identities() {
        for seed in 0..8 {
            let st = random_structure(2, seed + 20);
            let (s, p) = random_admissible_sp(&st, &mut rng(seed));
            let alpha = reconstruct_h_parallel(&s, &p, &st).unwrap();
            let d = IntrinsicData::from_alpha(&alpha, &st).unwrap();
            let fr = st.adapted_frame();
            let hn = 4;
            let dphi = fr.to_frame(&d_phi_from_alpha(&alpha));
            let nij = nijenhuis_from_alpha(&alpha, &st);
            let nf = fr.to_frame(&nij);
            for i in 0..hn {
                for j in 0..hn {
                    for k in 0..hn {
                        assert!(dphi[(i, j, k)].abs() < 1e-9);
                        assert!(nf[(i, j, k)].abs() < 1e-9);
                    }
                }
            }
            // dΦ(ξ,X,Y) = g(PX,Y) + g(X,SY) − g(SX,Y)
            let dp = d_phi_from_alpha(&alpha).contract(0, st.xi());
            let expect = st.lower(&d.p) + st.lower(&d.s).transpose() - st.lower(&d.s);
            assert!(close(&dp, &expect));
            // N1 and N2
            let c = &d.s * st.phi() - st.phi() * &d.s;
            let n1 = st.lower(&c) - st.lower(&c).transpose();
            assert!(close(&nij.contract(2, st.xi()), &n1));
            let sxi = st.g() * (&d.s * st.xi());
            let phi_x = sxi.transpose() * st.phi();
            let n2 = st.lower(&(st.phi() * &d.h)) * 2.0 - (phi_x.transpose() * st.eta().transpose());
            assert!(close(&nij.contract(1, st.xi()), &n2));
            // codifferentials
            let (de, dphi_vec) = codifferentials(&alpha, &st);
            assert!((de - (st.phi() * &d.s).trace()).abs() < 1e-9);
            assert!((dphi_vec - delta_phi_h_parallel(&d.s, &st)).norm() < 1e-9);
        }
    }

    #[test]
    fn codifferentials_of_model_classes() {
        let st = canonical_structure(2);
        let z = DMatrix::zeros(5, 5);
        let a0 = 0.8;
        let alpha = reconstruct_h_parallel(&(st.horizontal_projector() * a0), &z, &st).unwrap();
        let (de, dp) = codifferentials(&alpha, &st);
        assert!(de.abs() < 1e-12);
        assert!((dp.dot(st.xi()) - 4.0 * a0).abs() < 1e-12);
        let beta = 0.3;
        let alpha = reconstruct_h_parallel(&(st.phi() * beta), &z, &st).unwrap();
        assert!((codifferentials(&alpha, &st).0 + 4.0 * beta).abs() < 1e-12);
    }

    #[test]
    fn linearity_of_extraction() {
        let st = random_structure(2, 40);
        let a = random_cv(&st, 1);
        let b = random_cv(&st, 2);
        let c = &a * 2.5 + &b * -0.5;
        let (da, db, dc) = (
            IntrinsicData::from_alpha(&a, &st).unwrap(),
            IntrinsicData::from_alpha(&b, &st).unwrap(),
            IntrinsicData::from_alpha(&c, &st).unwrap(),
        );
        assert!(close(&dc.s, &(&da.s * 2.5 - &db.s * 0.5)));
        assert!(close(&dc.p, &(&da.p * 2.5 - &db.p * 0.5)));
        assert!(close(&dc.h, &(&da.h * 2.5 - &db.h * 0.5)));
    }

    #[test]
    fn d1_criterion() {
        let st = random_structure(3, 2);
        let a = random_cv(&st, 5);
        let d1 = d1_part(&a, &st);
        let d = IntrinsicData::from_alpha(&d1, &st).unwrap();
        assert!(d.s.norm() < 1e-9 && d.p.norm() < 1e-9 && d.h.norm() < 1e-9);
    }

    #[test]
    fn intrinsic_invariants_on_random_tensors() {
        let st = random_structure(2, 9);
        let a = random_cv(&st, 11);
        let d = IntrinsicData::from_alpha(&a, &st).unwrap();
        assert!((st.eta().transpose() * &d.s).norm() < 1e-9);
        assert!((&d.h * st.xi()).norm() < 1e-9);
        assert!(st.endo_norm(&(&d.p + st.adjoint(&d.p))) < 1e-9);
        assert!((&d.p * st.xi() - &d.s * st.xi()).norm() < 1e-9);
        assert!(close(&p_from_s_h(&d.s, &d.h, &st), &d.p));
    }
}

//! Point-level tensors with prescribed intrinsic data.

use crate::classify::{class_subspace, ClassLabel};
use crate::intrinsic::reconstruct_h_parallel;
use crate::sampling::{gaussian, gaussian_matrix, rng};
use crate::structure::Structure;
use crate::tensor::Tensor3;
use nalgebra::DMatrix;
use rand_chacha::ChaCha8Rng;

fn horizontal_anticommuting(st: &Structure, g: &mut ChaCha8Rng, symmetric: bool) -> DMatrix<f64> {
    let dim = st.dim();
    let pi = st.horizontal_projector();
    let m = &pi * gaussian_matrix(g, dim, dim) * &pi;
    let adj = st.adjoint(&m);
    let m = if symmetric { (&m + adj) * 0.5 } else { (&m - adj) * 0.5 };
    let phi = st.phi();
    let out = (&m + phi * &m * phi) * 0.5;
    let scale = st.endo_norm(&out).max(1e-12);
    out / scale
}

/// Unit-norm symmetric `h₀` on 𝓗 with `h₀φ = −φh₀`, `h₀ξ = 0`.
pub fn symmetric_anticommuting(st: &Structure, seed: u64) -> DMatrix<f64> {
    horizontal_anticommuting(st, &mut rng(seed), true)
}

/// Unit-norm skew `h₀` on 𝓗 with `h₀φ = −φh₀`, `h₀ξ = 0`.
pub fn skew_anticommuting(st: &Structure, seed: u64) -> DMatrix<f64> {
    horizontal_anticommuting(st, &mut rng(seed), false)
}

fn random_element(label: ClassLabel, st: &Structure, seed: u64) -> Tensor3 {
    let mut g = rng(seed);
    let mut out = Tensor3::zeros(st.dim());
    for b in &class_subspace(label, st).basis {
        out.axpy(gaussian(&mut g), b);
    }
    out
}

/// `S = −φ² + ⅔h₀`, `P = −⅔h₀` with `h₀` skew and anticommuting, plus a random 𝒞₁ part.
pub fn nearly_sasakian_tensor(st: &Structure, seed: u64) -> Tensor3 {
    let h0 = skew_anticommuting(st, seed);
    let phi = st.phi();
    let s = -(phi * phi) + &h0 * (2.0 / 3.0);
    let p = &h0 * (-2.0 / 3.0);
    let hp = reconstruct_h_parallel(&s, &p, st).expect("nearly Sasakian data is admissible");
    hp + random_element(ClassLabel::irreducible(1), st, seed ^ 0x5eed)
}

/// `S = ⅔h₀`, `P = −⅔h₀` with `h₀` skew and anticommuting, plus a random 𝒞₁ part.
pub fn nearly_cosymplectic_tensor(st: &Structure, seed: u64) -> Tensor3 {
    let h0 = skew_anticommuting(st, seed);
    let s = &h0 * (2.0 / 3.0);
    let p = &h0 * (-2.0 / 3.0);
    let hp = reconstruct_h_parallel(&s, &p, st).expect("nearly cosymplectic data is admissible");
    hp + random_element(ClassLabel::irreducible(1), st, seed ^ 0x5eed)
}

/// `S = h₀` symmetric and anticommuting, `P = 0`: a pure 𝒞₉ tensor.
pub fn c9_tensor(st: &Structure, seed: u64) -> Tensor3 {
    let s = symmetric_anticommuting(st, seed);
    reconstruct_h_parallel(&s, &DMatrix::zeros(st.dim(), st.dim()), st).expect("admissible")
}

/// `S` skew and anticommuting, `P = −2S`: an element of 𝒞_min.
pub fn cmin_tensor(st: &Structure, seed: u64) -> Tensor3 {
    let s = skew_anticommuting(st, seed);
    let p = &s * -2.0;
    reconstruct_h_parallel(&s, &p, st).expect("admissible")
}

/// The three families with `h = h₀`: contact metric, almost cokähler and almost Kenmotsu.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThreeClasses {
    ContactMetric,
    AlmostCokahler,
    AlmostKenmotsu,
}

impl ThreeClasses {
    pub const ALL: [ThreeClasses; 3] = [Self::ContactMetric, Self::AlmostCokahler, Self::AlmostKenmotsu];

    /// `S = −φ² + h₀`, `h₀` or `φ + h₀`.
    pub fn s(self, h0: &DMatrix<f64>, st: &Structure) -> DMatrix<f64> {
        let phi = st.phi();
        match self {
            Self::ContactMetric => -(phi * phi) + h0,
            Self::AlmostCokahler => h0.clone(),
            Self::AlmostKenmotsu => phi + h0,
        }
    }

    /// `∇ξ` expected for the family: `−φ − φh₀`, `−φh₀`, `−φ² − φh₀`.
    pub fn expected_nabla_xi(self, h0: &DMatrix<f64>, st: &Structure) -> DMatrix<f64> {
        let phi = st.phi();
        let base = match self {
            Self::ContactMetric => -phi.clone(),
            Self::AlmostCokahler => DMatrix::zeros(st.dim(), st.dim()),
            Self::AlmostKenmotsu => -(phi * phi),
        };
        base - phi * h0
    }

    /// The 𝓗-parallel tensor with `h = h₀`.
    pub fn tensor(self, h0: &DMatrix<f64>, st: &Structure) -> Tensor3 {
        let s = self.s(h0, st);
        let p = crate::intrinsic::p_from_s_h(&s, h0, st);
        reconstruct_h_parallel(&s, &p, st).expect("admissible")
    }
}

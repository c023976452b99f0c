//! Seeded random generators for tensors, endomorphisms and test data.

use crate::space::cv_project;
use crate::structure::Structure;
use crate::tensor::Tensor3;
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

pub fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn gaussian_tensor(rng: &mut ChaCha8Rng, dim: usize) -> Tensor3 {
    Tensor3::from_fn(dim, |_, _, _| gaussian(rng))
}

/// Unconstrained Gaussian tensor.
pub fn random_tensor(dim: usize, seed: u64) -> Tensor3 {
    gaussian_tensor(&mut rng(seed), dim)
}

/// Random element of 𝒞(V).
pub fn random_cv(s: &Structure, seed: u64) -> Tensor3 {
    cv_project(&random_tensor(s.dim(), seed), s)
}

/// Random admissible pair `(S, P)`: `η∘S = 0`, `P` skew, `Pξ = Sξ`, `P|_𝓗` φ-anti-invariant.
pub fn random_admissible_sp(s: &Structure, rng: &mut ChaCha8Rng) -> (DMatrix<f64>, DMatrix<f64>) {
    let dim = s.dim();
    let pi = s.horizontal_projector();
    let endo = pi.clone() * gaussian_matrix(rng, dim, dim);
    let v = &endo * s.xi();
    // Horizontal part of P in the anti-invariant complement of u(n).
    let b = gaussian_matrix(rng, dim, dim);
    let b = pi.transpose() * (&b - b.transpose()) * &pi;
    let anti = (&b - s.phi().transpose() * &b * s.phi()) * 0.5;
    let vlow = s.g() * &v;
    let with_xi = &vlow * s.eta().transpose() - s.eta() * vlow.transpose();
    // Rows: g(PY, Z) = anti + η(Y) g(v, Z) − η(Z) g(v, Y).
    let p_form = anti + with_xi.transpose();
    (endo, s.raise(&p_form))
}

//! Point-level almost contact metric structures.

use crate::error::{AcmsError, Result};
use crate::DEFAULT_TOL;
use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

/// The tensors `(φ, ξ, η, g)` on a `(2n+1)`-dimensional space, all written in one ambient basis.
///
/// Endomorphisms act on column vectors: `φ e_j = Σ_i phi[(i,j)] e_i`.
#[derive(Clone, Debug)]
pub struct Structure {
    n: usize,
    g: DMatrix<f64>,
    g_inv: DMatrix<f64>,
    phi: DMatrix<f64>,
    xi: DVector<f64>,
    eta: DVector<f64>,
}

impl Structure {
    /// Assembles a structure; `eta` defaults to `g(·, ξ)`.
    pub fn new(
        n: usize,
        g: DMatrix<f64>,
        phi: DMatrix<f64>,
        xi: DVector<f64>,
        eta: Option<DVector<f64>>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(AcmsError::Dimension("n must be at least 1".into()));
        }
        let dim = 2 * n + 1;
        let shape_ok = g.shape() == (dim, dim)
            && phi.shape() == (dim, dim)
            && xi.len() == dim
            && eta.as_ref().is_none_or(|e| e.len() == dim);
        if !shape_ok {
            return Err(AcmsError::Dimension(format!("expected {dim}x{dim} tensors for n = {n}")));
        }
        let g_inv = g
            .clone()
            .try_inverse()
            .ok_or_else(|| AcmsError::InvalidStructure("metric is singular".into()))?;
        let eta = eta.unwrap_or_else(|| &g * &xi);
        Ok(Self { n, g, g_inv, phi, xi, eta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Real dimension `2n+1`.
    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    pub fn g(&self) -> &DMatrix<f64> {
        &self.g
    }

    pub fn g_inv(&self) -> &DMatrix<f64> {
        &self.g_inv
    }

    pub fn phi(&self) -> &DMatrix<f64> {
        &self.phi
    }

    pub fn xi(&self) -> &DVector<f64> {
        &self.xi
    }

    pub fn eta(&self) -> &DVector<f64> {
        &self.eta
    }

    /// Returns a copy with `φ` replaced, keeping everything else.
    pub fn with_phi(&self, phi: DMatrix<f64>) -> Self {
        Self { phi, ..self.clone() }
    }

    /// `X ↦ X − η(X)ξ`, the projection onto the horizontal space.
    pub fn horizontal_projector(&self) -> DMatrix<f64> {
        DMatrix::identity(self.dim(), self.dim()) - &self.xi * self.eta.transpose()
    }

    /// `g`-adjoint `E* = g⁻¹ Eᵀ g`.
    pub fn adjoint(&self, e: &DMatrix<f64>) -> DMatrix<f64> {
        &self.g_inv * e.transpose() * &self.g
    }

    /// Matrix of the bilinear form `(X, Z) ↦ g(E X, Z)`.
    pub fn lower(&self, e: &DMatrix<f64>) -> DMatrix<f64> {
        e.transpose() * &self.g
    }

    /// Endomorphism `E` with `g(E X, Z) = b(X, Z)`.
    pub fn raise(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        &self.g_inv * b.transpose()
    }

    /// `g`-norm of an endomorphism, `sqrt(tr(Eᵀ g E g⁻¹))`.
    pub fn endo_norm(&self, e: &DMatrix<f64>) -> f64 {
        (e.transpose() * &self.g * e * &self.g_inv).trace().max(0.0).sqrt()
    }

    /// `g`-norm of a bilinear form, `sqrt(tr(g⁻¹ B g⁻¹ Bᵀ))`.
    pub fn form_norm(&self, b: &DMatrix<f64>) -> f64 {
        (&self.g_inv * b * &self.g_inv * b.transpose()).trace().max(0.0).sqrt()
    }

    /// `Φ(X,Y) = g(X, φY)`.
    pub fn fundamental_form(&self) -> DMatrix<f64> {
        &self.g * &self.phi
    }

    /// An adapted orthonormal frame `{f_1..f_n, φf_1..φf_n, ξ}`.
    pub fn adapted_frame(&self) -> Frame {
        Frame::adapted(self)
    }
}

/// The standard model: `g = I`, `φe_i = e_{n+i}`, `φe_{n+i} = −e_i`, `ξ = e_{2n+1}`.
pub fn canonical_structure(n: usize) -> Structure {
    assert!(n >= 1, "n must be at least 1");
    let dim = 2 * n + 1;
    Structure::new(n, DMatrix::identity(dim, dim), canonical_phi(n), DVector::from_fn(dim, |i, _| f64::from(i == 2 * n)), None)
        .expect("canonical model is well formed")
}

pub(crate) fn canonical_phi(n: usize) -> DMatrix<f64> {
    let dim = 2 * n + 1;
    let mut phi = DMatrix::zeros(dim, dim);
    for i in 0..n {
        phi[(n + i, i)] = 1.0;
        phi[(i, n + i)] = -1.0;
    }
    phi
}

/// Structure whose adapted orthonormal frame is given by the columns of `f`.
pub fn structure_from_frame(n: usize, f: &DMatrix<f64>) -> Result<Structure> {
    let dim = 2 * n + 1;
    let f_inv = f.clone().try_inverse().ok_or_else(|| AcmsError::InvalidStructure("frame is singular".into()))?;
    let g = f_inv.transpose() * &f_inv;
    let g = (&g + g.transpose()) * 0.5;
    let phi = f * canonical_phi(n) * &f_inv;
    let xi = f.column(dim - 1).into_owned();
    let eta = f_inv.row(dim - 1).transpose();
    Structure::new(n, g, phi, xi, Some(eta))
}

/// A deterministic non-canonical structure: the canonical model with a random compatible metric,
/// conjugated by a random orthogonal map.
pub fn random_structure(n: usize, seed: u64) -> Structure {
    let dim = 2 * n + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gauss = |rng: &mut ChaCha8Rng, r: usize, c: usize| {
        DMatrix::from_fn(r, c, |_, _| StandardNormal.sample(&mut *rng))
    };
    let phi0 = canonical_phi(n);
    let mut pi = DMatrix::<f64>::identity(dim, dim);
    pi[(dim - 1, dim - 1)] = 0.0;

    // φ-invariant positive map on the horizontal space, identity on ξ.
    let m: DMatrix<f64> = &pi * gauss(&mut rng, dim, dim) * &pi;
    let mc = (&m - &phi0 * &m * &phi0) * 0.5;
    let k = mc.transpose() * &mc;
    let scale = k.norm().max(1e-12);
    let p = DMatrix::identity(dim, dim) + k * (0.8 / scale);

    let q = gauss(&mut rng, dim, dim).qr().q();
    structure_from_frame(n, &(q * p)).expect("random frame is invertible")
}

/// Change of basis to an adapted orthonormal frame.
#[derive(Clone, Debug)]
pub struct Frame {
    /// Columns are the frame vectors in ambient coordinates.
    pub f: DMatrix<f64>,
    pub f_inv: DMatrix<f64>,
}

impl Frame {
    pub fn adapted(s: &Structure) -> Self {
        let n = s.n();
        let dim = s.dim();
        let g = s.g();
        let ip = |u: &DVector<f64>, v: &DVector<f64>| (u.transpose() * g * v)[(0, 0)];
        let mut found: Vec<DVector<f64>> = vec![s.xi().clone() / ip(s.xi(), s.xi()).sqrt()];
        let mut us = Vec::with_capacity(n);
        for _ in 0..n {
            // Greedy choice of the best-conditioned remaining candidate.
            let mut best: Option<(f64, DVector<f64>)> = None;
            for c in 0..dim {
                let mut v = DVector::from_fn(dim, |i, _| f64::from(i == c));
                for _ in 0..2 {
                    for w in &found {
                        let coef = ip(w, &v);
                        v -= w * coef;
                    }
                }
                let nv = ip(&v, &v).max(0.0).sqrt();
                if best.as_ref().is_none_or(|(b, _)| nv > *b) {
                    best = Some((nv, v));
                }
            }
            let (nv, v) = best.expect("dimension is positive");
            let u = v / nv;
            let pu = s.phi() * &u;
            found.push(u.clone());
            found.push(pu);
            us.push(u);
        }
        let mut f = DMatrix::zeros(dim, dim);
        for (a, u) in us.iter().enumerate() {
            f.set_column(a, u);
            f.set_column(n + a, &(s.phi() * u));
        }
        f.set_column(dim - 1, &found[0]);
        let f_inv = f.clone().try_inverse().expect("adapted frame is invertible");
        Self { f, f_inv }
    }

    /// Tensor components in the frame.
    pub fn to_frame(&self, t: &crate::Tensor3) -> crate::Tensor3 {
        t.transform(&self.f)
    }

    /// Ambient components of a tensor given in the frame.
    pub fn from_frame(&self, t: &crate::Tensor3) -> crate::Tensor3 {
        t.transform(&self.f_inv)
    }

    /// Endomorphism written in the frame, `F⁻¹ E F`.
    pub fn endo_to_frame(&self, e: &DMatrix<f64>) -> DMatrix<f64> {
        &self.f_inv * e * &self.f
    }
}

/// One failed identity of [`validate_structure`].
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub identity: String,
    pub residual: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub metric_positive_definite: bool,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty() && self.metric_positive_definite
    }

    pub fn mentions(&self, identity: &str) -> bool {
        self.violations.iter().any(|v| v.identity.contains(identity))
    }
}

/// Checks the almost contact metric axioms with the default tolerance.
pub fn validate_structure(s: &Structure) -> ValidationReport {
    validate_structure_with(s, DEFAULT_TOL)
}

pub fn validate_structure_with(s: &Structure, tol: f64) -> ValidationReport {
    let dim = s.dim();
    let id = DMatrix::<f64>::identity(dim, dim);
    let (g, phi, xi, eta) = (s.g(), s.phi(), s.xi(), s.eta());
    let scale = 1.0 + g.norm() + phi.norm() + xi.norm() + eta.norm();
    let xi_eta = xi * eta.transpose();
    let eta_eta = eta * eta.transpose();

    let checks: Vec<(&str, f64)> = vec![
        ("φ² = −I + η⊗ξ", (phi * phi + &id - &xi_eta).norm()),
        ("η(ξ) = 1", (eta.dot(xi) - 1.0).abs()),
        ("φξ = 0", (phi * xi).norm()),
        ("η∘φ = 0", (eta.transpose() * phi).norm()),
        ("g(φX,φY) = g(X,Y) − η(X)η(Y)", (phi.transpose() * g * phi - g + &eta_eta).norm()),
        ("η = g(·,ξ)", (g * xi - eta).norm()),
        ("‖ξ‖ = 1", ((xi.transpose() * g * xi)[(0, 0)] - 1.0).abs()),
        ("g symmetric", (g - g.transpose()).norm()),
    ];
    let violations = checks
        .into_iter()
        .filter(|(_, r)| *r > tol * scale)
        .map(|(identity, residual)| Violation { identity: identity.to_string(), residual })
        .collect();
    let sym = (g + g.transpose()) * 0.5;
    let metric_positive_definite = sym.symmetric_eigen().eigenvalues.iter().all(|&l| l > 0.0);
    ValidationReport { violations, metric_positive_definite }
}

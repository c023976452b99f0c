//! Defining equations of the classes, written as linear residual maps `α ↦ r(α)`.
//!
//! A class is the set of `α ∈ 𝒞(V)` whose residual vanishes.

use crate::intrinsic::codifferentials;
use crate::structure::Structure;
use crate::tensor::Tensor3;
use nalgebra::DMatrix;

/// Shared contractions of `α` used by the class equations.
struct Parts<'a> {
    st: &'a Structure,
    /// `(X, Y) ↦ (∇_X η)(Y) = α(X, ξ, φY)`
    nabla_eta: DMatrix<f64>,
    delta_eta: f64,
    delta_phi: nalgebra::DVector<f64>,
}

impl<'a> Parts<'a> {
    fn new(alpha: &Tensor3, st: &'a Structure) -> Self {
        let nabla_eta = alpha.contract(1, st.xi()) * st.phi();
        let (delta_eta, delta_phi) = codifferentials(alpha, st);
        Self { st, nabla_eta, delta_eta, delta_phi }
    }

    fn dim(&self) -> usize {
        self.st.dim()
    }

    fn nf(&self) -> f64 {
        2.0 * self.st.n() as f64
    }

    /// `(X, Y, Z) ↦ ε₁ η(Z)(∇_Y η)(φX) + ε₂ η(Y)(∇_{φX} η)(Z)`
    fn eta_terms(&self, e1: f64, e2: f64) -> Tensor3 {
        let eta = self.st.eta();
        let a = &self.nabla_eta * self.st.phi();
        let b = self.st.phi().transpose() * &self.nabla_eta;
        Tensor3::from_fn(self.dim(), |x, y, z| e1 * eta[z] * a[(y, x)] + e2 * eta[y] * b[(x, z)])
    }
}

fn residual(alpha: &Tensor3, rhs: &Tensor3) -> Vec<f64> {
    (alpha - rhs).as_slice().to_vec()
}

/// Residual of the defining row of 𝒞ᵢ (`i` in 1..=12).
pub fn irreducible(i: u8, alpha: &Tensor3, st: &Structure) -> Vec<f64> {
    let p = Parts::new(alpha, st);
    let dim = st.dim();
    let eta = st.eta();
    let phi = st.phi();
    let g = st.g();
    let fund = st.fundamental_form();
    match i {
        1 => {
            let mut r = (alpha + &alpha.permute([1, 0, 2])).as_slice().to_vec();
            r.extend(p.nabla_eta.iter());
            r
        }
        2 => {
            let mut r = alpha.cyclic_sum().as_slice().to_vec();
            r.extend(p.nabla_eta.iter());
            r
        }
        3 => {
            let twisted = alpha.apply(0, phi).apply(1, phi);
            let mut r = residual(alpha, &twisted);
            r.extend(p.delta_phi.iter());
            r
        }
        4 => {
            if st.n() < 2 {
                return alpha.as_slice().to_vec();
            }
            let c = -1.0 / (2.0 * (st.n() as f64 - 1.0));
            let gpp = phi.transpose() * g * phi;
            let dphi = &p.delta_phi;
            let dphi_phi = phi.transpose() * dphi;
            let rhs = Tensor3::from_fn(dim, |x, y, z| {
                c * (gpp[(x, y)] * dphi[z] - gpp[(x, z)] * dphi[y] - fund[(x, y)] * dphi_phi[z]
                    + fund[(x, z)] * dphi_phi[y])
            });
            let mut r = residual(alpha, &rhs);
            r.push(dphi.dot(st.xi()));
            r
        }
        5 => {
            let k = p.delta_eta / p.nf();
            let rhs = Tensor3::from_fn(dim, |x, y, z| k * (eta[y] * fund[(x, z)] - eta[z] * fund[(x, y)]));
            residual(alpha, &rhs)
        }
        6 => {
            let k = p.delta_phi.dot(st.xi()) / p.nf();
            let rhs = Tensor3::from_fn(dim, |x, y, z| k * (eta[y] * g[(x, z)] - eta[z] * g[(x, y)]));
            residual(alpha, &rhs)
        }
        7 => {
            let mut r = residual(alpha, &p.eta_terms(1.0, 1.0));
            r.extend(p.delta_phi.iter());
            r
        }
        8 => {
            let mut r = residual(alpha, &p.eta_terms(-1.0, 1.0));
            r.push(p.delta_eta);
            r
        }
        9 => residual(alpha, &p.eta_terms(1.0, -1.0)),
        10 => residual(alpha, &p.eta_terms(-1.0, -1.0)),
        11 => {
            let pf = alpha.contract(0, st.xi());
            let twisted = phi.transpose() * pf * phi;
            let rhs = Tensor3::from_fn(dim, |x, y, z| -eta[x] * twisted[(y, z)]);
            residual(alpha, &rhs)
        }
        12 => {
            let w = st.xi().transpose() * &p.nabla_eta * phi;
            let rhs = Tensor3::from_fn(dim, |x, y, z| eta[x] * eta[z] * w[y] - eta[x] * eta[y] * w[z]);
            residual(alpha, &rhs)
        }
        _ => panic!("class index out of range"),
    }
}

/// Residuals of the 𝒟ᵢ rows (`i` in 1..=3).
pub fn d_class(i: u8, alpha: &Tensor3, st: &Structure) -> Vec<f64> {
    let xi = st.xi();
    let eta = st.eta();
    let a_xi_yz = alpha.contract(0, xi);
    let a_x_xi_z = alpha.contract(1, xi);
    let a_xy_xi = alpha.contract(2, xi);
    match i {
        1 => a_xi_yz.iter().chain(a_x_xi_z.iter()).copied().collect(),
        2 => {
            let rhs = Tensor3::from_fn(st.dim(), |x, y, z| {
                eta[x] * a_xi_yz[(y, z)] + eta[y] * a_x_xi_z[(x, z)] + eta[z] * a_xy_xi[(x, y)]
            });
            residual(alpha, &rhs)
        }
        3 => {
            let a_xi_xi_z = a_x_xi_z.transpose() * xi;
            let a_xi_y_xi = a_xy_xi.transpose() * xi;
            let rhs = Tensor3::from_fn(st.dim(), |x, y, z| {
                eta[x] * eta[y] * a_xi_xi_z[z] + eta[x] * eta[z] * a_xi_y_xi[y]
            });
            residual(alpha, &rhs)
        }
        _ => panic!("class index out of range"),
    }
}

/// `λP = μS`, meant to be solved inside 𝒞₁₀⊕𝒞₁₁.
pub fn lambda_mu(lambda: f64, mu: f64, alpha: &Tensor3, st: &Structure) -> Vec<f64> {
    let pf = alpha.contract(0, st.xi());
    let sf = alpha.contract(1, st.xi());
    (pf * lambda - sf * mu).iter().copied().collect()
}

/// Named sum-class formulas quoted alongside the flowchart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SumFormula {
    C9C10,
    C6C7,
    C5C8,
}

pub fn sum_formula(which: SumFormula, alpha: &Tensor3, st: &Structure) -> Vec<f64> {
    let phi = st.phi();
    let eta = st.eta();
    let a_x_xi_z = alpha.contract(1, st.xi());
    let a_xy_xi = alpha.contract(2, st.xi());
    let twisted = phi.transpose() * &a_x_xi_z * phi;
    let rhs = match which {
        SumFormula::C9C10 => {
            let t2 = phi.transpose() * &a_xy_xi * phi;
            Tensor3::from_fn(st.dim(), |x, y, z| -eta[y] * twisted[(x, z)] - eta[z] * t2[(x, y)])
        }
        SumFormula::C6C7 => {
            Tensor3::from_fn(st.dim(), |x, y, z| eta[y] * twisted[(x, z)] + eta[z] * a_xy_xi[(y, x)])
        }
        SumFormula::C5C8 => {
            Tensor3::from_fn(st.dim(), |x, y, z| eta[y] * twisted[(x, z)] - eta[z] * a_xy_xi[(y, x)])
        }
    };
    residual(alpha, &rhs)
}

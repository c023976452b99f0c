use crate::error::{AcmsError, Result};
use crate::structure::Structure;
use crate::tensor::Tensor3;
use crate::DEFAULT_TOL;
use nalgebra::{DMatrix, DVector};

use super::curvature::CurvatureTensor;

/// A Lie algebra `[e_i, e_j] = Σ_k c[i][j][k] e_k` with a left-invariant structure read at
/// the identity.
#[derive(Clone, Debug)]
pub struct LieAlgebraModel {
    constants: Tensor3,
    structure: Structure,
}

/// `∇_{e_i} e_j = Σ_k Γ[i][j][k] e_k`.
#[derive(Clone, Debug)]
pub struct ConnectionCoefficients {
    pub gamma: Tensor3,
}

impl ConnectionCoefficients {
    /// `∇_{e_i}` as an endomorphism acting on left-invariant fields.
    pub fn endo(&self, i: usize) -> DMatrix<f64> {
        self.gamma.slice(i).transpose()
    }

    pub fn from_endos(endos: &[DMatrix<f64>]) -> Self {
        let dim = endos.len();
        Self { gamma: Tensor3::from_fn(dim, |i, j, k| endos[i][(k, j)]) }
    }

    /// `max_i ‖g(∇_i X, Y) + g(X, ∇_i Y)‖`.
    pub fn metric_defect(&self, st: &Structure) -> f64 {
        (0..st.dim())
            .map(|i| {
                let l = st.lower(&self.endo(i));
                (&l + l.transpose()).norm()
            })
            .fold(0.0, f64::max)
    }

    /// `max_{i,j} ‖∇_i e_j − ∇_j e_i − [e_i, e_j]‖`.
    pub fn torsion_defect(&self, m: &LieAlgebraModel) -> f64 {
        let dim = m.dim();
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let r: f64 = (0..dim)
                    .map(|k| (self.gamma[(i, j, k)] - self.gamma[(j, i, k)] - m.constants[(i, j, k)]).powi(2))
                    .sum();
                worst = worst.max(r.sqrt());
            }
        }
        worst
    }
}

impl LieAlgebraModel {
    /// Validates antisymmetry and the Jacobi identity before accepting the constants.
    pub fn new(constants: Tensor3, structure: Structure) -> Result<Self> {
        if constants.dim() != structure.dim() {
            return Err(AcmsError::Dimension(format!(
                "structure constants of dimension {} vs structure {}",
                constants.dim(),
                structure.dim()
            )));
        }
        let scale = 1.0 + constants.frobenius().powi(2);
        let skew = (&constants + &constants.permute([1, 0, 2])).frobenius();
        if skew > DEFAULT_TOL * scale {
            return Err(AcmsError::InvalidModel { what: "antisymmetry".into(), residual: skew });
        }
        let m = Self { constants, structure };
        let jac = m.jacobi_residual();
        if jac > DEFAULT_TOL * scale {
            return Err(AcmsError::InvalidModel { what: "the Jacobi identity".into(), residual: jac });
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.structure.n()
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn constants(&self) -> &Tensor3 {
        &self.constants
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// Same algebra with another structure on it.
    pub fn with_structure(&self, structure: Structure) -> Result<Self> {
        Self::new(self.constants.clone(), structure)
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let dim = self.dim();
        DVector::from_fn(dim, |k, _| {
            let mut acc = 0.0;
            for i in 0..dim {
                for j in 0..dim {
                    acc += x[i] * y[j] * self.constants[(i, j, k)];
                }
            }
            acc
        })
    }

    /// `ad_x` as a matrix: `ad_x e_k = [x, e_k]`.
    pub fn ad(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let dim = self.dim();
        DMatrix::from_fn(dim, dim, |m, k| (0..dim).map(|a| x[a] * self.constants[(a, k, m)]).sum())
    }

    fn basis(&self, i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim());
        v[i] = 1.0;
        v
    }

    pub fn jacobi_residual(&self) -> f64 {
        let dim = self.dim();
        let mut acc: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let r = self.bracket(&a, &self.bracket(&b, &c))
                        + self.bracket(&b, &self.bracket(&c, &a))
                        + self.bracket(&c, &self.bracket(&a, &b));
                    acc = acc.max(r.norm());
                }
            }
        }
        acc
    }

    /// Levi-Civita connection of the left-invariant metric, from the Koszul formula.
    pub fn levi_civita(&self) -> ConnectionCoefficients {
        let dim = self.dim();
        let g = self.structure.g();
        let gi = self.structure.g_inv();
        let c = &self.constants;
        // lowered[a][b][l] = g([e_a, e_b], e_l)
        let lowered = Tensor3::from_fn(dim, |a, b, l| (0..dim).map(|m| c[(a, b, m)] * g[(m, l)]).sum());
        let koszul = Tensor3::from_fn(dim, |i, j, l| {
            0.5 * (lowered[(i, j, l)] - lowered[(j, l, i)] + lowered[(l, i, j)])
        });
        ConnectionCoefficients {
            gamma: Tensor3::from_fn(dim, |i, j, k| (0..dim).map(|l| koszul[(i, j, l)] * gi[(l, k)]).sum()),
        }
    }

    /// `∇_{e_i} φ` for each `i`.
    pub fn nabla_phi_endos(&self) -> Vec<DMatrix<f64>> {
        let lc = self.levi_civita();
        let phi = self.structure.phi();
        (0..self.dim())
            .map(|i| {
                let gamma = lc.endo(i);
                &gamma * phi - phi * &gamma
            })
            .collect()
    }

    /// The tensor `α(X,Y,Z) = (∇_X Φ)(Y,Z) = g(Y, (∇_X φ)Z)`.
    pub fn nabla_phi_tensor(&self) -> Tensor3 {
        let g = self.structure.g();
        let d: Vec<DMatrix<f64>> = self.nabla_phi_endos().into_iter().map(|e| g * e).collect();
        Tensor3::from_fn(self.dim(), |i, j, k| d[i][(j, k)])
    }

    /// `∇ξ` as an endomorphism, `X ↦ ∇_X ξ`.
    pub fn nabla_xi(&self) -> DMatrix<f64> {
        let lc = self.levi_civita();
        let xi = self.structure.xi();
        let cols: Vec<DVector<f64>> = (0..self.dim()).map(|i| lc.endo(i) * xi).collect();
        DMatrix::from_columns(&cols)
    }

    /// `S = φ∘∇ξ`, computed directly from the connection.
    pub fn s_direct(&self) -> DMatrix<f64> {
        self.structure.phi() * self.nabla_xi()
    }

    /// `(𝓛_ξ φ)Y = [ξ, φY] − φ[ξ, Y]`.
    pub fn lie_derivative_phi(&self) -> DMatrix<f64> {
        let ad = self.ad(self.structure.xi());
        let phi = self.structure.phi();
        &ad * phi - phi * &ad
    }

    /// `h = ½ 𝓛_ξ φ`.
    pub fn h_direct(&self) -> DMatrix<f64> {
        self.lie_derivative_phi() * 0.5
    }

    /// `dη(X,Y) = −η([X,Y])` on left-invariant fields.
    pub fn d_eta_bracket(&self) -> DMatrix<f64> {
        let eta = self.structure.eta();
        let c = self.constants.contract(2, eta);
        -c
    }

    /// `dΦ(X,Y,Z) = −Φ([X,Y],Z) − Φ([Y,Z],X) − Φ([Z,X],Y)` on left-invariant fields.
    pub fn d_phi_bracket(&self) -> Tensor3 {
        let fund = self.structure.fundamental_form();
        let dim = self.dim();
        let c = &self.constants;
        let t = Tensor3::from_fn(dim, |x, y, z| -(0..dim).map(|m| c[(x, y, m)] * fund[(m, z)]).sum::<f64>());
        t.cyclic_sum()
    }

    /// `N_φ(X,Y,Z) = g([φX,φY] + φ²[X,Y] − φ[X,φY] − φ[φX,Y] + dη(X,Y)ξ, Z)` from brackets.
    pub fn nijenhuis_direct(&self) -> Tensor3 {
        let dim = self.dim();
        let st = &self.structure;
        let phi = st.phi();
        let phi2 = phi * phi;
        let deta = self.d_eta_bracket();
        let g = st.g();
        let mut out = Tensor3::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                let (x, y) = (self.basis(i), self.basis(j));
                let (px, py) = (phi * &x, phi * &y);
                let v = self.bracket(&px, &py) + &phi2 * self.bracket(&x, &y)
                    - phi * self.bracket(&x, &py)
                    - phi * self.bracket(&px, &y)
                    + st.xi() * deta[(i, j)];
                let low = g * v;
                for k in 0..dim {
                    out[(i, j, k)] = low[k];
                }
            }
        }
        out
    }

    /// Riemannian curvature `R(e_i,e_j) = [∇_i, ∇_j] − ∇_{[e_i,e_j]}`.
    pub fn curvature(&self) -> CurvatureTensor {
        CurvatureTensor::from_connection(&self.levi_civita(), self)
    }
}

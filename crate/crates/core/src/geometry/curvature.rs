use super::lie::{ConnectionCoefficients, LieAlgebraModel};
use crate::structure::Structure;
use nalgebra::{DMatrix, DVector};

/// `R[i][j][k][l] = g(R(e_i, e_j) e_k, e_l)`, stored together with the endomorphisms `R(e_i, e_j)`.
#[derive(Clone, Debug)]
pub struct CurvatureTensor {
    dim: usize,
    endos: Vec<DMatrix<f64>>,
    g: DMatrix<f64>,
}

impl CurvatureTensor {
    /// Curvature of a left-invariant connection on a Lie algebra.
    pub fn from_connection(conn: &ConnectionCoefficients, m: &LieAlgebraModel) -> Self {
        let dim = m.dim();
        let gammas: Vec<DMatrix<f64>> = (0..dim).map(|i| conn.endo(i)).collect();
        let mut endos = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut r = &gammas[i] * &gammas[j] - &gammas[j] * &gammas[i];
                for (k, gk) in gammas.iter().enumerate() {
                    r -= gk * m.constants()[(i, j, k)];
                }
                endos.push(r);
            }
        }
        Self { dim, endos, g: m.structure().g().clone() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `R(e_i, e_j)` as an endomorphism.
    pub fn endo(&self, i: usize, j: usize) -> &DMatrix<f64> {
        &self.endos[i * self.dim + j]
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        (self.endo(i, j).column(k).transpose() * self.g.column(l))[(0, 0)]
    }

    /// `R(X, Y)Z` for arbitrary vectors.
    pub fn apply(&self, x: &DVector<f64>, y: &DVector<f64>, z: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let c = x[i] * y[j];
                if c != 0.0 {
                    out += self.endo(i, j) * z * c;
                }
            }
        }
        out
    }

    /// Largest violation of the skew symmetries and pair symmetry.
    pub fn symmetry_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let r = self.get(i, j, k, l);
                        worst = worst
                            .max((r + self.get(j, i, k, l)).abs())
                            .max((r + self.get(i, j, l, k)).abs())
                            .max((r - self.get(k, l, i, j)).abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest violation of `R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0`.
    pub fn bianchi_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = self.endo(i, j).column(k) + self.endo(j, k).column(i) + self.endo(k, i).column(j);
                    worst = worst.max(v.norm());
                }
            }
        }
        worst
    }

    /// Scale used for relative tests.
    pub fn magnitude(&self, st: &Structure) -> f64 {
        self.endos.iter().map(|e| st.endo_norm(e).powi(2)).sum::<f64>().sqrt()
    }
}

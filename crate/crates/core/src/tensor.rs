//! Dense order-3 covariant tensors.

use nalgebra::{DMatrix, DVector};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Dense `dim × dim × dim` array, `t[(i, j, k)] = α(e_i, e_j, e_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3 {
    dim: usize,
    data: Vec<f64>,
}

impl Tensor3 {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim * dim] }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    data.push(f(i, j, k));
                }
            }
        }
        Self { dim, data }
    }

    /// Builds from a flat row-major vector of length `dim³`.
    pub fn from_vec(dim: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), dim * dim * dim, "flat tensor length mismatch");
        Self { dim, data }
    }

    /// Elementary tensor with a single unit entry.
    pub fn unit(dim: usize, i: usize, j: usize, k: usize) -> Self {
        let mut t = Self::zeros(dim);
        t[(i, j, k)] = 1.0;
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_dvector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.data)
    }

    pub fn from_dvector(dim: usize, v: &DVector<f64>) -> Self {
        Self::from_vec(dim, v.as_slice().to_vec())
    }

    /// Plain Frobenius norm of the stored components.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Plain component-wise dot product.
    pub fn dot(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn axpy(&mut self, a: f64, x: &Self) {
        assert_eq!(self.dim, x.dim);
        for (y, xv) in self.data.iter_mut().zip(&x.data) {
            *y += a * xv;
        }
    }

    /// The 2-tensor obtained by fixing the first slot: `m[(j,k)] = t(e_i, e_j, e_k)`.
    pub fn slice(&self, i: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |j, k| self[(i, j, k)])
    }

    /// Contracts a vector into `slot`, e.g. `contract(1, ξ)` gives `(X,Z) ↦ t(X, ξ, Z)`.
    pub fn contract(&self, slot: usize, v: &DVector<f64>) -> DMatrix<f64> {
        let n = self.dim;
        DMatrix::from_fn(n, n, |a, b| {
            (0..n)
                .map(|m| {
                    let idx = match slot {
                        0 => (m, a, b),
                        1 => (a, m, b),
                        2 => (a, b, m),
                        _ => panic!("slot out of range"),
                    };
                    v[m] * self[idx]
                })
                .sum()
        })
    }

    /// Inserts an endomorphism into one slot: result(.., e_a, ..) = t(.., E e_a, ..).
    pub fn apply(&self, slot: usize, e: &DMatrix<f64>) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j, k| {
            (0..n)
                .map(|m| match slot {
                    0 => e[(m, i)] * self[(m, j, k)],
                    1 => e[(m, j)] * self[(i, m, k)],
                    2 => e[(m, k)] * self[(i, j, m)],
                    _ => panic!("slot out of range"),
                })
                .sum()
        })
    }

    /// Components in the basis `f_a = Σ_i m[(i,a)] e_i`.
    pub fn transform(&self, m: &DMatrix<f64>) -> Self {
        self.apply(0, m).apply(1, m).apply(2, m)
    }

    /// Permutes slots: `result(x_0, x_1, x_2) = t(x_{p[0]}, x_{p[1]}, x_{p[2]})`.
    pub fn permute(&self, p: [usize; 3]) -> Self {
        Self::from_fn(self.dim, |i, j, k| {
            let x = [i, j, k];
            self[(x[p[0]], x[p[1]], x[p[2]])]
        })
    }

    /// `t(X,Y,Z) + t(Y,Z,X) + t(Z,X,Y)`.
    pub fn cyclic_sum(&self) -> Self {
        let mut out = self.clone();
        out += &self.permute([1, 2, 0]);
        out += &self.permute([2, 0, 1]);
        out
    }

    /// Sets negligible entries and negative zeros to `0.0`.
    pub fn chop(&self, eps: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&x| if x.abs() <= eps { 0.0 } else { x }).collect(),
        }
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<f64>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| (0..self.dim).map(|k| self[(i, j, k)]).collect()).collect())
            .collect()
    }
}

/// Serializes as the nested array `t[i][j][k]`.
impl serde::Serialize for Tensor3 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_nested().serialize(serializer)
    }
}

impl std::ops::Index<(usize, usize, usize)> for Tensor3 {
    type Output = f64;
    fn index(&self, (i, j, k): (usize, usize, usize)) -> &f64 {
        &self.data[(i * self.dim + j) * self.dim + k]
    }
}

impl std::ops::IndexMut<(usize, usize, usize)> for Tensor3 {
    fn index_mut(&mut self, (i, j, k): (usize, usize, usize)) -> &mut f64 {
        &mut self.data[(i * self.dim + j) * self.dim + k]
    }
}

impl AddAssign<&Tensor3> for Tensor3 {
    fn add_assign(&mut self, rhs: &Tensor3) {
        self.axpy(1.0, rhs);
    }
}

impl SubAssign<&Tensor3> for Tensor3 {
    fn sub_assign(&mut self, rhs: &Tensor3) {
        self.axpy(-1.0, rhs);
    }
}

impl Add<&Tensor3> for &Tensor3 {
    type Output = Tensor3;
    fn add(self, rhs: &Tensor3) -> Tensor3 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Tensor3> for &Tensor3 {
    type Output = Tensor3;
    fn sub(self, rhs: &Tensor3) -> Tensor3 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Tensor3 {
    type Output = Tensor3;
    fn add(mut self, rhs: Tensor3) -> Tensor3 {
        self += &rhs;
        self
    }
}

impl Sub for Tensor3 {
    type Output = Tensor3;
    fn sub(mut self, rhs: Tensor3) -> Tensor3 {
        self -= &rhs;
        self
    }
}

impl Mul<f64> for &Tensor3 {
    type Output = Tensor3;
    fn mul(self, a: f64) -> Tensor3 {
        Tensor3 { dim: self.dim, data: self.data.iter().map(|x| a * x).collect() }
    }
}

impl Mul<f64> for Tensor3 {
    type Output = Tensor3;
    fn mul(self, a: f64) -> Tensor3 {
        &self * a
    }
}

impl Neg for Tensor3 {
    type Output = Tensor3;
    fn neg(self) -> Tensor3 {
        self * -1.0
    }
}

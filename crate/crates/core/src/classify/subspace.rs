//! Numerically constructed class subspaces and projections onto them.
//!
//! Bases are computed once per `n` in the canonical model, as null spaces of the class equations
//! restricted to 𝒞(V), and transported to any other structure through an adapted frame.

use super::equations;
use super::label::{ClassLabel, ClassSet};
use crate::linalg::{null_space, RANK_THRESHOLD};
use crate::space::cv_basis_canonical;
use crate::structure::{canonical_structure, Structure};
use crate::tensor::Tensor3;
use nalgebra::DMatrix;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// An orthonormal basis of an invariant subspace of 𝒞(V).
#[derive(Clone, Debug)]
pub struct Subspace {
    pub label: ClassLabel,
    pub basis: Vec<Tensor3>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    Cv,
    Irreducible(u8),
    D(u8),
    LambdaMu(u64, u64),
    Sum(equations::SumFormula),
}

type Cache = Mutex<HashMap<(usize, Key), Arc<Vec<Tensor3>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(n: usize, key: Key, build: impl FnOnce() -> Vec<Tensor3>) -> Arc<Vec<Tensor3>> {
    if let Some(b) = cache().lock().expect("cache poisoned").get(&(n, key)) {
        return b.clone();
    }
    let built = Arc::new(build());
    cache().lock().expect("cache poisoned").entry((n, key)).or_insert(built).clone()
}

fn cv_basis(n: usize) -> Arc<Vec<Tensor3>> {
    cached(n, Key::Cv, || cv_basis_canonical(n))
}

/// Solutions inside 𝒞(V) of a linear residual map, in the canonical model.
fn solve_in_cv(n: usize, residual: impl Fn(&Tensor3, &Structure) -> Vec<f64>) -> Vec<Tensor3> {
    solve_in(n, &cv_basis(n), residual)
}

/// Solutions inside the span of an orthonormal family.
fn solve_in(n: usize, family: &[Tensor3], residual: impl Fn(&Tensor3, &Structure) -> Vec<f64>) -> Vec<Tensor3> {
    let st = canonical_structure(n);
    if family.is_empty() {
        return Vec::new();
    }
    let cols: Vec<Vec<f64>> = family.iter().map(|b| residual(b, &st)).collect();
    let rows = cols[0].len();
    let m = DMatrix::from_fn(rows, cols.len(), |r, c| cols[c][r]);
    let ns = null_space(&m, RANK_THRESHOLD);
    (0..ns.ncols())
        .map(|c| {
            let mut t = Tensor3::zeros(st.dim());
            for (k, b) in family.iter().enumerate() {
                t.axpy(ns[(k, c)], b);
            }
            t
        })
        .collect()
}

fn canonical_irreducible(n: usize, i: u8) -> Arc<Vec<Tensor3>> {
    cached(n, Key::Irreducible(i), || solve_in_cv(n, |a, s| equations::irreducible(i, a, s)))
}

/// Canonical-model basis for a label.
pub(crate) fn canonical_basis(n: usize, label: ClassLabel) -> Arc<Vec<Tensor3>> {
    match label {
        ClassLabel::Sum(set) => {
            if set.len() == 1 {
                return canonical_irreducible(n, set.iter().next().expect("nonempty"));
            }
            let mut all = Vec::new();
            for i in set.iter() {
                all.extend(canonical_irreducible(n, i).iter().cloned());
            }
            Arc::new(all)
        }
        ClassLabel::Min => canonical_lambda_mu(n, 1.0, -2.0),
        ClassLabel::LambdaMu { lambda, mu } => canonical_lambda_mu(n, lambda, mu),
    }
}

fn canonical_lambda_mu(n: usize, lambda: f64, mu: f64) -> Arc<Vec<Tensor3>> {
    let (l, m) = match ClassLabel::lambda_mu(lambda, mu) {
        Ok(ClassLabel::LambdaMu { lambda, mu }) => (lambda, mu),
        _ => (1.0, 0.0),
    };
    cached(n, Key::LambdaMu(l.to_bits(), m.to_bits()), || {
        let ambient = canonical_basis(n, ClassLabel::Sum(ClassSet::of(&[10, 11])));
        solve_in(n, &ambient, |a, s| equations::lambda_mu(l, m, a, s))
    })
}

/// Basis of 𝒟ᵢ from its own defining row, independent of the irreducible bases.
pub fn d_class_subspace(i: u8, st: &Structure) -> Subspace {
    let basis = cached(st.n(), Key::D(i), || solve_in_cv(st.n(), |a, s| equations::d_class(i, a, s)));
    let label = ClassLabel::Sum(match i {
        1 => ClassSet::d1(),
        2 => ClassSet::d2(),
        _ => ClassSet::d3(),
    });
    transport(label, &basis, st)
}

/// Null space of one of the named sum-class formulas inside 𝒞(V).
pub fn sum_formula_subspace(which: equations::SumFormula, st: &Structure) -> Vec<Tensor3> {
    let basis = cached(st.n(), Key::Sum(which), || solve_in_cv(st.n(), |a, s| equations::sum_formula(which, a, s)));
    let fr = st.adapted_frame();
    basis.iter().map(|b| fr.from_frame(b)).collect()
}

fn transport(label: ClassLabel, basis: &[Tensor3], st: &Structure) -> Subspace {
    let fr = st.adapted_frame();
    Subspace { label, basis: basis.iter().map(|b| fr.from_frame(b)).collect() }
}

/// Orthonormal basis of the class, written in the structure's ambient basis.
pub fn class_subspace(label: ClassLabel, st: &Structure) -> Subspace {
    let basis = canonical_basis(st.n(), label);
    transport(label, &basis, st)
}

/// Orthogonal projection onto a class.
pub fn project(alpha: &Tensor3, label: ClassLabel, st: &Structure) -> Tensor3 {
    let fr = st.adapted_frame();
    let a = fr.to_frame(alpha);
    let mut out = Tensor3::zeros(st.dim());
    for b in canonical_basis(st.n(), label).iter() {
        out.axpy(a.dot(b), b);
    }
    fr.from_frame(&out)
}

/// Norms of the projections onto 𝒞₁…𝒞₁₂, index `i − 1`.
pub fn component_norms(alpha: &Tensor3, st: &Structure) -> [f64; 12] {
    let fr = st.adapted_frame();
    let a = fr.to_frame(alpha);
    let mut out = [0.0; 12];
    for i in 1..=12u8 {
        let sq: f64 = canonical_irreducible(st.n(), i).iter().map(|b| a.dot(b).powi(2)).sum();
        out[(i - 1) as usize] = sq.sqrt();
    }
    out
}

/// Expected dimension of 𝒞₅…𝒞₁₂ (`None` for 𝒞₁…𝒞₄, which are computed only numerically).
pub fn formula_dimension(i: u8, n: usize) -> Option<usize> {
    let n2 = n * n;
    match i {
        5 | 6 => Some(1),
        7 | 8 => Some(n2 - 1),
        9 => Some(n2 + n),
        10 | 11 => Some(n2 - n),
        12 => Some(2 * n),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::random_cv;
    use crate::space::{cv_dimension, inner, norm};
    use crate::structure::random_structure;

    #[test]
    fn h_parallel_dimensions_match_formulas() {
        for n in 1..=3 {
            let st = canonical_structure(n);
            for i in 5..=12u8 {
                let sub = class_subspace(ClassLabel::irreducible(i), &st);
                assert_eq!(Some(sub.dim()), formula_dimension(i, n), "C{i} n={n}");
            }
        }
    }

    #[test]
    fn all_dimensions_add_up() {
        for n in 1..=3 {
            let st = canonical_structure(n);
            let total: usize = (1..=12u8).map(|i| class_subspace(ClassLabel::irreducible(i), &st).dim()).sum();
            assert_eq!(total, cv_dimension(n));
            let d1: usize = (1..=4u8).map(|i| class_subspace(ClassLabel::irreducible(i), &st).dim()).sum();
            assert_eq!(d1, 2 * n * n * (n - 1));
        }
    }

    #[test]
    fn d_rows_reproduce_the_sums() {
        for n in 1..=3 {
            let st = random_structure(n, 3);
            for (i, set) in [(1u8, ClassSet::d1()), (2, ClassSet::d2()), (3, ClassSet::d3())] {
                let d = d_class_subspace(i, &st);
                let sum = class_subspace(ClassLabel::Sum(set), &st);
                assert_eq!(d.dim(), sum.dim());
                for b in &d.basis {
                    let p = project(b, ClassLabel::Sum(set), &st);
                    assert!(norm(&(b - &p), &st) < 1e-9);
                }
            }
        }
    }

    #[test]
    fn transported_bases_are_orthonormal() {
        let st = random_structure(2, 17);
        let sub = class_subspace("C9+C12".parse().unwrap(), &st);
        for (a, x) in sub.basis.iter().enumerate() {
            for (b, y) in sub.basis.iter().enumerate() {
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((inner(x, y, &st) - expect).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn projection_is_idempotent_with_orthogonal_remainder() {
        let st = random_structure(3, 1);
        let alpha = random_cv(&st, 4);
        for i in [1u8, 3, 7, 11] {
            let label = ClassLabel::irreducible(i);
            let p = project(&alpha, label, &st);
            assert!(norm(&(&project(&p, label, &st) - &p), &st) < 1e-9);
            let rest = &alpha - &p;
            for b in &class_subspace(label, &st).basis {
                assert!(inner(&rest, b, &st).abs() < 1e-9);
            }
        }
    }
}

//! Small dense helpers on top of nalgebra's SVD.

use nalgebra::DMatrix;

/// Singular values below this are treated as zero when ranks are computed.
pub const RANK_THRESHOLD: f64 = 1e-8;

/// Orthonormal basis (as columns) of the null space of `a`.
pub fn null_space(a: &DMatrix<f64>, threshold: f64) -> DMatrix<f64> {
    let cols = a.ncols();
    if cols == 0 {
        return DMatrix::zeros(0, 0);
    }
    // SVD only returns a full V when there are at least as many rows as columns.
    let padded = if a.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (a.nrows(), cols)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let keep: Vec<usize> =
        (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] < threshold).collect();
    DMatrix::from_fn(cols, keep.len(), |r, c| v_t[(keep[c], r)])
}

/// Number of singular values at or above `threshold`.
pub fn numeric_rank(a: &DMatrix<f64>, threshold: f64) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    a.clone().svd(false, false).singular_values.iter().filter(|&&s| s >= threshold).count()
}

/// Orthonormal basis of the column span of `a`.
pub fn column_span(a: &DMatrix<f64>, threshold: f64) -> DMatrix<f64> {
    if a.ncols() == 0 {
        return DMatrix::zeros(a.nrows(), 0);
    }
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("u requested");
    let keep: Vec<usize> =
        (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] >= threshold).collect();
    DMatrix::from_fn(a.nrows(), keep.len(), |r, c| u[(r, keep[c])])
}

pub fn frobenius(m: &DMatrix<f64>) -> f64 {
    m.norm()
}

/// `‖a − b‖_F`
pub fn distance(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).norm()
}

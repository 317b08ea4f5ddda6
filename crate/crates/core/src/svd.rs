//! Thin SVD through faer, returned as nalgebra matrices.

use nalgebra::DMatrix;

/// `M = U diag(s) V^T` with `s` non-increasing.
pub(crate) struct Svd {
    pub u: DMatrix<f64>,
    pub s: Vec<f64>,
    pub v: DMatrix<f64>,
}

fn to_faer(m: &DMatrix<f64>) -> faer::Mat<f64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

pub(crate) fn thin_svd(m: &DMatrix<f64>) -> Svd {
    let f = to_faer(m);
    let svd = f.thin_svd().expect("SVD of a finite matrix");
    let (u, s, v) = (svd.U(), svd.S().column_vector(), svd.V());
    let k = s.nrows();
    Svd {
        u: DMatrix::from_fn(m.nrows(), k, |i, j| u[(i, j)]),
        s: (0..k).map(|i| s[i]).collect(),
        v: DMatrix::from_fn(m.ncols(), k, |i, j| v[(i, j)]),
    }
}

pub(crate) fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    let mut sv = to_faer(m)
        .singular_values()
        .expect("SVD of a finite matrix");
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

//! Small dense linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

pub fn vector(values: &[f64]) -> Vector {
    Vector::from_column_slice(values)
}

pub fn to_vec(v: &Vector) -> Vec<f64> {
    v.iter().copied().collect()
}

/// Matrix whose columns are the given vectors.
pub fn columns(vectors: &[Vector], rows: usize) -> Matrix {
    if vectors.is_empty() {
        return Matrix::zeros(rows, 0);
    }
    Matrix::from_columns(vectors)
}

/// Matrix whose rows are the given slices.
pub fn rows(rows: &[Vec<f64>], cols: usize) -> Matrix {
    Matrix::from_fn(rows.len(), cols, |i, j| rows[i][j])
}

const RANK_EPS: f64 = 1e-10;

/// Numerical rank via singular values relative to the largest one.
pub fn rank(m: &Matrix) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > RANK_EPS * max).count()
}

/// Orthonormal basis (as columns) of the column span of `m`.
pub fn orthonormal_span(m: &Matrix) -> Matrix {
    let n = m.nrows();
    let mut basis: Vec<Vector> = Vec::new();
    let scale = m.iter().fold(0.0f64, |a, b| a.max(b.abs())).max(1.0);
    for col in m.column_iter() {
        let mut v: Vector = col.into_owned();
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&v);
                v -= b * c;
            }
        }
        let norm = v.norm();
        if norm > RANK_EPS * scale {
            basis.push(v / norm);
        }
    }
    columns(&basis, n)
}

/// Orthonormal basis (as columns) of the orthogonal complement of the column
/// span of `m` in `R^n`.
pub fn orthogonal_complement(m: &Matrix) -> Matrix {
    let n = m.nrows();
    let span = orthonormal_span(m);
    let mut complement: Vec<Vector> = Vec::new();
    for i in 0..n {
        let mut e = Vector::zeros(n);
        e[i] = 1.0;
        for _ in 0..2 {
            for c in span.column_iter() {
                let d = c.dot(&e);
                e -= c * d;
            }
            for b in &complement {
                let d = b.dot(&e);
                e -= b * d;
            }
        }
        let norm = e.norm();
        if norm > 1e-8 {
            let u = e / norm;
            complement.push(u);
        }
        if span.ncols() + complement.len() == n {
            break;
        }
    }
    columns(&complement, n)
}

/// Solves a square system, refusing ill-conditioned matrices. The pivots of
/// a fully pivoted LU factorization serve as the conditioning estimate.
pub fn solve_square(a: &Matrix, b: &Vector) -> Option<Vector> {
    let lu = a.clone().full_piv_lu();
    let diag = lu.u().diagonal();
    let max = diag.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let min = diag.iter().fold(f64::INFINITY, |m, d| m.min(d.abs()));
    if max == 0.0 || min <= 1e-12 * max {
        return None;
    }
    lu.solve(b)
}

/// Euclidean Hausdorff distance between two finite point sets.
pub fn hausdorff(a: &[Vector], b: &[Vector]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    let directed = |p: &[Vector], q: &[Vector]| {
        p.iter()
            .map(|x| q.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

/// Drops points that lie within `radius` of an earlier point.
pub fn dedup_points(points: Vec<Vector>, radius: f64) -> Vec<Vector> {
    let mut kept: Vec<Vector> = Vec::new();
    for p in points {
        if !kept.iter().any(|k| (k - &p).norm() <= radius) {
            kept.push(p);
        }
    }
    kept
}

pub fn max_abs<R: nalgebra::Dim, C: nalgebra::Dim, S: nalgebra::RawStorage<f64, R, C>>(
    v: &nalgebra::Matrix<f64, R, C, S>,
) -> f64 {
    v.iter().fold(0.0, |a, b| a.max(b.abs()))
}

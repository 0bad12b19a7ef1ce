//! Small dense helpers shared by the group and rank computations.

use nalgebra::DMatrix;

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
///
/// The argument is scaled by `2^-s` until its ∞-norm is at most 1/2; the
/// series is then summed until terms drop below machine precision relative
/// to the partial sum.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    assert!(a.is_square(), "matrix exponential of a non-square matrix");
    let n = a.nrows();
    let norm = inf_norm(a);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a / 2f64.powi(squarings);

    let mut sum = DMatrix::<f64>::identity(n, n);
    let mut term = DMatrix::<f64>::identity(n, n);
    for k in 1..=40 {
        term = &term * &scaled / k as f64;
        sum += &term;
        if inf_norm(&term) <= f64::EPSILON * inf_norm(&sum) * 0.5 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

pub fn inf_norm(a: &DMatrix<f64>) -> f64 {
    a.row_iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &DMatrix<f64>) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Number of singular values above `threshold`.
pub fn numerical_rank(a: &DMatrix<f64>, threshold: f64) -> usize {
    if a.ncols() == 0 || a.nrows() == 0 {
        return 0;
    }
    a.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .filter(|&&s| s > threshold)
        .count()
}

/// Orthonormal basis of the column space, keeping left singular vectors whose
/// singular value exceeds `threshold`.
pub fn column_space(a: &DMatrix<f64>, threshold: f64) -> DMatrix<f64> {
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let keep: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > threshold)
        .map(|(i, _)| i)
        .collect();
    DMatrix::from_fn(a.nrows(), keep.len(), |r, c| u[(r, keep[c])])
}

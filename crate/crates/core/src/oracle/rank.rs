use nalgebra::DMatrix;
use num_complex::Complex64;

/// Numerical rank by Gaussian elimination with complete pivoting: the number
/// of pivots whose modulus exceeds `tol`.
pub fn numeric_rank(matrix: &DMatrix<Complex64>, tol: f64) -> usize {
    let mut m = matrix.clone();
    let (rows, cols) = m.shape();
    let mut rank = 0;
    for step in 0..rows.min(cols) {
        let mut best = (step, step, 0.0f64);
        for j in step..cols {
            for i in step..rows {
                let v = m[(i, j)].norm();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.2 <= tol {
            break;
        }
        m.swap_rows(step, best.0);
        m.swap_columns(step, best.1);
        let pivot = m[(step, step)];
        for i in step + 1..rows {
            let factor = m[(i, step)] / pivot;
            if factor.norm() == 0.0 {
                continue;
            }
            for j in step..cols {
                let delta = factor * m[(step, j)];
                m[(i, j)] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

/// `‖A v − λ v‖ / ‖v‖`.
pub fn relative_residual(matrix: &DMatrix<Complex64>, v: &[Complex64], lambda: Complex64) -> f64 {
    let x = nalgebra::DVector::from_column_slice(v);
    let r = matrix * &x - &x * lambda;
    r.norm() / x.norm()
}

/// `v* A v / v* v`.
pub fn rayleigh_quotient(matrix: &DMatrix<Complex64>, v: &[Complex64]) -> Complex64 {
    let x = nalgebra::DVector::from_column_slice(v);
    let ax = matrix * &x;
    x.dotc(&ax) / x.dotc(&x)
}

//! Cyclic Jacobi eigenvalue iteration for small dense symmetric matrices.

use thiserror::Error;

/// Sweep cap; matrices of order <= 64 converge well inside this.
pub const DEFAULT_MAX_SWEEPS: usize = 100;
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JacobiError {
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("no convergence after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence {
        sweeps: usize,
        off_norm: f64,
        best: EigenPair,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    /// Unit length.
    pub vector: Vec<f64>,
}

fn off_diagonal_norm(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i][j] * a[i][j];
            }
        }
    }
    sum.sqrt()
}

fn smallest(a: &[Vec<f64>], v: &[Vec<f64>]) -> EigenPair {
    let n = a.len();
    let idx = (0..n)
        .min_by(|&i, &j| a[i][i].total_cmp(&a[j][j]))
        .expect("non-empty matrix");
    let mut vector: Vec<f64> = (0..n).map(|r| v[r][idx]).collect();
    let norm = vector.iter().map(|x| x * x).sum::<f64>().sqrt();
    vector.iter_mut().for_each(|x| *x /= norm);
    EigenPair {
        value: a[idx][idx],
        vector,
    }
}

/// Smallest eigenvalue and a unit eigenvector of a symmetric matrix.
///
/// Rotations are applied in the fixed row-major order `(p, q)`, `p < q`, so
/// the result is a deterministic function of the input. Iteration stops once
/// the Frobenius norm of the off-diagonal part is below `tolerance`.
pub fn min_eigenpair(
    matrix: &[Vec<f64>],
    tolerance: f64,
    max_sweeps: usize,
) -> Result<EigenPair, JacobiError> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(JacobiError::BadTolerance(tolerance));
    }
    let n = matrix.len();
    if n == 0 || matrix.iter().any(|row| row.len() != n) {
        return Err(JacobiError::NotSquare);
    }
    if matrix.iter().flatten().any(|x| !x.is_finite()) {
        return Err(JacobiError::NonFinite);
    }
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (matrix[i][j], matrix[j][i]);
            if (x - y).abs() > 1e-12 * x.abs().max(y.abs()).max(1.0) {
                return Err(JacobiError::NotSymmetric(i, j));
            }
        }
    }

    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    for _ in 0..max_sweeps {
        if off_diagonal_norm(&a) < tolerance {
            return Ok(smallest(&a, &v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let off_norm = off_diagonal_norm(&a);
    if off_norm < tolerance {
        return Ok(smallest(&a, &v));
    }
    Err(JacobiError::NoConvergence {
        sweeps: max_sweeps,
        off_norm,
        best: smallest(&a, &v),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(m: &[Vec<f64>], pair: &EigenPair) -> f64 {
        m.iter()
            .enumerate()
            .map(|(i, row)| {
                let mv: f64 = row.iter().zip(&pair.vector).map(|(a, x)| a * x).sum();
                (mv - pair.value * pair.vector[i]).abs()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn swap_matrix() {
        let m = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        let pair = min_eigenpair(&m, 1e-12, 100).unwrap();
        assert!((pair.value + 1.0).abs() < 1e-12);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((pair.vector[0].abs() - h).abs() < 1e-12);
        assert!((pair.vector[0] + pair.vector[1]).abs() < 1e-12);
    }

    #[test]
    fn diagonal_matrix() {
        let m = vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 0.5, 0.0],
            vec![0.0, 0.0, 1.0 / 3.0],
        ];
        let pair = min_eigenpair(&m, 1e-12, 100).unwrap();
        assert_eq!(pair.value, 1.0 / 3.0);
        assert_eq!(pair.vector, vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn dense_matrix_residual() {
        let n = 12;
        let m: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| 1.0 / (1.0 + i as f64 + j as f64) - if i == j { 0.3 } else { 0.0 })
                    .collect()
            })
            .collect();
        let pair = min_eigenpair(&m, 1e-12, 100).unwrap();
        assert!(residual(&m, &pair) < 1e-10);
        let norm: f64 = pair.vector.iter().map(|x| x * x).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            min_eigenpair(&[vec![1.0]], 0.0, 10).unwrap_err(),
            JacobiError::BadTolerance(0.0)
        );
        assert_eq!(
            min_eigenpair(&[vec![1.0, 2.0], vec![3.0, 1.0]], 1e-12, 10).unwrap_err(),
            JacobiError::NotSymmetric(0, 1)
        );
        assert_eq!(
            min_eigenpair(&[vec![1.0, 2.0]], 1e-12, 10).unwrap_err(),
            JacobiError::NotSquare
        );
    }

    #[test]
    fn sweep_cap_reports_best_iterate() {
        let m = vec![
            vec![2.0, 1.0, 0.5],
            vec![1.0, 3.0, 0.2],
            vec![0.5, 0.2, 1.0],
        ];
        match min_eigenpair(&m, 1e-300, 1) {
            Err(JacobiError::NoConvergence {
                sweeps: 1, best, ..
            }) => {
                assert_eq!(best.vector.len(), 3)
            }
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }
}

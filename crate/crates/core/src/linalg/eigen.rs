//! Cyclic Jacobi eigensolver.
//!
//! Complex Hermitian input `H = A + iB` is handled through the real symmetric
//! embedding `[[A, -B], [B, A]]`, whose spectrum is that of `H` with every
//! eigenvalue doubled.

use crate::error::{Error, Result};

use super::{ComplexMatrix, HERMITIAN_TOL};

pub const MAX_SWEEPS: usize = 100;

/// Off-diagonal Frobenius norm at which iteration stops, relative to
/// `max(1, ||A||_F)`.
const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

/// Eigen-decomposition of a real symmetric `n x n` matrix given row-major.
/// The input is symmetrized before iterating.
pub fn symmetric_eigen(m: &[f64], n: usize) -> Result<SymmetricEigen> {
    if m.len() != n * n {
        return Err(Error::Dimension(format!("{} entries for {n}x{n}", m.len())));
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut a = vec![0.0; n * n];
    for r in 0..n {
        for c in 0..n {
            a[r * n + c] = 0.5 * (m[r * n + c] + m[c * n + r]);
        }
    }
    let (values, v) = jacobi(a, n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    Ok(SymmetricEigen {
        values: order.iter().map(|&k| values[k]).collect(),
        vectors: order
            .iter()
            .map(|&k| (0..n).map(|r| v[r * n + k]).collect())
            .collect(),
    })
}

/// Real eigenvalues of a Hermitian matrix, ascending.
///
/// Fails with [`Error::NotHermitian`] when `max |m - m^dagger|` exceeds
/// [`HERMITIAN_TOL`], and with [`Error::NoConvergence`] after
/// [`MAX_SWEEPS`] sweeps.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigenvalues of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let defect = m.hermiticity_defect();
    if defect.is_nan() || defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let h = m.hermitian_part();
    let n = h.rows();
    let d = 2 * n;
    let mut s = vec![0.0; d * d];
    for r in 0..n {
        for c in 0..n {
            let z = h[(r, c)];
            s[r * d + c] = z.re;
            s[(r + n) * d + (c + n)] = z.re;
            s[r * d + (c + n)] = -z.im;
            s[(r + n) * d + c] = z.im;
        }
    }
    let (mut values, _) = jacobi(s, d)?;
    values.sort_by(f64::total_cmp);
    // Each eigenvalue appears twice; the pair average cancels most of the
    // rounding asymmetry between the copies.
    Ok(values.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
}

/// Returns unsorted eigenvalues and the row-major eigenvector matrix
/// (eigenvectors in columns).
fn jacobi(mut a: Vec<f64>, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    let tol = OFF_DIAGONAL_TOL * scale;

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    s += a[r * n + c] * a[r * n + c];
                }
            }
        }
        s.sqrt()
    };

    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) < tol {
            return Ok(((0..n).map(|i| a[i * n + i]).collect(), v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[r * n + p];
                    let h = a[r * n + q];
                    let rp = g - s * (h + g * tau);
                    let rq = h + s * (g - h * tau);
                    a[r * n + p] = rp;
                    a[p * n + r] = rp;
                    a[r * n + q] = rq;
                    a[q * n + r] = rq;
                }
                for r in 0..n {
                    let g = v[r * n + p];
                    let h = v[r * n + q];
                    v[r * n + p] = g - s * (h + g * tau);
                    v[r * n + q] = h + s * (g - h * tau);
                }
            }
        }
    }
    let off = off_norm(&a);
    if off < tol {
        Ok(((0..n).map(|i| a[i * n + i]).collect(), v))
    } else {
        Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            off,
        })
    }
}

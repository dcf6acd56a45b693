//! Inseparability and nonlocality diagnostics for a two-qubit state.
//!
//! * `W3`, `W4`: determinants built from partial-transpose entries. A negative
//!   value certifies entanglement.
//! * PPT spectrum: eigenvalues of `rho^{T_B}`.
//! * Correlation matrix `C_ij = Tr[rho sigma_i (x) sigma_j]`, the spectrum `u`
//!   of `C^T C`, `M = u_(1) + u_(2)` (Bell-CHSH is violated iff `M > 1`) and
//!   `N = sum sqrt(u_i)`, which sets the teleportation fidelity
//!   `F_max = (1 + N/3) / 2`.
//!
//! Where a closed form in `alpha` exists for the deletion-machine output it
//! is provided alongside for cross-checking.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigenvalues, kron, partial_transpose_b, pauli, ComplexMatrix, RealMatrix3,
};
use crate::states::{DeletionParams, DensityMatrix};

/// PPT verdict guard band: entangled iff the smallest eigenvalue of the
/// partial transpose is below `-SEPARABILITY_GUARD`.
pub const SEPARABILITY_GUARD: f64 = 1e-10;
/// Bell verdict guard band: violated iff `M > 1 + BELL_GUARD`.
pub const BELL_GUARD: f64 = 1e-10;
/// Rounding floor below zero for eigenvalues of `C^T C`.
pub const U_CLAMP: f64 = 1e-12;

/// Every diagnostic for one state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub w3: f64,
    pub w4: f64,
    /// Ascending.
    pub ppt_spectrum: [f64; 4],
    /// Eigenvalues of `C^T C`, descending.
    pub u: [f64; 3],
    pub big_m: f64,
    pub big_n: f64,
    pub f_max: f64,
    pub inseparable: bool,
    pub bell_violated: bool,
}

impl CriteriaReport {
    pub fn ppt_min(&self) -> f64 {
        self.ppt_spectrum[0]
    }
}

/// Entry map of the `W4` matrix as `(row, col)` basis indices of `rho`, with
/// `|00>, |01>, |10>, |11>` numbered 0..4. Row `r` lists
/// `rho_{00,00} rho_{01,00} rho_{00,10} rho_{01,10}` and so on; the layout is
/// exactly `rho^{T_B}`. `W3` is its leading 3x3 block.
const W_INDEX: [[(usize, usize); 4]; 4] = [
    [(0, 0), (1, 0), (0, 2), (1, 2)],
    [(0, 1), (1, 1), (0, 3), (1, 3)],
    [(2, 0), (3, 0), (2, 2), (3, 2)],
    [(2, 1), (3, 1), (2, 3), (3, 3)],
];

/// The `W3` (3x3) and `W4` (4x4) matrices read off `rho`.
pub fn w_matrices(rho: &DensityMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let m = rho.matrix();
    let mut w4 = ComplexMatrix::zeros(4, 4);
    for (r, row) in W_INDEX.iter().enumerate() {
        for (c, &idx) in row.iter().enumerate() {
            w4[(r, c)] = m[idx];
        }
    }
    (w4.principal_submatrix(&[0, 1, 2]), w4)
}

/// `(det W3, det W4)`. Both matrices are Hermitian so the determinants are
/// real; the imaginary rounding residue is dropped.
pub fn w_determinants(rho: &DensityMatrix) -> (f64, f64) {
    let (w3, w4) = w_matrices(rho);
    (
        w3.determinant().expect("square").re,
        w4.determinant().expect("square").re,
    )
}

/// Closed forms of the W determinants for the deletion-machine output:
/// `W3 = a^6 b^4 m1^2 (a^2 + m1^2 b^2)`,
/// `W4 = -a^6 b^6 (a^4 m2^2 + m1^2 b^4 + a^2 b^2)`.
pub fn w_closed_form(p: &DeletionParams) -> (f64, f64) {
    let (a, b, m1, m2) = (p.alpha(), p.beta(), p.m1(), p.m2());
    let (a2, b2) = (a * a, b * b);
    let w3 = a.powi(6) * b.powi(4) * m1 * m1 * (a2 + m1 * m1 * b2);
    let w4 = -a.powi(6) * b.powi(6) * (a2 * a2 * m2 * m2 + m1 * m1 * b2 * b2 + a2 * b2);
    (w3, w4)
}

/// Eigenvalues of the partial transpose, ascending.
pub fn ppt_spectrum(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let pt = partial_transpose_b(rho.matrix())?;
    let ev = hermitian_eigenvalues(&pt)?;
    Ok([ev[0], ev[1], ev[2], ev[3]])
}

pub fn is_inseparable(ppt: &[f64; 4]) -> bool {
    ppt[0] < -SEPARABILITY_GUARD
}

/// `C_ij = Tr[rho sigma_i (x) sigma_j]` with `sigma = (X, Y, Z)`.
pub fn correlation_matrix(rho: &DensityMatrix) -> RealMatrix3 {
    let s = pauli();
    let mut c = [[0.0; 3]; 3];
    for (i, si) in s.iter().enumerate() {
        for (j, sj) in s.iter().enumerate() {
            let t = (rho.matrix() * &kron(si, sj)).trace();
            debug_assert!(t.im.abs() <= 1e-12, "imaginary correlation {t}");
            c[i][j] = t.re;
        }
    }
    RealMatrix3(c)
}

/// Spectrum of `C^T C` with the derived Bell and teleportation quantities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HorodeckiQuantities {
    /// Descending, clamped at zero.
    pub u: [f64; 3],
    /// Sum of the two largest `u`.
    pub big_m: f64,
    /// `sum sqrt(u_i)`, the trace norm of `C`.
    pub big_n: f64,
}

impl HorodeckiQuantities {
    pub fn from_correlations(c: &RealMatrix3) -> Result<Self> {
        let ctc = c.transpose() * *c;
        let as_complex = ComplexMatrix::from_real(3, 3, &ctc.as_flat())?;
        let ev = hermitian_eigenvalues(&as_complex)?;
        let clamp = |x: f64| {
            debug_assert!(x >= -U_CLAMP || x.is_nan(), "C^T C eigenvalue {x}");
            x.max(0.0)
        };
        let u = [clamp(ev[2]), clamp(ev[1]), clamp(ev[0])];
        Ok(Self {
            u,
            big_m: u[0] + u[1],
            big_n: u.iter().map(|x| x.sqrt()).sum(),
        })
    }

    pub fn bell_violated(&self) -> bool {
        self.big_m > 1.0 + BELL_GUARD
    }

    pub fn fidelity(&self) -> f64 {
        fidelity_from_n(self.big_n)
    }
}

pub fn horodecki_quantities(rho: &DensityMatrix) -> Result<HorodeckiQuantities> {
    HorodeckiQuantities::from_correlations(&correlation_matrix(rho))
}

/// Polynomials `A(alpha)` and `B(alpha)` of the closed-form spectrum, valid
/// for the balanced blank `m1 = m2 = 1/sqrt(2)`.
pub fn closed_form_ab(alpha: f64) -> (f64, f64) {
    let a2 = alpha * alpha;
    let a4 = a2 * a2;
    let a6 = a4 * a2;
    let a8 = a4 * a4;
    let a10 = a8 * a2;
    let a12 = a6 * a6;
    let big_a = 4.0 * a8 - 8.0 * a6 + 6.0 * a4 - 2.0 * a2 + 0.5;
    let big_b = 1.0 + 64.0 * a12 + 224.0 * a8 - 8.0 * a2 - 192.0 * a10 - 128.0 * a6 + 40.0 * a4;
    (big_a, big_b)
}

/// Closed-form eigenvalues `(u1, u2, u3)` of `C^T C` for the deletion output
/// with balanced blank, in the labeling `u1 = 4a^4 - 8a^6 + 4a^8`,
/// `u2,3 = A +- sqrt(B)/2`. Not sorted.
pub fn closed_form_u(alpha: f64) -> Result<[f64; 3]> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "closed-form spectrum needs 0 < alpha < 1, got {alpha}"
        )));
    }
    let a4 = alpha.powi(4);
    let u1 = 4.0 * a4 - 8.0 * a4 * alpha * alpha + 4.0 * a4 * a4;
    let (big_a, big_b) = closed_form_ab(alpha);
    let root = if (-U_CLAMP..0.0).contains(&big_b) {
        0.0
    } else {
        big_b.sqrt()
    };
    Ok([u1, big_a + 0.5 * root, big_a - 0.5 * root])
}

/// `(1 + N/3) / 2`.
pub fn fidelity_from_n(big_n: f64) -> f64 {
    0.5 * (1.0 + big_n / 3.0)
}

/// Maximal teleportation fidelity `F_max = (1 + (sqrt u1 + sqrt u2 + sqrt u3)/3)/2`.
pub fn fidelity_bound(rho: &DensityMatrix) -> Result<f64> {
    Ok(horodecki_quantities(rho)?.fidelity())
}

pub fn analyze(rho: &DensityMatrix) -> Result<CriteriaReport> {
    let (w3, w4) = w_determinants(rho);
    let ppt = ppt_spectrum(rho)?;
    let h = horodecki_quantities(rho)?;
    Ok(CriteriaReport {
        w3,
        w4,
        ppt_spectrum: ppt,
        u: h.u,
        big_m: h.big_m,
        big_n: h.big_n,
        f_max: h.fidelity(),
        inseparable: is_inseparable(&ppt),
        bell_violated: h.bell_violated(),
    })
}

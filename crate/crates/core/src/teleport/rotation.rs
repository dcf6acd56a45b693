//! Local pre-rotations that diagonalize the correlation matrix.

use serde::{Deserialize, Serialize};

use crate::criteria::fidelity_from_n;
use crate::linalg::{pauli, svd3, ComplexMatrix, RealMatrix3, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetBranch {
    /// `det C <= 0`: the rotated protocol reaches `(1 + N/3)/2`.
    NonPositive,
    /// `det C > 0`: best reachable is `(1 + (s1 + s2 - s3)/3)/2`.
    Positive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimalRotations {
    pub rot_a: ComplexMatrix,
    pub rot_b: ComplexMatrix,
    pub so3_a: RealMatrix3,
    pub so3_b: RealMatrix3,
    pub predicted_fidelity: f64,
    pub det_c: f64,
    pub branch: DetBranch,
}

/// Chooses `O_A, O_B` in SO(3) with `O_A C O_B^T = diag(-s1, -s2, -sign(det C) s3)`,
/// the most negative trace reachable by proper rotations, and lifts both to
/// SU(2).
pub fn optimal_rotations(c: &RealMatrix3) -> OptimalRotations {
    let svd = svd3(c);
    // rotation by pi about z flips the first two signs
    let flip = RealMatrix3::diag([-1.0, -1.0, 1.0]);
    let so3_a = flip * svd.u.transpose();
    let so3_b = svd.v.transpose();
    let [s1, s2, s3] = svd.singular_values;
    let det_c = c.det();
    let branch = if det_c <= 0.0 {
        DetBranch::NonPositive
    } else {
        DetBranch::Positive
    };
    let reach = match branch {
        DetBranch::NonPositive => s1 + s2 + s3,
        DetBranch::Positive => s1 + s2 - s3,
    };
    OptimalRotations {
        rot_a: so3_to_su2(&so3_a),
        rot_b: so3_to_su2(&so3_b),
        so3_a,
        so3_b,
        predicted_fidelity: fidelity_from_n(reach),
        det_c,
        branch,
    }
}

/// Lifts a proper rotation to `R = w I - i (x X + y Y + z Z)` from its unit
/// quaternion, so that `R (v . sigma) R^dagger = (O v) . sigma`. The
/// quaternion is extracted from the largest of `tr O, O_00, O_11, O_22` to
/// stay stable near half turns.
pub fn so3_to_su2(o: &RealMatrix3) -> ComplexMatrix {
    let m = &o.0;
    let tr = o.trace();
    let (w, x, y, z);
    if tr >= m[0][0] && tr >= m[1][1] && tr >= m[2][2] {
        let r = (1.0 + tr).sqrt();
        w = 0.5 * r;
        let f = 0.5 / r;
        x = (m[2][1] - m[1][2]) * f;
        y = (m[0][2] - m[2][0]) * f;
        z = (m[1][0] - m[0][1]) * f;
    } else if m[0][0] >= m[1][1] && m[0][0] >= m[2][2] {
        let r = (1.0 + m[0][0] - m[1][1] - m[2][2]).sqrt();
        x = 0.5 * r;
        let f = 0.5 / r;
        w = (m[2][1] - m[1][2]) * f;
        y = (m[0][1] + m[1][0]) * f;
        z = (m[0][2] + m[2][0]) * f;
    } else if m[1][1] >= m[2][2] {
        let r = (1.0 - m[0][0] + m[1][1] - m[2][2]).sqrt();
        y = 0.5 * r;
        let f = 0.5 / r;
        w = (m[0][2] - m[2][0]) * f;
        x = (m[0][1] + m[1][0]) * f;
        z = (m[1][2] + m[2][1]) * f;
    } else {
        let r = (1.0 - m[0][0] - m[1][1] + m[2][2]).sqrt();
        z = 0.5 * r;
        let f = 0.5 / r;
        w = (m[1][0] - m[0][1]) * f;
        x = (m[0][2] + m[2][0]) * f;
        y = (m[1][2] + m[2][1]) * f;
    }
    let n = (w * w + x * x + y * y + z * z).sqrt();
    let (w, x, y, z) = (w / n, x / n, y / n, z / n);

    let [sx, sy, sz] = pauli();
    let minus_i = C64::new(0.0, -1.0);
    let axis = &(&sx.scale_real(x) + &sy.scale_real(y)) + &sz.scale_real(z);
    &ComplexMatrix::identity(2).scale_real(w) + &axis.scale(minus_i)
}

/// `O_ij = Tr[sigma_i U sigma_j U^dagger] / 2`.
pub fn adjoint_action(u: &ComplexMatrix) -> RealMatrix3 {
    let s = pauli();
    let mut o = [[0.0; 3]; 3];
    for (i, si) in s.iter().enumerate() {
        for (j, sj) in s.iter().enumerate() {
            o[i][j] = 0.5 * (si * &(&(u * sj) * &u.adjoint())).trace().re;
        }
    }
    RealMatrix3(o)
}

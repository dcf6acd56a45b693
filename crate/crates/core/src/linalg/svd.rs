//! Singular value decomposition of a real 3x3 matrix with proper rotations
//! on both sides.

use super::{cross3, dot3, norm3, symmetric_eigen, RealMatrix3};

/// `m = u * diag(s1, s2, det_sign * s3) * v^T` with `det(u) = det(v) = +1`
/// and `s1 >= s2 >= s3 >= 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Svd3 {
    pub u: RealMatrix3,
    pub singular_values: [f64; 3],
    pub v: RealMatrix3,
    /// Sign of `det(m)`; `+1` for singular input.
    pub det_sign: f64,
}

impl Svd3 {
    /// `diag(s1, s2, det_sign * s3)`.
    pub fn signed_diagonal(&self) -> RealMatrix3 {
        let s = self.singular_values;
        RealMatrix3::diag([s[0], s[1], self.det_sign * s[2]])
    }

    pub fn reconstruct(&self) -> RealMatrix3 {
        self.u * self.signed_diagonal() * self.v.transpose()
    }
}

/// Computes the SVD from the Jacobi eigenvectors of `m^T m`.
///
/// Singular values are taken as `|m v_i|` rather than `sqrt(lambda_i)`, which
/// keeps them accurate to absolute rounding even when `lambda_i` is tiny. Any
/// reflection is pushed into the sign of the third singular direction.
pub fn svd3(m: &RealMatrix3) -> Svd3 {
    let mtm = m.transpose() * *m;
    let eig = symmetric_eigen(&mtm.as_flat(), 3)
        .expect("Jacobi on a finite symmetric 3x3 always converges");

    let col = |k: usize| -> [f64; 3] {
        let v = &eig.vectors[k];
        [v[0], v[1], v[2]]
    };
    // Descending; a stable sort keeps tied directions in their original order.
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| eig.values[j].total_cmp(&eig.values[i]));
    let (v1, v2) = (col(order[0]), col(order[1]));
    // Third right vector fixed by orientation so that V is proper.
    let v3 = cross3(v1, v2);

    let w1 = m.mul_vec(v1);
    let w2 = m.mul_vec(v2);
    let s1 = norm3(w1);
    let s2 = norm3(w2);
    let floor = 1e-13 * s1.max(f64::MIN_POSITIVE);

    let u1 = if s1 > 0.0 {
        scale3(w1, 1.0 / s1)
    } else {
        [1.0, 0.0, 0.0]
    };
    let w2_perp = sub3(w2, scale3(u1, dot3(u1, w2)));
    let n2 = norm3(w2_perp);
    let u2 = if n2 > floor {
        scale3(w2_perp, 1.0 / n2)
    } else {
        any_orthogonal(u1)
    };
    let u3 = cross3(u1, u2);
    let s3_signed = dot3(u3, m.mul_vec(v3));
    let det_sign = if s3_signed < 0.0 { -1.0 } else { 1.0 };

    Svd3 {
        u: RealMatrix3::from_cols([u1, u2, u3]),
        singular_values: [s1, s2, s3_signed.abs()],
        v: RealMatrix3::from_cols([v1, v2, v3]),
        det_sign,
    }
}

fn scale3(a: [f64; 3], s: f64) -> [f64; 3] {
    a.map(|x| x * s)
}

fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn any_orthogonal(u: [f64; 3]) -> [f64; 3] {
    let axis = (0..3)
        .min_by(|&i, &j| u[i].abs().total_cmp(&u[j].abs()))
        .unwrap_or(0);
    let mut e = [0.0; 3];
    e[axis] = 1.0;
    let w = cross3(u, e);
    scale3(w, 1.0 / norm3(w))
}

//! Constructors for every state in the deletion-machine study.
//!
//! Two-qubit basis order is `|00>, |01>, |10>, |11>` with qubit `a` first.
//! The machine ancilla is an explicit 3-level system with orthonormal basis
//! `(A, A0, A1)`, so the full machine output lives in `2 (x) 2 (x) 3` with
//! index `(2a + b) * 3 + k`.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, kron, partial_trace, ComplexMatrix, C64, ONE, ZERO};

pub const NORM_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
/// Numerical floor for positive semidefiniteness.
pub const PSD_FLOOR: f64 = -1e-10;

pub const ANCILLA_DIM: usize = 3;

/// Index of an ancilla basis state in the machine register.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ancilla {
    /// Initial machine state `|A>`.
    Ready = 0,
    /// `|A0>`, left behind after deleting `|00>`.
    Zero = 1,
    /// `|A1>`, left behind after deleting `|11>`.
    One = 2,
}

/// Real input amplitudes `alpha, beta` of `|psi> = alpha|0> + beta|1>` and the
/// blank state `|Sigma> = m1|0> + m2|1>`.
///
/// Only `alpha` and `m1` are free; `beta` and `m2` are derived so both pairs
/// are normalized by construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeletionParams {
    alpha: f64,
    beta: f64,
    m1: f64,
    m2: f64,
}

impl DeletionParams {
    pub fn new(alpha: f64, m1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} outside [0, 1]"
            )));
        }
        if !(0.0..=1.0).contains(&m1) {
            return Err(Error::InvalidParameter(format!("m1 = {m1} outside [0, 1]")));
        }
        Ok(Self {
            alpha,
            beta: (1.0 - alpha * alpha).sqrt(),
            m1,
            m2: (1.0 - m1 * m1).sqrt(),
        })
    }

    /// Blank state fixed at `(|0> + |1>)/sqrt(2)`.
    pub fn with_balanced_blank(alpha: f64) -> Result<Self> {
        Self::new(alpha, FRAC_1_SQRT_2)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn m1(&self) -> f64 {
        self.m1
    }

    pub fn m2(&self) -> f64 {
        self.m2
    }

    /// True at `alpha` in `{0, 1}`, where the output is a product state.
    pub fn is_boundary(&self) -> bool {
        self.alpha == 0.0 || self.beta == 0.0
    }

    pub fn blank(&self) -> PureState {
        PureState {
            amplitudes: vec![C64::new(self.m1, 0.0), C64::new(self.m2, 0.0)],
        }
    }
}

/// Unit-norm state vector of dimension 2, 4 or 12.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if ![2, 4, 2 * 2 * ANCILLA_DIM].contains(&amplitudes.len()) {
            return Err(Error::InvalidState(format!(
                "pure states have dimension 2, 4 or 12, got {}",
                amplitudes.len()
            )));
        }
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if norm.is_nan() || (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("squared norm {norm} != 1")));
        }
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `|psi><psi|`.
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    /// Bloch vector `(<X>, <Y>, <Z>)` of a qubit state.
    pub fn bloch_vector(&self) -> Option<[f64; 3]> {
        if self.dim() != 2 {
            return None;
        }
        let (a, b) = (self.amplitudes[0], self.amplitudes[1]);
        let cross = a.conj() * b;
        Some([2.0 * cross.re, 2.0 * cross.im, a.norm_sqr() - b.norm_sqr()])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BellState {
    /// `(|01> + |10>)/sqrt(2)`
    PsiPlus,
    /// `(|01> - |10>)/sqrt(2)`, the singlet
    PsiMinus,
    /// `(|00> + |11>)/sqrt(2)`
    PhiPlus,
    /// `(|00> - |11>)/sqrt(2)`
    PhiMinus,
}

impl BellState {
    pub fn amplitudes(self) -> [C64; 4] {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        match self {
            BellState::PsiPlus => [ZERO, s, s, ZERO],
            BellState::PsiMinus => [ZERO, s, -s, ZERO],
            BellState::PhiPlus => [s, ZERO, ZERO, s],
            BellState::PhiMinus => [s, ZERO, ZERO, -s],
        }
    }
}

pub fn bell_state(kind: BellState) -> PureState {
    PureState {
        amplitudes: kind.amplitudes().to_vec(),
    }
}

/// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`.
pub fn pure_from_bloch(theta: f64, phi: f64) -> PureState {
    let (s, c) = (0.5 * theta).sin_cos();
    PureState {
        amplitudes: vec![C64::new(c, 0.0), C64::from_polar(s, phi)],
    }
}

/// Full machine output on qubits `a, b` and the ancilla:
/// `alpha^2 |0>|Sigma>|A0> + beta^2 |1>|Sigma>|A1> + alpha beta (|01> + |10>)|A>`.
pub fn deletion_pure_output(p: &DeletionParams) -> PureState {
    let idx = |a: usize, b: usize, k: Ancilla| (2 * a + b) * ANCILLA_DIM + k as usize;
    let (a2, b2, ab) = (p.alpha * p.alpha, p.beta * p.beta, p.alpha * p.beta);
    let blank = [p.m1, p.m2];

    let mut amps = vec![ZERO; 4 * ANCILLA_DIM];
    for (bit, m) in blank.iter().enumerate() {
        amps[idx(0, bit, Ancilla::Zero)] += C64::new(a2 * m, 0.0);
        amps[idx(1, bit, Ancilla::One)] += C64::new(b2 * m, 0.0);
    }
    amps[idx(0, 1, Ancilla::Ready)] += C64::new(ab, 0.0);
    amps[idx(1, 0, Ancilla::Ready)] += C64::new(ab, 0.0);
    PureState { amplitudes: amps }
}

/// Reduced two-qubit output
/// `alpha^4 |0><0| (x) P_Sigma + beta^4 |1><1| (x) P_Sigma + 2 alpha^2 beta^2 |psi+><psi+|`,
/// assembled term by term.
pub fn deletion_output(p: &DeletionParams) -> DensityMatrix {
    let blank = p.blank().projector();
    let p0 = ComplexMatrix::diag(&[ONE, ZERO]);
    let p1 = ComplexMatrix::diag(&[ZERO, ONE]);
    let psi_plus = bell_state(BellState::PsiPlus).projector();

    let a4 = p.alpha.powi(4);
    let b4 = p.beta.powi(4);
    let cross = 2.0 * (p.alpha * p.beta).powi(2);
    let rho = &(&kron(&p0, &blank).scale_real(a4) + &kron(&p1, &blank).scale_real(b4))
        + &psi_plus.scale_real(cross);
    DensityMatrix(rho)
}

/// Two-qubit reduction of [`deletion_pure_output`] obtained by tracing the
/// ancilla.
pub fn reduced_from_pure(p: &DeletionParams) -> ComplexMatrix {
    let full = deletion_pure_output(p).projector();
    partial_trace(&full, &[2, 2, ANCILLA_DIM], &[0, 1]).expect("fixed 2x2x3 layout")
}

/// `p |psi-><psi-| + (1 - p)/4 I`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "Werner weight p = {p} outside [0, 1]"
        )));
    }
    let singlet = bell_state(BellState::PsiMinus).projector();
    let noise = ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
    Ok(DensityMatrix(&singlet.scale_real(p) + &noise))
}

/// Hermitian, unit-trace, positive semidefinite 4x4 operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Validates a two-qubit density matrix (Hermitian within 1e-12, trace
    /// within 1e-12, eigenvalues above -1e-10).
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::Dimension(format!(
                "two-qubit density matrix must be 4x4, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let tr = m.trace();
        let dev = (tr - ONE).norm();
        if dev.is_nan() || dev > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let ev = hermitian_eigenvalues(&m)?;
        if ev[0] < PSD_FLOOR {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {:e}",
                ev[0]
            )));
        }
        Ok(Self(m))
    }

    pub fn from_pure(psi: &PureState) -> Result<Self> {
        if psi.dim() != 4 {
            return Err(Error::Dimension(format!(
                "two-qubit state needs dimension 4, got {}",
                psi.dim()
            )));
        }
        Ok(Self(psi.projector()))
    }

    /// `|ab><ab|` for computational basis bits.
    pub fn product_basis(a: usize, b: usize) -> Self {
        let mut m = ComplexMatrix::zeros(4, 4);
        let i = 2 * (a & 1) + (b & 1);
        m[(i, i)] = ONE;
        Self(m)
    }

    pub fn maximally_mixed() -> Self {
        Self(ComplexMatrix::identity(4).scale_real(0.25))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.0)
    }

    /// `(u_a (x) u_b) rho (u_a (x) u_b)^dagger`.
    pub fn local_unitary(&self, u_a: &ComplexMatrix, u_b: &ComplexMatrix) -> Result<Self> {
        let u = kron(u_a, u_b);
        if u.rows() != 4 {
            return Err(Error::Dimension("local unitaries must be 2x2".into()));
        }
        Ok(Self(&(&u * &self.0) * &u.adjoint()))
    }
}

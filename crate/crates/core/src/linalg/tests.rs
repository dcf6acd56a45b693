use std::f64::consts::FRAC_1_SQRT_2;

use proptest::prelude::*;

use super::*;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn real(rows: usize, cols: usize, data: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_real(rows, cols, data).unwrap()
}

fn psi_plus_projector() -> ComplexMatrix {
    let s = FRAC_1_SQRT_2;
    let v = [c(0.0), c(s), c(s), c(0.0)];
    ComplexMatrix::outer(&v, &v)
}

fn arb_complex_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
        ComplexMatrix::new(n, n, v.into_iter().map(|(a, b)| C64::new(a, b)).collect()).unwrap()
    })
}

fn arb_hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    arb_complex_matrix(n).prop_map(|m| m.hermitian_part())
}

/// Random density matrix `g g^dagger / tr`.
fn arb_density() -> impl Strategy<Value = ComplexMatrix> {
    arb_complex_matrix(4).prop_map(|g| {
        let p = &g * &g.adjoint();
        let t = p.trace().re;
        p.scale_real(1.0 / t)
    })
}

#[test]
fn constructor_rejects_bad_input() {
    assert!(matches!(
        ComplexMatrix::new(2, 2, vec![ONE; 3]),
        Err(Error::Dimension(_))
    ));
    assert_eq!(
        ComplexMatrix::from_real(1, 2, &[1.0, f64::NAN]),
        Err(Error::NonFinite)
    );
    assert_eq!(
        RealMatrix3::new([[0.0; 3], [0.0, f64::INFINITY, 0.0], [0.0; 3]]),
        Err(Error::NonFinite)
    );
}

#[test]
fn kron_identities() {
    let i2 = ComplexMatrix::identity(2);
    assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));

    let [sx, _, sz] = pauli();
    let expected = real(
        4,
        4,
        &[
            0.0, 1.0, 0.0, 0.0, //
            1.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, -1.0, //
            0.0, 0.0, -1.0, 0.0,
        ],
    );
    assert_eq!(kron(&sz, &sx), expected);
}

#[test]
fn kron_ket_zero_with_blank_projector() {
    let p0 = real(2, 2, &[1.0, 0.0, 0.0, 0.0]);
    let s = [c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)];
    let blank = ComplexMatrix::outer(&s, &s);
    let k = kron(&p0, &blank);
    for r in 0..4 {
        for col in 0..4 {
            let want = if r < 2 && col < 2 { 0.5 } else { 0.0 };
            assert!((k[(r, col)] - c(want)).norm() < 1e-15, "({r},{col})");
        }
    }
}

#[test]
fn partial_transpose_examples() {
    let mixed = ComplexMatrix::identity(4).scale_real(0.25);
    assert_eq!(partial_transpose_b(&mixed).unwrap(), mixed);

    let pt = partial_transpose_b(&psi_plus_projector()).unwrap();
    let ev = hermitian_eigenvalues(&pt).unwrap();
    for (got, want) in ev.iter().zip([-0.5, 0.5, 0.5, 0.5]) {
        assert!((got - want).abs() < 1e-14, "{ev:?}");
    }

    assert!(matches!(
        partial_transpose_b(&ComplexMatrix::identity(3)),
        Err(Error::Dimension(_))
    ));
}

#[test]
fn partial_trace_examples() {
    let half = ComplexMatrix::identity(2).scale_real(0.5);
    let bell = psi_plus_projector();
    for keep in [0, 1] {
        let r = partial_trace(&bell, &[2, 2], &[keep]).unwrap();
        assert!(r.max_abs_diff(&half) < 1e-15);
    }

    let rho_a = real(2, 2, &[0.7, 0.2, 0.2, 0.3]);
    let rho_b = ComplexMatrix::new(
        2,
        2,
        vec![c(0.4), C64::new(0.1, -0.3), C64::new(0.1, 0.3), c(0.6)],
    )
    .unwrap();
    let prod = kron(&rho_a, &rho_b);
    assert!(
        partial_trace(&prod, &[2, 2], &[0])
            .unwrap()
            .max_abs_diff(&rho_a)
            < 1e-15
    );
    assert!(
        partial_trace(&prod, &[2, 2], &[1])
            .unwrap()
            .max_abs_diff(&rho_b)
            < 1e-15
    );

    // three subsystems, trace out the middle one
    let rho_c = real(3, 3, &[0.5, 0.0, 0.1, 0.0, 0.25, 0.0, 0.1, 0.0, 0.25]);
    let triple = kron(&kron(&rho_a, &rho_c), &rho_b);
    let ab = partial_trace(&triple, &[2, 3, 2], &[0, 2]).unwrap();
    assert!(ab.max_abs_diff(&prod) < 1e-15);

    assert!(matches!(
        partial_trace(&prod, &[2, 3], &[0]),
        Err(Error::Dimension(_))
    ));
    assert!(matches!(
        partial_trace(&prod, &[2, 2], &[2]),
        Err(Error::Dimension(_))
    ));
}

#[test]
fn eigenvalue_examples() {
    let ev = hermitian_eigenvalues(&ComplexMatrix::identity(4)).unwrap();
    assert_eq!(ev, vec![1.0; 4]);

    let ev = hermitian_eigenvalues(&psi_plus_projector()).unwrap();
    for (got, want) in ev.iter().zip([0.0, 0.0, 0.0, 1.0]) {
        assert!((got - want).abs() < 1e-15);
    }

    // sigma_y has eigenvalues -1, 1 and no real structure at all
    let ev = hermitian_eigenvalues(&pauli()[1]).unwrap();
    assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
}

#[test]
fn eigenvalues_reject_non_hermitian() {
    let m = real(2, 2, &[1.0, 1e-6, 0.0, 1.0]);
    assert!(matches!(
        hermitian_eigenvalues(&m),
        Err(Error::NotHermitian(_))
    ));
    let within = real(2, 2, &[1.0, 1e-13, 0.0, 1.0]);
    assert!(hermitian_eigenvalues(&within).is_ok());
}

#[test]
fn determinant_small_cases() {
    let m = real(3, 3, &[2.0, 0.0, 1.0, 1.0, 3.0, 0.0, 0.0, 1.0, 4.0]);
    // 2*12 - 0 + 1*(1) = 25
    assert!((m.determinant().unwrap() - c(25.0)).norm() < 1e-12);
    let sy = &pauli()[1];
    assert!((sy.determinant().unwrap() - c(-1.0)).norm() < 1e-15);
    assert_eq!(ComplexMatrix::zeros(3, 3).determinant().unwrap(), ZERO);
}

#[test]
fn svd3_examples() {
    let id = svd3(&RealMatrix3::IDENTITY);
    assert_eq!(id.singular_values, [1.0, 1.0, 1.0]);
    assert_eq!(id.det_sign, 1.0);
    assert!(id.u.max_abs_diff(&RealMatrix3::IDENTITY) < 1e-15);
    assert!(id.v.max_abs_diff(&RealMatrix3::IDENTITY) < 1e-15);

    let d = svd3(&RealMatrix3::diag([0.5, 0.5, -0.5]));
    for s in d.singular_values {
        assert!((s - 0.5).abs() < 1e-15);
    }
    assert_eq!(d.det_sign, -1.0);

    let corr = RealMatrix3([[0.375, 0.0, 0.0], [0.0, 0.375, 0.0], [-0.5, 0.0, -0.375]]);
    let s = svd3(&corr);
    assert!(s.reconstruct().max_abs_diff(&corr) < 1e-10);
    assert_eq!(s.det_sign, -1.0);
    assert!((s.u.det() - 1.0).abs() < 1e-12 && (s.v.det() - 1.0).abs() < 1e-12);

    // rank one, product-state correlations
    let z = RealMatrix3::diag([0.0, 0.0, 1.0]);
    let s = svd3(&z);
    assert!(s.reconstruct().max_abs_diff(&z) < 1e-15);
    assert_eq!(s.singular_values[0], 1.0);

    let zero = svd3(&RealMatrix3([[0.0; 3]; 3]));
    assert_eq!(zero.singular_values, [0.0; 3]);
    assert!((zero.u.det() - 1.0).abs() < 1e-12);
}

proptest! {
    #[test]
    fn kron_associative_and_trace_multiplicative(
        a in arb_complex_matrix(2), b in arb_complex_matrix(2), cm in arb_complex_matrix(3)
    ) {
        let left = kron(&kron(&a, &b), &cm);
        let right = kron(&a, &kron(&b, &cm));
        prop_assert!(left.max_abs_diff(&right) < 1e-14);
        let t = kron(&a, &b).trace() - a.trace() * b.trace();
        prop_assert!(t.norm() < 1e-14);
    }

    #[test]
    fn partial_transpose_involution(rho in arb_density()) {
        let once = partial_transpose_b(&rho).unwrap();
        let twice = partial_transpose_b(&once).unwrap();
        prop_assert!(twice.max_abs_diff(&rho) <= 1e-15);
        prop_assert!((once.trace() - rho.trace()).norm() < 1e-15);
        prop_assert!(once.hermiticity_defect() < 1e-15);
    }

    #[test]
    fn partial_trace_preserves_trace(rho in arb_density()) {
        for keep in [0usize, 1] {
            let r = partial_trace(&rho, &[2, 2], &[keep]).unwrap();
            prop_assert!((r.trace() - rho.trace()).norm() < 1e-14);
        }
    }

    #[test]
    fn eigenvalues_match_trace_and_determinant(h in arb_hermitian(4)) {
        let ev = hermitian_eigenvalues(&h).unwrap();
        prop_assert!(ev.windows(2).all(|w| w[0] <= w[1]));
        let sum: f64 = ev.iter().sum();
        prop_assert!((sum - h.trace().re).abs() < 1e-10);
        let prod: f64 = ev.iter().product();
        prop_assert!((prod - h.determinant().unwrap().re).abs() < 1e-10);
    }

    #[test]
    fn symmetric_eigen_reconstructs(entries in prop::collection::vec(-2.0f64..2.0, 16)) {
        let eig = symmetric_eigen(&entries, 4).unwrap();
        for r in 0..4 {
            for col in 0..4 {
                let sym = 0.5 * (entries[r * 4 + col] + entries[col * 4 + r]);
                let rec: f64 = (0..4)
                    .map(|k| eig.values[k] * eig.vectors[k][r] * eig.vectors[k][col])
                    .sum();
                prop_assert!((rec - sym).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn svd3_reconstructs_with_proper_rotations(entries in prop::array::uniform9(-1.0f64..1.0)) {
        let m = RealMatrix3([
            [entries[0], entries[1], entries[2]],
            [entries[3], entries[4], entries[5]],
            [entries[6], entries[7], entries[8]],
        ]);
        let s = svd3(&m);
        prop_assert!(s.reconstruct().max_abs_diff(&m) <= 1e-10);
        prop_assert!((s.u.det() - 1.0).abs() < 1e-10);
        prop_assert!((s.v.det() - 1.0).abs() < 1e-10);
        let sv = s.singular_values;
        prop_assert!(sv[0] + 1e-12 >= sv[1] && sv[1] + 1e-12 >= sv[2] && sv[2] >= 0.0);
        if m.det().abs() > 1e-12 {
            prop_assert_eq!(s.det_sign, m.det().signum());
        }

        // independent path: sqrt of eigenvalues of m^T m
        let mtm = m.transpose() * m;
        let ev = symmetric_eigen(&mtm.as_flat(), 3).unwrap();
        for (k, s_k) in sv.iter().enumerate() {
            let lambda = ev.values[2 - k].max(0.0);
            prop_assert!((lambda.sqrt() - s_k).abs() < 1e-10 || lambda < 1e-18,
                "s = {:?}, eig = {:?}", sv, ev.values);
        }
    }
}

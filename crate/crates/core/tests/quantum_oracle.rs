//! Brute-force Fock-space checks of the L=0 seniority-basis matrices.

mod common;

use common::{c, d_states, oracle_matrix};
use esqpt::boson_algebra::{ibm, FockBasis};
use esqpt::classical_limit::{Branch, ModelParams};
use esqpt::ibm_quantum::{basis_dimension, build_basis, build_derivative, build_hamiltonian};
use nalgebra::SymmetricEigen;

#[test]
fn hamiltonian_matches_fock_oracle() {
    for &(beta, lambda) in &common::MATRIX_CASES {
        let params = ModelParams::new(beta, lambda).unwrap();
        for n in 1..=6 {
            let fast = build_hamiltonian(&params, &build_basis(n)).unwrap();
            let slow = oracle_matrix(&ibm::h_lambda_scaled(beta, lambda), n, 1.0 / n as f64);
            let err = (&fast - &slow).abs().max();
            assert!(err < 1e-10, "β={beta} λ={lambda} N={n}: {err}\n{fast}\n{slow}");
        }
    }
}

#[test]
fn derivative_matches_fock_oracle() {
    let beta = 1.55;
    let params = ModelParams::new(beta, 0.6).unwrap();
    let h = 1e-6;
    let n = 6;
    let lo = ibm::h1_scaled(beta, 0.6 - h);
    let hi = ibm::h1_scaled(beta, 0.6 + h);
    let fd = (oracle_matrix(&hi, n, 1.0) - oracle_matrix(&lo, n, 1.0)) / (2.0 * h * n as f64);
    let an = build_derivative(&params, &build_basis(n), Branch::SphericalToCritical).unwrap();
    assert!((&fd - &an).abs().max() < 1e-6);

    let s = ibm::s_pair(beta);
    let ss = &s * &s.adjoint();
    let right = oracle_matrix(&ss, n, 1.0 / n as f64);
    let an = build_derivative(&params, &build_basis(n), Branch::CriticalToDeformed).unwrap();
    assert!((&right - &an).abs().max() < 1e-10);
}

#[test]
fn basis_states_have_zero_angular_momentum() {
    let l2 = ibm::angular_momentum_squared();
    let levels = d_states(9);
    for (n, level) in levels.iter().enumerate() {
        for (_, st) in level {
            let img = st.apply(&l2);
            assert!(img.norm_sqr() < 1e-20, "n={n}");
        }
        // seniority states are orthonormal within a level
        for (a, sa) in level {
            for (b, sb) in level {
                let ov = sa.inner(sb);
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((ov - c(expect)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn dimension_matches_m_scheme_count() {
    let l2 = ibm::angular_momentum_squared();
    for n in 0..=6u16 {
        let basis = FockBasis::with_projection(n, 0);
        let m = basis.matrix(&l2).map(|z| z.re);
        let zeros = if basis.is_empty() {
            0
        } else {
            SymmetricEigen::new(m)
                .eigenvalues
                .iter()
                .filter(|e| e.abs() < 1e-8)
                .count()
        };
        assert_eq!(zeros, basis_dimension(n as usize), "N={n}");
    }
}

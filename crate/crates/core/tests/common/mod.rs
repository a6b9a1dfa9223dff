//! Brute-force Fock-space oracles shared by the oracle tests and the acceptance suite.
#![allow(dead_code)]

use esqpt::boson_algebra::{couple, dot, ibm, BosonExpr, FockState, Mode, TensorOp, N_MODES};
use esqpt::classical_limit::ModelParams;
use esqpt::excited_surfaces::{IntrinsicBosons, SurfaceModel};
use esqpt::ibm_quantum::{build_basis, build_hamiltonian, L0State};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// d-boson L=0 states `|n, τ⟩` built directly in the six-mode space.
pub fn d_states(n_max: usize) -> Vec<Vec<(usize, FockState)>> {
    let d = TensorOp::d_dagger();
    let pair = dot(&d, &d).unwrap();
    let cubic = dot(&couple(&d, &d, 2).unwrap(), &d).unwrap();
    let mut levels: Vec<Vec<(usize, FockState)>> = vec![vec![(0, FockState::vacuum())]];
    for n in 1..=n_max {
        let mut here: Vec<(usize, FockState)> = Vec::new();
        for tau in (0..=n).step_by(3).filter(|t| (n - t) % 2 == 0) {
            let st = if tau < n {
                let prev = &levels[n - 2].iter().find(|(t, _)| *t == tau).unwrap().1;
                prev.apply(&pair).normalized()
            } else {
                let prev = &levels[n - 3].iter().find(|(t, _)| *t == tau - 3).unwrap().1;
                let mut v = prev.apply(&cubic);
                for _ in 0..2 {
                    for (_, u) in &here {
                        let ov = u.inner(&v);
                        v = v.add_scaled(u, -ov);
                    }
                }
                v.normalized()
            };
            here.push((tau, st));
        }
        levels.push(here);
    }
    levels
}

fn full_state(levels: &[Vec<(usize, FockState)>], n_total: usize, s: L0State) -> FockState {
    let mut st = levels[s.nd].iter().find(|(t, _)| *t == s.tau).unwrap().1.clone();
    let sd = BosonExpr::creation(Mode::S);
    for _ in 0..(n_total - s.nd) {
        st = st.apply(&sd);
    }
    st.normalized()
}

pub fn oracle_matrix(op: &BosonExpr, n_total: usize, scale: f64) -> DMatrix<f64> {
    let basis = build_basis(n_total);
    let levels = d_states(n_total);
    let states: Vec<_> = basis
        .states()
        .iter()
        .map(|s| full_state(&levels, n_total, *s))
        .collect();
    let dim = states.len();
    let mut m = DMatrix::zeros(dim, dim);
    for j in 0..dim {
        let img = states[j].apply(op);
        for i in 0..dim {
            let v = states[i].inner(&img);
            assert!(v.im.abs() < 1e-12);
            m[(i, j)] = v.re * scale;
        }
    }
    m
}

fn creator(amps: &[f64; N_MODES]) -> BosonExpr {
    let mut e = BosonExpr::zero();
    for (k, &a) in amps.iter().enumerate() {
        if a != 0.0 {
            e = e + BosonExpr::creation(Mode::from_index(k)).scale(a);
        }
    }
    e
}

pub fn oracle_energy(h: &BosonExpr, n: usize, n_gamma: usize, amps: &[f64; N_MODES]) -> f64 {
    let b = creator(amps);
    let pair = BosonExpr::creation(Mode::d(2)) * BosonExpr::creation(Mode::d(-2));
    let mut st = FockState::vacuum();
    for _ in 0..n_gamma / 2 {
        st = st.apply(&pair);
    }
    for _ in 0..n - n_gamma {
        st = st.apply(&b);
    }
    let st = st.normalized();
    let v: Complex64 = st.expectation(h);
    assert!(v.im.abs() < 1e-10);
    v.re / (2.0 * (n * n) as f64)
}

pub const MATRIX_CASES: [(f64, f64); 6] = [
    (std::f64::consts::SQRT_2, 0.0),
    (std::f64::consts::SQRT_2, 0.35),
    (1.7, 0.8),
    (1.7, 1.0),
    (std::f64::consts::SQRT_2, 1.6),
    (1.3, 2.4),
];

/// Largest entrywise deviation of the seniority-basis Hamiltonian from the Fock oracle
/// over `MATRIX_CASES` and `1 ≤ N ≤ n_max`.
pub fn hamiltonian_deviation(n_max: usize) -> f64 {
    let mut worst = 0.0f64;
    for &(beta, lambda) in &MATRIX_CASES {
        let params = ModelParams::new(beta, lambda).unwrap();
        for n in 1..=n_max {
            let fast = build_hamiltonian(&params, &build_basis(n)).unwrap();
            let slow = oracle_matrix(&ibm::h_lambda_scaled(beta, lambda), n, 1.0 / n as f64);
            worst = worst.max((&fast - &slow).abs().max());
        }
    }
    worst
}

/// Largest deviation of the surface energies from the Fock oracle for `N ≤ n_max`,
/// every even `N_γ ≤ N` and `betas` random deformations on the axial cut.
pub fn coherent_deviation(n_max: usize, betas: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for &(b0, lam) in &[(std::f64::consts::SQRT_2, 0.7), (1.7, 1.45), (1.2, 2.3)] {
        let params = ModelParams::new(b0, lam).unwrap();
        let h = ibm::h_lambda_scaled(b0, lam);
        for n in 1..=n_max {
            let model = SurfaceModel::new(&params, n).unwrap();
            for n_gamma in (0..=n).step_by(2) {
                for _ in 0..betas {
                    let beta = rng.random_range(0.0..2f64.sqrt());
                    let amps = IntrinsicBosons::new(beta, 0.0).unwrap().condensate;
                    let fast = model.excited_energy(n_gamma, beta).unwrap();
                    worst = worst.max((fast - oracle_energy(&h, n, n_gamma, &amps)).abs());
                }
            }
        }
    }
    worst
}

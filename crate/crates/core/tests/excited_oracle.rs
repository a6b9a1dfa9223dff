//! Coherent-state expectation values against explicit Fock-space states.

mod common;

use common::oracle_energy;
use esqpt::boson_algebra::ibm;
use esqpt::classical_limit::{eval_h, ModelParams, PhasePoint};
use esqpt::excited_surfaces::{
    condensate_energy, excited_energy, surface_stationary_points, IntrinsicBosons, SurfaceModel,
    SurfacePointKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn condensate_matches_fock_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for &(b0, lam) in &[(2f64.sqrt(), 0.4), (1.7, 1.0), (1.2, 2.3)] {
        let params = ModelParams::new(b0, lam).unwrap();
        let h = ibm::h_lambda_scaled(b0, lam);
        for n in [1, 2, 4, 6] {
            for _ in 0..4 {
                let beta = rng.random_range(0.0..2f64.sqrt());
                let gamma = rng.random_range(0.0..std::f64::consts::TAU);
                let amps = IntrinsicBosons::new(beta, gamma).unwrap().condensate;
                let fast = condensate_energy(&params, n, beta, gamma).unwrap();
                let slow = oracle_energy(&h, n, 0, &amps);
                assert!((fast - slow).abs() < 1e-10, "N={n} β={beta}: {fast} vs {slow}");
            }
        }
    }
}

#[test]
fn excited_matches_fock_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for &(b0, lam) in &[(2f64.sqrt(), 0.7), (1.7, 1.45), (2f64.sqrt(), 4.0 / 3.0)] {
        let params = ModelParams::new(b0, lam).unwrap();
        let h = ibm::h_lambda_scaled(b0, lam);
        for n in [2, 5, 8] {
            let model = SurfaceModel::new(&params, n).unwrap();
            for n_gamma in (0..=n).step_by(2) {
                for _ in 0..3 {
                    let beta = rng.random_range(0.0..2f64.sqrt());
                    let amps = IntrinsicBosons::new(beta, 0.0).unwrap().condensate;
                    let fast = model.excited_energy(n_gamma, beta).unwrap();
                    let slow = oracle_energy(&h, n, n_gamma, &amps);
                    assert!(
                        (fast - slow).abs() < 1e-10,
                        "N={n} Nγ={n_gamma} β={beta}: {fast} vs {slow}"
                    );
                }
            }
        }
    }
}

#[test]
fn condensate_converges_as_one_over_n() {
    let params = ModelParams::new(1.7, 1.3).unwrap();
    let (beta, gamma) = (0.9f64, 0.4f64);
    let classical = eval_h(
        &params,
        &PhasePoint::new(beta * gamma.cos(), beta * gamma.sin(), 0.0, 0.0),
    )
    .unwrap();
    let cs: Vec<f64> = [10, 20, 40, 80]
        .iter()
        .map(|&n| (condensate_energy(&params, n, beta, gamma).unwrap() - classical) * n as f64)
        .collect();
    // the finite-N correction is exactly linear in 1/N for a two-body operator
    for c in &cs {
        assert!((c - cs[0]).abs() < 1e-9 * cs[0].abs().max(1.0), "{cs:?}");
    }
}

#[test]
fn beta_zero_surface_values() {
    let params = ModelParams::new(2f64.sqrt(), 2.0).unwrap();
    for n in [4, 8] {
        let e = condensate_energy(&params, n, 0.0, 0.0).unwrap();
        let slow = oracle_energy(
            &ibm::h_lambda_scaled(2f64.sqrt(), 2.0),
            n,
            0,
            &IntrinsicBosons::new(0.0, 0.0).unwrap().condensate,
        );
        assert!((e - slow).abs() < 1e-12);
    }
}

#[test]
fn degenerate_minima_at_critical_point() {
    let params = ModelParams::new(2f64.sqrt(), 1.0).unwrap();
    let pts = surface_stationary_points(&params, 2000, 0).unwrap();
    let mins: Vec<_> = pts.iter().filter(|p| p.kind != SurfacePointKind::Max).collect();
    assert_eq!(mins.len(), 2, "{pts:?}");
    let mut betas: Vec<f64> = mins.iter().map(|p| p.beta).collect();
    betas.sort_by(f64::total_cmp);
    assert!(betas[0] < 1e-6);
    assert!((betas[1] - 2.0 / 3f64.sqrt()).abs() < 5e-3, "{betas:?}");
    for m in mins {
        assert!(m.energy.abs() < 5e-3);
    }
}

#[test]
fn gamma_quanta_deepen_spherical_minimum() {
    let params = ModelParams::new(2f64.sqrt(), 4.0 / 3.0).unwrap();
    let n = 50;
    let model = SurfaceModel::new(&params, n).unwrap();
    // at Nγ = 0 the spherical point is marginal here, so compare V(0) directly
    let gap = |ng: usize| {
        let pts = model.stationary_points(ng).unwrap();
        let def = pts.iter().find(|p| p.kind != SurfacePointKind::Max && p.beta > 0.3);
        let v0 = model.excited_energy(ng, 0.0).unwrap();
        match def {
            Some(d) => v0 - d.energy,
            None => panic!("Nγ={ng}: {pts:?}"),
        }
    };
    let g: Vec<f64> = [0, 2, 4, 6, 8].iter().map(|&ng| gap(ng)).collect();
    for w in g.windows(2) {
        assert!(w[1] < w[0], "{g:?}");
    }
}

#[test]
fn odd_gamma_count_is_a_domain_error() {
    let params = ModelParams::new(2f64.sqrt(), 1.0).unwrap();
    let err = excited_energy(&params, 10, 1, 0.3).unwrap_err();
    assert!(err.to_string().contains("K=0"));
}

//! Stationary-point census, boundary extrema and spinodal points against independent checks.

use esqpt::classical_limit::{grad_h, hamiltonian, ModelParams, PhasePoint};
use esqpt::stationary_analysis::{
    antispinodal_closed_form, boundary_extrema, boundary_range_closed_form,
    find_stationary_points, spinodal_points, StationaryBranch,
};
use nalgebra::{Matrix4, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const S2: f64 = std::f64::consts::SQRT_2;

const CUTS: [(f64, f64); 8] = [
    (S2, 0.2),
    (S2, 1.0),
    (S2, 1.6),
    (S2, 2.5),
    (1.7, 0.12),
    (1.7, 0.65),
    (1.7, 1.45),
    (1.7, 2.9),
];

fn h(p: &ModelParams, v: [f64; 4]) -> f64 {
    hamiltonian(p, v)
}

/// Central second differences of the plain energy.
fn fd_hessian(p: &ModelParams, v: [f64; 4]) -> Matrix4<f64> {
    let s = 1e-4;
    let mut m = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            let at = |di: f64, dj: f64| {
                let mut w = v;
                w[i] += di;
                w[j] += dj;
                h(p, w)
            };
            m[(i, j)] = (at(s, s) - at(s, -s) - at(-s, s) + at(-s, -s)) / (4.0 * s * s);
        }
    }
    m
}

#[test]
fn census_points_are_stationary_with_correct_index() {
    for (b, l) in CUTS {
        let p = ModelParams::new(b, l).unwrap();
        let c = find_stationary_points(&p).unwrap();
        assert!(!c.points.is_empty());
        for s in c.points.iter().filter(|s| s.branch != StationaryBranch::Boundary) {
            let g = grad_h(&p, &s.location).unwrap();
            assert!(g.iter().all(|x| x.abs() <= 1e-9), "({b}, {l}): {g:?}");
            let v = s.location.to_array();
            assert!((h(&p, v) - s.energy).abs() < 1e-12);
            if let (Some(r), false) = (s.index_r, s.degenerate) {
                let ev = SymmetricEigen::new(fd_hessian(&p, v)).eigenvalues;
                let scale = ev.iter().fold(1e-3f64, |m, x| m.max(x.abs()));
                let neg = ev.iter().filter(|x| **x < -1e-4 * scale).count();
                assert_eq!(neg, r, "({b}, {l}) at {:?}: {ev:?}", s.location);
            }
        }
    }
}

#[test]
fn origin_is_always_stationary() {
    for (b, l) in CUTS {
        let p = ModelParams::new(b, l).unwrap();
        let c = find_stationary_points(&p).unwrap();
        let o = c.points.iter().find(|s| s.location.r2() < 1e-16).expect("origin missing");
        assert!((o.energy - h(&p, [0.0; 4])).abs() < 1e-14);
        if l <= 1.0 {
            assert!(o.energy.abs() < 1e-14);
        }
    }
}

#[test]
fn kinetic_points_come_in_momentum_pairs() {
    for (b, l) in CUTS {
        let p = ModelParams::new(b, l).unwrap();
        let c = find_stationary_points(&p).unwrap();
        for s in c.points.iter().filter(|s| s.branch == StationaryBranch::Kinetic) {
            let mirror = s.location.time_reversed();
            let partner = c
                .points
                .iter()
                .find(|t| t.location.distance(&mirror) < 1e-6)
                .unwrap_or_else(|| panic!("({b}, {l}): no partner for {:?}", s.location));
            assert!((partner.energy - s.energy).abs() < 1e-10);
            assert_eq!(partner.index_r, s.index_r);
        }
    }
}

#[test]
fn boundary_extrema_follow_closed_form() {
    for b in [S2, 1.7] {
        for k in 0..=16 {
            let l = 0.2 * k as f64;
            let a = boundary_extrema(&ModelParams::new(b, l).unwrap()).unwrap();
            let (lo, hi) = boundary_range_closed_form(l);
            assert!((a.min() - lo).abs() < 1e-6, "β₀′={b} λ={l}: min {}", a.min());
            assert!((a.max() - hi).abs() < 1e-6, "β₀′={b} λ={l}: max {}", a.max());
        }
    }
}

#[test]
fn random_boundary_points_stay_within_extrema() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for (b, l) in CUTS {
        let p = ModelParams::new(b, l).unwrap();
        let a = boundary_extrema(&p).unwrap();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for _ in 0..20_000 {
            let d: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>() - 0.5);
            let n = d.iter().map(|x| x * x).sum::<f64>().sqrt();
            let e = h(&p, d.map(|x| S2 * x / n * (1.0 - 1e-15)));
            lo = lo.min(e);
            hi = hi.max(e);
        }
        assert!(lo >= a.min() - 1e-6 && hi <= a.max() + 1e-6, "({b}, {l})");
        assert!(lo - a.min() < 0.05 && a.max() - hi < 0.05, "({b}, {l}): {lo} {hi}");
    }
}

#[test]
fn antispinodal_matches_curvature_sign_change() {
    for b in [S2, 1.7] {
        let s = spinodal_points(b).unwrap();
        let want = antispinodal_closed_form(b);
        assert!((s.lambda_star_star.unwrap() - want).abs() < 1e-3, "{s:?}");
        // curvature of the potential along x at the origin changes sign there
        let p = ModelParams::new(b, want).unwrap();
        let e = 1e-4;
        let curv = |p: &ModelParams| {
            (h(p, [e, 0.0, 0.0, 0.0]) + h(p, [-e, 0.0, 0.0, 0.0]) - 2.0 * h(p, [0.0; 4])) / (e * e)
        };
        assert!(curv(&p).abs() < 1e-3, "{}", curv(&p));
        assert!(curv(&ModelParams::new(b, want - 0.01).unwrap()) > 0.0);
        assert!(curv(&ModelParams::new(b, want + 0.01).unwrap()) < 0.0);
        assert!(s.lambda_star.unwrap() < want);
    }
}

#[test]
fn out_of_domain_point_is_rejected() {
    let p = ModelParams::new(S2, 1.0).unwrap();
    assert!(grad_h(&p, &PhasePoint::new(1.5, 0.0, 0.5, 0.0)).is_err());
}

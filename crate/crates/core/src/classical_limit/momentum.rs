//! Solutions of `∂ℋ/∂p = 0` at fixed coordinates.

use super::hamiltonian::hamiltonian;
use super::jet::Jet;
use super::params::ModelParams;
use super::point::R0;
use crate::error::{Error, Result};

/// Seed grid per axis over the momentum disc.
pub const DEFAULT_MOMENTUM_GRID: usize = 64;
/// Two solutions closer than this are the same branch.
pub const MOMENTUM_DEDUP: f64 = 1e-8;

fn momentum_jet(params: &ModelParams, q: [f64; 2], p: [f64; 2]) -> Jet {
    hamiltonian(params, Jet::variables([q[0], q[1], p[0], p[1]]))
}

/// Newton iteration on the momentum gradient. Returns the converged momentum, if any,
/// strictly inside the disc `|p|² < rho2`.
pub(crate) fn polish_momentum(
    params: &ModelParams,
    q: [f64; 2],
    mut p: [f64; 2],
    rho2: f64,
) -> Option<[f64; 2]> {
    let max_step = 0.25 * rho2.sqrt();
    for _ in 0..60 {
        let j = momentum_jet(params, q, p);
        let (g0, g1) = (j.g[2], j.g[3]);
        if g0.hypot(g1) < 1e-13 {
            return (p[0] * p[0] + p[1] * p[1] < rho2).then_some(p);
        }
        let (a, b, d) = (j.h[2][2], j.h[2][3], j.h[3][3]);
        let det = a * d - b * b;
        if det.abs() < 1e-14 {
            return None;
        }
        let mut dp = [-(d * g0 - b * g1) / det, -(a * g1 - b * g0) / det];
        let len = dp[0].hypot(dp[1]);
        if len > max_step {
            dp = [dp[0] * max_step / len, dp[1] * max_step / len];
        }
        p = [p[0] + dp[0], p[1] + dp[1]];
        if p[0] * p[0] + p[1] * p[1] >= rho2 {
            return None;
        }
    }
    None
}

/// All momentum stationary solutions at coordinates `q`, seeded from the default grid.
pub fn momentum_branches(params: &ModelParams, q: [f64; 2]) -> Result<Vec<[f64; 2]>> {
    momentum_branches_with(params, q, DEFAULT_MOMENTUM_GRID)
}

/// As [`momentum_branches`] with a `grid × grid` seed lattice. The first entry is always
/// `p = 0`; the rest come in `±p` pairs, sorted.
pub fn momentum_branches_with(
    params: &ModelParams,
    q: [f64; 2],
    grid: usize,
) -> Result<Vec<[f64; 2]>> {
    let rho2 = R0 * R0 - q[0] * q[0] - q[1] * q[1];
    if rho2 <= 0.0 {
        return Err(Error::Domain(format!(
            "coordinates {q:?} are not inside the disc x² + y² < 2"
        )));
    }
    let rho = rho2.sqrt();
    let mut found: Vec<[f64; 2]> = vec![[0.0, 0.0]];
    let push = |found: &mut Vec<[f64; 2]>, p: [f64; 2]| {
        if found
            .iter()
            .all(|f| (f[0] - p[0]).hypot(f[1] - p[1]) > MOMENTUM_DEDUP)
        {
            found.push(p);
        }
    };
    for i in 0..grid {
        for k in 0..grid {
            let seed = [
                rho * (-1.0 + (2 * i + 1) as f64 / grid as f64),
                rho * (-1.0 + (2 * k + 1) as f64 / grid as f64),
            ];
            if seed[0] * seed[0] + seed[1] * seed[1] >= rho2 {
                continue;
            }
            if let Some(p) = polish_momentum(params, q, seed, rho2) {
                if p[0].hypot(p[1]) <= MOMENTUM_DEDUP {
                    continue;
                }
                push(&mut found, p);
                push(&mut found, [-p[0], -p[1]]);
            }
        }
    }
    let mut rest = found.split_off(1);
    rest.sort_by(|a, b| a.partial_cmp(b).expect("finite momenta"));
    found.extend(rest);
    Ok(found)
}

//! Spinodal and antispinodal points of the ground-state potential.

use serde::Serialize;

use super::points::{classify_point, find_stationary_points_with, SearchOptions};
use crate::classical_limit::{ModelParams, PhasePoint};
use crate::error::Result;

/// Bisection tolerance on λ.
pub const SPINODAL_TOL: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpinodalPoints {
    pub beta0p: f64,
    /// Onset of the deformed minimum that persists up to `λ**`; `None` when that minimum
    /// emerges from the boundary at vanishing λ.
    pub lambda_star: Option<f64>,
    /// Last λ at which the origin is a minimum; `None` if it stays one up to the scan limit.
    pub lambda_star_star: Option<f64>,
}

/// `1 + 1/(1 + β₀′²)`, where the quadratic term of the potential at `β = 0` changes sign.
pub fn antispinodal_closed_form(beta0p: f64) -> f64 {
    1.0 + 1.0 / (1.0 + beta0p * beta0p)
}

fn origin_is_min(beta0p: f64, lambda: f64) -> Result<bool> {
    let p = classify_point(&ModelParams::new(beta0p, lambda)?, PhasePoint::ORIGIN)?;
    Ok(p.index_r == Some(0))
}

/// Largest `R²` among deformed minima of the potential, if any.
fn deformed_min_r2(beta0p: f64, lambda: f64) -> Result<Option<f64>> {
    let opts = SearchOptions {
        seeds: 0,
        potential_seeds: 600,
        ..SearchOptions::default()
    };
    let c = find_stationary_points_with(&ModelParams::new(beta0p, lambda)?, &opts)?;
    Ok(c
        .points
        .iter()
        .filter(|p| p.index_r == Some(0) && p.location.coord_r2().sqrt() > 1e-4)
        .map(|p| p.location.r2())
        .reduce(f64::max))
}

fn has_deformed_min(beta0p: f64, lambda: f64) -> Result<bool> {
    Ok(deformed_min_r2(beta0p, lambda)?.is_some())
}

/// A minimum born at the boundary rather than in a saddle-node pair exists for
/// arbitrarily small λ; only the seed margin hides it.
const BOUNDARY_BIRTH_R2: f64 = 2.0 - 0.05;

/// Smallest λ in `[lo, hi]` where `pred` turns true, assuming it is false at `lo`.
fn bisect(mut lo: f64, mut hi: f64, pred: &dyn Fn(f64) -> Result<bool>) -> Result<f64> {
    while hi - lo > SPINODAL_TOL {
        let mid = 0.5 * (lo + hi);
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Scan limit and step for locating the first sign change.
const SCAN_MAX: f64 = 4.0;
const SCAN_STEP: f64 = 0.02;

pub fn spinodal_points(beta0p: f64) -> Result<SpinodalPoints> {
    ModelParams::new(beta0p, 0.0)?;
    let steps = (SCAN_MAX / SCAN_STEP).round() as usize;
    let grid: Vec<f64> = (0..=steps).map(|k| k as f64 * SCAN_STEP).collect();

    let mut lambda_star_star = None;
    for w in grid.windows(2) {
        if !origin_is_min(beta0p, w[1])? {
            lambda_star_star = Some(bisect(w[0], w[1], &|l| Ok(!origin_is_min(beta0p, l)?))?);
            break;
        }
    }
    // Walk down from λ** while the deformed minimum persists. A transient minimum
    // hugging the boundary at small λ (present for β₀′ > √2) is thereby skipped.
    let limit = lambda_star_star.unwrap_or(SCAN_MAX);
    let mut lambda_star = None;
    let mut hi = None;
    for &l in grid.iter().rev() {
        if l >= limit {
            continue;
        }
        if l <= 0.0 {
            break;
        }
        if has_deformed_min(beta0p, l)? {
            hi = Some(l);
        } else {
            if let Some(h) = hi {
                let s = bisect(l, h, &|x| has_deformed_min(beta0p, x))?;
                let r2 = deformed_min_r2(beta0p, s + SPINODAL_TOL)?;
                if r2.is_none_or(|r2| r2 < BOUNDARY_BIRTH_R2) {
                    lambda_star = Some(s);
                }
            }
            break;
        }
    }
    Ok(SpinodalPoints {
        beta0p,
        lambda_star,
        lambda_star_star,
    })
}

//! Census of interior stationary points of the classical Hamiltonian.

use nalgebra::{Matrix4, SymmetricEigen, Vector4};
use rayon::prelude::*;
use serde::Serialize;

use crate::classical_limit::{hamiltonian, jet_h, Jet, ModelParams, PhasePoint, R0};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StationaryBranch {
    TrivialMomentum,
    Kinetic,
    Boundary,
}

impl StationaryBranch {
    pub fn as_str(self) -> &'static str {
        match self {
            StationaryBranch::TrivialMomentum => "trivial_momentum",
            StationaryBranch::Kinetic => "kinetic",
            StationaryBranch::Boundary => "boundary",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StationaryPoint {
    pub location: PhasePoint,
    pub energy: f64,
    /// Number of negative Hessian eigenvalues; `None` when flagged degenerate.
    pub index_r: Option<usize>,
    pub degenerate: bool,
    pub branch: StationaryBranch,
    /// Ascending; absent for boundary points.
    pub hessian_eigenvalues: Option<[f64; 4]>,
}

/// Relative threshold below which a Hessian eigenvalue counts as zero.
pub const DEGENERACY_REL: f64 = 1e-6;
/// Momentum norm separating kinetic points from trivial-momentum ones.
pub const KINETIC_P: f64 = 1e-6;
/// Interior search stays inside `R² ≤ 2 − INTERIOR_MARGIN`.
pub const INTERIOR_MARGIN: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchOptions {
    /// Quasi-random seeds in the 4-ball for the full-gradient search.
    pub seeds: usize,
    /// Seeds on the coordinate disc for the `p = 0` potential search.
    pub potential_seeds: usize,
    pub max_iter: usize,
    /// Convergence threshold on `|∇ℋ|`.
    pub grad_tol: f64,
    /// Points closer than this are merged.
    pub dedup: f64,
    /// Extra starting points, typically the previous step of a continuation.
    #[serde(skip)]
    pub extra_seeds: Vec<PhasePoint>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seeds: 20_000,
            potential_seeds: 2_000,
            max_iter: 200,
            grad_tol: 1e-11,
            dedup: 1e-6,
            extra_seeds: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchDiagnostics {
    pub seeds: usize,
    pub converged: usize,
    /// Polishes that hit the iteration limit; the seed is discarded.
    pub unconverged: usize,
    /// Polishes that ran into the boundary margin.
    pub left_domain: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct StationaryCensus {
    pub params: ModelParams,
    pub points: Vec<StationaryPoint>,
    pub diagnostics: SearchDiagnostics,
}

impl StationaryCensus {
    /// One point per symmetry orbit, lowest energy first.
    pub fn orbit_representatives(&self) -> Vec<StationaryPoint> {
        let mut reps: Vec<StationaryPoint> = Vec::new();
        for p in &self.points {
            if reps
                .iter()
                .all(|r| r.location.orbit_distance(&p.location) > 1e-6)
            {
                reps.push(*p);
            }
        }
        reps
    }
}

/// Radical inverse of `i` in base `b`.
fn radical_inverse(mut i: u64, b: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let inv = 1.0 / b as f64;
    while i > 0 {
        f *= inv;
        r += f * (i % b) as f64;
        i /= b;
    }
    r
}

/// Halton points mapped into the ball `R² < 2` by rejection from the enclosing cube.
pub fn halton_ball(count: usize) -> Vec<PhasePoint> {
    let mut out = Vec::with_capacity(count);
    let mut i = 1u64;
    let lim = R0 * R0 - INTERIOR_MARGIN;
    while out.len() < count {
        let c = [2, 3, 5, 7].map(|b| R0 * (2.0 * radical_inverse(i, b) - 1.0));
        i += 1;
        let p = PhasePoint::from_array(c);
        if p.r2() < lim {
            out.push(p);
        }
    }
    out
}

fn halton_disc(count: usize) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(count);
    let mut i = 1u64;
    let lim = R0 * R0 - INTERIOR_MARGIN;
    while out.len() < count {
        let c = [2, 3].map(|b| R0 * (2.0 * radical_inverse(i, b) - 1.0));
        i += 1;
        if c[0] * c[0] + c[1] * c[1] < lim {
            out.push(c);
        }
    }
    out
}

enum Polish {
    Converged(PhasePoint),
    Unconverged,
    LeftDomain,
}

/// Levenberg–Marquardt on `∇ℋ = 0` with the Hessian as Jacobian. With `coords_only`
/// the momenta stay at zero and only the `(x, y)` block is used.
fn polish(params: &ModelParams, start: PhasePoint, opts: &SearchOptions, coords_only: bool) -> Polish {
    let lim = R0 * R0 - INTERIOR_MARGIN;
    let dims = if coords_only { 2 } else { 4 };
    let eval = |z: &[f64; 4]| -> Jet { hamiltonian(params, Jet::variables(*z)) };
    let norm = |j: &Jet| -> f64 { j.g[..dims].iter().map(|v| v * v).sum::<f64>().sqrt() };
    let mut z = start.to_array();
    let mut j = eval(&z);
    let mut gn = norm(&j);
    let mut mu = 1e-6;
    let mut checkpoint = gn;
    for it in 0..opts.max_iter {
        if gn < opts.grad_tol {
            return Polish::Converged(PhasePoint::from_array(z));
        }
        // stalled on a nonzero local minimum of |∇ℋ|
        if it % 25 == 24 {
            if gn > 1e-6 && gn > 0.5 * checkpoint {
                return Polish::Unconverged;
            }
            checkpoint = gn;
        }
        let h = Matrix4::from_fn(|a, b| if a < dims && b < dims { j.h[a][b] } else { 0.0 });
        let g = Vector4::from_fn(|a, _| if a < dims { j.g[a] } else { 0.0 });
        let hth = h.transpose() * h;
        let rhs = h.transpose() * g;
        let mut accepted = false;
        for _ in 0..40 {
            let mut m = hth;
            for a in 0..dims {
                m[(a, a)] += mu * (1.0 + hth[(a, a)]);
            }
            for a in dims..4 {
                m[(a, a)] = 1.0;
            }
            let Some(step) = m.cholesky().map(|c| c.solve(&rhs)) else {
                mu *= 10.0;
                continue;
            };
            let mut len = step.norm();
            let scale = if len > 0.2 { 0.2 / len } else { 1.0 };
            len *= scale;
            let mut trial = z;
            for a in 0..dims {
                trial[a] -= scale * step[a];
            }
            let r2: f64 = trial.iter().map(|v| v * v).sum();
            if r2 < lim {
                let jt = eval(&trial);
                let gt = norm(&jt);
                if gt < gn || (len < 1e-15 && gt <= gn) {
                    z = trial;
                    j = jt;
                    gn = gt;
                    mu = (mu / 3.0).max(1e-15);
                    accepted = true;
                    break;
                }
            }
            mu *= 4.0;
        }
        if !accepted {
            let r2: f64 = z.iter().map(|v| v * v).sum();
            return if r2 > lim * (1.0 - 1e-6) {
                Polish::LeftDomain
            } else if gn < 1e3 * opts.grad_tol {
                Polish::Converged(PhasePoint::from_array(z))
            } else {
                Polish::Unconverged
            };
        }
    }
    if gn < opts.grad_tol {
        Polish::Converged(PhasePoint::from_array(z))
    } else {
        Polish::Unconverged
    }
}

/// Hessian index and degeneracy flag.
pub fn classify_hessian(h: &Matrix4<f64>) -> ([f64; 4], Option<usize>, bool) {
    let eig = SymmetricEigen::new(*h).eigenvalues;
    let mut ev = [eig[0], eig[1], eig[2], eig[3]];
    ev.sort_by(f64::total_cmp);
    let scale = ev.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let degenerate = scale == 0.0 || ev.iter().any(|v| v.abs() < DEGENERACY_REL * scale);
    let r = ev.iter().filter(|v| **v < 0.0).count();
    (ev, (!degenerate).then_some(r), degenerate)
}

/// Classifies an interior point assumed stationary.
pub fn classify_point(params: &ModelParams, location: PhasePoint) -> Result<StationaryPoint> {
    let j = jet_h(params, &location)?;
    let h = Matrix4::from_fn(|a, b| j.h[a][b]);
    let (ev, r, degenerate) = classify_hessian(&h);
    let branch = if location.momentum_norm() > KINETIC_P {
        StationaryBranch::Kinetic
    } else {
        StationaryBranch::TrivialMomentum
    };
    Ok(StationaryPoint {
        location,
        energy: j.v,
        index_r: r,
        degenerate,
        branch,
        hessian_eigenvalues: Some(ev),
    })
}

fn canonical_order(a: &PhasePoint, b: &PhasePoint) -> std::cmp::Ordering {
    a.to_array()
        .iter()
        .zip(b.to_array().iter())
        .map(|(u, v)| u.total_cmp(v))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// At `λ = 0` the Hamiltonian depends on `R²` only, so the stationary set is the origin
/// plus possibly a whole 3-sphere. That sphere is reported by one degenerate representative.
fn radial_census(params: &ModelParams) -> Result<Vec<StationaryPoint>> {
    let b2 = params.beta0p() * params.beta0p();
    let mut pts = vec![classify_point(params, PhasePoint::ORIGIN)?];
    if b2 > 1.0 {
        let hs = b2 / (2.0 * (b2 - 1.0));
        if hs < 1.0 - INTERIOR_MARGIN {
            let loc = PhasePoint::new((2.0 * hs).sqrt(), 0.0, 0.0, 0.0);
            let mut p = classify_point(params, loc)?;
            p.degenerate = true;
            p.index_r = None;
            pts.push(p);
        }
    }
    Ok(pts)
}

/// All interior stationary points with default search settings.
pub fn find_stationary_points(params: &ModelParams) -> Result<StationaryCensus> {
    find_stationary_points_with(params, &SearchOptions::default())
}

pub fn find_stationary_points_with(
    params: &ModelParams,
    opts: &SearchOptions,
) -> Result<StationaryCensus> {
    if params.lambda() == 0.0 {
        let points = radial_census(params)?;
        return Ok(StationaryCensus {
            params: *params,
            points,
            diagnostics: SearchDiagnostics::default(),
        });
    }
    let mut starts: Vec<(PhasePoint, bool)> = halton_disc(opts.potential_seeds)
        .into_iter()
        .map(|q| (PhasePoint::new(q[0], q[1], 0.0, 0.0), true))
        .collect();
    starts.push((PhasePoint::ORIGIN, true));
    starts.extend(halton_ball(opts.seeds).into_iter().map(|p| (p, false)));
    starts.extend(opts.extra_seeds.iter().map(|p| (*p, false)));

    let outcomes: Vec<Polish> = starts
        .par_iter()
        .map(|(s, coords)| polish(params, *s, opts, *coords))
        .collect();
    let mut diag = SearchDiagnostics {
        seeds: starts.len(),
        ..Default::default()
    };
    let mut raw = Vec::new();
    for o in outcomes {
        match o {
            Polish::Converged(p) => {
                diag.converged += 1;
                raw.push(p);
            }
            Polish::Unconverged => diag.unconverged += 1,
            Polish::LeftDomain => diag.left_domain += 1,
        }
    }
    // complete every orbit, then re-polish the images so all are stationary to tolerance
    let mut reps: Vec<PhasePoint> = Vec::new();
    for p in raw {
        if reps.iter().all(|r| r.orbit_distance(&p) > opts.dedup) {
            reps.push(p);
        }
    }
    let mut found: Vec<PhasePoint> = Vec::new();
    for r in reps {
        for img in r.symmetry_orbit() {
            let img = match polish(params, img, opts, false) {
                Polish::Converged(q) => q,
                _ => continue,
            };
            if found.iter().all(|f| f.distance(&img) > opts.dedup) {
                found.push(img);
            }
        }
    }
    found.sort_by(canonical_order);
    let mut points = found
        .into_iter()
        .map(|p| classify_point(params, p))
        .collect::<Result<Vec<_>>>()?;
    points.sort_by(|a, b| {
        a.energy
            .total_cmp(&b.energy)
            .then_with(|| canonical_order(&a.location, &b.location))
    });
    Ok(StationaryCensus {
        params: *params,
        points,
        diagnostics: diag,
    })
}

//! Continuation of stationary points over λ into critical borderlines `E_c(λ)`.

use serde::Serialize;

use super::boundary::boundary_extrema_with;
use super::points::{
    find_stationary_points_with, SearchOptions, StationaryBranch, StationaryPoint,
};
use crate::classical_limit::{ModelParams, PhasePoint};
use crate::error::{Error, Result};

/// Singularity classes of the level-density derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SingularityClass {
    /// `r = 0`: upward jump.
    I,
    /// `r = 1`: positive logarithmic divergence.
    II,
    /// `r = 2`: downward jump.
    III,
    /// `r = 3`: negative logarithmic divergence.
    IV,
    /// `r = 4`: upward jump.
    V,
    /// Boundary extremum.
    VI,
}

impl SingularityClass {
    pub fn from_index(r: usize) -> Option<Self> {
        Some(match r {
            0 => SingularityClass::I,
            1 => SingularityClass::II,
            2 => SingularityClass::III,
            3 => SingularityClass::IV,
            4 => SingularityClass::V,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SingularityClass::I => "i",
            SingularityClass::II => "ii",
            SingularityClass::III => "iii",
            SingularityClass::IV => "iv",
            SingularityClass::V => "v",
            SingularityClass::VI => "vi",
        }
    }
}

/// Which boundary extremum a class-(vi) curve follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryRole {
    Min,
    Max,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalBorderline {
    pub lambda_grid: Vec<f64>,
    pub energies: Vec<f64>,
    /// One representative location per λ (absent for boundary curves).
    pub locations: Vec<PhasePoint>,
    pub singularity_class: SingularityClass,
    pub branch: StationaryBranch,
    pub boundary_role: Option<BoundaryRole>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BorderlineTrace {
    pub beta0p: f64,
    pub curves: Vec<CriticalBorderline>,
    pub warnings: Vec<String>,
    pub unconverged_seeds: usize,
}

impl BorderlineTrace {
    pub fn kinetic_curves(&self) -> impl Iterator<Item = &CriticalBorderline> {
        self.curves
            .iter()
            .filter(|c| c.branch == StationaryBranch::Kinetic)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceOptions {
    /// Seeds per λ for the full search; previous points are always added as seeds.
    pub seeds: usize,
    pub potential_seeds: usize,
    /// Allowed location jump per unit λ.
    pub jump_per_lambda: f64,
    /// Smallest allowed location jump per step.
    pub min_jump: f64,
    /// A curve may resume after this many λ steps without a match.
    pub max_gap: usize,
    /// Fragments of one class separated by at most this many steps are joined when
    /// their energies continue each other.
    pub stitch_gap: usize,
    /// Allowed deviation from the linearly extrapolated energy when stitching.
    pub stitch_energy_tol: f64,
    /// Boundary seeds per λ.
    pub boundary_seeds: usize,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            seeds: 3_000,
            potential_seeds: 600,
            jump_per_lambda: 5.0,
            min_jump: 0.05,
            max_gap: 3,
            stitch_gap: 12,
            stitch_energy_tol: 0.02,
            boundary_seeds: 100,
        }
    }
}

struct Open {
    curve: CriticalBorderline,
    last: PhasePoint,
    last_step: usize,
    index: usize,
}

/// Traces every non-degenerate interior stationary point across the λ grid, plus the
/// boundary minimum and maximum as class-(vi) curves.
pub fn trace_borderlines(beta0p: f64, lambda_grid: &[f64]) -> Result<BorderlineTrace> {
    trace_borderlines_with(beta0p, lambda_grid, &TraceOptions::default())
}

pub fn trace_borderlines_with(
    beta0p: f64,
    lambda_grid: &[f64],
    opts: &TraceOptions,
) -> Result<BorderlineTrace> {
    if lambda_grid.is_empty() {
        return Err(Error::Domain("λ grid is empty".into()));
    }
    if lambda_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain("λ grid must be strictly increasing".into()));
    }
    let mut open: Vec<Open> = Vec::new();
    let mut closed: Vec<CriticalBorderline> = Vec::new();
    let mut warnings = Vec::new();
    let mut unconverged = 0;
    let mut prev: Vec<PhasePoint> = Vec::new();
    let mut bmin = CriticalBorderline {
        lambda_grid: Vec::new(),
        energies: Vec::new(),
        locations: Vec::new(),
        singularity_class: SingularityClass::VI,
        branch: StationaryBranch::Boundary,
        boundary_role: Some(BoundaryRole::Min),
    };
    let mut bmax = bmin.clone();
    bmax.boundary_role = Some(BoundaryRole::Max);

    for (step, &lam) in lambda_grid.iter().enumerate() {
        let params = ModelParams::new(beta0p, lam)?;
        let search = SearchOptions {
            seeds: opts.seeds,
            potential_seeds: opts.potential_seeds,
            extra_seeds: prev.clone(),
            ..SearchOptions::default()
        };
        let census = find_stationary_points_with(&params, &search)?;
        unconverged += census.diagnostics.unconverged;
        prev = census.points.iter().map(|p| p.location).collect();
        let reps: Vec<StationaryPoint> = census
            .orbit_representatives()
            .into_iter()
            .filter(|p| !p.degenerate)
            .collect();

        let b = boundary_extrema_with(&params, opts.boundary_seeds)?;
        for (c, e) in [(&mut bmin, b.min()), (&mut bmax, b.max())] {
            c.lambda_grid.push(lam);
            c.energies.push(e);
        }

        let dl = if step > 0 { lam - lambda_grid[step - 1] } else { 0.0 };
        let tol = (opts.jump_per_lambda * dl).max(opts.min_jump);
        let mut claimed = vec![false; open.len()];
        let mut fresh: Vec<Open> = Vec::new();
        for p in reps {
            let r = p.index_r.expect("non-degenerate");
            let mut cands: Vec<(usize, f64)> = open
                .iter()
                .enumerate()
                .filter(|(k, o)| !claimed[*k] && o.index == r && o.curve.branch == p.branch)
                .map(|(k, o)| (k, o.last.orbit_distance(&p.location), step - o.last_step))
                .filter(|(_, d, gap)| *d <= tol * *gap as f64)
                .map(|(k, d, _)| (k, d))
                .collect();
            cands.sort_by(|a, b| a.1.total_cmp(&b.1));
            // two live curves both plausibly continuing into this point
            let live = |k: usize| open[k].last_step + 1 == step;
            if cands.len() > 1 && live(cands[0].0) && live(cands[1].0) && cands[1].1 < 2.0 * cands[0].1 {
                warnings.push(format!(
                    "λ={lam}: {} curves within tolerance of point at E={:.6}; splitting",
                    cands.len(),
                    p.energy
                ));
                cands.clear();
            }
            let cands: Vec<usize> = cands.into_iter().take(1).map(|c| c.0).collect();
            if cands.len() == 1 {
                let o = &mut open[cands[0]];
                claimed[cands[0]] = true;
                o.curve.lambda_grid.push(lam);
                o.curve.energies.push(p.energy);
                o.curve.locations.push(p.location);
                o.last = p.location;
                o.last_step = step;
            } else {
                fresh.push(Open {
                    curve: CriticalBorderline {
                        lambda_grid: vec![lam],
                        energies: vec![p.energy],
                        locations: vec![p.location],
                        singularity_class: SingularityClass::from_index(r)
                            .expect("index at most 4"),
                        branch: p.branch,
                        boundary_role: None,
                    },
                    last: p.location,
                    last_step: step,
                    index: r,
                });
            }
        }
        let (keep, done): (Vec<Open>, Vec<Open>) = open
            .into_iter()
            .partition(|o| step - o.last_step <= opts.max_gap);
        closed.extend(done.into_iter().map(|o| o.curve));
        open = keep;
        open.extend(fresh);
    }
    closed.extend(open.into_iter().map(|o| o.curve));
    let closed = stitch(closed, lambda_grid, opts);
    let mut closed = closed;
    closed.sort_by(|a, b| {
        a.lambda_grid[0]
            .total_cmp(&b.lambda_grid[0])
            .then(a.energies[0].total_cmp(&b.energies[0]))
    });
    let mut curves = vec![bmin, bmax];
    curves.extend(closed);
    Ok(BorderlineTrace {
        beta0p,
        curves,
        warnings,
        unconverged_seeds: unconverged,
    })
}

fn extrapolate(c: &CriticalBorderline, lambda: f64) -> f64 {
    let n = c.energies.len();
    let e = c.energies[n - 1];
    if n < 2 {
        return e;
    }
    let slope = (e - c.energies[n - 2]) / (c.lambda_grid[n - 1] - c.lambda_grid[n - 2]);
    e + slope * (lambda - c.lambda_grid[n - 1])
}

/// Joins fragments split at near-degenerate or fast-moving stretches: a fragment that
/// starts shortly after another of the same class and branch ends, at the energy that
/// one extrapolates to, continues it.
fn stitch(
    mut frags: Vec<CriticalBorderline>,
    grid: &[f64],
    opts: &TraceOptions,
) -> Vec<CriticalBorderline> {
    let pos = |l: f64| grid.iter().position(|g| *g == l).expect("λ from grid");
    frags.sort_by(|a, b| a.lambda_grid[0].total_cmp(&b.lambda_grid[0]));
    let mut out: Vec<CriticalBorderline> = Vec::new();
    for f in frags {
        let start = pos(f.lambda_grid[0]);
        let best = out
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                c.singularity_class == f.singularity_class && c.branch == f.branch && {
                    let end = pos(*c.lambda_grid.last().expect("nonempty"));
                    start > end && start - end <= opts.stitch_gap
                }
            })
            .map(|(k, c)| (k, (extrapolate(c, f.lambda_grid[0]) - f.energies[0]).abs()))
            .filter(|(_, d)| *d <= opts.stitch_energy_tol)
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((k, _)) => {
                let c = &mut out[k];
                c.lambda_grid.extend(f.lambda_grid);
                c.energies.extend(f.energies);
                c.locations.extend(f.locations);
            }
            None => out.push(f),
        }
    }
    out
}

//! Statistical detection of singular features in `dρ̄/dE`.
//!
//! Around each trial position the raw histogram is fitted by weighted least squares
//! with a cubic background plus either a kink `(x − x₀)₊` (a jump of `ρ̄′`) or a term
//! whose derivative is `−ln|x − x₀|` (a logarithmic spike of `ρ̄′`). The fitted
//! coefficient over its standard error is the detection statistic. Features are accepted greedily, the
//! strongest first, and each accepted one is kept in every later fit that covers it so
//! its tails are not detected again.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::density::DensityGrid;
use crate::stationary_analysis::SingularityClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureKind {
    UpwardJump,
    DownwardJump,
    PositiveSpike,
    NegativeSpike,
}

impl FeatureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FeatureKind::UpwardJump => "upward_jump",
            FeatureKind::DownwardJump => "downward_jump",
            FeatureKind::PositiveSpike => "positive_spike",
            FeatureKind::NegativeSpike => "negative_spike",
        }
    }

    /// Whether a stationary point of this class produces this feature. Boundary
    /// singularities have no fixed signature.
    pub fn matches(self, class: SingularityClass) -> bool {
        use FeatureKind::*;
        use SingularityClass::*;
        matches!(
            (self, class),
            (UpwardJump, I) | (PositiveSpike, II) | (DownwardJump, III) | (NegativeSpike, IV)
                | (UpwardJump, V) | (_, VI)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityFeature {
    pub energy: f64,
    pub bin: usize,
    pub kind: FeatureKind,
    /// Fitted coefficient over its standard error.
    pub significance: f64,
    /// Jump of `dρ̄/dE`, or the coefficient of `−ln|E − E₀|` for spikes.
    pub amplitude: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FeatureOptions {
    /// Detection threshold in standard errors.
    pub threshold: f64,
    /// Half-width of the fit window in bins.
    pub half_window: usize,
    /// Accepted features are at least this many bins apart.
    pub min_separation: usize,
    pub max_features: usize,
}

impl Default for FeatureOptions {
    fn default() -> Self {
        FeatureOptions {
            threshold: 5.0,
            half_window: 10,
            min_separation: 2,
            max_features: 24,
        }
    }
}

fn kink(x: f64) -> f64 {
    x.max(0.0)
}

fn log_term(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x - x * x.abs().ln()
    }
}

/// Average of `f` over `[a, b]`.
fn bin_average(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const SUB: usize = 16;
    let h = (b - a) / SUB as f64;
    (0..SUB).map(|i| f(a + (i as f64 + 0.5) * h)).sum::<f64>() / SUB as f64
}

/// Trial singular positions per bin.
const SUBDIVISIONS: usize = 4;

/// Which singular term a fit adds to the cubic background.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Term {
    Kink,
    Log,
}

impl Term {
    fn column(self, a: f64, b: f64) -> f64 {
        match self {
            Term::Kink => bin_average(kink, a, b),
            Term::Log => bin_average(log_term, a, b),
        }
    }

    /// Next order of the same singularity (one-sided curvature for a kink, `x² ln|x|`
    /// for a spike); fitted but not tested.
    fn nuisance(self, a: f64, b: f64, half: usize) -> f64 {
        let h = half as f64;
        match self {
            Term::Kink => bin_average(|x| kink(x).powi(2), a, b) / h,
            Term::Log => bin_average(|x| if x == 0.0 { 0.0 } else { x * x * x.abs().ln() }, a, b) / h,
        }
    }
}

struct Fit {
    z: f64,
    coef: f64,
    chi2: f64,
}

/// Weighted least-squares fit over the window around bin `k` of a cubic background,
/// the `tested` singular terms and the `fixed` ones (positions in bin units from the
/// grid start). Returns `(z, coefficient)` per tested term and the χ². The `z` values
/// use errors inflated by the reduced χ² when the model fits worse than the noise.
fn fit_model(
    grid: &DensityGrid,
    k: usize,
    half: usize,
    tested: &[(f64, Term)],
    fixed: &[(f64, Term)],
) -> Option<(Vec<(f64, f64)>, f64)> {
    let n = grid.bins();
    let lo = k.saturating_sub(half);
    let hi = (k + half + 1).min(n);
    let terms: Vec<(f64, Term)> = tested
        .iter()
        .copied()
        .chain(fixed.iter().copied().filter(|(p, _)| *p > lo as f64 && *p < hi as f64))
        .collect();
    let cols = 4 + 2 * terms.len();
    let rows = hi - lo;
    if rows < cols + 3 {
        return None;
    }
    let mut x = DMatrix::<f64>::zeros(rows, cols);
    let mut y = DVector::<f64>::zeros(rows);
    let mut row = Vec::with_capacity(cols);
    for (r, j) in (lo..hi).enumerate() {
        let w = 1.0 / grid.mc_error[j];
        row.clear();
        for (p, t) in &terms {
            row.push(t.column(j as f64 - p, j as f64 + 1.0 - p));
        }
        let t = (j as f64 + 0.5 - k as f64) / half as f64;
        row.extend([1.0, t, t * t, t * t * t]);
        for (p, tp) in &terms {
            row.push(tp.nuisance(j as f64 - p, j as f64 + 1.0 - p, half));
        }
        for (c, v) in row.iter().enumerate() {
            x[(r, c)] = v * w;
        }
        y[r] = grid.rho[j] * w;
    }
    let normal = x.transpose() * &x;
    let chol = normal.cholesky()?;
    let coef = chol.solve(&(x.transpose() * &y));
    let chi2 = (&x * &coef - &y).norm_squared();
    let reduced = chi2 / (rows - cols) as f64;
    let inv = chol.inverse();
    let mut out = Vec::with_capacity(tested.len());
    for i in 0..tested.len() {
        let sd = (inv[(i, i)] * reduced.max(1.0)).sqrt();
        if !(sd > 0.0) {
            return None;
        }
        out.push((coef[i] / sd, coef[i]));
    }
    Some((out, chi2))
}

fn local_fit(
    grid: &DensityGrid,
    k: usize,
    x0: f64,
    term: Term,
    half: usize,
    fixed: &[(f64, Term)],
) -> Option<Fit> {
    let (zs, chi2) = fit_model(grid, k, half, &[(x0, term)], fixed)?;
    Some(Fit {
        z: zs[0].0,
        coef: zs[0].1,
        chi2,
    })
}

fn fit_at(grid: &DensityGrid, x0: f64, term: Term, half: usize, fixed: &[(f64, Term)]) -> Option<Fit> {
    local_fit(grid, x0.floor() as usize, x0, term, half, fixed)
}

/// Per-bin `(z_jump, z_log)` at the bin centers, without any accepted features.
pub fn feature_statistics(grid: &DensityGrid, opts: &FeatureOptions) -> Vec<(f64, f64)> {
    (0..grid.bins())
        .map(|k| {
            let x = k as f64 + 0.5;
            let z = |t| fit_at(grid, x, t, opts.half_window, &[]).map_or(0.0, |f| f.z);
            (z(Term::Kink), z(Term::Log))
        })
        .collect()
}

/// Significant features in ascending energy.
pub fn detect_features(grid: &DensityGrid, opts: &FeatureOptions) -> Vec<DensityFeature> {
    let mut found: Vec<DensityFeature> = Vec::new();
    let mut fixed: Vec<(f64, Term)> = Vec::new();
    while found.len() < opts.max_features {
        let best = (0..grid.bins() * SUBDIVISIONS)
            .map(|i| (i as f64 + 0.5) / SUBDIVISIONS as f64)
            .filter(|&x| fixed.iter().all(|(p, _)| (p - x).abs() >= opts.min_separation as f64))
            .flat_map(|x| [(x, Term::Kink), (x, Term::Log)])
            .filter_map(|(x, t)| {
                fit_at(grid, x, t, opts.half_window, &fixed).map(|f| (x, t, f.z, f.coef))
            })
            .max_by(|a, b| a.2.abs().total_cmp(&b.2.abs()));
        let Some((x, term, z, coef)) = best else {
            break;
        };
        if z.abs() <= opts.threshold {
            break;
        }
        found.push(feature(grid, x, term, z, coef));
        fixed.push((x, term));
    }
    refine(grid, opts, &mut fixed, &mut found);
    found.retain(|f| f.significance > opts.threshold);
    found.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    found
}

fn feature(grid: &DensityGrid, x: f64, term: Term, z: f64, coef: f64) -> DensityFeature {
    let kind = match (term, z > 0.0) {
        (Term::Kink, true) => FeatureKind::UpwardJump,
        (Term::Kink, false) => FeatureKind::DownwardJump,
        (Term::Log, true) => FeatureKind::PositiveSpike,
        (Term::Log, false) => FeatureKind::NegativeSpike,
    };
    let w = grid.bin_width();
    DensityFeature {
        energy: grid.e_edges[0] + x * w,
        bin: x.floor() as usize,
        kind,
        significance: z.abs(),
        amplitude: coef / w,
    }
}

/// Bins a feature may move during refinement.
const REFINE_REACH: f64 = 3.0;
const REFINE_PASSES: usize = 3;

/// Re-chooses each feature's position and term by least χ² over a window fixed at its
/// first position, with all other features in the model. A greedy pick can land beside
/// a spike when a neighbouring feature was not yet modelled.
fn refine(
    grid: &DensityGrid,
    opts: &FeatureOptions,
    fixed: &mut [(f64, Term)],
    found: &mut [DensityFeature],
) {
    for _ in 0..REFINE_PASSES {
        for i in 0..fixed.len() {
            let k = fixed[i].0.floor() as usize;
            let others: Vec<(f64, Term)> = fixed
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, f)| *f)
                .collect();
            let steps = (2.0 * REFINE_REACH * SUBDIVISIONS as f64) as i64;
            let best = (-steps..=steps)
                .map(|d| fixed[i].0 + d as f64 / SUBDIVISIONS as f64)
                .filter(|&x| x > 0.0 && x < grid.bins() as f64)
                .filter(|&x| others.iter().all(|(p, _)| (p - x).abs() >= opts.min_separation as f64))
                .flat_map(|x| [(x, Term::Kink), (x, Term::Log)])
                .filter_map(|(x, t)| {
                    local_fit(grid, k, x, t, opts.half_window, &others).map(|f| (x, t, f))
                })
                .min_by(|a, b| a.2.chi2.total_cmp(&b.2.chi2));
            if let Some((x, t, f)) = best {
                fixed[i] = (x, t);
                found[i] = feature(grid, x, t, f.z, f.coef);
            }
        }
    }
}

/// An energy where a singularity is expected, from the stationary-point analysis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExpectedSingularity {
    pub energy: f64,
    pub class: SingularityClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FeatureMatch {
    pub feature: DensityFeature,
    /// Closest expected singularity of a compatible class within the tolerance.
    pub explained_by: Option<ExpectedSingularity>,
}

/// Pairs each feature with a compatible expected singularity at most `tol` away.
pub fn match_features(
    features: &[DensityFeature],
    expected: &[ExpectedSingularity],
    tol: f64,
) -> Vec<FeatureMatch> {
    features
        .iter()
        .map(|f| FeatureMatch {
            feature: *f,
            explained_by: expected
                .iter()
                .filter(|e| f.kind.matches(e.class) && (e.energy - f.energy).abs() <= tol)
                .min_by(|a, b| {
                    (a.energy - f.energy).abs().total_cmp(&(b.energy - f.energy).abs())
                })
                .copied(),
        })
        .collect()
}

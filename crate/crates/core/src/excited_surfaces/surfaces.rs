//! Condensate and excited potential-energy surfaces.
//!
//! Energies are `⟨Ĥ⟩/(2N)`, the normalization under which the `N → ∞` condensate surface
//! coincides with the classical energy per boson at `p = 0`.

use serde::Serialize;

use super::coherent::{Condensate, CondensateState};
use super::intrinsic::IntrinsicBosons;
use crate::boson_algebra::{ibm, BosonExpr, Mode, N_MODES};
use crate::classical_limit::{ModelParams, R0};
use crate::error::{Error, Result};

/// Reusable evaluator holding `N·Ĥ` for one parameter set.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    params: ModelParams,
    n: usize,
    h_scaled: BosonExpr,
}

impl SurfaceModel {
    pub fn new(params: &ModelParams, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("boson number must be positive".into()));
        }
        Ok(SurfaceModel {
            params: *params,
            n,
            h_scaled: ibm::h_lambda_scaled(params.beta0p(), params.lambda()),
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn n_bosons(&self) -> usize {
        self.n
    }

    fn energy(&self, state: &CondensateState) -> Result<f64> {
        let n = self.n as f64;
        Ok(state.expectation(&self.h_scaled)?.re / (2.0 * n * n))
    }

    pub fn condensate_energy(&self, beta: f64, gamma: f64) -> Result<f64> {
        let b = IntrinsicBosons::new(beta, gamma)?;
        let st = CondensateState::new(vec![Condensate::real(b.condensate, self.n)])?;
        self.energy(&st)
    }

    /// `N_γ/2` pairs `d†₊₂d†₋₂` on top of `N − N_γ` condensate bosons `B†(β, 0)`.
    pub fn excited_energy(&self, n_gamma: usize, beta: f64) -> Result<f64> {
        if n_gamma % 2 != 0 {
            return Err(Error::Domain(format!(
                "N_gamma = {n_gamma} is odd; only even N_gamma give K=0 states"
            )));
        }
        if n_gamma > self.n {
            return Err(Error::Domain(format!(
                "N_gamma = {n_gamma} exceeds N = {}",
                self.n
            )));
        }
        let b = IntrinsicBosons::new(beta, 0.0)?;
        let mut plus = [0.0; N_MODES];
        let mut minus = [0.0; N_MODES];
        plus[Mode::d(2).index()] = 1.0;
        minus[Mode::d(-2).index()] = 1.0;
        let st = CondensateState::new(vec![
            Condensate::real(b.condensate, self.n - n_gamma),
            Condensate::real(plus, n_gamma / 2),
            Condensate::real(minus, n_gamma / 2),
        ])?;
        self.energy(&st)
    }
}

pub fn condensate_energy(params: &ModelParams, n: usize, beta: f64, gamma: f64) -> Result<f64> {
    SurfaceModel::new(params, n)?.condensate_energy(beta, gamma)
}

pub fn excited_energy(params: &ModelParams, n: usize, n_gamma: usize, beta: f64) -> Result<f64> {
    SurfaceModel::new(params, n)?.excited_energy(n_gamma, beta)
}

/// `ε_β/ε_γ = (2λ − 1)/3` (quoted for `β₀′ = √2`).
pub fn phonon_ratio(lambda: f64) -> f64 {
    (2.0 * lambda - 1.0) / 3.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfacePointKind {
    PrimaryMin,
    SecondaryMin,
    Max,
}

impl SurfacePointKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SurfacePointKind::PrimaryMin => "primary_min",
            SurfacePointKind::SecondaryMin => "secondary_min",
            SurfacePointKind::Max => "max",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub beta: f64,
    pub energy: f64,
    pub kind: SurfacePointKind,
}

/// One `y = 0` cut `V_{N_γ}(β)` with its stationary points.
#[derive(Clone, Debug, Serialize)]
pub struct ExcitedSurface {
    pub params: ModelParams,
    pub n_bosons: usize,
    pub n_gamma: usize,
    pub beta_grid: Vec<f64>,
    pub energies: Vec<f64>,
    pub stationary: Vec<SurfacePoint>,
}

/// Grid size used to bracket stationary points.
pub const SURFACE_GRID: usize = 400;

fn golden_min(f: &dyn Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<f64> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while (b - a).abs() > 1e-11 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
    }
    Ok(0.5 * (a + b))
}

impl SurfaceModel {
    pub fn surface(&self, n_gamma: usize, beta_grid: &[f64]) -> Result<Vec<f64>> {
        beta_grid
            .iter()
            .map(|&b| self.excited_energy(n_gamma, b))
            .collect()
    }

    /// Stationary points of `V_{N_γ}(β)` on `[0, √2]`: the lowest minimum, the next
    /// minimum and the highest maximum between them. A minimum at the `β = 0` end counts.
    pub fn stationary_points(&self, n_gamma: usize) -> Result<Vec<SurfacePoint>> {
        let grid: Vec<f64> = (0..=SURFACE_GRID)
            .map(|k| R0 * k as f64 / SURFACE_GRID as f64)
            .collect();
        let v = self.surface(n_gamma, &grid)?;
        let f = |b: f64| self.excited_energy(n_gamma, b.clamp(0.0, R0));
        let neg = |b: f64| Ok(-self.excited_energy(n_gamma, b.clamp(0.0, R0))?);
        let mut minima = Vec::new();
        let mut maxima = Vec::new();
        if v[0] < v[1] {
            minima.push((0.0, v[0]));
        }
        for k in 1..SURFACE_GRID {
            if v[k] <= v[k - 1] && v[k] < v[k + 1] {
                let b = golden_min(&f, grid[k - 1], grid[k + 1])?;
                minima.push((b, f(b)?));
            } else if v[k] >= v[k - 1] && v[k] > v[k + 1] {
                let b = golden_min(&neg, grid[k - 1], grid[k + 1])?;
                maxima.push((b, f(b)?));
            }
        }
        minima.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut out = Vec::new();
        if let Some(&(b, e)) = minima.first() {
            out.push(SurfacePoint {
                beta: b,
                energy: e,
                kind: SurfacePointKind::PrimaryMin,
            });
        }
        if let Some(&(b2, e2)) = minima.get(1) {
            out.push(SurfacePoint {
                beta: b2,
                energy: e2,
                kind: SurfacePointKind::SecondaryMin,
            });
            let (lo, hi) = {
                let b1 = minima[0].0;
                (b1.min(b2), b1.max(b2))
            };
            if let Some(&(bm, em)) = maxima
                .iter()
                .filter(|(b, _)| *b > lo && *b < hi)
                .max_by(|a, b| a.1.total_cmp(&b.1))
            {
                out.push(SurfacePoint {
                    beta: bm,
                    energy: em,
                    kind: SurfacePointKind::Max,
                });
            }
        }
        Ok(out)
    }

    pub fn excited_surface(&self, n_gamma: usize, beta_grid: &[f64]) -> Result<ExcitedSurface> {
        Ok(ExcitedSurface {
            params: self.params,
            n_bosons: self.n,
            n_gamma,
            beta_grid: beta_grid.to_vec(),
            energies: self.surface(n_gamma, beta_grid)?,
            stationary: self.stationary_points(n_gamma)?,
        })
    }
}

pub fn surface_stationary_points(
    params: &ModelParams,
    n: usize,
    n_gamma: usize,
) -> Result<Vec<SurfacePoint>> {
    SurfaceModel::new(params, n)?.stationary_points(n_gamma)
}

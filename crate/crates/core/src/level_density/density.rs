//! Monte-Carlo estimate of the smoothed level density.
//!
//! The density of states below `E` is proportional to the phase-space volume
//! `{ℋ ≤ E}`, so the histogram of `ℋ` over points drawn uniformly in the ball is `ρ̄`
//! up to normalization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::classical_limit::{hamiltonian, ModelParams, R0};
use crate::error::{Error, Result};
use crate::ibm_quantum::basis_dimension;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityOptions {
    pub bins: usize,
    pub e_min: f64,
    pub e_max: f64,
    /// Independently seeded sampling shards; results are summed in shard order.
    pub shards: usize,
    /// `∫ρ̄ dE` equals the L=0 dimension of this boson number.
    pub reference_n: usize,
    /// Gaussian pre-smoothing width for the derivative, in bins (0 disables it).
    pub smoothing_bins: f64,
}

impl Default for DensityOptions {
    fn default() -> Self {
        DensityOptions {
            bins: 300,
            e_min: -0.05,
            e_max: 3.05,
            shards: 16,
            reference_n: 50,
            smoothing_bins: 2.0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityGrid {
    pub params: ModelParams,
    pub e_edges: Vec<f64>,
    pub rho: Vec<f64>,
    pub drho_de: Vec<f64>,
    /// Propagated standard error of `drho_de`.
    pub drho_de_error: Vec<f64>,
    pub mc_error: Vec<f64>,
    pub counts: Vec<u64>,
    /// Samples with energy outside `[e_min, e_max)`.
    pub overflow: u64,
    pub n_samples: u64,
    pub seed: u64,
    pub shards: usize,
    pub reference_n: usize,
    pub smoothing_bins: f64,
}

impl DensityGrid {
    pub fn bins(&self) -> usize {
        self.rho.len()
    }

    pub fn bin_width(&self) -> f64 {
        self.e_edges[1] - self.e_edges[0]
    }

    pub fn centers(&self) -> Vec<f64> {
        self.e_edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    /// Index of the bin containing `e`, if any.
    pub fn bin_of(&self, e: f64) -> Option<usize> {
        let k = ((e - self.e_edges[0]) / self.bin_width()).floor();
        (k >= 0.0 && (k as usize) < self.bins()).then_some(k as usize)
    }

    /// `∫ρ̄ dE` over the grid.
    pub fn integral(&self) -> f64 {
        self.rho.iter().sum::<f64>() * self.bin_width()
    }

    /// `∫_{e_min}^{e} ρ̄ dE`, linear inside a bin.
    pub fn cumulative(&self, e: f64) -> f64 {
        let w = self.bin_width();
        let mut acc = 0.0;
        for (k, r) in self.rho.iter().enumerate() {
            let lo = self.e_edges[k];
            if e >= lo + w {
                acc += r * w;
            } else {
                if e > lo {
                    acc += r * (e - lo);
                }
                break;
            }
        }
        acc
    }

    /// CSV rows `lambda,e_center,rho,drho_dE,mc_error` without a header.
    pub fn csv_rows(&self, out: &mut String) {
        use std::fmt::Write;
        let lam = self.params.lambda();
        for (k, c) in self.centers().iter().enumerate() {
            let _ = writeln!(
                out,
                "{lam},{c},{},{},{}",
                self.rho[k], self.drho_de[k], self.mc_error[k]
            );
        }
    }
}

pub const DENSITY_CSV_HEADER: &str = "lambda,e_center,rho,drho_dE,mc_error";

/// Uniform point in the ball `R ≤ √2`: Gaussian direction, radius `√2 u^{1/4}`.
pub(crate) fn ball_sample(rng: &mut ChaCha8Rng) -> [f64; 4] {
    let g: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let n = g.iter().map(|v| v * v).sum::<f64>().sqrt();
    let r = R0 * rng.random::<f64>().powf(0.25);
    g.map(|v| v * r / n)
}

fn shard_rng(seed: u64, shard: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard as u64);
    rng
}

fn histogram(
    params: &ModelParams,
    n: u64,
    seed: u64,
    opts: &DensityOptions,
) -> (Vec<u64>, u64) {
    let shards = opts.shards.max(1);
    let per = n / shards as u64;
    let extra = n % shards as u64;
    let scale = opts.bins as f64 / (opts.e_max - opts.e_min);
    let parts: Vec<(Vec<u64>, u64)> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = shard_rng(seed, s);
            let mut h = vec![0u64; opts.bins];
            let mut over = 0;
            let count = per + u64::from((s as u64) < extra);
            for _ in 0..count {
                let e = hamiltonian(params, ball_sample(&mut rng));
                let k = ((e - opts.e_min) * scale).floor();
                if k >= 0.0 && (k as usize) < opts.bins {
                    h[k as usize] += 1;
                } else {
                    over += 1;
                }
            }
            (h, over)
        })
        .collect();
    let mut h = vec![0u64; opts.bins];
    let mut over = 0;
    for (p, o) in parts {
        h.iter_mut().zip(p).for_each(|(a, b)| *a += b);
        over += o;
    }
    (h, over)
}

/// Binned `ρ̄(E)` with default binning and smoothing.
pub fn mc_density(params: &ModelParams, n_samples: u64, seed: u64, bins: usize) -> Result<DensityGrid> {
    let opts = DensityOptions {
        bins,
        ..DensityOptions::default()
    };
    mc_density_with(params, n_samples, seed, &opts)
}

pub fn mc_density_with(
    params: &ModelParams,
    n_samples: u64,
    seed: u64,
    opts: &DensityOptions,
) -> Result<DensityGrid> {
    if opts.bins < 3 {
        return Err(Error::Domain(format!("need at least 3 bins, got {}", opts.bins)));
    }
    if !(opts.e_max > opts.e_min) {
        return Err(Error::Domain("energy window is empty".into()));
    }
    if n_samples == 0 {
        return Err(Error::Domain("n_samples must be positive".into()));
    }
    let (counts, overflow) = histogram(params, n_samples, seed, opts);
    let w = (opts.e_max - opts.e_min) / opts.bins as f64;
    let dim = basis_dimension(opts.reference_n) as f64;
    let n = n_samples as f64;
    let norm = dim / (n * w);
    let rho: Vec<f64> = counts.iter().map(|&c| c as f64 * norm).collect();
    // binomial error; an empty bin gets the error of a single count
    let mc_error = counts
        .iter()
        .map(|&c| {
            let c = (c as f64).max(1.0);
            norm * (c * (1.0 - c / n)).sqrt()
        })
        .collect();
    let e_edges = (0..=opts.bins)
        .map(|k| opts.e_min + k as f64 * w)
        .collect();
    let mut grid = DensityGrid {
        params: *params,
        e_edges,
        rho,
        drho_de: Vec::new(),
        drho_de_error: Vec::new(),
        mc_error,
        counts,
        overflow,
        n_samples,
        seed,
        shards: opts.shards.max(1),
        reference_n: opts.reference_n,
        smoothing_bins: opts.smoothing_bins,
    };
    let op = DerivativeOperator::new(grid.bins(), w, opts.smoothing_bins);
    grid.drho_de = op.apply(&grid.rho);
    grid.drho_de_error = op.propagate(&grid.mc_error);
    Ok(grid)
}

/// `dρ̄/dE` as the dense linear map `ρ ↦ D K ρ` (Gaussian smoothing, then central
/// differences), kept explicit so errors propagate exactly for independent bins.
#[derive(Clone, Debug)]
pub struct DerivativeOperator {
    rows: Vec<Vec<f64>>,
}

fn smoothing_matrix(n: usize, sigma: f64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| {
            let mut row = vec![0.0; n];
            if sigma <= 0.0 {
                row[i] = 1.0;
                return row;
            }
            let reach = (4.0 * sigma).ceil() as isize;
            let mut total = 0.0;
            for d in -reach..=reach {
                let j = i as isize + d;
                if j >= 0 && (j as usize) < n {
                    let v = (-0.5 * (d as f64 / sigma).powi(2)).exp();
                    row[j as usize] = v;
                    total += v;
                }
            }
            row.iter_mut().for_each(|v| *v /= total);
            row
        })
        .collect()
}

impl DerivativeOperator {
    pub fn new(n: usize, width: f64, sigma_bins: f64) -> Self {
        let k = smoothing_matrix(n, sigma_bins);
        let rows = (0..n)
            .map(|i| {
                let (a, b, h) = if i == 0 {
                    (0, 1, width)
                } else if i == n - 1 {
                    (n - 2, n - 1, width)
                } else {
                    (i - 1, i + 1, 2.0 * width)
                };
                (0..n).map(|j| (k[b][j] - k[a][j]) / h).collect()
            })
            .collect();
        DerivativeOperator { rows }
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn apply(&self, rho: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(rho).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn propagate(&self, err: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(err).map(|(a, e)| (a * e).powi(2)).sum::<f64>().sqrt())
            .collect()
    }
}

/// `dρ̄/dE` of a grid with the given Gaussian pre-smoothing width in bins.
pub fn density_derivative(grid: &DensityGrid, smoothing_bins: f64) -> Result<Vec<f64>> {
    if grid.bins() < 3 {
        return Err(Error::Domain("derivative needs at least 3 bins".into()));
    }
    Ok(DerivativeOperator::new(grid.bins(), grid.bin_width(), smoothing_bins).apply(&grid.rho))
}

#[derive(Clone, Debug, Serialize)]
pub struct PhaseDiagram {
    pub beta0p: f64,
    pub lambda_grid: Vec<f64>,
    pub e_centers: Vec<f64>,
    /// `drho_de[i][k]` at `lambda_grid[i]`, energy bin `k`.
    pub drho_de: Vec<Vec<f64>>,
    pub seed: u64,
    pub n_samples: u64,
}

/// Seed of the `i`-th λ slice, so slices are independent yet reproducible.
pub fn slice_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn phase_diagram(
    beta0p: f64,
    lambda_grid: &[f64],
    opts: &DensityOptions,
    n_samples: u64,
    seed: u64,
) -> Result<(PhaseDiagram, Vec<DensityGrid>)> {
    if lambda_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain("λ grid must be strictly increasing".into()));
    }
    let grids = lambda_grid
        .iter()
        .enumerate()
        .map(|(i, &l)| mc_density_with(&ModelParams::new(beta0p, l)?, n_samples, slice_seed(seed, i), opts))
        .collect::<Result<Vec<_>>>()?;
    let e_centers = grids.first().map(|g| g.centers()).unwrap_or_default();
    Ok((
        PhaseDiagram {
            beta0p,
            lambda_grid: lambda_grid.to_vec(),
            e_centers,
            drho_de: grids.iter().map(|g| g.drho_de.clone()).collect(),
            seed,
            n_samples,
        },
        grids,
    ))
}

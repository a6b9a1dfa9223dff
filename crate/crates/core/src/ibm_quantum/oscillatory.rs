//! Oscillatory part of the quantum level density: Gaussian-broadened levels minus the
//! smooth semiclassical density, on the scaled energy axis `E/2N`.

use serde::Serialize;

use super::basis::basis_dimension;
use super::spectrum::{diagonalize, SpectrumResult};
use crate::classical_limit::ModelParams;
use crate::error::{Error, Result};
use crate::level_density::DensityGrid;

/// Per-bin width `σ = c / ρ̄(E)`, capped at `sigma_max` (also used where `ρ̄ = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SigmaRule {
    pub c: f64,
    pub sigma_max: f64,
}

impl Default for SigmaRule {
    fn default() -> Self {
        SigmaRule { c: 0.5, sigma_max: 0.05 }
    }
}

impl SigmaRule {
    fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c < 1.0) {
            return Err(Error::Domain(format!(
                "sigma factor c = {} must lie in (0, 1) to stay below the mean spacing",
                self.c
            )));
        }
        if !(self.sigma_max > 0.0 && self.sigma_max.is_finite()) {
            return Err(Error::Domain(format!("sigma_max = {} must be positive", self.sigma_max)));
        }
        Ok(())
    }

    pub fn sigma(&self, rho_bar: f64) -> f64 {
        if rho_bar > 0.0 {
            (self.c / rho_bar).min(self.sigma_max)
        } else {
            self.sigma_max
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OscillatoryDensity {
    pub lambda: f64,
    pub n_bosons: usize,
    pub e_edges: Vec<f64>,
    /// Smooth density normalized to the basis dimension of `n_bosons`.
    pub rho_bar: Vec<f64>,
    /// Broadened quantum density.
    pub rho_quantum: Vec<f64>,
    pub rho_tilde: Vec<f64>,
    pub sigma: Vec<f64>,
}

pub const OSCILLATORY_CSV_HEADER: &str = "lambda,e_center,rho_tilde,rho_quantum,rho_bar,sigma";

impl OscillatoryDensity {
    pub fn bin_width(&self) -> f64 {
        self.e_edges[1] - self.e_edges[0]
    }

    pub fn centers(&self) -> Vec<f64> {
        self.e_edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    pub fn integral(&self) -> f64 {
        self.rho_tilde.iter().sum::<f64>() * self.bin_width()
    }

    /// `ρ̃` in the bin containing `e`.
    pub fn at(&self, e: f64) -> Option<f64> {
        let k = ((e - self.e_edges[0]) / self.bin_width()).floor();
        (k >= 0.0 && (k as usize) < self.rho_tilde.len()).then(|| self.rho_tilde[k as usize])
    }

    /// Maximal energy intervals with `ρ̃ > 0`.
    pub fn positive_ridges(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        let mut start = None;
        for (k, &v) in self.rho_tilde.iter().enumerate() {
            match (v > 0.0, start) {
                (true, None) => start = Some(self.e_edges[k]),
                (false, Some(s)) => {
                    out.push((s, self.e_edges[k]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, *self.e_edges.last().unwrap()));
        }
        out
    }

    pub fn csv_rows(&self, out: &mut String) {
        use std::fmt::Write;
        for (k, c) in self.centers().iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{c},{},{},{},{}",
                self.lambda, self.rho_tilde[k], self.rho_quantum[k], self.rho_bar[k], self.sigma[k]
            );
        }
    }
}

fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// `ρ̃` from an existing spectrum and a smooth density at the same parameters.
pub fn oscillatory_from_spectrum(
    spec: &SpectrumResult,
    smooth: &DensityGrid,
    rule: SigmaRule,
) -> Result<OscillatoryDensity> {
    rule.validate()?;
    let (a, b) = (&spec.params, &smooth.params);
    if (a.beta0p() - b.beta0p()).abs() > 1e-12 || (a.lambda() - b.lambda()).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "smooth density at (beta0p={}, lambda={}) does not match spectrum at (beta0p={}, lambda={})",
            b.beta0p(),
            b.lambda(),
            a.beta0p(),
            a.lambda()
        )));
    }
    let scale = basis_dimension(spec.n_bosons) as f64 / basis_dimension(smooth.reference_n) as f64;
    let rho_bar: Vec<f64> = smooth.rho.iter().map(|r| r * scale).collect();
    let sigma: Vec<f64> = rho_bar.iter().map(|&r| rule.sigma(r)).collect();
    let levels = spec.scaled_energies();
    let w = smooth.bin_width();
    let rho_quantum: Vec<f64> = (0..rho_bar.len())
        .map(|k| {
            let (lo, hi, s) = (smooth.e_edges[k], smooth.e_edges[k + 1], sigma[k]);
            levels
                .iter()
                .filter(|&&e| e > lo - 10.0 * s && e < hi + 10.0 * s)
                .map(|&e| std_normal_cdf((hi - e) / s) - std_normal_cdf((lo - e) / s))
                .sum::<f64>()
                / w
        })
        .collect();
    let rho_tilde = rho_quantum.iter().zip(&rho_bar).map(|(q, r)| q - r).collect();
    Ok(OscillatoryDensity {
        lambda: spec.params.lambda(),
        n_bosons: spec.n_bosons,
        e_edges: smooth.e_edges.clone(),
        rho_bar,
        rho_quantum,
        rho_tilde,
        sigma,
    })
}

/// Diagonalizes at `params` and subtracts `smooth`.
pub fn oscillatory_density(
    params: &ModelParams,
    n: usize,
    smooth: &DensityGrid,
    rule: SigmaRule,
) -> Result<OscillatoryDensity> {
    oscillatory_from_spectrum(&diagonalize(params, n)?, smooth, rule)
}

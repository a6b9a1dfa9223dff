//! Smoothed level density and level flow of a finite-N spectrum, and the continuity
//! equation `∂ρ̄/∂λ + ∂j̄/∂E = 0` that links them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ibm_quantum::SpectrumResult;

/// Quantum smoothed density, flow and velocity field on a common energy grid. Energies
/// and slopes are on the scaled axis `E/(2N)`.
#[derive(Clone, Debug, Serialize)]
pub struct FlowGrid {
    pub lambda: f64,
    pub energies: Vec<f64>,
    pub rho: Vec<f64>,
    pub jbar: Vec<f64>,
    /// `j̄/ρ̄`; zero where `ρ̄` vanishes.
    pub phibar: Vec<f64>,
    pub width: f64,
}

fn gauss(x: f64, w: f64) -> f64 {
    (-0.5 * (x / w).powi(2)).exp() / (w * (2.0 * std::f64::consts::PI).sqrt())
}

fn gauss_prime(x: f64, w: f64) -> f64 {
    -x / (w * w) * gauss(x, w)
}

fn check_width(width: f64) -> Result<()> {
    if width.is_finite() && width > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("smoothing width must be positive, got {width}")))
    }
}

/// `Σᵢ δ̄(E − Eᵢ)` with a Gaussian `δ̄` of the given width.
pub fn smoothed_levels(spec: &SpectrumResult, energies: &[f64], width: f64) -> Result<Vec<f64>> {
    check_width(width)?;
    let levels = spec.scaled_energies();
    Ok(energies
        .iter()
        .map(|&e| levels.iter().map(|&ei| gauss(e - ei, width)).sum())
        .collect())
}

pub fn flow_grid(spec: &SpectrumResult, energies: &[f64], width: f64) -> Result<FlowGrid> {
    check_width(width)?;
    let levels = spec.scaled_energies();
    let slopes = spec.scaled_slopes();
    let mut rho = Vec::with_capacity(energies.len());
    let mut jbar = Vec::with_capacity(energies.len());
    for &e in energies {
        let (mut r, mut j) = (0.0, 0.0);
        for (ei, si) in levels.iter().zip(&slopes) {
            let g = gauss(e - ei, width);
            r += g;
            j += si * g;
        }
        rho.push(r);
        jbar.push(j);
    }
    let phibar = rho
        .iter()
        .zip(&jbar)
        .map(|(r, j)| if *r > 1e-300 { j / r } else { 0.0 })
        .collect();
    Ok(FlowGrid {
        lambda: spec.params.lambda(),
        energies: energies.to_vec(),
        rho,
        jbar,
        phibar,
        width,
    })
}

/// Flow grids for a sequence of spectra that must share `N` and `β₀′`.
pub fn smoothed_flow(spectra: &[SpectrumResult], energies: &[f64], width: f64) -> Result<Vec<FlowGrid>> {
    check_compatible(spectra.iter())?;
    spectra.iter().map(|s| flow_grid(s, energies, width)).collect()
}

fn check_compatible<'a>(mut spectra: impl Iterator<Item = &'a SpectrumResult>) -> Result<()> {
    if let Some(first) = spectra.next() {
        for s in spectra {
            if s.n_bosons != first.n_bosons {
                return Err(Error::Domain(format!(
                    "mismatched boson numbers {} and {}",
                    first.n_bosons, s.n_bosons
                )));
            }
            if s.params.beta0p() != first.params.beta0p() {
                return Err(Error::Domain("mismatched beta0p across spectra".into()));
            }
        }
    }
    Ok(())
}

/// `∂j̄/∂E` at one λ, from the analytic derivative of the kernel.
pub fn flow_divergence(spec: &SpectrumResult, energies: &[f64], width: f64) -> Result<Vec<f64>> {
    check_width(width)?;
    let levels = spec.scaled_energies();
    let slopes = spec.scaled_slopes();
    Ok(energies
        .iter()
        .map(|&e| {
            levels
                .iter()
                .zip(&slopes)
                .map(|(ei, si)| si * gauss_prime(e - ei, width))
                .sum()
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct ContinuityCheck {
    pub lambda: f64,
    pub energies: Vec<f64>,
    pub drho_dlambda: Vec<f64>,
    pub dj_de: Vec<f64>,
    pub residual: Vec<f64>,
    pub max_residual: f64,
    pub max_dj_de: f64,
}

impl ContinuityCheck {
    pub fn relative_residual(&self) -> f64 {
        self.max_residual / self.max_dj_de
    }
}

/// Continuity residual at the middle of three spectra `λ − δ, λ, λ + δ`; `∂ρ̄/∂λ` by
/// central difference, `∂j̄/∂E` analytically at the middle spectrum.
pub fn continuity_residual(
    lower: &SpectrumResult,
    mid: &SpectrumResult,
    upper: &SpectrumResult,
    energies: &[f64],
    width: f64,
) -> Result<ContinuityCheck> {
    check_compatible([lower, mid, upper].into_iter())?;
    let dl = upper.params.lambda() - lower.params.lambda();
    if !(dl > 0.0) {
        return Err(Error::Domain("spectra must be ordered in λ".into()));
    }
    let lo = smoothed_levels(lower, energies, width)?;
    let hi = smoothed_levels(upper, energies, width)?;
    let drho: Vec<f64> = hi.iter().zip(&lo).map(|(h, l)| (h - l) / dl).collect();
    let dj = flow_divergence(mid, energies, width)?;
    let residual: Vec<f64> = drho.iter().zip(&dj).map(|(a, b)| a + b).collect();
    let max_abs = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    Ok(ContinuityCheck {
        lambda: mid.params.lambda(),
        energies: energies.to_vec(),
        max_residual: max_abs(&residual),
        max_dj_de: max_abs(&dj),
        drho_dlambda: drho,
        dj_de: dj,
        residual,
    })
}

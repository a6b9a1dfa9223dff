use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::basis::{build_basis, L0Basis};
use super::hamiltonian::{build_derivative, build_hamiltonian, nd_diagonal};
use crate::classical_limit::{Branch, ModelParams, LAMBDA_C};
use crate::error::{Error, Result};

/// Levels closer than this (relative to the spectral width) share a degenerate block.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Eigen-decomposition of the L=0 Hamiltonian at one `(β₀′, λ)`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumResult {
    pub params: ModelParams,
    pub n_bosons: usize,
    /// Absolute eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// `∂E_i/∂λ`; at `λ = 1` the derivative from the left (`λ ≤ 1` formula).
    pub slopes: Vec<f64>,
    pub nd_expectation: Vec<f64>,
    /// Whether the level belongs to a degenerate block.
    pub degenerate: Vec<bool>,
    #[serde(skip)]
    pub eigenvectors: DMatrix<f64>,
    #[serde(skip)]
    pub basis: L0Basis,
}

impl SpectrumResult {
    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `E_i − E₀`.
    pub fn excitation_energies(&self) -> Vec<f64> {
        let e0 = self.ground_energy();
        self.eigenvalues.iter().map(|e| e - e0).collect()
    }

    /// Eigenvalues divided by `2N`, the scale of the classical energy per boson.
    pub fn scaled_energies(&self) -> Vec<f64> {
        let s = 1.0 / (2.0 * self.n_bosons.max(1) as f64);
        self.eigenvalues.iter().map(|e| e * s).collect()
    }

    /// Slopes on the same scale as [`SpectrumResult::scaled_energies`].
    pub fn scaled_slopes(&self) -> Vec<f64> {
        let s = 1.0 / (2.0 * self.n_bosons.max(1) as f64);
        self.slopes.iter().map(|e| e * s).collect()
    }
}

/// Hellmann–Feynman slopes from both sides of `λ`; identical away from `λ = 1`.
#[derive(Clone, Debug, Serialize)]
pub struct HfSlopes {
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    pub degenerate: Vec<bool>,
}

fn sorted_eigen(h: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let dim = h.nrows();
    if h.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical(format!(
            "non-finite Hamiltonian entries:\n{h}"
        )));
    }
    let eig = SymmetricEigen::try_new(h.clone(), 1e-15, 10_000).ok_or_else(|| {
        Error::Numerical(format!("symmetric eigensolver did not converge:\n{h}"))
    })?;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vecs = DMatrix::zeros(dim, dim);
    for (col, &k) in order.iter().enumerate() {
        let mut v = eig.eigenvectors.column(k).clone_owned();
        // deterministic sign: largest component positive
        let imax = v.iamax();
        if v[imax] < 0.0 {
            v = -v;
        }
        vecs.set_column(col, &v);
    }
    Ok((values, vecs))
}

/// Groups of level indices whose energies agree within the degeneracy tolerance.
fn degenerate_blocks(values: &[f64]) -> Vec<std::ops::Range<usize>> {
    let width = values
        .last()
        .zip(values.first())
        .map_or(1.0, |(a, b)| (a - b).abs().max(1.0));
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > DEGENERACY_TOL * width {
            blocks.push(start..i);
            start = i;
        }
    }
    blocks
}

/// Expectations of `dh` in the eigenbasis, diagonalizing `dh` inside degenerate blocks.
fn block_expectations(
    dh: &DMatrix<f64>,
    vecs: &DMatrix<f64>,
    blocks: &[std::ops::Range<usize>],
) -> Result<Vec<f64>> {
    let mut out = vec![0.0; vecs.ncols()];
    let proj = vecs.transpose() * dh * vecs;
    for b in blocks {
        if b.len() == 1 {
            out[b.start] = proj[(b.start, b.start)];
        } else {
            let sub = proj.view((b.start, b.start), (b.len(), b.len())).clone_owned();
            let (vals, _) = sorted_eigen(&sub)?;
            out[b.clone()].copy_from_slice(&vals);
        }
    }
    Ok(out)
}

fn spectrum_from_matrix(params: &ModelParams, basis: L0Basis, h: &DMatrix<f64>) -> Result<SpectrumResult> {
    let (values, vecs) = sorted_eigen(h)?;
    let blocks = degenerate_blocks(&values);
    let mut degenerate = vec![false; values.len()];
    for b in &blocks {
        if b.len() > 1 {
            degenerate[b.clone()].iter_mut().for_each(|d| *d = true);
        }
    }
    let dh = build_derivative(params, &basis, params.branch())?;
    let slopes = block_expectations(&dh, &vecs, &blocks)?;
    let nd = nd_diagonal(&basis);
    let nd_expectation = (0..values.len())
        .map(|k| {
            vecs.column(k)
                .iter()
                .zip(&nd)
                .map(|(c, n)| c * c * n)
                .sum()
        })
        .collect();
    Ok(SpectrumResult {
        params: *params,
        n_bosons: basis.n_bosons(),
        eigenvalues: values,
        slopes,
        nd_expectation,
        degenerate,
        eigenvectors: vecs,
        basis,
    })
}

/// Full spectrum, Hellmann–Feynman slopes and `⟨n_d⟩` for `N` bosons.
pub fn diagonalize(params: &ModelParams, n: usize) -> Result<SpectrumResult> {
    let basis = build_basis(n);
    let h = build_hamiltonian(params, &basis)?;
    spectrum_from_matrix(params, basis, &h)
}

/// Slopes from both branch formulas. Away from `λ = 1` the right derivative repeats the left.
pub fn hf_slopes(params: &ModelParams, n: usize) -> Result<HfSlopes> {
    let spec = diagonalize(params, n)?;
    hf_slopes_of(&spec)
}

pub fn hf_slopes_of(spec: &SpectrumResult) -> Result<HfSlopes> {
    let params = &spec.params;
    let blocks = degenerate_blocks(&spec.eigenvalues);
    let left = spec.slopes.clone();
    let right = if params.lambda() == LAMBDA_C {
        let dh = build_derivative(params, &spec.basis, Branch::CriticalToDeformed)?;
        block_expectations(&dh, &spec.eigenvectors, &blocks)?
    } else {
        left.clone()
    };
    Ok(HfSlopes {
        left,
        right,
        degenerate: spec.degenerate.clone(),
    })
}

/// Centered finite-difference slopes with levels matched by maximal eigenvector overlap.
pub fn finite_difference_slopes(params: &ModelParams, n: usize, step: f64) -> Result<Vec<f64>> {
    let lo = diagonalize(&params.with_lambda(params.lambda() - step)?, n)?;
    let hi = diagonalize(&params.with_lambda(params.lambda() + step)?, n)?;
    let mid = diagonalize(params, n)?;
    let matched = |other: &SpectrumResult, k: usize| -> f64 {
        let v = mid.eigenvectors.column(k);
        let best = (0..other.eigenvalues.len())
            .max_by(|&a, &b| {
                let oa = other.eigenvectors.column(a).dot(&v).abs();
                let ob = other.eigenvectors.column(b).dot(&v).abs();
                oa.total_cmp(&ob)
            })
            .expect("non-empty spectrum");
        other.eigenvalues[best]
    };
    Ok((0..mid.eigenvalues.len())
        .map(|k| (matched(&hi, k) - matched(&lo, k)) / (2.0 * step))
        .collect())
}

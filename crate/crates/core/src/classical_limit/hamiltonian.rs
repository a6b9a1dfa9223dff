//! Classical L=0 Hamiltonians in Cartesian phase-space variables.
//!
//! With `H = (x² + y² + p_x² + p_y²)/2`, `p_γ = x p_y − y p_x` and
//! `C = −x³ + 3xy² − x p_x² + x p_y² + 2y p_x p_y` (the `cos 3γ`/`sin 3γ` bracket),
//!
//! ```text
//! ℋ₁(β₀′, ζ) = H² + β₀′²(1 − H)H + ζ² p_γ² + ζβ₀′ √((1 − H)/2) C
//! ℋ₂(β₀′, ξ) = ℋ₁(β₀′, 1) + ξ/2 [A² + B²/4 − β₀′²(1 − H)B + β₀′⁴(1 − H)²]
//! ```
//!
//! where `A = x p_x + y p_y` and `B = x² + y² − p_x² − p_y²`. These are the polar
//! forms multiplied out, and they are regular at `β = 0`.

use nalgebra::Matrix4;

use super::jet::{Jet, Scalar};
use super::params::ModelParams;
use super::point::{PhasePoint, R0};
use crate::error::{Error, Result};

/// Energy per boson at `(x, y, p_x, p_y)`, generic over plain and differentiated arithmetic.
pub fn hamiltonian<T: Scalar>(params: &ModelParams, v: [T; 4]) -> T {
    let [x, y, px, py] = v;
    let b2 = params.beta0p() * params.beta0p();
    let (zeta, xi) = params.zeta_xi();
    let hd = (x * x + y * y + px * px + py * py) * 0.5;
    let one_m = -hd + 1.0;
    let pg = x * py - y * px;
    let c3 = -(x * x * x) + x * y * y * 3.0 - x * px * px + x * py * py + y * px * py * 2.0;
    let mut h = hd * hd + one_m * hd * b2 + pg * pg * (zeta * zeta);
    if zeta != 0.0 {
        h = h + (one_m * 0.5).sqrt() * c3 * (zeta * params.beta0p());
    }
    if xi != 0.0 {
        let a = x * px + y * py;
        let b = x * x + y * y - px * px - py * py;
        let bracket = a * a + b * b * 0.25 - b * one_m * b2 + one_m * one_m * (b2 * b2);
        h = h + bracket * (0.5 * xi);
    }
    h
}

/// `ℋ(pt)`; errors outside the phase-space ball.
pub fn eval_h(params: &ModelParams, pt: &PhasePoint) -> Result<f64> {
    pt.check_domain()?;
    Ok(hamiltonian(params, pt.to_array()))
}

fn check_interior(pt: &PhasePoint) -> Result<()> {
    if pt.r2() < R0 * R0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "derivatives need an interior point, got R² = {}",
            pt.r2()
        )))
    }
}

/// Value, gradient and Hessian in one pass.
pub fn jet_h(params: &ModelParams, pt: &PhasePoint) -> Result<Jet> {
    check_interior(pt)?;
    Ok(hamiltonian(params, Jet::variables(pt.to_array())))
}

pub fn grad_h(params: &ModelParams, pt: &PhasePoint) -> Result<[f64; 4]> {
    Ok(jet_h(params, pt)?.g)
}

pub fn hess_h(params: &ModelParams, pt: &PhasePoint) -> Result<Matrix4<f64>> {
    let j = jet_h(params, pt)?;
    Ok(Matrix4::from_fn(|i, k| j.h[i][k]))
}

/// Central finite-difference gradient, the cross-check for [`grad_h`].
pub fn grad_h_fd(params: &ModelParams, pt: &PhasePoint, step: f64) -> [f64; 4] {
    let base = pt.to_array();
    let mut g = [0.0; 4];
    for (k, gk) in g.iter_mut().enumerate() {
        let mut plus = base;
        let mut minus = base;
        plus[k] += step;
        minus[k] -= step;
        *gk = (hamiltonian(params, plus) - hamiltonian(params, minus)) / (2.0 * step);
    }
    g
}

/// Central finite-difference Hessian from analytic gradients.
pub fn hess_h_fd(params: &ModelParams, pt: &PhasePoint, step: f64) -> Matrix4<f64> {
    let base = pt.to_array();
    let mut h = Matrix4::zeros();
    for k in 0..4 {
        let mut plus = base;
        let mut minus = base;
        plus[k] += step;
        minus[k] -= step;
        let gp = hamiltonian(params, Jet::variables(plus)).g;
        let gm = hamiltonian(params, Jet::variables(minus)).g;
        for i in 0..4 {
            h[(i, k)] = (gp[i] - gm[i]) / (2.0 * step);
        }
    }
    (h + h.transpose()) * 0.5
}

/// `(kinetic, potential)` with `potential = ℋ(q, 0)` and `kinetic = ℋ(q, p) − ℋ(q, 0)`.
pub fn decompose(params: &ModelParams, pt: &PhasePoint) -> Result<(f64, f64)> {
    let total = eval_h(params, pt)?;
    let potential = hamiltonian(params, [pt.x, pt.y, 0.0, 0.0]);
    Ok((total - potential, potential))
}

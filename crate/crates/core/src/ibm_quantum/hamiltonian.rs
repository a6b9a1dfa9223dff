//! L=0 matrices of the Hamiltonian family in the seniority basis.
//!
//! With `n = n_d`, `n_s = N − n` and the overall `1/N`:
//!
//! * `n_d(n_d − 1)` and `n_s n_d` are diagonal;
//! * `7 Q†·Q̃ = 2n² − 4n + 2τ(τ+3)` is diagonal, `Q† = [d†d†]^{(2)}`;
//! * the `s†d†·Q̃` cross term of `D†·D̃` is `√(n_s + 1) Y`;
//! * `S†S` has `(d†·d†)(d̃·d̃) = n(n+3) − τ(τ+3)` on the diagonal, `β⁴ n_s(n_s−1)`, and the
//!   pair-transfer element `−β² √(n_s(n_s−1)) √((n−τ+2)(n+τ+5))` between `(n, τ)` and `(n+2, τ)`.

use nalgebra::DMatrix;

use super::basis::{L0Basis, L0State};
use super::seniority::y_table;
use crate::classical_limit::{Branch, ModelParams};
use crate::error::{Error, Result};

/// Default largest boson number accepted by the matrix builders.
pub const DEFAULT_N_CAP: usize = 200;

/// Coefficients of the operator pieces making up `N·Ĥ`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Pieces {
    /// `n_d(n_d − 1)`
    pairs: f64,
    /// `n_s n_d`
    sd: f64,
    /// `7 Q†·Q̃`
    qq: f64,
    /// `s†d†·Q̃ + h.c.`
    cross: f64,
    /// `S†S`
    ss: f64,
}

fn pieces(params: &ModelParams) -> Pieces {
    let b = params.beta0p();
    let (zeta, xi) = params.zeta_xi();
    Pieces {
        pairs: 2.0 * (1.0 - zeta * zeta),
        sd: 2.0 * b * b,
        qq: zeta * zeta,
        cross: 14f64.sqrt() * b * zeta,
        ss: xi,
    }
}

/// `∂(N·Ĥ)/∂λ` on the requested side of `λ`.
fn derivative_pieces(params: &ModelParams, branch: Branch) -> Pieces {
    let b = params.beta0p();
    match branch {
        Branch::SphericalToCritical => {
            let zeta = params.lambda().min(1.0);
            Pieces {
                pairs: -4.0 * zeta,
                sd: 0.0,
                qq: 2.0 * zeta,
                cross: 14f64.sqrt() * b,
                ss: 0.0,
            }
        }
        Branch::CriticalToDeformed => Pieces {
            pairs: 0.0,
            sd: 0.0,
            qq: 0.0,
            cross: 0.0,
            ss: 1.0,
        },
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::Domain(format!(
            "N = {n} exceeds the configured cap {cap}"
        )));
    }
    Ok(())
}

fn assemble(beta: f64, pc: Pieces, basis: &L0Basis) -> DMatrix<f64> {
    let n_tot = basis.n_bosons();
    let dim = basis.dimension();
    let mut h = DMatrix::zeros(dim, dim);
    if n_tot == 0 {
        return h;
    }
    let b2 = beta * beta;
    let table = y_table(n_tot);
    for (i, s) in basis.states().iter().enumerate() {
        let n = s.nd as f64;
        let tau = s.tau as f64;
        let ns = (n_tot - s.nd) as f64;
        let mut d = pc.pairs * n * (n - 1.0)
            + pc.sd * ns * n
            + pc.qq * (2.0 * n * n - 4.0 * n + 2.0 * tau * (tau + 3.0));
        if pc.ss != 0.0 {
            d += pc.ss * (n * (n + 3.0) - tau * (tau + 3.0) + b2 * b2 * ns * (ns - 1.0));
            if s.nd + 2 <= n_tot {
                let up = L0State {
                    nd: s.nd + 2,
                    tau: s.tau,
                };
                if let Some(j) = basis.position(up) {
                    let v = -pc.ss
                        * b2
                        * (ns * (ns - 1.0)).sqrt()
                        * ((n - tau + 2.0) * (n + tau + 5.0)).sqrt();
                    h[(i, j)] += v;
                    h[(j, i)] += v;
                }
            }
        }
        h[(i, i)] += d;
        if pc.cross != 0.0 && s.nd >= 1 {
            for e in table.row(s.nd) {
                let to = L0State {
                    nd: s.nd - 1,
                    tau: e.tau_to,
                };
                if e.tau != s.tau {
                    continue;
                }
                let j = basis.position(to).expect("lower state in basis");
                let v = pc.cross * (ns + 1.0).sqrt() * e.value;
                h[(i, j)] += v;
                h[(j, i)] += v;
            }
        }
    }
    h / n_tot as f64
}

/// Matrix of `Ĥ^λ(β₀′)` in the L=0 basis, with the default size cap.
pub fn build_hamiltonian(params: &ModelParams, basis: &L0Basis) -> Result<DMatrix<f64>> {
    build_hamiltonian_capped(params, basis, DEFAULT_N_CAP)
}

pub fn build_hamiltonian_capped(
    params: &ModelParams,
    basis: &L0Basis,
    cap: usize,
) -> Result<DMatrix<f64>> {
    check_cap(basis.n_bosons(), cap)?;
    Ok(assemble(params.beta0p(), pieces(params), basis))
}

/// `∂Ĥ/∂λ` using the formula of the given branch. At `λ = 1` the two branches give the
/// left and right derivatives.
pub fn build_derivative(
    params: &ModelParams,
    basis: &L0Basis,
    branch: Branch,
) -> Result<DMatrix<f64>> {
    check_cap(basis.n_bosons(), DEFAULT_N_CAP)?;
    Ok(assemble(
        params.beta0p(),
        derivative_pieces(params, branch),
        basis,
    ))
}

/// Diagonal of `n̂_d`.
pub fn nd_diagonal(basis: &L0Basis) -> Vec<f64> {
    basis.states().iter().map(|s| s.nd as f64).collect()
}

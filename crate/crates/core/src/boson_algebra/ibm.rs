//! Operator-level building blocks of the s-d boson Hamiltonians.
//!
//! The Hamiltonians carry an overall `1/N`; builders here return `N·Ĥ` so that the
//! result is a plain boson polynomial.

use super::expr::{BosonExpr, Mode};
use super::tensor::{couple, dot, TensorOp};

pub fn n_d() -> BosonExpr {
    (-2..=2).fold(BosonExpr::zero(), |acc, mu| acc + BosonExpr::number(Mode::d(mu)))
}

pub fn n_s() -> BosonExpr {
    BosonExpr::number(Mode::S)
}

pub fn total_number() -> BosonExpr {
    n_s() + n_d()
}

/// `D†_μ(β, ζ) = √2 β [s†d†]^{(2)}_μ + √7 ζ [d†d†]^{(2)}_μ`.
pub fn d_pair(beta: f64, zeta: f64) -> TensorOp {
    let sd = couple(&TensorOp::s_dagger(), &TensorOp::d_dagger(), 2).expect("0 ⊗ 2 → 2");
    let dd = couple(&TensorOp::d_dagger(), &TensorOp::d_dagger(), 2).expect("2 ⊗ 2 → 2");
    sd.scale(2f64.sqrt() * beta)
        .add(&dd.scale(7f64.sqrt() * zeta))
        .expect("equal ranks")
}

/// `S†(β) = d†·d† − β² s†s†`.
pub fn s_pair(beta: f64) -> BosonExpr {
    let dd = dot(&TensorOp::d_dagger(), &TensorOp::d_dagger()).expect("equal ranks");
    let ss = BosonExpr::creation(Mode::S) * BosonExpr::creation(Mode::S);
    dd - ss.scale(beta * beta)
}

/// `n_d(n_d − 1)` in normal order.
pub fn nd_pairs() -> BosonExpr {
    let nd = n_d();
    &(&nd * &nd) - &nd
}

/// `D†·D̃ = Σ_μ D†_μ D_μ`.
pub fn d_pair_product(beta: f64, zeta: f64) -> BosonExpr {
    let d = d_pair(beta, zeta);
    dot(&d, &d.conjugate()).expect("equal ranks")
}

/// `N·Ĥ₁ = 2(1 − ζ²) n_d(n_d − 1) + D†·D̃`.
pub fn h1_scaled(beta: f64, zeta: f64) -> BosonExpr {
    nd_pairs().scale(2.0 * (1.0 - zeta * zeta)) + d_pair_product(beta, zeta)
}

/// `N·Ĥ₂ = N·Ĥ₁(β, 1) + ξ S†S`.
pub fn h2_scaled(beta: f64, xi: f64) -> BosonExpr {
    let s = s_pair(beta);
    h1_scaled(beta, 1.0) + (&s * &s.adjoint()).scale(xi)
}

/// `N·Ĥ^λ` on the branch selected by `lambda` (ζ = λ below 1, ξ = λ − 1 above).
pub fn h_lambda_scaled(beta: f64, lambda: f64) -> BosonExpr {
    if lambda <= 1.0 {
        h1_scaled(beta, lambda)
    } else {
        h2_scaled(beta, lambda - 1.0)
    }
}

/// `L_μ = √10 [d†d̃]^{(1)}_μ`.
pub fn angular_momentum() -> TensorOp {
    couple(&TensorOp::d_dagger(), &TensorOp::d_tilde(), 1)
        .expect("2 ⊗ 2 → 1")
        .scale(10f64.sqrt())
}

/// `L² = L·L`.
pub fn angular_momentum_squared() -> BosonExpr {
    let l = angular_momentum();
    dot(&l, &l).expect("equal ranks").pruned(1e-13)
}

//! Classical limit of the L=0 Hamiltonian family on the compact phase space.

pub mod hamiltonian;
pub mod jet;
pub mod momentum;
pub mod params;
pub mod point;

pub use hamiltonian::{
    decompose, eval_h, grad_h, grad_h_fd, hamiltonian, hess_h, hess_h_fd, jet_h,
};
pub use jet::{Jet, Scalar};
pub use momentum::{momentum_branches, momentum_branches_with};
pub use params::{Branch, ModelParams, LAMBDA_C};
pub use point::{PhasePoint, PolarPoint, R0};

//! Exact finite-N spectra of the L=0 Hamiltonian family.

pub mod basis;
pub mod hamiltonian;
pub mod oscillatory;
pub mod seniority;
pub mod spectrum;

pub use basis::{basis_dimension, build_basis, L0Basis, L0State};
pub use hamiltonian::{build_derivative, build_hamiltonian, build_hamiltonian_capped, DEFAULT_N_CAP};
pub use oscillatory::{
    oscillatory_density, oscillatory_from_spectrum, OscillatoryDensity, SigmaRule,
    OSCILLATORY_CSV_HEADER,
};
pub use seniority::{y_table, YTable};
pub use spectrum::{
    diagonalize, finite_difference_slopes, hf_slopes, hf_slopes_of, HfSlopes, SpectrumResult,
};

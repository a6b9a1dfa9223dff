//! Excited-state quantum phase transitions in two-degree-of-freedom boson systems.
//!
//! The crate covers the operator algebra of s-d bosons, the classical limit of the
//! L=0 Hamiltonian family, stationary-point and boundary analysis of that limit,
//! Monte-Carlo semiclassical level densities, exact finite-N spectra, and coherent-state
//! excited energy surfaces.

pub mod boson_algebra;
pub mod classical_limit;
pub mod error;
pub mod excited_surfaces;
pub mod ibm_quantum;
pub mod level_density;
pub mod stationary_analysis;

pub use boson_algebra::{BosonExpr, TensorOp};
pub use classical_limit::{Branch, ModelParams, PhasePoint, PolarPoint};
pub use error::{Error, Result};
pub use excited_surfaces::{SurfaceModel, SurfacePoint, SurfacePointKind};
pub use ibm_quantum::{L0Basis, OscillatoryDensity, SigmaRule, SpectrumResult};
pub use level_density::{DensityFeature, DensityGrid, DensityOptions, FeatureKind, PhaseDiagram};
pub use stationary_analysis::{
    BoundaryAnalysis, SingularityClass, SpinodalPoints, StationaryBranch, StationaryCensus,
    StationaryPoint,
};
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

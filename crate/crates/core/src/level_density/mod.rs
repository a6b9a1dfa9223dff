//! Semiclassical level density, its energy derivative and the level flow.

pub mod density;
pub mod features;
pub mod flow;

pub use density::{
    density_derivative, mc_density, mc_density_with, phase_diagram, slice_seed, DensityGrid,
    DensityOptions, DerivativeOperator, PhaseDiagram, DENSITY_CSV_HEADER,
};
pub use features::{
    detect_features, feature_statistics, match_features, DensityFeature, ExpectedSingularity,
    FeatureKind, FeatureMatch, FeatureOptions,
};
pub use flow::{
    continuity_residual, flow_divergence, flow_grid, smoothed_flow, smoothed_levels,
    ContinuityCheck, FlowGrid,
};

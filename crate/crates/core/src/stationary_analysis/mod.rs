//! Stationary points, boundary extrema and critical borderlines of the classical Hamiltonian.

pub mod borderlines;
pub mod boundary;
pub mod exponent;
pub mod points;
pub mod spinodal;

pub use borderlines::{
    trace_borderlines, trace_borderlines_with, BorderlineTrace, BoundaryRole,
    CriticalBorderline, SingularityClass, TraceOptions,
};
pub use boundary::{
    boundary_energy, boundary_extrema, boundary_extrema_with, boundary_range_closed_form,
    BoundaryAnalysis, BoundaryExtremum, BoundaryKind,
};
pub use exponent::{boundary_exponent, boundary_exponent_f64, BoundaryExponent, BoundaryVerdict, Power};
pub use points::{
    classify_hessian, classify_point, find_stationary_points, find_stationary_points_with,
    halton_ball, SearchDiagnostics, SearchOptions, StationaryBranch, StationaryCensus,
    StationaryPoint,
};
pub use spinodal::{antispinodal_closed_form, spinodal_points, SpinodalPoints};

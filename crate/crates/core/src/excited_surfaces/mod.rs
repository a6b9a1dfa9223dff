//! Coherent-state energy surfaces of the condensate and of its γ-excitations.

pub mod coherent;
pub mod intrinsic;
pub mod surfaces;

pub use coherent::{Condensate, CondensateState};
pub use intrinsic::IntrinsicBosons;
pub use surfaces::{
    condensate_energy, excited_energy, phonon_ratio, surface_stationary_points, ExcitedSurface,
    SurfaceModel, SurfacePoint, SurfacePointKind,
};

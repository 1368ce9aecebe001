//! Graded orbifold surfaces with stops and their standard-dissection algebras.

pub mod random;
pub mod standard;
pub mod surface;

pub use random::random_surface;
pub use standard::standard_algebra;
pub use surface::{
    add_stops, deform_surface, predicted_hh2, toggle_full_stops, validate_surface, Boundary, BoundaryContribution,
    ContributionClass, StopConfig, SurfaceData, SurfaceReport,
};

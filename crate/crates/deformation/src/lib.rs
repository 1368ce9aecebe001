//! Linear families of DG algebras over `Q[x_1..x_d]` built from the standard
//! 2-cocycles, their fibers, and morphism checks between fibers and surface models.

pub mod cohomology;
pub mod family;
pub mod identify;
pub mod ks;
pub mod morphism;
pub mod observations;

use quiver_core::AlgebraError;
use thiserror::Error;

pub use cohomology::{fiber_cohomology, FiberCohomology};
pub use family::{build_family, check_family_identities, evaluate_fiber, DeformationFamily, FamilyCheck, FamilyTerm, TermKind};
pub use identify::{identify_deformed_surface, DeformedSurfaceReport};
pub use ks::{kodaira_spencer, KodairaSpencerMatrix};
pub use morphism::{verify_morphism, AlgebraMap, MorphismReport, Verdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeformError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("base algebra is not proper: vertex {0} carries a relation-free loop")]
    NotProper(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("expected {expected} parameters, got {got}")]
    BadLambda { expected: usize, got: usize },
    #[error("surface error: {0}")]
    Surface(String),
}

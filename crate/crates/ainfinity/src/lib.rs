//! Curved A∞ structures on finite path bases: Stasheff identities, curved
//! fibers of polynomial loops, and a four-parameter family on six vertices.

pub mod curved;
pub mod pillowcase;
pub mod presentation;
pub mod stasheff;

use quiver_core::AlgebraError;
use thiserror::Error;

pub use curved::{curved_cocycle_check, curved_fiber, CurvedCocycleReport, CurvedLoops};
pub use pillowcase::{pillowcase_cohomology, pillowcase_family, PillowcaseCohomology};
pub use presentation::{AInfinityJson, AInfinityPresentation, MuEntry};
pub use stasheff::{check_stasheff, StasheffReport, StasheffTerm, StasheffViolation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AInfError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid A∞ data: {0}")]
    Invalid(String),
    #[error("cohomology computation failed: {0}")]
    Cohomology(String),
}

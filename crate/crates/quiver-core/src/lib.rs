//! Graded quivers, path algebras modulo monomial relations and rewrite rules,
//! differentials, and the gentle predicates.
//!
//! Paths compose right to left: `p = pn ... p1` traverses `p1` first.

pub mod element;
pub mod error;
pub mod fixtures;
pub mod gentle;
pub mod io;
pub mod linalg;
pub mod presentation;
pub mod quiver;
pub mod scalar;

pub use element::Element;
pub use error::AlgebraError;
pub use gentle::{is_dg_gentle, is_formal, is_gentle, GentleReport};
pub use presentation::{GradedDimension, Presentation, Rewrite, ValidationReport};
pub use quiver::{Arrow, GradedQuiver, Path};
pub use scalar::{sign, Field};

/// Rationals with arbitrary precision.
pub type Q = num_rational::BigRational;
/// Machine-word rationals, for small computations.
pub type Q64 = num_rational::Rational64;
pub type QElement = Element<Q>;
pub type QPresentation = Presentation<Q>;

//! Hochschild cohomology of graded quiver algebras: the reduced overlap complex
//! for monomial DG algebras and a normalized bar-complex oracle.

pub mod bar;
pub mod cochain;
mod engine;
pub mod overlap;
pub mod reduced;
pub mod standard;

pub use cochain::{Cochain, CochainJson, CochainTerm};
pub use overlap::{enumerate_overlaps, Overlap, OverlapData, OverlapSet};
pub use reduced::{hh_dimension, overlap_delta, HHReport, LevelReport, ReducedComplex, Truncation, ValueIndex};
pub use bar::{bar_classes, bar_oracle_hh, BarClassReport, BarCochain, BarKey, BarTruncation};
pub use standard::{extract_standard_cocycles, is_killoverlap_normal, LabeledCocycle, StandardLayout, UnitKind, UnitLayout, LAYOUT_KEY};

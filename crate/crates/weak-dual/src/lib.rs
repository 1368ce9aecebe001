//! Weak duals of standard-dissection algebras.
//!
//! The dual is built on the surface side by toggling full stops; the local
//! endomorphism computation in [`twist`] checks the degree bookkeeping.

pub mod classify;
pub mod dual;
pub mod iso;
pub mod twist;

pub use classify::{classify_vertices, Classification, LoopWitness, VertexClass, VertexKind};
pub use dual::{is_proper, koszul_relation_check, locally_proper, weak_dual, DualError, KoszulReport, WeakDual};
pub use iso::{find_isomorphism, Isomorphism};
pub use twist::{end_of_two_term_twist, TwistComplex, TwistEnd, TwoTermTwist};

//! Exact micro-macro dynamical systems.
//!
//! A system is a finite set of microstates `X = {0..n-1}`, a partition of `X`
//! into macrostates (blocks) and a map `alpha: X -> X`. The Boltzmann entropy
//! of a microstate is the logarithm of the size of its block. This crate
//! decides second-law style properties of such systems exactly, enumerates
//! them exhaustively at small sizes, counts them through lattice points of
//! convex polytopes and solves the maximum-entropy models that describe their
//! thermodynamic limits.

pub mod enumerate;
pub mod error;
pub mod numeric;
pub mod polytope;
pub mod properties;
pub mod random;
pub mod reversible;
pub mod system;
pub mod thermo;

pub use error::{Error, Result};
pub use numeric::{parse_rational, Q};
pub use properties::{PropertyVerdict, Relation};
pub use system::{
    build_system, Dynamics, EntropyReport, Partition, System, TransitionCounts, ZoneProfile,
};

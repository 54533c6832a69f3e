//! Phase spaces, dynamics, entropies, zones, equilibrium structure and the
//! structural constructions on systems.

mod dynamics;
mod equilibrium;
mod measures;
mod model;
mod partition;
mod statistics;
mod structure;
mod typical;

pub use dynamics::{Dynamics, Orbits};
pub use equilibrium::{DerivedTime, ReachingTime};
pub use measures::{EntropyReport, JumpSet, TransitionCounts, ZoneProfile};
pub use model::{build_system, System, SystemFile, Trend};
pub use partition::Partition;
pub use statistics::{statistics_space, StatisticsFamily, StatisticsSpace};
pub use structure::{
    coarse_grain, disjoint_union, joint, meet, product, restrict, two_state_map,
    unique_equilibrium_map, CoarseGrained,
};
pub use typical::{is_typical, typical_sets, TypicalSets};

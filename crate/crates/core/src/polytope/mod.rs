//! Exact lattice-point sums over the constraint polytopes of zone transition
//! matrices.

mod families;
mod probability;
mod spec;
mod two_zone;

pub use families::{build_polytope, enumerate_and_sum, evaluate, normalizer, Family};
pub use probability::{probability_of_property, Property, PropertyProbability};
pub use spec::{Column, Constraint, PolytopeSpec, WeightRule, WeightedSum};
pub use two_zone::{
    two_zone_distribution, two_zone_ir_l2, two_zone_mode, two_zone_mode_formula,
    two_zone_mode_table, two_zone_mostlikely, two_zone_trend, ModeCheck, TrendRow,
};

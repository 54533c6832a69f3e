//! Decision procedures for the second-law properties and the sufficient
//! conditions that imply them. All comparisons are exact.

mod arrow;
mod checks;
mod orbit;
mod sufficient;
mod verdict;

pub use arrow::{arrow_of_time_at, loschmidt_counts, reversed_arrow_of_time_at, LoschmidtCounts};
pub use checks::{
    check, check_bat, check_gat, check_l1, check_l2, check_l3, check_l4, check_zat,
    equilibrium_consequences,
};
pub use orbit::{check_g, mean_reaching_over_return};
pub use sufficient::{
    is_edge_lipschitz, macro_edges, sufficient_conditions, Sufficient, SufficientVerdict,
};
pub use verdict::{Implication, Property, PropertyVerdict, Relation, WITNESS_CAP};

//! Exhaustive scans over all partitions and permutations of small sets and
//! the closed-form counts they confirm.

mod always;
mod dx;
mod growth;
mod scan;

pub use always::{
    count_always_increasing_by_partition, count_always_increasing_by_permutation,
    count_always_increasing_by_scan, duality_identity, is_entropy_constant_on_orbits,
    AlwaysIncreasing, Duality, DUALITY_LIMIT,
};
pub use dx::{
    bell_numbers, d_x, dx_sequence, for_each_numerical_partition, max_decreases, MaxDecreases,
};
pub use growth::{
    power_set_table, zone_growth_limit, GrowthPattern, GrowthRow, PowerSetRow, ZoneGrowth,
};
pub use scan::{
    for_each_permutation, restricted_growth_strings, scan_all, sizes_of_rgs, CountLedger,
    SCAN_LIMIT,
};

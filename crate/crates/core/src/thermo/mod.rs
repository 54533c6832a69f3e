//! Maximum-entropy transition proportions in thermodynamic limits, property
//! checks on proportion data and finite-sequence checks.

mod limits;
mod model;
mod sequence;
mod solve;

pub use limits::{
    geometric_band, geometric_predictions, limit_properties, GeometricCheck, LimitReport,
    LimitVerdict,
};
pub use model::{entropy, jump, Model, Multipliers, Proportions};
pub use sequence::{check_sequence_l3, SequenceReport, SequenceRow};
pub use solve::{
    max_average_jump, maxent_bounded_jump, maxent_fixed_jump, maxent_free, RESIDUAL_TOL,
};

//! Reversible systems: the two doubling constructions, the orbit
//! constructions, the decomposition into four parts, fluctuation identities,
//! entropy production and the tilted maximum-entropy distribution.

mod chains;
mod decompose;
mod doubling;
mod fluctuation;
mod production;
mod tilted;

pub use chains::{build_not, ChainSpec, Colored, NotKind};
pub use decompose::{
    decompose_reversible, double_colored, verify_certificate, Decomposition, ReversionKind,
};
pub use doubling::{
    default_grid, er_contract, ir_contract, make_er, make_ir, Contract, ContractItem,
};
pub use fluctuation::{fluctuation_check, FluctuationReport};
pub use production::{production_profile, Density, ProductionProfile};
pub use tilted::{tilted_distribution, Tilted};

pub mod enumerate;
pub mod polytope;
pub mod reversible;
pub mod system;
pub mod thermo;

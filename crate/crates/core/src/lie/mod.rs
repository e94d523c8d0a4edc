//! Lie algebras by structure constants and their structure theory.

mod algebra;
mod levi;
mod rep;
mod structure;

pub use algebra::{validate, validate_constants, LieAlgebra};
pub use levi::{LeviDecomposition, SimpleIdeal};
pub use rep::{commutant, intertwiners};
pub use structure::SubalgebraHandle;

//! Exact rational linear algebra.

mod jordan;
mod matrix;
mod modular;
mod poly;
mod rational;
mod subspace;

pub use jordan::{in_generated_algebra, jordan_chevalley, JordanParts};
pub use matrix::{null_space, solve_linear, AffineSolution, Matrix};
pub(crate) use modular::null_space_multimodular;
pub use poly::{Factorization, Poly};
pub use rational::{common_denominator, ParseRationalError, Rational};
pub use subspace::{unit, DirectSum, Subspace};

/// Irreducible factors of the characteristic polynomial.
pub fn factor_charpoly(m: &Matrix) -> crate::error::Result<Factorization> {
    if !m.is_square() {
        return Err(crate::error::Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    m.charpoly().factor()
}

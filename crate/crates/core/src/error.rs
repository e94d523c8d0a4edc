use thiserror::Error;

use crate::linalg::Rational;

/// A bracket table that fails to define a Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("antisymmetry fails at ({i},{j}): [e{i},e{j}] + [e{j},e{i}] has coefficient {value} on e{k}")]
    Antisymmetry {
        i: usize,
        j: usize,
        k: usize,
        value: Rational,
    },
    #[error("Jacobi identity fails at ({i},{j},{k}): coefficient {value} on e{component}")]
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        component: usize,
        value: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("subspaces do not form a direct sum of the ambient space")]
    NotDirectSum,
    #[error("the zero polynomial has no squarefree part or factorization")]
    ZeroPolynomial,
    #[error("invalid Lie algebra: {0}")]
    InvalidLieAlgebra(#[from] Violation),
    #[error("Killing form is degenerate; the algebra is not semisimple")]
    NotSemisimple,
    #[error("subspace is not closed under the bracket")]
    NotSubalgebra,
    #[error("subspace is not stable under the acting subalgebra")]
    NotStable,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

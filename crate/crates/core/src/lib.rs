//! Exact-arithmetic analysis of finite-dimensional real Lie algebras that
//! carry nil-invariant symmetric bilinear forms.

pub mod decompose;
pub mod error;
pub mod experiments;
pub mod gallery;
pub mod lie;
pub mod linalg;
pub mod metric;

pub use error::{Error, Result, Violation};

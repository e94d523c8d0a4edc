//! JSON documents, reports and command implementations behind `nilform`.

pub mod commands;
pub mod document;
pub mod report;

pub use commands::{AuditTarget, CliError, Settings};
pub use document::{AlgebraDocument, DocumentError, LoadedDocument};
pub use report::{Exit, Report};

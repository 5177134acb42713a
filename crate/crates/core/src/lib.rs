//! Equivariant PROPs built from ordered maps and crossed groups.

pub mod braids;
pub mod composites;
pub mod crossed;
pub mod error;
pub mod groups;
pub mod ncsets;
pub mod ordmaps;
pub mod semantics;
pub mod suites;

pub use error::{Error, Result};

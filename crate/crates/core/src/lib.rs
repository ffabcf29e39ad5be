//! Finite simplicial sets, bisimplicial sets and Segal precategories, with
//! exact finite checks of the constructions relating them.

pub mod bisimplicial;
pub mod cli;
pub mod cat;
pub mod error;
pub(crate) mod format;
pub mod invariants;
pub mod lifting;
pub mod segal;
pub mod simplicial;

pub use error::{Budget, Error, Result};

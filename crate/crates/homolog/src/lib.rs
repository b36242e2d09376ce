//! Exact homological invariants of modules over Artinian local algebras.

pub mod algebra;
pub mod algebraic;
pub mod asymptotics;
pub mod checks;
pub mod corpus;
pub mod error;
pub mod field;
pub mod homalg;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod report;
pub mod resolution;
pub mod summary;

pub use error::{Error, Result};

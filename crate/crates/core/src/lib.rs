//! Exact computations with finite dg categories: the families monad and its
//! algebras, twisted complexes, path objects, exact structures and the
//! sum-comparison morphisms.

pub mod comparison;
pub mod complexes;
pub mod dgcat;
pub mod error;
pub mod exact;
pub mod exec;
pub mod families;
pub mod harness;
pub mod field;
pub mod twisted;
pub mod lattice;
pub mod matrix;
pub mod path;
pub mod presentation;
pub mod report;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;

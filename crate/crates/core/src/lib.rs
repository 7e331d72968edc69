//! Exact linear algebra, curved dg algebras and modules, bar constructions
//! and Koszul–Morita duality functors over `Q` and prime fields.

pub mod algebra;
pub mod bar;
pub mod certify;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod module;
pub mod morita;
pub mod morphism;
pub mod random;
pub mod scalar;
pub mod twisting;
pub mod validate;
pub mod vector;

pub use error::{Error, Result};
pub use scalar::{Field, Scalar};
pub use vector::Vector;

//! Ordinary finite-dimensional algebras: radical, simple modules, classical
//! Morita duality and an Ext oracle from projective resolutions.

mod conic;
mod duality;
mod ext;
mod ordinary;
mod poly;
mod simples;

pub use duality::*;
pub use ext::*;
pub use ordinary::*;
pub use poly::Poly;
pub use simples::*;

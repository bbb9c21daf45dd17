//! Exact dense linear algebra over prime fields.

mod field;
mod matrix;
mod poly;
pub mod subspace;

pub use field::PrimeField;
pub use matrix::Matrix;
pub(crate) use matrix::Echelon;
pub use poly::Poly;

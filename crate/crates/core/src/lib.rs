//! Perfect complexes over self-injective bound quiver algebras.
//!
//! The crate builds basic algebras `kQ/I` over prime fields, works with
//! their finite-dimensional modules and with bounded complexes of
//! projectives up to homotopy, constructs Auslander-Reiten triangles and
//! sequences, and walks the `ZA_inf` components of the Auslander-Reiten
//! quiver of perfect complexes.

pub mod algebra;
pub mod complex;
pub mod ar;
pub mod cli;
pub mod error;
pub mod explorer;
pub mod linalg;
pub mod module;

pub use error::{Error, Result};

/// Retry budget for randomized searches.
pub const DEFAULT_BUDGET: usize = 64;

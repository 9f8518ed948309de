//! Exact linear algebra over ℚ and F_p.

mod scalar;
mod sparse;

pub use scalar::{is_prime, Field, Scalar, MAX_PRIME};
pub use sparse::{Rref, SparseMatrix};

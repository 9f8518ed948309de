//! Exact computations with Hopf algebras, Yetter-Drinfel'd modules,
//! R-matrices and the braided systems they generate, including the
//! associated bidifferential complexes and their homology.

pub mod braided;
pub mod error;
pub mod homology;
pub mod hopf;
pub mod linalg;
pub mod report;
pub mod rmatrix;
pub mod tensor;
pub mod yd;

pub use error::{Error, Result};

//! Exact computations with free-fermion vertex operator superalgebras, their
//! twisted modules and twisted Zhu algebras.

pub mod error;
pub mod fields;
pub mod fock;
pub mod frac;
pub mod lie;
pub mod linalg;
pub mod modules;
pub mod scalar;
pub mod sparse;
pub mod zhu;

pub use error::{Result, VosaError};
pub use frac::FracIndex;
pub use scalar::Scalar;
pub use sparse::SparseVec;

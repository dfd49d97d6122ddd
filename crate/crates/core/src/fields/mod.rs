//! Vertex operators on V and on its twisted modules.

pub mod algebra;
pub mod iter;
pub mod module;
pub mod verify;

pub use algebra::VertexAlgebra;
pub use iter::{conformal_vector, homogeneous_weight, IterField};
pub use module::{modvec_to_state, state_to_modvec, BasisKey, FockModule, ModVec, VertexModule};

//! Fermionic Fock spaces: generator data, twists, sectors, canonical
//! monomials and generator modes.

pub mod hspec;
pub mod monomial;
pub mod sector;
pub mod space;
pub mod twist;

pub use hspec::{GenId, GeneratorSpec, HSpec};
pub use monomial::{normalize, Factor, Monomial};
pub use sector::{enumerate_basis, graded_dims, ModeRole, SectorSpec, ZeroModePolicy};
pub use space::{generator_mode, generator_mode_state, State};
pub use twist::{Twist, TwistKind};

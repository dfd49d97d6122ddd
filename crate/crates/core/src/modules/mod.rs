//! Twisted modules, the functor `Omega`, contragredients and truncated
//! generalized Verma modules.

pub mod action;
pub mod contragredient;
pub mod omega;
pub mod twisted;
pub mod verma;

pub use action::{zhu_action_on_omega, ActionReport};
pub use contragredient::ContragredientModule;
pub use omega::{DirectSum, OmegaSpace};
pub use twisted::{
    build_sigma_module, build_tau_module, standard_setup, ProjectedModule, TauEntry, TauTable, TwistedModule,
};
pub use verma::{induce_truncated, InducedModule, VermaTruncation, ZhuModule};

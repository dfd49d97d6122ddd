//! The twisted Zhu algebra `A_g(V)`.

pub mod algebra;
pub mod cache;
pub mod checks;
pub mod context;
pub mod ops;
pub mod structure;

pub use algebra::{
    assemble_algebra, build_algebra, build_reducer, left_regular, Reducer, ReducerSnapshot, ZeroModeRep,
    ZhuAlgebraResult, ZhuOptions,
};
pub use cache::{build_algebra_cached, cache_key, BasisCacheEntry, CacheStatus, BASIS_SCHEMA, CACHE_ENV};
pub use checks::{verify_residue_classes, verify_table_axioms};
pub use context::TwistContext;
pub use ops::{circle_g, relation, relation_mono, residue, star_formula, star_g, star_mono};
pub use structure::{center_and_idempotents, StructureReport};

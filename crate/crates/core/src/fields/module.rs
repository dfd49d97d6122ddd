//! The interface every concrete module exposes to the field engine.

use std::sync::Arc;

use crate::error::Result;
use crate::fock::{enumerate_basis, generator_mode, GenId, HSpec, Monomial, SectorSpec, State};
use crate::frac::FracIndex;
use crate::sparse::SparseVec;

/// Basis vector of a module: a monomial of modes over a ground state.
///
/// Fock modules use `ground = 0`; induced modules index a basis of the seed
/// space here.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisKey {
    pub mono: Monomial,
    pub ground: u32,
}

impl BasisKey {
    pub fn fock(mono: Monomial) -> Self {
        BasisKey { mono, ground: 0 }
    }

    pub fn ground(ground: u32) -> Self {
        BasisKey { mono: Monomial::vacuum(), ground }
    }
}

pub type ModVec = SparseVec<BasisKey>;

pub fn state_to_modvec(s: &State) -> ModVec {
    s.map_keys(|m| BasisKey::fock(m.clone()))
}

pub fn modvec_to_state(v: &ModVec) -> State {
    v.map_keys(|k| k.mono.clone())
}

/// A graded module on which the generator fields act. All other fields are
/// derived from these by the field engine.
pub trait VertexModule {
    /// Sector data: generator mode classes and the twist of the module.
    fn sector(&self) -> &SectorSpec;

    /// `gen(n) w` for a basis vector `w`.
    fn generator_mode(&self, gen: GenId, n: FracIndex, w: &BasisKey) -> Result<ModVec>;

    fn degree(&self, w: &BasisKey) -> FracIndex {
        w.mono.weight()
    }

    /// Basis of the pieces of degree at most `max_degree`, ordered by degree.
    fn basis(&self, max_degree: FracIndex) -> Vec<BasisKey>;

    fn h(&self) -> &Arc<HSpec> {
        self.sector().h()
    }

    fn generator_mode_vec(&self, gen: GenId, n: FracIndex, v: &ModVec) -> Result<ModVec> {
        let mut out = ModVec::new();
        for (k, c) in v {
            out.add_scaled(&self.generator_mode(gen, n, k)?, c);
        }
        Ok(out)
    }
}

/// The Fock module of a sector.
#[derive(Clone, Debug)]
pub struct FockModule {
    sector: SectorSpec,
}

impl FockModule {
    pub fn new(sector: SectorSpec) -> Self {
        FockModule { sector }
    }
}

impl VertexModule for FockModule {
    fn sector(&self) -> &SectorSpec {
        &self.sector
    }

    fn generator_mode(&self, gen: GenId, n: FracIndex, w: &BasisKey) -> Result<ModVec> {
        Ok(state_to_modvec(&generator_mode(&self.sector, gen, n, &w.mono)?))
    }

    fn basis(&self, max_degree: FracIndex) -> Vec<BasisKey> {
        enumerate_basis(&self.sector, max_degree).into_iter().map(BasisKey::fock).collect()
    }
}

impl<M: VertexModule + ?Sized> VertexModule for &M {
    fn sector(&self) -> &SectorSpec {
        (**self).sector()
    }
    fn generator_mode(&self, gen: GenId, n: FracIndex, w: &BasisKey) -> Result<ModVec> {
        (**self).generator_mode(gen, n, w)
    }
    fn degree(&self, w: &BasisKey) -> FracIndex {
        (**self).degree(w)
    }
    fn basis(&self, max_degree: FracIndex) -> Vec<BasisKey> {
        (**self).basis(max_degree)
    }
}

impl<M: VertexModule + ?Sized> VertexModule for Arc<M> {
    fn sector(&self) -> &SectorSpec {
        (**self).sector()
    }
    fn generator_mode(&self, gen: GenId, n: FracIndex, w: &BasisKey) -> Result<ModVec> {
        (**self).generator_mode(gen, n, w)
    }
    fn degree(&self, w: &BasisKey) -> FracIndex {
        (**self).degree(w)
    }
    fn basis(&self, max_degree: FracIndex) -> Vec<BasisKey> {
        (**self).basis(max_degree)
    }
}

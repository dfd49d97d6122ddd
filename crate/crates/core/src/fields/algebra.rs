//! V acting on itself: products `u_j v`, the conformal vector and the
//! Virasoro operators.

use std::sync::Arc;

use crate::error::Result;
use crate::fock::{enumerate_basis, GenId, HSpec, Monomial, SectorSpec, State};
use crate::frac::FracIndex;
use crate::scalar::{int, Scalar};

use super::iter::IterField;
use super::module::{modvec_to_state, state_to_modvec, FockModule, VertexModule};

/// The free-fermion vertex operator superalgebra `V(H, Z + 1/2)`.
pub struct VertexAlgebra {
    field: IterField<FockModule>,
}

impl VertexAlgebra {
    pub fn new(h: Arc<HSpec>) -> Self {
        let module = FockModule::new(SectorSpec::neveu_schwarz(h));
        VertexAlgebra { field: IterField::new(module) }
    }

    pub fn h(&self) -> &Arc<HSpec> {
        self.field.module().h()
    }

    pub fn sector(&self) -> &SectorSpec {
        self.field.module().sector()
    }

    pub fn field(&self) -> &IterField<FockModule> {
        &self.field
    }

    pub fn omega(&self) -> &State {
        self.field.omega()
    }

    pub fn vacuum() -> State {
        State::basis(Monomial::vacuum())
    }

    /// `x(-1/2) 1`.
    pub fn generator_state(gen: GenId) -> State {
        State::basis(Monomial::single(gen, -FracIndex::HALF))
    }

    /// `u_j v`.
    pub fn product(&self, u: &State, j: i64, v: &State) -> Result<State> {
        let r = self.field.mode(u, FracIndex::int(j), &state_to_modvec(v))?;
        Ok(modvec_to_state(&r))
    }

    pub fn product_mono(&self, u: &Monomial, j: i64, v: &Monomial) -> Result<State> {
        let r = self.field.mode_mono(u, FracIndex::int(j), &super::module::BasisKey::fock(v.clone()))?;
        Ok(modvec_to_state(&r))
    }

    /// `L(n) v`.
    pub fn virasoro(&self, n: i64, v: &State) -> Result<State> {
        Ok(modvec_to_state(&self.field.virasoro(n, &state_to_modvec(v))?))
    }

    /// The central charge read off from `omega_3 omega = (c/2) 1`.
    pub fn central_charge(&self) -> Result<Scalar> {
        let r = self.product(self.omega(), 3, self.omega())?;
        Ok(r.coeff(&Monomial::vacuum()) * int(2))
    }

    pub fn basis(&self, max_weight: FracIndex) -> Vec<Monomial> {
        enumerate_basis(self.sector(), max_weight)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn v(l: usize) -> VertexAlgebra {
        VertexAlgebra::new(Arc::new(HSpec::orthonormal(l).unwrap()))
    }

    #[test]
    fn generator_zero_product() {
        let va = v(1);
        let u = VertexAlgebra::generator_state(0);
        assert_eq!(va.product(&u, 0, &u).unwrap(), VertexAlgebra::vacuum());
    }

    #[test]
    fn vacuum_field_is_identity() {
        let va = v(2);
        let w = VertexAlgebra::generator_state(1);
        let one = VertexAlgebra::vacuum();
        assert_eq!(va.product(&one, -1, &w).unwrap(), w);
        assert!(va.product(&one, 0, &w).unwrap().is_zero());
        assert!(va.product(&one, -2, &w).unwrap().is_zero());
    }

    #[test]
    fn virasoro_basics() {
        for l in 1..=3 {
            let va = v(l);
            assert_eq!(va.central_charge().unwrap(), ratio(l as i64, 2));
            let om = va.omega().clone();
            assert_eq!(va.product(&om, 1, &om).unwrap(), om.scaled(&int(2)));
            assert!(va.virasoro(-1, &VertexAlgebra::vacuum()).unwrap().is_zero());
            let w = VertexAlgebra::generator_state(0);
            assert_eq!(va.virasoro(0, &w).unwrap(), w.scaled(&ratio(1, 2)));
        }
    }

    #[test]
    fn polarized_central_charge() {
        let va = VertexAlgebra::new(Arc::new(HSpec::polarized(3).unwrap()));
        assert_eq!(va.central_charge().unwrap(), ratio(3, 2));
    }
}

//! The automorphism `g` together with V and its eigenspace tagging.

use std::sync::Arc;

use crate::error::Result;
use crate::fields::VertexAlgebra;
use crate::fock::{HSpec, Monomial, SectorSpec, Twist, TwistKind};
use crate::frac::FracIndex;

/// Everything the Zhu algebra construction needs to know about `g`.
pub struct TwistContext {
    twist: Twist,
    va: VertexAlgebra,
}

impl TwistContext {
    pub fn new(h: Arc<HSpec>, twist: Twist) -> Result<Self> {
        twist.validate(&h)?;
        SectorSpec::new(h.clone(), twist.clone())?;
        Ok(TwistContext { twist, va: VertexAlgebra::new(h) })
    }

    /// `g = 1` on `l` orthonormal fermions.
    pub fn identity(l: usize) -> Result<Self> {
        Self::new(Arc::new(HSpec::orthonormal(l)?), Twist::identity(l))
    }

    /// `g = sigma` on the polarized basis.
    pub fn sigma(l: usize) -> Result<Self> {
        Self::new(Arc::new(HSpec::polarized(l)?), Twist::sigma(l))
    }

    pub fn h(&self) -> &Arc<HSpec> {
        self.va.h()
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }

    pub fn kind(&self) -> TwistKind {
        self.twist.kind
    }

    pub fn va(&self) -> &VertexAlgebra {
        &self.va
    }

    pub fn l(&self) -> usize {
        self.h().dim()
    }

    pub fn t0(&self) -> i64 {
        self.twist.t0()
    }

    pub fn t(&self) -> i64 {
        self.twist.t()
    }

    /// `r / T` of a monomial.
    pub fn rho(&self, m: &Monomial) -> FracIndex {
        self.twist.rho(m)
    }

    pub fn delta(&self, m: &Monomial) -> i64 {
        self.twist.delta(m)
    }

    /// Sector of the canonical `g`-twisted Fock module.
    pub fn module_sector(&self) -> Result<SectorSpec> {
        SectorSpec::new(self.h().clone(), self.twist.clone())
    }
}

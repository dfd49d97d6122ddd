//! The contragredient `M'` of a twisted module, a `g^{-1}`-twisted module on
//! the graded dual.
//!
//! Generator modes act by `x'(n) = x(-n)^T`. For a general homogeneous `a`
//! the resulting fields satisfy
//!
//! ```text
//! a'_m = eps(a) sum_j (1/j!) ((L(1)^j a)_{2 wt a - j - m - 2})^T,
//! eps(a) = (-1)^{wt a - |a|/2},
//! ```
//!
//! which is rational because odd states have half-integral weight.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Result, VosaError};
use crate::fields::verify::CheckReport;
use crate::fields::{BasisKey, IterField, ModVec, VertexAlgebra, VertexModule};
use crate::fock::{GenId, Monomial, SectorSpec, State};
use crate::frac::FracIndex;
use crate::scalar::{int, sign, Scalar};

/// Dual of `inner` built on the basis of `inner` up to `max_degree`; `k`
/// stands for the dual basis vector `k'`.
pub struct ContragredientModule<M> {
    inner: M,
    sector: SectorSpec,
    max_degree: FracIndex,
    by_degree: BTreeMap<FracIndex, Vec<BasisKey>>,
}

impl<M: VertexModule> ContragredientModule<M> {
    pub fn new(inner: M, max_degree: FracIndex) -> Result<Self> {
        let sector = SectorSpec::new(inner.h().clone(), inner.sector().twist().inverse())?;
        let mut by_degree: BTreeMap<FracIndex, Vec<BasisKey>> = BTreeMap::new();
        for k in inner.basis(max_degree) {
            by_degree.entry(inner.degree(&k)).or_default().push(k);
        }
        Ok(ContragredientModule { inner, sector, max_degree, by_degree })
    }

    pub fn inner(&self) -> &M {
        &self.inner
    }

    pub fn max_degree(&self) -> FracIndex {
        self.max_degree
    }

    /// `<k', w>` pairing of a dual vector with a vector of `inner`.
    pub fn pairing(dual: &ModVec, w: &ModVec) -> Scalar {
        dual.iter().map(|(k, c)| c * w.coeff(k)).fold(Scalar::zero(), |a, b| a + b)
    }
}

impl<M: VertexModule> VertexModule for ContragredientModule<M> {
    fn sector(&self) -> &SectorSpec {
        &self.sector
    }

    fn generator_mode(&self, gen: GenId, n: FracIndex, w: &BasisKey) -> Result<ModVec> {
        let target = self.inner.degree(w) - n;
        let mut out = ModVec::new();
        if target < FracIndex::ZERO {
            return Ok(out);
        }
        if target > self.max_degree {
            return Err(VosaError::Truncation(format!(
                "dual module built to degree {}, needed {}",
                self.max_degree, target
            )));
        }
        for k in self.by_degree.get(&target).into_iter().flatten() {
            let img = self.inner.generator_mode(gen, -n, k)?;
            let c = img.coeff(w);
            if !c.is_zero() {
                out.add_term(k.clone(), c);
            }
        }
        Ok(out)
    }

    fn degree(&self, w: &BasisKey) -> FracIndex {
        self.inner.degree(w)
    }

    fn basis(&self, max_degree: FracIndex) -> Vec<BasisKey> {
        self.by_degree.range(..=max_degree.min(self.max_degree)).flat_map(|(_, v)| v.iter().cloned()).collect()
    }
}

/// `eps(a) = (-1)^{wt a - |a|/2}` for a monomial of V.
pub fn epsilon(a: &Monomial) -> Scalar {
    let e = a.weight() - FracIndex::new(i64::from(a.parity()), 2);
    sign(e.as_int().expect("wt a - |a|/2 is integral in V"))
}

/// Compares the modes of `a` computed on `M'` by the field engine with the
/// adjoint formula, on dual basis vectors of degree at most `w_max`.
pub fn check_adjoint_formula<M: VertexModule>(
    dual: &IterField<ContragredientModule<M>>,
    va: &VertexAlgebra,
    a: &Monomial,
    w_max: FracIndex,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("contragredient");
    let module = dual.module();
    let inner = IterField::new(module.inner());
    // L(1)^j a / j!
    let mut terms: Vec<(i64, State)> = Vec::new();
    let mut cur = State::basis(a.clone());
    let mut fact = Scalar::from_integer(1.into());
    let mut j = 0i64;
    while !cur.is_zero() {
        terms.push((j, cur.scaled(&(Scalar::from_integer(1.into()) / &fact))));
        cur = va.virasoro(1, &cur)?;
        j += 1;
        fact *= int(j);
    }
    let eps = epsilon(a);
    let wt = a.weight();
    let av = State::basis(a.clone());
    let cls = dual.alpha(a);
    let keys = module.basis(w_max);
    for w in &keys {
        let dw = module.degree(w);
        let mut m = cls + (dw + wt - 1 - w_max - cls).ceil();
        let top = dw + wt - 1;
        while m <= top {
            let out_deg = dw + wt - m - 1;
            let lhs = dual.mode(&av, m, &ModVec::basis(w.clone()))?;
            // <rhs, k> = eps sum_j <w', (L(1)^j a / j!)_{2wt - j - m - 2} k>
            let mut rhs = ModVec::new();
            for k in module.basis(out_deg) {
                if module.degree(&k) != out_deg {
                    continue;
                }
                let mut c = Scalar::zero();
                for (jj, s) in &terms {
                    let idx = wt + wt - *jj - m - 2;
                    let img = inner.mode(s, idx, &ModVec::basis(k.clone()))?;
                    c += img.coeff(w);
                }
                if !c.is_zero() {
                    rhs.add_term(k, &eps * c);
                }
            }
            rep.record(lhs == rhs, || format!("mode {m} on degree {dw}"));
            m = m + 1;
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::verify::{check_commutator, commutator_samples};
    use crate::modules::build_sigma_module;

    #[test]
    fn dual_of_ramond_module() {
        let m = build_sigma_module(2).unwrap().remove(0);
        let dual = ContragredientModule::new(m.clone(), FracIndex::int(3)).unwrap();
        assert_eq!(dual.basis(FracIndex::int(2)).len(), m.basis(FracIndex::int(2)).len());
        let dd = ContragredientModule::new(dual, FracIndex::int(2)).unwrap();
        assert_eq!(dd.basis(FracIndex::int(2)).len(), m.basis(FracIndex::int(2)).len());
    }

    #[test]
    fn dual_fields_satisfy_the_commutator_formula() {
        let m = build_sigma_module(2).unwrap().remove(0);
        let dual = ContragredientModule::new(m, FracIndex::int(4)).unwrap();
        let h = dual.h().clone();
        let field = IterField::new(dual);
        let va = VertexAlgebra::new(h);
        let samples = commutator_samples(&field, &va, FracIndex::ONE, FracIndex::ONE, 80);
        assert!(samples.len() >= 40);
        let rep = check_commutator(&field, &va, &samples).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn adjoint_formula_with_rational_signs() {
        let m = build_sigma_module(2).unwrap().remove(0);
        let dual = ContragredientModule::new(m, FracIndex::int(4)).unwrap();
        let h = dual.h().clone();
        let field = IterField::new(dual);
        let va = VertexAlgebra::new(h);
        for a in va.basis(FracIndex::new(3, 2)) {
            let rep = check_adjoint_formula(&field, &va, &a, FracIndex::ONE).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
        let omega = va.omega().keys().next().unwrap().clone();
        assert!(check_adjoint_formula(&field, &va, &omega, FracIndex::ONE).unwrap().passed());
    }

    #[test]
    fn vacuum_pairing() {
        let v = ModVec::basis(BasisKey::fock(Monomial::vacuum()));
        assert_eq!(ContragredientModule::<crate::fields::FockModule>::pairing(&v, &v), int(1));
    }
}

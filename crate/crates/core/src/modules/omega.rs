//! Lowest weight vectors `Omega(M)` and the zero-mode action on them.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Result, VosaError};
use crate::fields::verify::CheckReport;
use crate::fields::{BasisKey, IterField, ModVec, VertexModule};
use crate::fock::{enumerate_basis, GenId, SectorSpec, State};
use crate::frac::FracIndex;
use crate::linalg::{dense_nullspace, rref, Dense};
use crate::scalar::Scalar;
use crate::zhu::ZeroModeRep;

/// `Omega(M) ∩ M_{<= W}` with a reduced basis.
pub struct OmegaSpace<M> {
    field: IterField<M>,
    max_degree: FracIndex,
    keys: Vec<BasisKey>,
    /// Reduced row echelon basis over `keys`.
    rows: Dense,
    pivots: Vec<usize>,
}

/// Linear operators whose common kernel is `Omega`: positive generator
/// modes and `L(k)`, `k >= 1`.
fn lowering_images<M: VertexModule>(field: &IterField<M>, w: &BasisKey, max_degree: FracIndex) -> Result<Vec<ModVec>> {
    let module = field.module();
    let sector = module.sector();
    let mut out = Vec::new();
    for g in 0..sector.h().dim() as GenId {
        let mut n = sector.offset(g);
        if n.is_zero() {
            n = FracIndex::ONE;
        }
        while n <= max_degree {
            out.push(module.generator_mode(g, n, w)?);
            n = n + 1;
        }
    }
    let mut k = 1;
    while FracIndex::int(k) <= max_degree {
        out.push(field.virasoro(k, &ModVec::basis(w.clone()))?);
        k += 1;
    }
    Ok(out)
}

fn common_kernel(keys: &[BasisKey], images: &[Vec<ModVec>]) -> Dense {
    // rows indexed by (operator, output key); columns by input keys
    let mut index: BTreeMap<(usize, BasisKey), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    for (j, imgs) in images.iter().enumerate() {
        for (op, v) in imgs.iter().enumerate() {
            for (k, c) in v {
                let len = index.len();
                let r = *index.entry((op, k.clone())).or_insert(len);
                entries.push((r, j, c.clone()));
            }
        }
    }
    let mut m: Dense = vec![vec![Scalar::zero(); keys.len()]; index.len()];
    for (r, j, c) in entries {
        m[r][j] += c;
    }
    if m.is_empty() {
        return crate::linalg::identity(keys.len());
    }
    dense_nullspace(&m, keys.len())
}

impl<M: VertexModule> OmegaSpace<M> {
    /// Common kernel of the lowering generator modes and `L(k)`, `k >= 1`,
    /// on `M_{<= W}`.
    pub fn compute(module: M, max_degree: FracIndex) -> Result<Self> {
        let field = IterField::new(module);
        let keys = field.module().basis(max_degree);
        let images: Vec<Vec<ModVec>> =
            keys.iter().map(|w| lowering_images(&field, w, max_degree)).collect::<Result<_>>()?;
        let kernel = common_kernel(&keys, &images);
        let (rows, pivots) = if kernel.is_empty() { (Vec::new(), Vec::new()) } else { rref(&kernel) };
        Ok(OmegaSpace { field, max_degree, keys, rows, pivots })
    }

    pub fn field(&self) -> &IterField<M> {
        &self.field
    }

    pub fn module(&self) -> &M {
        self.field.module()
    }

    pub fn basis(&self) -> Vec<ModVec> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (self.keys[i].clone(), c.clone()))
                    .collect()
            })
            .collect()
    }

    /// Basis keys of the degree-zero piece.
    pub fn degree_zero(&self) -> Vec<BasisKey> {
        self.keys.iter().filter(|k| self.module().degree(k).is_zero()).cloned().collect()
    }

    /// Whether `Omega = M(0)` as subspaces.
    pub fn equals_degree_zero(&self) -> bool {
        let zero = self.degree_zero();
        zero.len() == self.rows.len()
            && self.pivots.iter().all(|p| self.module().degree(&self.keys[*p]).is_zero())
            && self.basis().iter().all(|v| v.keys().all(|k| zero.contains(k)))
    }

    /// Coordinates of `v` in the reduced basis, or an error if `v` is not in
    /// `Omega`.
    pub fn coordinates(&self, v: &ModVec) -> Result<Vec<Scalar>> {
        let pos: BTreeMap<&BasisKey, usize> = self.keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut dense = vec![Scalar::zero(); self.keys.len()];
        for (k, c) in v {
            let i = pos.get(k).ok_or_else(|| {
                VosaError::Inconsistent(format!("vector leaves the truncation at degree {}", self.module().degree(k)))
            })?;
            dense[*i] = c.clone();
        }
        let coords: Vec<Scalar> = self.pivots.iter().map(|p| dense[*p].clone()).collect();
        let mut rest = dense;
        for (c, row) in coords.iter().zip(&self.rows) {
            for (x, r) in rest.iter_mut().zip(row) {
                *x -= c * r;
            }
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return Err(VosaError::Inconsistent("vector does not lie in Omega".into()));
        }
        Ok(coords)
    }

    /// Rechecks that every basis vector is killed by all degree-lowering
    /// modes `u_m` of every `u` in V of weight at most `max_weight`.
    pub fn recheck(&self, max_weight: FracIndex) -> Result<CheckReport> {
        let mut rep = CheckReport::new("omega-recheck");
        let vsector: &SectorSpec = self.field.vsector();
        let basis = self.basis();
        for u in enumerate_basis(vsector, max_weight) {
            if u.is_vacuum() {
                continue;
            }
            let a = self.field.alpha(&u);
            // degree lowering: m > wt u - 1; nonzero only for m <= wt u - 1 + W
            let lo = u.weight() - 1;
            let mut m = a + (lo - a).floor();
            while m <= lo {
                m = m + 1;
            }
            let us = State::basis(u.clone());
            while m <= lo + self.max_degree {
                for v in &basis {
                    let r = self.field.mode(&us, m, v)?;
                    rep.record(r.is_zero(), || {
                        format!("{}_{{{}}} acts nontrivially", u.display(self.field.vsector().h()), m)
                    });
                }
                m = m + 1;
            }
        }
        Ok(rep)
    }

    /// Matrix of `o(a)` on the reduced basis.
    pub fn o_matrix_of(&self, a: &State) -> Result<Dense> {
        let basis = self.basis();
        let n = basis.len();
        let mut out = vec![vec![Scalar::zero(); n]; n];
        for (j, v) in basis.iter().enumerate() {
            let img = self.field.zero_mode(a, v)?;
            for (i, c) in self.coordinates(&img)?.into_iter().enumerate() {
                out[i][j] = c;
            }
        }
        Ok(out)
    }
}

impl<M: VertexModule> ZeroModeRep for OmegaSpace<M> {
    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn o_matrix(&self, a: &State) -> Result<Dense> {
        self.o_matrix_of(a)
    }
}

/// Block diagonal sum of several representations.
pub struct DirectSum<'a>(pub Vec<&'a dyn ZeroModeRep>);

impl ZeroModeRep for DirectSum<'_> {
    fn dim(&self) -> usize {
        self.0.iter().map(|r| r.dim()).sum()
    }

    fn o_matrix(&self, a: &State) -> Result<Dense> {
        let n = self.dim();
        let mut out = vec![vec![Scalar::zero(); n]; n];
        let mut off = 0;
        for r in &self.0 {
            let m = r.o_matrix(a)?;
            for (i, row) in m.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    out[off + i][off + j] = c.clone();
                }
            }
            off += r.dim();
        }
        Ok(out)
    }
}

/// Whether `m` is the identity matrix.
pub fn is_identity(m: &Dense) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, c)| if i == j { c.is_one() } else { c.is_zero() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FockModule, VertexAlgebra};
    use crate::modules::twisted::build_sigma_module;

    #[test]
    fn omega_of_ramond_l2() {
        let m = build_sigma_module(2).unwrap().remove(0);
        let om = OmegaSpace::compute(m, FracIndex::ONE).unwrap();
        assert_eq!(om.dim(), 2);
        assert!(om.equals_degree_zero());
        assert!(is_identity(&om.o_matrix(&VertexAlgebra::vacuum()).unwrap()));
    }

    #[test]
    fn omega_of_v_is_vacuum() {
        let h = std::sync::Arc::new(crate::fock::HSpec::orthonormal(2).unwrap());
        let om = OmegaSpace::compute(FockModule::new(SectorSpec::neveu_schwarz(h)), FracIndex::new(3, 2)).unwrap();
        assert_eq!(om.dim(), 1);
        assert_eq!(om.basis()[0].keys().next().unwrap().mono, crate::fock::Monomial::vacuum());
        assert!(om.recheck(FracIndex::int(2)).unwrap().passed());
    }

    #[test]
    fn omega_of_eigenspaces() {
        for m in build_sigma_module(3).unwrap() {
            let om = OmegaSpace::compute(m, FracIndex::ONE).unwrap();
            assert_eq!(om.dim(), 2);
            assert!(om.equals_degree_zero());
        }
    }
}

//! Truncated generalized Verma modules `M(U) -> Mbar(U) -> L(U)` for a
//! module `U` over the twisted Zhu algebra.
//!
//! `M(U)` is realized as `Λ[x(-n) : n > 0] ⊗ U`: positive generator modes
//! contract against creation factors and kill `U`, and a zero mode `x(0)`
//! moves past the creation factors and acts on `U` as the class of
//! `x(-1/2)1`. All other fields come from the field engine.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Result, VosaError};
use crate::fields::verify::{associativity_defects, exponent_g, CheckReport};
use crate::fields::{BasisKey, IterField, ModVec, VertexAlgebra, VertexModule};
use crate::fock::{enumerate_basis, generator_mode, GenId, Monomial, SectorSpec, State};
use crate::frac::FracIndex;
use crate::linalg::{dense_nullspace, mat_mul, Dense, Echelon};
use crate::scalar::{sign, Scalar};
use crate::sparse::SparseVec;
use crate::zhu::{left_regular, TwistContext, ZeroModeRep, ZhuAlgebraResult};

/// A finite-dimensional `A_g(V)`-module given by the matrices of the
/// quotient basis elements.
#[derive(Clone, Debug)]
pub struct ZhuModule {
    pub dim: usize,
    pub mats: Vec<Dense>,
}

impl ZhuModule {
    /// `U = rep` with `b_i` acting as `o(b_i)`.
    pub fn from_rep(res: &ZhuAlgebraResult, rep: &dyn ZeroModeRep) -> Result<Self> {
        let mats = res.basis().iter().map(|b| rep.o_matrix(&State::basis(b.clone()))).collect::<Result<_>>()?;
        Ok(ZhuModule { dim: rep.dim(), mats })
    }

    /// The left regular module.
    pub fn regular(res: &ZhuAlgebraResult) -> Self {
        ZhuModule { dim: res.dim(), mats: left_regular(res) }
    }

    pub fn zero(res: &ZhuAlgebraResult) -> Self {
        ZhuModule { dim: 0, mats: vec![Vec::new(); res.dim()] }
    }

    /// Matrix of an element given in quotient coordinates.
    pub fn act(&self, x: &SparseVec<usize>) -> Dense {
        let mut out = vec![vec![Scalar::zero(); self.dim]; self.dim];
        for (i, c) in x {
            for (r, row) in self.mats[*i].iter().enumerate() {
                for (s, v) in row.iter().enumerate() {
                    out[r][s] += c * v;
                }
            }
        }
        out
    }

    /// Whether the matrices respect the multiplication table and the unit.
    pub fn is_module(&self, res: &ZhuAlgebraResult) -> bool {
        let n = res.dim();
        let unit_ok = self.act(&res.unit) == crate::linalg::identity(self.dim);
        unit_ok && (0..n).all(|i| (0..n).all(|j| mat_mul(&self.mats[i], &self.mats[j]) == self.act(&res.table[i][j])))
    }
}

/// `M(U)` as a module for the generator fields.
pub struct InducedModule {
    sector: SectorSpec,
    seed_dim: usize,
    zero_ops: Vec<Option<Dense>>,
}

impl InducedModule {
    pub fn new(ctx: &TwistContext, res: &ZhuAlgebraResult, u: &ZhuModule) -> Result<Self> {
        let sector = ctx.module_sector()?;
        let mut zero_ops = Vec::new();
        for g in 0..ctx.l() as GenId {
            if sector.offset(g).is_zero() {
                let cls = res.reducer.reduce(&VertexAlgebra::generator_state(g))?;
                zero_ops.push(Some(u.act(&cls)));
            } else {
                zero_ops.push(None);
            }
        }
        Ok(InducedModule { sector, seed_dim: u.dim, zero_ops })
    }

    pub fn seed_dim(&self) -> usize {
        self.seed_dim
    }

    fn has_zero_mode(m: &Monomial) -> bool {
        m.factors().iter().any(|f| f.mode.is_zero())
    }
}

impl VertexModule for InducedModule {
    fn sector(&self) -> &SectorSpec {
        &self.sector
    }

    fn generator_mode(&self, gen: GenId, n: FracIndex, w: &BasisKey) -> Result<ModVec> {
        if !n.is_zero() {
            let s = generator_mode(&self.sector, gen, n, &w.mono)?;
            return Ok(s.map_keys(|m| BasisKey { mono: m.clone(), ground: w.ground }));
        }
        self.sector.role(gen, n)?;
        let op = self.zero_ops[gen as usize].as_ref().expect("zero mode in support");
        let s = sign(w.mono.len() as i64);
        let mut out = ModVec::new();
        for (i, row) in op.iter().enumerate() {
            let c = &row[w.ground as usize];
            if !c.is_zero() {
                out.add_term(BasisKey { mono: w.mono.clone(), ground: i as u32 }, &s * c);
            }
        }
        Ok(out)
    }

    fn basis(&self, max_degree: FracIndex) -> Vec<BasisKey> {
        let mut out = Vec::new();
        for m in enumerate_basis(&self.sector, max_degree) {
            if Self::has_zero_mode(&m) {
                continue;
            }
            for g in 0..self.seed_dim as u32 {
                out.push(BasisKey { mono: m.clone(), ground: g });
            }
        }
        out
    }
}

/// Result of [`induce_truncated`]. Dimension tables list `(degree, dim)`.
#[derive(Clone, Debug, Serialize)]
pub struct VermaTruncation {
    pub max_degree: FracIndex,
    pub seed_dim: usize,
    /// `o(b) = rho(b)` on the degree-zero piece.
    pub compatibility: CheckReport,
    pub relations_checked: usize,
    pub relation_rank: usize,
    pub induced_dims: Vec<(FracIndex, usize)>,
    pub quotient_dims: Vec<(FracIndex, usize)>,
    pub radical_dims: Vec<(FracIndex, usize)>,
    pub simple_dims: Vec<(FracIndex, usize)>,
    pub omega_dims: Vec<(FracIndex, usize)>,
    /// `Omega(L(U))` is concentrated in degree 0, has the dimension of `U`
    /// and carries the action of `U`.
    pub omega_is_seed: bool,
}

struct Layered {
    keys: Vec<BasisKey>,
    index: BTreeMap<BasisKey, usize>,
    degrees: Vec<FracIndex>,
    by_degree: BTreeMap<FracIndex, Vec<usize>>,
}

impl Layered {
    fn new<M: VertexModule>(m: &M, max_degree: FracIndex) -> Self {
        let keys = m.basis(max_degree);
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let degrees: Vec<FracIndex> = keys.iter().map(|k| m.degree(k)).collect();
        let mut by_degree: BTreeMap<FracIndex, Vec<usize>> = BTreeMap::new();
        for (i, d) in degrees.iter().enumerate() {
            by_degree.entry(*d).or_default().push(i);
        }
        Layered { keys, index, degrees, by_degree }
    }

    fn row(&self, v: &ModVec) -> Result<SparseVec<usize>> {
        let mut out = SparseVec::new();
        for (k, c) in v {
            let i =
                self.index.get(k).ok_or_else(|| VosaError::Truncation("vector leaves the truncated module".into()))?;
            out.add_term(*i, c.clone());
        }
        Ok(out)
    }
}

/// Positive generator modes `x(n)`, `0 < n <= d`, applied to key `k` of
/// degree `d`.
fn lowering<M: VertexModule>(m: &M, k: &BasisKey) -> Result<Vec<ModVec>> {
    let d = m.degree(k);
    let sector = m.sector();
    let mut out = Vec::new();
    for g in 0..sector.h().dim() as GenId {
        let mut n = sector.offset(g);
        if n.is_zero() {
            n = FracIndex::ONE;
        }
        while n <= d {
            out.push(m.generator_mode(g, n, k)?);
            n = n + 1;
        }
    }
    Ok(out)
}

/// Closure of `span(vs)` under generator modes, inside degrees `<= W`.
fn submodule_closure<M: VertexModule>(m: &M, lay: &Layered, vs: Vec<ModVec>, max_degree: FracIndex) -> Result<Echelon> {
    let mut ech = Echelon::new();
    let mut queue = vs;
    while let Some(v) = queue.pop() {
        let row = lay.row(&v)?;
        if !ech.insert(&row) {
            continue;
        }
        for g in 0..m.sector().h().dim() as GenId {
            let off = m.sector().offset(g);
            let mut n = off - (max_degree.floor() + 1);
            while n <= max_degree {
                let mut img = ModVec::new();
                for (k, c) in &v {
                    if m.degree(k) - n <= max_degree && m.degree(k) - n >= FracIndex::ZERO {
                        img.add_scaled(&m.generator_mode(g, n, k)?, c);
                    }
                }
                if !img.is_zero() {
                    queue.push(img);
                }
                n = n + 1;
            }
        }
    }
    Ok(ech)
}

/// Builds `M(U)`, imposes the associativity relations for generator pairs
/// on `U`, and cuts out the maximal graded submodule meeting `U` trivially,
/// all in degrees `<= W`.
pub fn induce_truncated(
    ctx: &TwistContext,
    res: &ZhuAlgebraResult,
    u: &ZhuModule,
    max_degree: FracIndex,
) -> Result<VermaTruncation> {
    let module = InducedModule::new(ctx, res, u)?;
    let field = IterField::new(&module);
    let lay = Layered::new(&module, max_degree);
    let ground: Vec<BasisKey> = (0..u.dim as u32).map(BasisKey::ground).collect();

    let mut compat = CheckReport::new("o(b)=rho(b)");
    for (i, b) in res.basis().iter().enumerate() {
        let bs = State::basis(b.clone());
        for (j, w) in ground.iter().enumerate() {
            let lhs = field.zero_mode(&bs, &ModVec::basis(w.clone()))?;
            let rhs: ModVec = (0..u.dim)
                .filter(|r| !u.mats[i][*r][j].is_zero())
                .map(|r| (ground[r].clone(), u.mats[i][r][j].clone()))
                .collect();
            compat.record(lhs == rhs, || format!("b={} on ground {j}", b.display(ctx.h())));
        }
    }

    let va = ctx.va();
    let gens: Vec<Monomial> = (0..ctx.l() as GenId).map(|g| Monomial::single(g, -FracIndex::HALF)).collect();
    let mut relations = Vec::new();
    let mut checked = 0;
    let out_span = (max_degree * 2).ceil();
    for a in &gens {
        for b in &gens {
            for w in &ground {
                let e = exponent_g(&field, a, w);
                checked += 1;
                for d in associativity_defects(&field, va, a, b, w, e, 1, out_span)? {
                    let inside: ModVec = d.filter(|k| module.degree(k) <= max_degree);
                    if !inside.is_zero() {
                        relations.push(inside);
                    }
                }
            }
        }
    }
    let rel = submodule_closure(&module, &lay, relations, max_degree)?;
    let rel_rows = rel.rows();
    let rel_in =
        |d: FracIndex| rel_rows.iter().filter(|r| r.keys().next().is_some_and(|k| lay.degrees[*k] == d)).count();
    if rel_in(FracIndex::ZERO) > 0 {
        return Err(VosaError::Inconsistent("associativity relations collapse U".into()));
    }

    // J(d) = { w in M(d) : x(n) w in J(d - n) + R for all n > 0 }
    let mut quotients: BTreeMap<FracIndex, Echelon> = BTreeMap::new();
    let mut radical = Vec::new();
    let mut omega_dims = Vec::new();
    let degrees: Vec<FracIndex> = lay.by_degree.keys().copied().collect();
    for d in &degrees {
        let cols = &lay.by_degree[d];
        let mut entries: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut mat_entries: Vec<(usize, usize, Scalar)> = Vec::new();
        for (j, ki) in cols.iter().enumerate() {
            let key = &lay.keys[*ki];
            for (op, img) in lowering(&module, key)?.into_iter().enumerate() {
                let row = lay.row(&img)?;
                let mut nf = row.clone();
                if let Some(k) = row.keys().next() {
                    if let Some(q) = quotients.get(&lay.degrees[*k]) {
                        nf = q.reduce(&row);
                    }
                    nf = rel.reduce(&nf);
                }
                for (col, c) in &nf {
                    let len = entries.len();
                    let r = *entries.entry((op, *col)).or_insert(len);
                    mat_entries.push((r, j, c.clone()));
                }
            }
        }
        let mut m: Dense = vec![vec![Scalar::zero(); cols.len()]; entries.len()];
        for (r, j, c) in mat_entries {
            m[r][j] += c;
        }
        let kernel = if m.is_empty() { crate::linalg::identity(cols.len()) } else { dense_nullspace(&m, cols.len()) };
        let mut ech = Echelon::new();
        for v in &kernel {
            let row: SparseVec<usize> =
                v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (cols[j], c.clone())).collect();
            ech.insert(&row);
        }
        let lowest = d.is_zero();
        let j_rank = if lowest {
            // nothing below degree 0: J(0) = R(0) = 0
            0
        } else {
            for r in rel_rows.iter().filter(|r| r.keys().next().is_some_and(|k| lay.degrees[*k] == *d)) {
                ech.insert(r);
            }
            ech.rank()
        };
        let kernel_dim = kernel.len();
        if lowest {
            omega_dims.push((*d, kernel_dim));
            quotients.insert(*d, Echelon::new());
        } else {
            omega_dims.push((*d, kernel_dim.saturating_sub(j_rank)));
            quotients.insert(*d, ech);
        }
        radical.push((*d, j_rank));
    }

    let induced_dims: Vec<(FracIndex, usize)> = degrees.iter().map(|d| (*d, lay.by_degree[d].len())).collect();
    let quotient_dims = degrees.iter().map(|d| (*d, lay.by_degree[d].len() - rel_in(*d))).collect();
    let simple_dims = induced_dims.iter().zip(&radical).map(|((d, n), (_, j))| (*d, n - j)).collect();
    let omega_ok = omega_dims.iter().all(|(d, n)| if d.is_zero() { *n == u.dim } else { *n == 0 });
    Ok(VermaTruncation {
        max_degree,
        seed_dim: u.dim,
        omega_is_seed: omega_ok && compat.passed(),
        compatibility: compat,
        relations_checked: checked,
        relation_rank: rel.rank(),
        induced_dims,
        quotient_dims,
        radical_dims: radical,
        simple_dims,
        omega_dims,
    })
}

impl VermaTruncation {
    pub fn simple_dim_values(&self) -> Vec<usize> {
        self.simple_dims.iter().map(|(_, n)| *n).collect()
    }
}

/// Unit check used by tests: `rho(1)` is the identity.
pub fn unit_acts_trivially(u: &ZhuModule, res: &ZhuAlgebraResult) -> bool {
    u.act(&res.unit)
        .iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, c)| if i == j { c.is_one() } else { c.is_zero() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{build_sigma_module, OmegaSpace, TwistedModule};
    use crate::zhu::{build_algebra, ZhuOptions};

    fn dims(m: &TwistedModule, w: FracIndex) -> Vec<usize> {
        m.graded_dims(w).into_iter().map(|(_, n)| n).collect()
    }

    #[test]
    fn simple_seed_recovers_ramond_module() {
        let ctx = TwistContext::sigma(2).unwrap();
        let m = build_sigma_module(2).unwrap().remove(0);
        let target = dims(&m, FracIndex::new(3, 2));
        let om = OmegaSpace::compute(m, FracIndex::ZERO).unwrap();
        let res = build_algebra(&ctx, &ZhuOptions::new(FracIndex::new(5, 2)), Some(&om)).unwrap();
        let u = ZhuModule::from_rep(&res, &om).unwrap();
        assert!(u.is_module(&res) && unit_acts_trivially(&u, &res));
        let v = induce_truncated(&ctx, &res, &u, FracIndex::new(3, 2)).unwrap();
        assert_eq!(v.simple_dim_values(), target);
        assert!(v.omega_is_seed, "{v:?}");
        assert_eq!(v.relation_rank, 0);
    }

    #[test]
    fn regular_seed_gives_both_eigenspaces() {
        let ctx = TwistContext::sigma(1).unwrap();
        let res = build_algebra(&ctx, &ZhuOptions::new(FracIndex::new(5, 2)), None).unwrap();
        let u = ZhuModule::regular(&res);
        assert!(u.is_module(&res));
        let v = induce_truncated(&ctx, &res, &u, FracIndex::ONE).unwrap();
        let mut want = vec![0usize; 2];
        for m in build_sigma_module(1).unwrap() {
            for (i, n) in dims(&m, FracIndex::ONE).into_iter().enumerate() {
                want[i] += n;
            }
        }
        assert_eq!(v.simple_dim_values(), want);
        assert!(v.omega_is_seed);
    }

    #[test]
    fn zero_seed_gives_zero_module() {
        let ctx = TwistContext::sigma(2).unwrap();
        let res = build_algebra(&ctx, &ZhuOptions::new(FracIndex::new(3, 2)), None).unwrap();
        let v = induce_truncated(&ctx, &res, &ZhuModule::zero(&res), FracIndex::ONE).unwrap();
        assert!(v.simple_dims.is_empty());
    }
}

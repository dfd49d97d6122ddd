//! The truncated quotient `V / O_g(V)` and the algebra structure on it.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, VosaError};
use crate::fock::{enumerate_basis, Monomial, State};
use crate::frac::FracIndex;
use crate::linalg::{dense_rank, Dense, Echelon};
use crate::scalar::Scalar;
use crate::sparse::SparseVec;

use super::context::TwistContext;
use super::ops::{relation_mono, star_mono};

/// An action of V on a finite space through zero modes, used as the lower
/// bound in certification.
pub trait ZeroModeRep {
    fn dim(&self) -> usize;
    /// Matrix of `o(a)`; columns are images of basis vectors.
    fn o_matrix(&self, a: &State) -> Result<Dense>;
}

/// Knobs for [`build_algebra`].
#[derive(Clone, Debug, Serialize)]
pub struct ZhuOptions {
    pub max_weight: FracIndex,
    pub margin: FracIndex,
    /// Largest `m` used from the family `m >= n >= 0`.
    pub family_depth: i64,
    pub check_stability: bool,
}

impl ZhuOptions {
    pub fn new(max_weight: FracIndex) -> Self {
        ZhuOptions { max_weight, margin: FracIndex::int(2), family_depth: 1, check_stability: true }
    }
}

/// `V_{<= K}` modulo the relations whose leading weight is at most `K`.
#[derive(Clone, Debug)]
pub struct Reducer {
    pub max_weight: FracIndex,
    pub top: FracIndex,
    columns: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    echelon: Echelon,
    /// Non-pivot monomials of weight at most `max_weight`.
    pub basis: Vec<Monomial>,
    basis_pos: HashMap<usize, usize>,
    /// Whether every non-pivot column has weight at most `max_weight`.
    pub closed: bool,
    pub relations: usize,
}

impl Reducer {
    pub fn build(ctx: &TwistContext, max_weight: FracIndex, top: FracIndex, depth: i64) -> Result<Self> {
        let mut columns = enumerate_basis(ctx.va().sector(), top);
        columns.sort_by(|a, b| b.weight().cmp(&a.weight()).then(a.len().cmp(&b.len())).then_with(|| a.cmp(b)));
        let index: HashMap<Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut echelon = Echelon::new();
        let mut by_weight = columns.clone();
        by_weight.reverse();
        let mut relations = 0;
        for u in &by_weight {
            let delta = ctx.delta(u);
            for v in &by_weight {
                let lead = u.weight() + v.weight() + delta;
                if lead > top {
                    break;
                }
                for m in 0..=depth {
                    if lead + m > top {
                        break;
                    }
                    for n in 0..=m {
                        let r = relation_mono(ctx, u, v, m, n)?;
                        let row: SparseVec<usize> = r.map_keys(|k| index[k]);
                        relations += 1;
                        echelon.insert(&row);
                    }
                }
            }
        }
        let mut basis: Vec<(usize, Monomial)> = columns
            .iter()
            .enumerate()
            .filter(|(i, m)| !echelon.is_pivot(*i) && m.weight() <= max_weight)
            .map(|(i, m)| (i, m.clone()))
            .collect();
        basis.sort_by(|a, b| {
            a.1.weight().cmp(&b.1.weight()).then(a.1.len().cmp(&b.1.len())).then_with(|| a.1.cmp(&b.1))
        });
        let closed = columns.iter().enumerate().all(|(i, m)| echelon.is_pivot(i) || m.weight() <= max_weight);
        let basis_pos = basis.iter().enumerate().map(|(j, (i, _))| (*i, j)).collect();
        Ok(Reducer {
            max_weight,
            top,
            columns,
            index,
            echelon,
            basis: basis.into_iter().map(|(_, m)| m).collect(),
            basis_pos,
            closed,
            relations,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Normal form of `s` over all columns of the window.
    pub fn normal_form(&self, s: &State) -> Result<SparseVec<usize>> {
        let mut row = SparseVec::new();
        for (m, c) in s {
            let i = self.index.get(m).ok_or_else(|| {
                VosaError::Truncation(format!("weight {} exceeds the relation window {}", m.weight(), self.top))
            })?;
            row.add_term(*i, c.clone());
        }
        Ok(self.echelon.reduce(&row))
    }

    /// Coordinates of the class of `s` in the quotient basis.
    pub fn reduce(&self, s: &State) -> Result<SparseVec<usize>> {
        let nf = self.normal_form(s)?;
        self.coordinates(&nf)
    }

    fn coordinates(&self, nf: &SparseVec<usize>) -> Result<SparseVec<usize>> {
        let mut out = SparseVec::new();
        for (i, c) in nf {
            let j = self.basis_pos.get(i).ok_or_else(|| {
                VosaError::Truncation(format!(
                    "class has a component on {:?} of weight {} outside the quotient basis",
                    self.columns[*i],
                    self.columns[*i].weight()
                ))
            })?;
            out.add_term(*j, c.clone());
        }
        Ok(out)
    }

    pub fn is_zero_class(&self, s: &State) -> Result<bool> {
        Ok(self.normal_form(s)?.is_zero())
    }

    pub fn snapshot(&self) -> ReducerSnapshot {
        ReducerSnapshot {
            max_weight: self.max_weight,
            top: self.top,
            columns: self.columns.iter().map(Monomial::encode).collect(),
            rows: self
                .echelon
                .int_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|(k, c)| (k, c.to_string())).collect())
                .collect(),
            basis: self.basis.iter().map(|m| self.index[m]).collect(),
            closed: self.closed,
            relations: self.relations,
        }
    }

    pub fn from_snapshot(snap: &ReducerSnapshot) -> Result<Self> {
        let bad = |what: &str| VosaError::Parse(format!("reducer snapshot: bad {what}"));
        let columns: Vec<Monomial> =
            snap.columns.iter().map(|c| Monomial::decode(c).ok_or_else(|| bad("column"))).collect::<Result<_>>()?;
        let mut rows = Vec::with_capacity(snap.rows.len());
        for r in &snap.rows {
            let mut row = Vec::with_capacity(r.len());
            for (k, c) in r {
                if *k >= columns.len() {
                    return Err(bad("column index"));
                }
                row.push((*k, c.parse::<BigInt>().map_err(|_| bad("integer"))?));
            }
            rows.push(row);
        }
        let echelon = Echelon::from_int_rows(rows).ok_or_else(|| bad("echelon rows"))?;
        let basis: Vec<Monomial> = snap
            .basis
            .iter()
            .map(|&i| columns.get(i).cloned().ok_or_else(|| bad("basis index")))
            .collect::<Result<_>>()?;
        let index: HashMap<Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let basis_pos = snap.basis.iter().enumerate().map(|(j, i)| (*i, j)).collect();
        Ok(Reducer {
            max_weight: snap.max_weight,
            top: snap.top,
            columns,
            index,
            echelon,
            basis,
            basis_pos,
            closed: snap.closed,
            relations: snap.relations,
        })
    }
}

/// Serializable form of a [`Reducer`]: columns as encoded monomials and the
/// echelon rows as decimal integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducerSnapshot {
    pub max_weight: FracIndex,
    pub top: FracIndex,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<(usize, String)>>,
    pub basis: Vec<usize>,
    pub closed: bool,
    pub relations: usize,
}

/// `A_g(V)` as computed from a truncation, with its certificate.
#[derive(Clone, Debug)]
pub struct ZhuAlgebraResult {
    pub options: ZhuOptions,
    pub reducer: Reducer,
    /// `table[i][j]` = coordinates of `b_i * b_j`.
    pub table: Vec<Vec<SparseVec<usize>>>,
    pub unit: SparseVec<usize>,
    pub omega: SparseVec<usize>,
    pub dim_upper: usize,
    pub dim_lower: Option<usize>,
    pub stabilized: Option<bool>,
    pub certified: bool,
    pub labels: Vec<String>,
}

impl ZhuAlgebraResult {
    pub fn dim(&self) -> usize {
        self.dim_upper
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.reducer.basis
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.reducer.basis[i].parity()
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &SparseVec<usize>, y: &SparseVec<usize>) -> SparseVec<usize> {
        let mut out = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                out.add_scaled(&self.table[*i][*j], &(a * b));
            }
        }
        out
    }

    /// Structure constants as sparse triples `(i, j, k, c)`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (i, row) in self.table.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                for (k, c) in v {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    /// `(ab)c = a(bc)` on all basis triples.
    pub fn check_associative(&self) -> bool {
        let n = self.dim();
        let e = |i: usize| SparseVec::basis(i);
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for k in 0..n {
                    if self.mul(ij, &e(k)) != self.mul(&e(i), &self.table[j][k]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn check_unit(&self) -> bool {
        (0..self.dim()).all(|i| {
            let b = SparseVec::basis(i);
            self.mul(&self.unit, &b) == b && self.mul(&b, &self.unit) == b
        })
    }

    pub fn check_omega_central(&self) -> bool {
        (0..self.dim()).all(|i| {
            let b = SparseVec::basis(i);
            self.mul(&self.omega, &b) == self.mul(&b, &self.omega)
        })
    }
}

fn flatten(m: &Dense) -> Vec<Scalar> {
    m.iter().flat_map(|r| r.iter().cloned()).collect()
}

/// Computes `A_g(V)` from the truncation `W = options.max_weight`, relation
/// window `W + margin`, and optionally certifies the dimension with `rep`.
pub fn build_algebra(
    ctx: &TwistContext,
    options: &ZhuOptions,
    rep: Option<&dyn ZeroModeRep>,
) -> Result<ZhuAlgebraResult> {
    let (reducer, stabilized) = build_reducer(ctx, options)?;
    assemble_algebra(ctx, options, reducer, stabilized, rep)
}

/// The quotient for `options`, and whether its dimension survives raising
/// both `W` and the window by `1/2` (when requested).
pub fn build_reducer(ctx: &TwistContext, options: &ZhuOptions) -> Result<(Reducer, Option<bool>)> {
    let w = options.max_weight;
    let top = w + options.margin;
    let reducer = Reducer::build(ctx, w, top, options.family_depth)?;
    let stabilized = if options.check_stability {
        let half = FracIndex::HALF;
        let next = Reducer::build(ctx, w + half, top + half, options.family_depth)?;
        Some(next.dim() == reducer.dim())
    } else {
        None
    };
    Ok((reducer, stabilized))
}

/// Multiplication table and certificate on top of a prepared quotient.
pub fn assemble_algebra(
    ctx: &TwistContext,
    options: &ZhuOptions,
    reducer: Reducer,
    stabilized: Option<bool>,
    rep: Option<&dyn ZeroModeRep>,
) -> Result<ZhuAlgebraResult> {
    let n = reducer.dim();
    let basis = reducer.basis.clone();
    let mut table = vec![vec![SparseVec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let p = star_mono(ctx, &basis[i], &basis[j])?;
            table[i][j] = reducer.reduce(&p)?;
        }
    }
    let unit = reducer.reduce(&State::basis(Monomial::vacuum()))?;
    let omega = reducer.reduce(ctx.va().omega())?;
    let dim_lower = match rep {
        None => None,
        Some(r) => {
            let rows: Dense = basis
                .iter()
                .map(|b| r.o_matrix(&State::basis(b.clone())).map(|m| flatten(&m)))
                .collect::<Result<_>>()?;
            Some(if rows.is_empty() { 0 } else { dense_rank(&rows) })
        }
    };
    let certified = dim_lower == Some(n) && reducer.closed && stabilized != Some(false);
    let labels = basis.iter().map(|m| m.display(ctx.h())).collect();
    Ok(ZhuAlgebraResult {
        options: options.clone(),
        reducer,
        table,
        unit,
        omega,
        dim_upper: n,
        dim_lower,
        stabilized,
        certified,
        labels,
    })
}

/// Left multiplication matrices `L_i` with `L_i e_j = b_i * b_j`.
pub fn left_regular(res: &ZhuAlgebraResult) -> Vec<Dense> {
    let n = res.dim();
    (0..n)
        .map(|i| {
            let mut m = vec![vec![Scalar::zero(); n]; n];
            for j in 0..n {
                for (k, c) in &res.table[i][j] {
                    m[*k][j] = c.clone();
                }
            }
            m
        })
        .collect()
}

/// `1` if `x` is the unit vector `e_i`.
pub fn is_basis_vector(x: &SparseVec<usize>, i: usize) -> bool {
    x.len() == 1 && x.coeff(&i).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zhu::structure::center_and_idempotents;

    fn w(p: i64, q: i64) -> FracIndex {
        FracIndex::new(p, q)
    }

    #[test]
    fn sigma_dims() {
        for (l, dim, blocks) in [(1, 2, vec![1, 1]), (2, 4, vec![2]), (3, 8, vec![2, 2])] {
            let ctx = TwistContext::sigma(l).unwrap();
            let res = build_algebra(&ctx, &ZhuOptions::new(w(5, 2)), None).unwrap();
            let st = center_and_idempotents(&res);
            eprintln!(
                "l={l} dim={} closed={} stab={:?} blocks={:?} {:?}",
                res.dim(),
                res.reducer.closed,
                res.stabilized,
                st.blocks,
                res.labels
            );
            assert_eq!(res.dim(), dim);
            assert_eq!(st.blocks, blocks);
            assert!(res.check_associative() && res.check_unit() && res.check_omega_central());
        }
    }

    #[test]
    fn identity_dims() {
        for l in 1..=3 {
            let ctx = TwistContext::identity(l).unwrap();
            let res = build_algebra(&ctx, &ZhuOptions::new(w(2, 1)), None).unwrap();
            eprintln!("l={l} dim={} closed={} stab={:?}", res.dim(), res.reducer.closed, res.stabilized);
            assert_eq!(res.dim(), 1);
        }
    }
}

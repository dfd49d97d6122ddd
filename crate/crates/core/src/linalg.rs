//! Exact linear algebra: fraction-free sparse echelon forms and small dense
//! helpers.
//!
//! Rows are stored as primitive integer vectors. Elimination combines two rows
//! by cross multiplication and strips the content afterwards, so no fractions
//! appear during insertion. Column order is the natural order of the column
//! index; callers encode their pivot priority in that index.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{primitive_integers, Scalar};
use crate::sparse::SparseVec;

type IntRow = BTreeMap<usize, BigInt>;

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v = &*v / &g;
        }
    }
    if let Some((_, lead)) = row.iter().next() {
        if lead.is_negative() {
            for v in row.values_mut() {
                *v = -&*v;
            }
        }
    }
}

fn to_int_row(v: &SparseVec<usize>) -> IntRow {
    let keys: Vec<usize> = v.keys().copied().collect();
    let vals: Vec<Scalar> = v.iter().map(|(_, c)| c.clone()).collect();
    keys.into_iter().zip(primitive_integers(&vals)).collect()
}

/// `a * x - b * y`, dropping zeros.
fn combine(a: &BigInt, x: &IntRow, b: &BigInt, y: &IntRow) -> IntRow {
    let mut out = IntRow::new();
    for (k, v) in x {
        out.insert(*k, a * v);
    }
    for (k, v) in y {
        let entry = out.entry(*k).or_insert_with(BigInt::zero);
        *entry -= b * v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Incrementally built row echelon form over the rationals.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, IntRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Adds a row; returns `true` when the rank grows.
    pub fn insert(&mut self, row: &SparseVec<usize>) -> bool {
        if row.is_zero() {
            return false;
        }
        let mut r = to_int_row(row);
        loop {
            let lead = match r.keys().next() {
                Some(k) => *k,
                None => return false,
            };
            match self.rows.get(&lead) {
                Some(p) => {
                    let a = &p[&lead];
                    let b = &r[&lead];
                    let g = a.gcd(b);
                    let (a, b) = (a / &g, b / &g);
                    r = combine(&a, &r, &b, p);
                    make_primitive(&mut r);
                }
                None => {
                    make_primitive(&mut r);
                    self.rows.insert(lead, r);
                    return true;
                }
            }
        }
    }

    /// Normal form of `v` modulo the row space: the unique representative
    /// supported on non-pivot columns.
    pub fn reduce(&self, v: &SparseVec<usize>) -> SparseVec<usize> {
        let mut v = v.clone();
        let mut cursor = 0usize;
        loop {
            let next = v.keys().copied().filter(|k| *k >= cursor).find(|k| self.rows.contains_key(k));
            let Some(col) = next else { break };
            let p = &self.rows[&col];
            let factor = v.coeff(&col) / Scalar::from_integer(p[&col].clone());
            for (k, c) in p {
                v.add_term(*k, -(Scalar::from_integer(c.clone()) * &factor));
            }
            cursor = col + 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<usize>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Primitive integer rows, ordered by pivot.
    pub fn int_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.rows.values().map(|r| r.iter().map(|(k, c)| (*k, c.clone())).collect()).collect()
    }

    /// Inverse of [`Echelon::int_rows`]. Returns `None` unless the rows have
    /// distinct leading columns.
    pub fn from_int_rows(rows: Vec<Vec<(usize, BigInt)>>) -> Option<Self> {
        let mut out = BTreeMap::new();
        for r in rows {
            let row: IntRow = r.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            let lead = *row.keys().next()?;
            if out.insert(lead, row).is_some() {
                return None;
            }
        }
        Some(Echelon { rows: out })
    }

    /// Echelon rows as rational sparse vectors, ordered by pivot.
    pub fn rows(&self) -> Vec<SparseVec<usize>> {
        self.rows.values().map(|r| r.iter().map(|(k, c)| (*k, Scalar::from_integer(c.clone()))).collect()).collect()
    }
}

/// Result of [`rank_and_basis`].
#[derive(Clone, Debug)]
pub struct RankBasis<K: Ord> {
    pub rank: usize,
    /// Row echelon spanning set of the row space.
    pub echelon: Vec<SparseVec<K>>,
    pub pivots: Vec<K>,
    /// Keys (among those occurring in the input) that carry no pivot; their
    /// classes form a basis of the quotient of that coordinate space.
    pub complement: Vec<K>,
}

/// Exact rank of a family of sparse rows indexed by a common key space.
pub fn rank_and_basis<K: Ord + Clone>(rows: &[SparseVec<K>]) -> RankBasis<K> {
    let keys: Vec<K> = rows.iter().flat_map(|r| r.keys().cloned()).collect::<BTreeSet<K>>().into_iter().collect();
    let index: BTreeMap<&K, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(&r.map_keys(|k| index[k]));
    }
    let pivots: Vec<K> = ech.pivots().map(|i| keys[i].clone()).collect();
    let complement: Vec<K> = (0..keys.len()).filter(|i| !ech.is_pivot(*i)).map(|i| keys[i].clone()).collect();
    let echelon = ech.rows().into_iter().map(|r| r.map_keys(|i| keys[*i].clone())).collect();
    RankBasis { rank: ech.rank(), echelon, pivots, complement }
}

/// Basis of `{c : sum_i c_i rows[i] = 0}`.
pub fn left_kernel<K: Ord + Clone>(rows: &[SparseVec<K>]) -> Vec<Vec<Scalar>> {
    let keys: Vec<K> = rows.iter().flat_map(|r| r.keys().cloned()).collect::<BTreeSet<K>>().into_iter().collect();
    let index: BTreeMap<&K, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let width = keys.len();
    let mut ech = Echelon::new();
    for (i, r) in rows.iter().enumerate() {
        let mut aug = r.map_keys(|k| index[k]);
        aug.add_term(width + i, Scalar::one());
        ech.insert(&aug);
    }
    ech.rows()
        .into_iter()
        .filter(|r| r.keys().next().is_some_and(|k| *k >= width))
        .map(|r| {
            let mut c = vec![Scalar::zero(); rows.len()];
            for (k, v) in &r {
                c[k - width] = v.clone();
            }
            c
        })
        .collect()
}

/// Small dense rational matrices (row major).
pub type Dense = Vec<Vec<Scalar>>;

pub fn dense_rank(m: &Dense) -> usize {
    let rows: Vec<SparseVec<usize>> = m.iter().map(|r| r.iter().cloned().enumerate().collect()).collect();
    let mut ech = Echelon::new();
    for r in &rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Basis of the right null space `{x : m x = 0}` for an `r x n` matrix.
pub fn dense_nullspace(m: &Dense, n: usize) -> Vec<Vec<Scalar>> {
    // Columns of m are rows of the transpose; kernel of the transpose's
    // left action is the right null space of m.
    let cols: Vec<SparseVec<usize>> =
        (0..n).map(|j| m.iter().enumerate().map(|(i, r)| (i, r[j].clone())).collect()).collect();
    left_kernel(&cols)
}

pub fn mat_mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Scalar::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero() {
                    out[i][j] += &a[i][t] * &b[t][j];
                }
            }
        }
    }
    out
}

/// Inverse of a square matrix, or `None` when singular.
pub fn dense_inverse(m: &Dense) -> Option<Dense> {
    let n = m.len();
    let mut a: Dense = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|r| !a[*r][col].is_zero())?;
        a.swap(col, piv);
        let inv = Scalar::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Reduced row echelon form of the nonzero row space, with pivot columns.
pub fn rref(m: &Dense) -> (Dense, Vec<usize>) {
    let mut a: Dense = m.clone();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|i| !a[*i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Scalar::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn identity(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
}

pub fn zeros(r: usize, c: usize) -> Dense {
    vec![vec![Scalar::zero(); c]; r]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn int_rows_roundtrip() {
        let mut e = Echelon::new();
        e.insert(&[(0, int(2)), (3, int(4))].into_iter().collect());
        e.insert(&[(1, ratio(1, 3)), (3, int(1))].into_iter().collect());
        let back = Echelon::from_int_rows(e.int_rows()).unwrap();
        assert_eq!(back.rows(), e.rows());
        assert!(Echelon::from_int_rows(vec![vec![(1, BigInt::one())], vec![(1, BigInt::one())]]).is_none());
    }

    #[test]
    fn rref_of_dependent_rows() {
        let m = vec![vec![int(2), int(4)], vec![int(1), int(2)], vec![int(0), int(1)]];
        let (r, p) = rref(&m);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r, identity(2));
    }

    fn row(entries: &[(usize, i64)]) -> SparseVec<usize> {
        entries.iter().map(|(k, v)| (*k, int(*v))).collect()
    }

    #[test]
    fn empty_has_rank_zero() {
        let rb = rank_and_basis::<usize>(&[]);
        assert_eq!(rb.rank, 0);
        assert!(rb.complement.is_empty());
    }

    #[test]
    fn small_examples() {
        let rb = rank_and_basis(&[row(&[(1, 1)]), row(&[(1, 1), (2, 1)])]);
        assert_eq!(rb.rank, 2);
        let rb = rank_and_basis(&[row(&[(0, 2), (1, 4)]), row(&[(0, 1), (1, 2)])]);
        assert_eq!(rb.rank, 1);
        assert_eq!(rb.complement, vec![1]);
    }

    #[test]
    fn reduce_gives_normal_form() {
        let mut e = Echelon::new();
        e.insert(&row(&[(0, 2), (2, 1)]));
        e.insert(&row(&[(1, 1), (2, -1)]));
        let v: SparseVec<usize> = [(0, int(1)), (1, int(1))].into_iter().collect();
        let nf = e.reduce(&v);
        // e0 = -1/2 e2, e1 = e2
        assert_eq!(nf, SparseVec::term(2, ratio(1, 2)));
    }

    #[test]
    fn kernel_of_dependent_rows() {
        let rows = vec![row(&[(0, 1), (1, 1)]), row(&[(0, 2), (1, 2)]), row(&[(1, 1)])];
        let k = left_kernel(&rows);
        assert_eq!(k.len(), 1);
        let c = &k[0];
        assert_eq!(c[0].clone(), -(&c[1] * int(2)));
        assert!(c[2].is_zero());
    }

    #[test]
    fn dense_helpers() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(dense_rank(&m), 1);
        let ns = dense_nullspace(&m, 2);
        assert_eq!(ns.len(), 1);
        assert_eq!(mat_mul(&identity(2), &m), m);
    }
}

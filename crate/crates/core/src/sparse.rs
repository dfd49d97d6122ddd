//! Sparse rational vectors keyed by ordered basis keys.

use std::collections::btree_map::{self, BTreeMap};

use num_traits::Zero;

use crate::scalar::Scalar;

/// A finite linear combination `sum c_k * k` with no stored zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVec<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for SparseVec<K> {
    fn default() -> Self {
        SparseVec { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, num_traits::One::one())
    }

    pub fn term(key: K, coeff: Scalar) -> Self {
        let mut v = Self::new();
        v.add_term(key, coeff);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SparseVec<K>, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn add_assign(&mut self, other: &SparseVec<K>) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &SparseVec<K>) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), -c.clone());
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> SparseVec<K> {
        let mut out = SparseVec::new();
        out.add_scaled(self, factor);
        out
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn get(&self, key: &K) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.terms.keys()
    }

    pub fn remove(&mut self, key: &K) -> Option<Scalar> {
        self.terms.remove(key)
    }

    pub fn map_keys<L: Ord + Clone, F: FnMut(&K) -> L>(&self, mut f: F) -> SparseVec<L> {
        let mut out = SparseVec::new();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn filter<F: FnMut(&K) -> bool>(&self, mut keep: F) -> SparseVec<K> {
        SparseVec { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for SparseVec<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut v = SparseVec::new();
        for (k, c) in iter {
            v.add_term(k, c);
        }
        v
    }
}

impl<'a, K: Ord> IntoIterator for &'a SparseVec<K> {
    type Item = (&'a K, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, K, Scalar>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn cancellation_removes_entries() {
        let mut v = SparseVec::term(3usize, int(2));
        v.add_term(3, int(-2));
        assert!(v.is_zero());
        v.add_term(1, int(0));
        assert!(v.is_zero());
    }
}

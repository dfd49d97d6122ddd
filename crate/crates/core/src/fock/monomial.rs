//! Canonically ordered products of fermion modes.

use std::fmt::Write as _;

use crate::frac::FracIndex;

use super::hspec::{GenId, HSpec};

/// A single mode `gen(mode)`.
///
/// The derived order (mode first, then generator) is the canonical order of
/// factors inside a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub mode: FracIndex,
    pub gen: GenId,
}

impl Factor {
    pub fn new(gen: GenId, mode: FracIndex) -> Self {
        Factor { mode, gen }
    }
}

/// A product of distinct modes in strictly increasing canonical order,
/// applied to the ground state.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<Factor>);

/// Sorts `factors` into canonical order. Returns the monomial and the sign of
/// the sorting permutation, or `None` when a mode repeats.
pub fn normalize(factors: &[Factor]) -> Option<(Monomial, i64)> {
    let mut v = factors.to_vec();
    let mut inversions = 0usize;
    // insertion sort: each swap is one transposition
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            inversions += 1;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((Monomial(v), sign))
}

impl Monomial {
    pub fn vacuum() -> Self {
        Monomial(Vec::new())
    }

    /// Wraps factors already known to be canonical.
    pub fn from_canonical(factors: Vec<Factor>) -> Option<Self> {
        factors.windows(2).all(|w| w[0] < w[1]).then_some(Monomial(factors))
    }

    pub fn single(gen: GenId, mode: FracIndex) -> Self {
        Monomial(vec![Factor::new(gen, mode)])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 0 for even, 1 for odd.
    pub fn parity(&self) -> u8 {
        (self.0.len() % 2) as u8
    }

    /// Sum of `-mode` over factors.
    pub fn weight(&self) -> FracIndex {
        self.0.iter().fold(FracIndex::ZERO, |acc, f| acc - f.mode)
    }

    pub fn contains(&self, f: &Factor) -> bool {
        self.0.binary_search(f).is_ok()
    }

    /// `f * self`, renormalized: `None` if `f` already occurs.
    pub fn left_mul(&self, f: Factor) -> Option<(Monomial, i64)> {
        match self.0.binary_search(&f) {
            Ok(_) => None,
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, f);
                Some((Monomial(v), if pos % 2 == 0 { 1 } else { -1 }))
            }
        }
    }

    /// Left odd derivative with respect to `f`.
    pub fn remove(&self, f: &Factor) -> Option<(Monomial, i64)> {
        match self.0.binary_search(f) {
            Err(_) => None,
            Ok(pos) => {
                let mut v = self.0.clone();
                v.remove(pos);
                Some((Monomial(v), if pos % 2 == 0 { 1 } else { -1 }))
            }
        }
    }

    /// Leading factor and the remaining monomial.
    pub fn split_first(&self) -> Option<(Factor, Monomial)> {
        self.0.split_first().map(|(f, rest)| (*f, Monomial(rest.to_vec())))
    }

    /// Byte encoding whose lexicographic order agrees with `Ord` on
    /// monomials of equal length; used for cache files and hashing.
    pub fn encode(&self) -> String {
        let mut s = String::new();
        for (i, f) in self.0.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{}@{}", f.gen, f.mode);
        }
        s
    }

    pub fn decode(s: &str) -> Option<Monomial> {
        let s = s.trim();
        if s.is_empty() {
            return Some(Monomial::vacuum());
        }
        let mut v = Vec::new();
        for tok in s.split(' ') {
            let (g, m) = tok.split_once('@')?;
            v.push(Factor::new(g.parse().ok()?, m.parse().ok()?));
        }
        Monomial::from_canonical(v)
    }

    /// Human readable form such as `a1(-3/2)a1(-1/2)`; the vacuum is `1`.
    pub fn display(&self, h: &HSpec) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut s = String::new();
        for f in &self.0 {
            let _ = write!(s, "{}({})", h.label(f.gen), f.mode);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(g: GenId, p: i64, q: i64) -> Factor {
        Factor::new(g, FracIndex::new(p, q))
    }

    #[test]
    fn normalize_examples() {
        let (m, s) = normalize(&[f(0, -3, 2), f(0, -1, 2)]).unwrap();
        assert_eq!(s, 1);
        assert_eq!(m.factors(), &[f(0, -3, 2), f(0, -1, 2)]);
        let (m, s) = normalize(&[f(1, -1, 2), f(0, -1, 2)]).unwrap();
        assert_eq!(s, -1);
        assert_eq!(m.factors(), &[f(0, -1, 2), f(1, -1, 2)]);
        assert!(normalize(&[f(0, -1, 2), f(0, -1, 2)]).is_none());
        assert!(normalize(&[f(0, -1, 2), f(1, -1, 2), f(0, -1, 2)]).is_none());
    }

    #[test]
    fn weights() {
        assert_eq!(Monomial::vacuum().weight(), FracIndex::ZERO);
        let m = Monomial::from_canonical(vec![f(0, -3, 2), f(0, -1, 2)]).unwrap();
        assert_eq!(m.weight(), FracIndex::int(2));
        assert_eq!(Monomial::single(1, FracIndex::ZERO).weight(), FracIndex::ZERO);
    }

    #[test]
    fn left_mul_and_remove_are_inverse() {
        let m = Monomial::from_canonical(vec![f(0, -3, 2), f(1, -1, 2)]).unwrap();
        let x = f(1, -3, 2);
        let (p, s) = m.left_mul(x).unwrap();
        assert_eq!(s, -1);
        let (back, s2) = p.remove(&x).unwrap();
        assert_eq!(back, m);
        assert_eq!(s * s2, 1);
        assert!(p.left_mul(x).is_none());
    }

    #[test]
    fn encode_roundtrip() {
        let m = Monomial::from_canonical(vec![f(2, -5, 2), f(0, 0, 1)]).unwrap();
        assert_eq!(Monomial::decode(&m.encode()), Some(m));
        assert_eq!(Monomial::decode(""), Some(Monomial::vacuum()));
    }
}

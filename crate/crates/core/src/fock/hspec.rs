//! The space H of fermion generators with its symmetric bilinear form.

use num_traits::{One, Zero};

use crate::error::{Result, VosaError};
use crate::linalg::{dense_inverse, Dense};
use crate::scalar::{int, Scalar};

pub type GenId = u16;

/// One basis vector of H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub id: GenId,
    pub label: String,
    /// Nonzero values `(self, partner)`, ordered by partner id.
    pub pairing: Vec<(GenId, Scalar)>,
}

impl GeneratorSpec {
    pub fn pairs_with(&self, other: GenId) -> Option<&Scalar> {
        self.pairing.iter().find(|(p, _)| *p == other).map(|(_, v)| v)
    }

    /// All fermion generators are odd.
    pub fn parity(&self) -> u8 {
        1
    }
}

/// A basis of H together with the Gram matrix of the form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSpec {
    gens: Vec<GeneratorSpec>,
    gram: Dense,
    gram_inv: Dense,
}

impl HSpec {
    /// Builds H from labels and a symmetric nondegenerate Gram matrix.
    pub fn new(labels: Vec<String>, gram: Dense) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(VosaError::InvalidSpec("H must be nonzero".into()));
        }
        if n > GenId::MAX as usize {
            return Err(VosaError::InvalidSpec("too many generators".into()));
        }
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(VosaError::InvalidSpec("Gram matrix has the wrong shape".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(VosaError::InvalidSpec(format!(
                        "form is not symmetric at ({}, {})",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let gram_inv = dense_inverse(&gram).ok_or_else(|| VosaError::InvalidSpec("form is degenerate".into()))?;
        let gens = labels
            .into_iter()
            .enumerate()
            .map(|(i, label)| GeneratorSpec {
                id: i as GenId,
                label,
                pairing: (0..n).filter(|j| !gram[i][*j].is_zero()).map(|j| (j as GenId, gram[i][j].clone())).collect(),
            })
            .collect();
        Ok(HSpec { gens, gram, gram_inv })
    }

    /// `a1, ..., al` with `(ai, aj) = delta_ij`.
    pub fn orthonormal(l: usize) -> Result<Self> {
        let labels = (1..=l).map(|i| format!("a{i}")).collect();
        let gram =
            (0..l).map(|i| (0..l).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect();
        Self::new(labels, gram)
    }

    /// Dual isotropic pairs `b_i, b_i*` with `(b_i, b_i*) = 1`, plus a single
    /// `e` with `(e, e) = 2` when `l` is odd.
    pub fn polarized(l: usize) -> Result<Self> {
        let k = l / 2;
        let mut labels: Vec<String> = (1..=k).map(|i| format!("b{i}")).collect();
        labels.extend((1..=k).map(|i| format!("b{i}*")));
        if l % 2 == 1 {
            labels.push("e".into());
        }
        let mut gram = vec![vec![Scalar::zero(); l]; l];
        for i in 0..k {
            gram[i][k + i] = Scalar::one();
            gram[k + i][i] = Scalar::one();
        }
        if l % 2 == 1 {
            gram[l - 1][l - 1] = int(2);
        }
        Self::new(labels, gram)
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.gens
    }

    pub fn generator(&self, id: GenId) -> &GeneratorSpec {
        &self.gens[id as usize]
    }

    pub fn label(&self, id: GenId) -> &str {
        &self.gens[id as usize].label
    }

    pub fn find(&self, label: &str) -> Option<GenId> {
        self.gens.iter().find(|g| g.label == label).map(|g| g.id)
    }

    pub fn pairing(&self, a: GenId, b: GenId) -> &Scalar {
        &self.gram[a as usize][b as usize]
    }

    pub fn gram(&self) -> &Dense {
        &self.gram
    }

    /// Nonzero entries of the inverse Gram matrix; these are the coefficients
    /// of the Casimir element used for the conformal vector.
    pub fn casimir(&self) -> Vec<(GenId, GenId, Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !self.gram_inv[i][j].is_zero() {
                    out.push((i as GenId, j as GenId, self.gram_inv[i][j].clone()));
                }
            }
        }
        out
    }

    /// Canonical text used in content hashes.
    pub fn canonical(&self) -> String {
        let mut s = String::new();
        for g in &self.gens {
            s.push_str(&g.label);
            s.push('[');
            for (p, v) in &g.pairing {
                s.push_str(&format!("{p}:{v};"));
            }
            s.push(']');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polarized_odd_has_e() {
        let h = HSpec::polarized(3).unwrap();
        assert_eq!(h.dim(), 3);
        assert_eq!(h.label(2), "e");
        assert_eq!(h.pairing(0, 1), &int(1));
        assert_eq!(h.pairing(2, 2), &int(2));
        assert!(h.pairing(0, 0).is_zero());
    }

    #[test]
    fn casimir_inverts_gram() {
        let h = HSpec::polarized(3).unwrap();
        let c = h.casimir();
        assert!(c.contains(&(0, 1, int(1))));
        assert!(c.contains(&(2, 2, crate::scalar::ratio(1, 2))));
    }

    #[test]
    fn rejects_degenerate_and_asymmetric() {
        let z = vec![vec![Scalar::zero()]];
        assert!(HSpec::new(vec!["x".into()], z).is_err());
        let a = vec![vec![int(1), int(1)], vec![int(0), int(1)]];
        assert!(HSpec::new(vec!["x".into(), "y".into()], a).is_err());
    }
}

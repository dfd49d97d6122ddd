//! Automorphisms of V lifted from isometries of H, and the per-monomial
//! eigenvalue data they induce.

use serde::Serialize;

use crate::error::{Result, VosaError};
use crate::frac::{lcm_denominators, FracIndex};

use super::hspec::HSpec;
use super::monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistKind {
    Id,
    Sigma,
    Tau,
}

impl std::fmt::Display for TwistKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TwistKind::Id => "id",
            TwistKind::Sigma => "sigma",
            TwistKind::Tau => "tau",
        })
    }
}

/// A diagonal automorphism `g` of V, stored through `g sigma` on H.
///
/// Generator `x` is an eigenvector of `g sigma` with eigenvalue
/// `exp(2 pi i star[x])`, `star[x]` in `[0, 1)`. Its `g`-exponent is
/// `star[x] + 1/2 mod 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    pub kind: TwistKind,
    star: Vec<FracIndex>,
}

impl Twist {
    pub fn identity(l: usize) -> Self {
        Twist { kind: TwistKind::Id, star: vec![FracIndex::HALF; l] }
    }

    pub fn sigma(l: usize) -> Self {
        Twist { kind: TwistKind::Sigma, star: vec![FracIndex::ZERO; l] }
    }

    /// Arbitrary `g sigma`-exponents; checked against the form by
    /// [`Twist::validate`].
    pub fn tau(star: Vec<FracIndex>) -> Self {
        Twist { kind: TwistKind::Tau, star: star.into_iter().map(FracIndex::frac_part).collect() }
    }

    /// The isometry condition: paired generators have opposite exponents.
    pub fn validate(&self, h: &HSpec) -> Result<()> {
        if self.star.len() != h.dim() {
            return Err(VosaError::InvalidSpec(format!(
                "twist has {} eigenvalues for {} generators",
                self.star.len(),
                h.dim()
            )));
        }
        for g in h.generators() {
            for (p, _) in &g.pairing {
                if !(self.star[g.id as usize] + self.star[*p as usize]).is_integer() {
                    return Err(VosaError::InvalidSpec(format!(
                        "twist does not preserve the form on ({}, {})",
                        g.label,
                        h.label(*p)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.star.len()
    }

    pub fn is_empty(&self) -> bool {
        self.star.is_empty()
    }

    pub fn star(&self, gen: u16) -> FracIndex {
        self.star[gen as usize]
    }

    pub fn stars(&self) -> &[FracIndex] {
        &self.star
    }

    pub fn theta(&self, gen: u16) -> FracIndex {
        (self.star[gen as usize] + FracIndex::HALF).frac_part()
    }

    /// Order of `g`.
    pub fn t0(&self) -> i64 {
        lcm_denominators((0..self.star.len()).map(|i| self.theta(i as u16)))
    }

    /// Order of `g sigma`.
    pub fn t(&self) -> i64 {
        lcm_denominators(self.star.iter().copied())
    }

    /// `r / T` for a monomial of V: the `g sigma`-eigenvalue exponent.
    pub fn rho(&self, m: &Monomial) -> FracIndex {
        m.factors().iter().fold(FracIndex::ZERO, |acc, f| acc + self.star[f.gen as usize]).frac_part()
    }

    /// `r / T0` for a monomial of V: the `g`-eigenvalue exponent, which is
    /// also the mode class of its field on a `g`-twisted module.
    pub fn alpha(&self, m: &Monomial) -> FracIndex {
        m.factors().iter().fold(FracIndex::ZERO, |acc, f| acc + self.theta(f.gen)).frac_part()
    }

    /// `delta_r`.
    pub fn delta(&self, m: &Monomial) -> i64 {
        i64::from(self.rho(m).is_zero())
    }

    pub fn inverse(&self) -> Twist {
        Twist { kind: self.kind, star: self.star.iter().map(|s| (FracIndex::ZERO - *s).frac_part()).collect() }
    }

    pub fn canonical(&self) -> String {
        let parts: Vec<String> = self.star.iter().map(|s| s.to_string()).collect();
        format!("{}:{}", self.kind, parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(Twist::identity(2).t0(), 1);
        assert_eq!(Twist::identity(2).t(), 2);
        assert_eq!(Twist::sigma(2).t0(), 2);
        assert_eq!(Twist::sigma(2).t(), 1);
        let tau = Twist::tau(vec![FracIndex::HALF, FracIndex::ZERO]);
        assert_eq!((tau.t0(), tau.t()), (2, 2));
    }

    #[test]
    fn validation() {
        let h = HSpec::polarized(2).unwrap();
        assert!(Twist::tau(vec![FracIndex::new(1, 3), FracIndex::new(2, 3)]).validate(&h).is_ok());
        assert!(Twist::tau(vec![FracIndex::new(1, 3), FracIndex::new(1, 3)]).validate(&h).is_err());
    }
}

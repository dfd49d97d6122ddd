//! Mode supports and zero-mode conventions for V and its twisted modules.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Result, VosaError};
use crate::frac::FracIndex;

use super::hspec::{GenId, HSpec};
use super::monomial::{Factor, Monomial};
use super::twist::Twist;

/// How a generator's zero mode acts on the Fock space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroModePolicy {
    /// Left multiplication; the zero mode appears in monomials.
    PureCreation,
    /// Contraction against the partner's creation zero mode.
    PureAnnihilation,
    /// Multiplication plus `(x, x) / 2` times the derivative, so that
    /// `x(0)^2 = (x, x) / 2`.
    CliffordSplit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeRole {
    Creation,
    Annihilation,
    Split,
}

/// A Fock sector: generator `x` has modes in `star[x] + Z`.
#[derive(Clone, Debug)]
pub struct SectorSpec {
    h: Arc<HSpec>,
    twist: Twist,
    zero: Vec<Option<ZeroModePolicy>>,
}

impl SectorSpec {
    /// The Fock module of `H` twisted by `twist`. Zero modes are assigned
    /// automatically: dual isotropic pairs split into annihilation (lower id)
    /// and creation (higher id); a self-paired generator orthogonal to the
    /// other zero modes gets the Clifford split.
    pub fn new(h: Arc<HSpec>, twist: Twist) -> Result<Self> {
        twist.validate(&h)?;
        let n = h.dim();
        let zero_gens: Vec<GenId> = (0..n as GenId).filter(|g| twist.star(*g).is_zero()).collect();
        let mut zero = vec![None; n];
        for &x in &zero_gens {
            let partners: Vec<GenId> =
                h.generator(x).pairing.iter().map(|(p, _)| *p).filter(|p| zero_gens.contains(p)).collect();
            let policy = match partners.as_slice() {
                [p] if *p == x => ZeroModePolicy::CliffordSplit,
                [p] => {
                    let back: Vec<GenId> = h.generator(*p).pairing.iter().map(|(q, _)| *q).collect();
                    if back != [x] {
                        return Err(VosaError::InvalidSpec(format!(
                            "zero-mode generator {} is not part of an isotropic dual pair",
                            h.label(x)
                        )));
                    }
                    if x < *p {
                        ZeroModePolicy::PureAnnihilation
                    } else {
                        ZeroModePolicy::PureCreation
                    }
                }
                _ => {
                    return Err(VosaError::InvalidSpec(format!(
                        "zero-mode generator {} must pair with exactly one generator; \
                         polarize the fixed subspace first",
                        h.label(x)
                    )))
                }
            };
            zero[x as usize] = Some(policy);
        }
        let split = zero.iter().filter(|p| **p == Some(ZeroModePolicy::CliffordSplit)).count();
        if split > 1 {
            return Err(VosaError::InvalidSpec("at most one self-paired zero-mode generator is supported".into()));
        }
        Ok(SectorSpec { h, twist, zero })
    }

    /// The Neveu-Schwarz sector, i.e. V itself.
    pub fn neveu_schwarz(h: Arc<HSpec>) -> Self {
        let l = h.dim();
        Self::new(h, Twist::identity(l)).expect("identity twist is always valid")
    }

    pub fn h(&self) -> &Arc<HSpec> {
        &self.h
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }

    pub fn offset(&self, gen: GenId) -> FracIndex {
        self.twist.star(gen)
    }

    pub fn zero_policy(&self, gen: GenId) -> Option<ZeroModePolicy> {
        self.zero[gen as usize]
    }

    pub fn split_generator(&self) -> Option<GenId> {
        (0..self.zero.len() as GenId).find(|g| self.zero[*g as usize] == Some(ZeroModePolicy::CliffordSplit))
    }

    pub fn t0(&self) -> i64 {
        self.twist.t0()
    }

    pub fn t(&self) -> i64 {
        self.twist.t()
    }

    /// Context denominator `lcm(2, T0, T)`.
    pub fn denominator(&self) -> i64 {
        2i64.lcm(&self.t0()).lcm(&self.t())
    }

    pub fn in_support(&self, gen: GenId, mode: FracIndex) -> bool {
        mode.same_class(self.offset(gen))
    }

    pub fn role(&self, gen: GenId, mode: FracIndex) -> Result<ModeRole> {
        if !self.in_support(gen, mode) {
            return Err(VosaError::ModeOutOfSupport { generator: self.h.label(gen).to_string(), mode });
        }
        Ok(if mode < FracIndex::ZERO {
            ModeRole::Creation
        } else if mode > FracIndex::ZERO {
            ModeRole::Annihilation
        } else {
            match self.zero[gen as usize] {
                Some(ZeroModePolicy::PureCreation) => ModeRole::Creation,
                Some(ZeroModePolicy::PureAnnihilation) => ModeRole::Annihilation,
                Some(ZeroModePolicy::CliffordSplit) => ModeRole::Split,
                None => unreachable!("zero mode in support implies a policy"),
            }
        })
    }

    /// Whether `f` may appear inside a basis monomial.
    pub fn is_basis_factor(&self, f: &Factor) -> bool {
        self.in_support(f.gen, f.mode)
            && (f.mode < FracIndex::ZERO
                || (f.mode.is_zero()
                    && matches!(
                        self.zero[f.gen as usize],
                        Some(ZeroModePolicy::PureCreation | ZeroModePolicy::CliffordSplit)
                    )))
    }

    /// All basis factors of weight at most `max_weight`, in canonical order.
    pub fn creation_factors(&self, max_weight: FracIndex) -> Vec<Factor> {
        let mut out = Vec::new();
        for g in 0..self.h.dim() as GenId {
            let mut mode = -(self.offset(g)); // largest candidate <= 0
            if mode.is_zero() && !self.is_basis_factor(&Factor::new(g, mode)) {
                mode = mode - 1;
            }
            while -mode <= max_weight {
                out.push(Factor::new(g, mode));
                mode = mode - 1;
            }
        }
        out.sort();
        out
    }

    /// Canonical description used in content hashes.
    pub fn canonical(&self) -> String {
        format!("H={};twist={}", self.h.canonical(), self.twist.canonical())
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        let supports: Vec<String> =
            (0..self.h.dim() as GenId).map(|g| format!("{}:{}+Z", self.h.label(g), self.offset(g))).collect();
        format!("{} [{}]", self.twist.kind, supports.join(", "))
    }
}

/// All basis monomials of weight at most `max_weight`, ordered by weight and
/// then canonically.
pub fn enumerate_basis(sector: &SectorSpec, max_weight: FracIndex) -> Vec<Monomial> {
    if max_weight < FracIndex::ZERO {
        return Vec::new();
    }
    let factors = sector.creation_factors(max_weight);
    let mut out = Vec::new();
    let mut stack: Vec<Factor> = Vec::new();
    fn rec(factors: &[Factor], start: usize, budget: FracIndex, stack: &mut Vec<Factor>, out: &mut Vec<Monomial>) {
        out.push(Monomial::from_canonical(stack.clone()).expect("built in order"));
        for i in start..factors.len() {
            let w = -factors[i].mode;
            if w <= budget {
                stack.push(factors[i]);
                rec(factors, i + 1, budget - w, stack, out);
                stack.pop();
            }
        }
    }
    rec(&factors, 0, max_weight, &mut stack, &mut out);
    out.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)));
    out
}

/// Number of basis monomials of each weight.
pub fn graded_dims(basis: &[Monomial]) -> BTreeMap<FracIndex, usize> {
    let mut dims = BTreeMap::new();
    for m in basis {
        *dims.entry(m.weight()).or_insert(0) += 1;
    }
    dims
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(l: usize) -> SectorSpec {
        SectorSpec::neveu_schwarz(Arc::new(HSpec::orthonormal(l).unwrap()))
    }

    #[test]
    fn small_ns_bases() {
        let b = enumerate_basis(&ns(1), FracIndex::HALF);
        assert_eq!(b.len(), 2);
        let dims = graded_dims(&enumerate_basis(&ns(2), FracIndex::ONE));
        assert_eq!(dims.values().copied().collect::<Vec<_>>(), vec![1, 2, 1]);
    }

    #[test]
    fn ramond_ground_states() {
        let h = Arc::new(HSpec::polarized(2).unwrap());
        let s = SectorSpec::new(h, Twist::sigma(2)).unwrap();
        assert_eq!(s.zero_policy(0), Some(ZeroModePolicy::PureAnnihilation));
        assert_eq!(s.zero_policy(1), Some(ZeroModePolicy::PureCreation));
        let b = enumerate_basis(&s, FracIndex::ZERO);
        assert_eq!(b.len(), 2);
        assert_eq!(b[1], Monomial::single(1, FracIndex::ZERO));
    }

    #[test]
    fn odd_ramond_has_split_generator() {
        let h = Arc::new(HSpec::polarized(3).unwrap());
        let s = SectorSpec::new(h, Twist::sigma(3)).unwrap();
        assert_eq!(s.split_generator(), Some(2));
        assert_eq!(enumerate_basis(&s, FracIndex::ZERO).len(), 4);
    }

    #[test]
    fn orthonormal_ramond_is_rejected() {
        let h = Arc::new(HSpec::orthonormal(2).unwrap());
        assert!(SectorSpec::new(h, Twist::sigma(2)).is_err());
    }

    #[test]
    fn roles() {
        let s = ns(1);
        assert_eq!(s.role(0, FracIndex::new(-1, 2)).unwrap(), ModeRole::Creation);
        assert_eq!(s.role(0, FracIndex::new(1, 2)).unwrap(), ModeRole::Annihilation);
        assert!(s.role(0, FracIndex::ZERO).is_err());
    }
}

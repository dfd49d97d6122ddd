//! Concrete twisted modules: Fock modules of a twisted sector and, when a
//! self-paired generator has a zero mode, the two eigenspaces of
//! `J = e(0) (-1)^F`.

use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Result, VosaError};
use crate::fields::{BasisKey, FockModule, ModVec, VertexModule};
use crate::fock::{enumerate_basis, generator_mode, GenId, HSpec, Monomial, SectorSpec, State, Twist, TwistKind};
use crate::frac::FracIndex;
use crate::linalg::Dense;
use crate::scalar::{int, sign, Scalar};
use crate::zhu::TwistContext;

/// Half of the Fock module of a sector with a Clifford-split generator `e`:
/// the `s`-eigenspace of `J = e(0) (-1)^F`, where `F` counts the factors
/// other than `e(0)`.
///
/// Basis keys are the `e(0)`-free monomials `m`, standing for
/// `m + s J m`.
#[derive(Clone, Debug)]
pub struct ProjectedModule {
    sector: SectorSpec,
    split: GenId,
    sign: i64,
}

impl ProjectedModule {
    pub fn new(sector: SectorSpec, sign: i64) -> Result<Self> {
        let split = sector
            .split_generator()
            .ok_or_else(|| VosaError::InvalidSpec("sector has no self-paired zero mode".into()))?;
        Ok(ProjectedModule { sector, split, sign: sign.signum() })
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    fn e0(&self) -> FracIndex {
        FracIndex::ZERO
    }

    fn has_e0(&self, m: &Monomial) -> bool {
        m.factors().iter().any(|f| f.gen == self.split && f.mode.is_zero())
    }

    /// `J m` for any monomial of the full Fock space.
    pub fn j(&self, m: &Monomial) -> Result<State> {
        let f = m.factors().iter().filter(|f| !(f.gen == self.split && f.mode.is_zero())).count();
        let s = generator_mode(&self.sector, self.split, self.e0(), m)?;
        Ok(s.scaled(&sign(f as i64)))
    }

    /// The vector of the full Fock space represented by `key`.
    pub fn lift(&self, key: &BasisKey) -> Result<State> {
        let mut v = State::basis(key.mono.clone());
        v.add_scaled(&self.j(&key.mono)?, &int(self.sign));
        Ok(v)
    }

    fn project(&self, s: &State) -> ModVec {
        s.iter().filter(|(m, _)| !self.has_e0(m)).map(|(m, c)| (BasisKey::fock(m.clone()), c.clone())).collect()
    }

    /// Whether `x(n)` maps the eigenspace into itself on all keys up to
    /// `max_degree` and all modes with `|n| <= max_degree`.
    pub fn check_invariance(&self, max_degree: FracIndex) -> Result<bool> {
        let keys = self.basis(max_degree);
        for g in 0..self.sector.h().dim() as GenId {
            let mut n = self.sector.offset(g) - max_degree.floor() - 1;
            while n <= max_degree {
                for k in &keys {
                    let full = self.full_mode(g, n, k)?;
                    let back = self.lift_vec(&self.project(&full))?;
                    if back != full {
                        return Ok(false);
                    }
                }
                n = n + 1;
            }
        }
        Ok(true)
    }

    fn full_mode(&self, gen: GenId, n: FracIndex, key: &BasisKey) -> Result<State> {
        let mut out = State::new();
        for (m, c) in &self.lift(key)? {
            out.add_scaled(&generator_mode(&self.sector, gen, n, m)?, c);
        }
        Ok(out)
    }

    fn lift_vec(&self, v: &ModVec) -> Result<State> {
        let mut out = State::new();
        for (k, c) in v {
            out.add_scaled(&self.lift(k)?, c);
        }
        Ok(out)
    }
}

impl VertexModule for ProjectedModule {
    fn sector(&self) -> &SectorSpec {
        &self.sector
    }

    fn generator_mode(&self, gen: GenId, n: FracIndex, w: &BasisKey) -> Result<ModVec> {
        Ok(self.project(&self.full_mode(gen, n, w)?))
    }

    fn basis(&self, max_degree: FracIndex) -> Vec<BasisKey> {
        enumerate_basis(&self.sector, max_degree).into_iter().filter(|m| !self.has_e0(m)).map(BasisKey::fock).collect()
    }
}

/// A concrete twisted module together with a short name.
#[derive(Clone, Debug)]
pub enum TwistedModule {
    Fock(FockModule),
    Projected(ProjectedModule),
}

impl TwistedModule {
    pub fn name(&self) -> String {
        match self {
            TwistedModule::Fock(_) => "M".into(),
            TwistedModule::Projected(p) if p.sign() > 0 => "M+".into(),
            TwistedModule::Projected(_) => "M-".into(),
        }
    }

    /// Graded dimensions up to `max_degree`.
    pub fn graded_dims(&self, max_degree: FracIndex) -> Vec<(FracIndex, usize)> {
        let mut out: Vec<(FracIndex, usize)> = Vec::new();
        for k in self.basis(max_degree) {
            let d = self.degree(&k);
            match out.last_mut() {
                Some((e, n)) if *e == d => *n += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }
}

impl VertexModule for TwistedModule {
    fn sector(&self) -> &SectorSpec {
        match self {
            TwistedModule::Fock(m) => m.sector(),
            TwistedModule::Projected(m) => m.sector(),
        }
    }

    fn generator_mode(&self, gen: GenId, n: FracIndex, w: &BasisKey) -> Result<ModVec> {
        match self {
            TwistedModule::Fock(m) => m.generator_mode(gen, n, w),
            TwistedModule::Projected(m) => m.generator_mode(gen, n, w),
        }
    }

    fn basis(&self, max_degree: FracIndex) -> Vec<BasisKey> {
        match self {
            TwistedModule::Fock(m) => m.basis(max_degree),
            TwistedModule::Projected(m) => m.basis(max_degree),
        }
    }
}

/// Generators of a `tau` configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TauEntry {
    /// One self-paired generator with `(x, x) = 2` and exponent `star`.
    SelfPaired(FracIndex),
    /// An isotropic dual pair with exponents `star` and `-star`.
    Pair(FracIndex),
}

/// Eigenvalue data for a twisted sector: exponents of `tau sigma` on an
/// eigenbasis of H. Written as e.g. `self:1/2,self:0,pair:1/3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauTable(pub Vec<TauEntry>);

impl TauTable {
    /// `tau` swapping the polarized pair `b, b*` on `l = 2`: the `+1`
    /// eigenvector `b + b*` has integral `tau`-exponent, hence half-integral
    /// modes, and the `-1` eigenvector gets integral modes.
    pub fn swap_pair() -> Self {
        TauTable(vec![TauEntry::SelfPaired(FracIndex::HALF), TauEntry::SelfPaired(FracIndex::ZERO)])
    }

    /// `tau = -1` on H, which makes `tau sigma` trivial.
    pub fn minus_one(l: usize) -> Self {
        let mut v = vec![TauEntry::Pair(FracIndex::ZERO); l / 2];
        if l % 2 == 1 {
            v.push(TauEntry::SelfPaired(FracIndex::ZERO));
        }
        TauTable(v)
    }

    /// The form on H and the twist described by the table.
    pub fn realize(&self) -> Result<(Arc<HSpec>, Twist)> {
        let mut labels = Vec::new();
        let mut stars = Vec::new();
        let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
        let (mut np, mut ns) = (0, 0);
        for e in &self.0 {
            match e {
                TauEntry::SelfPaired(s) => {
                    if !(*s + *s).is_integer() {
                        return Err(VosaError::InvalidSpec(format!(
                            "a self-paired generator needs exponent 0 or 1/2, got {s}"
                        )));
                    }
                    ns += 1;
                    let i = labels.len();
                    labels.push(format!("c{ns}"));
                    stars.push(*s);
                    entries.push((i, i, int(2)));
                }
                TauEntry::Pair(s) => {
                    np += 1;
                    let i = labels.len();
                    labels.push(format!("h{np}"));
                    labels.push(format!("h{np}*"));
                    stars.push(*s);
                    stars.push(FracIndex::ZERO - *s);
                    entries.push((i, i + 1, int(1)));
                    entries.push((i + 1, i, int(1)));
                }
            }
        }
        let n = labels.len();
        if n == 0 {
            return Err(VosaError::InvalidSpec("empty tau table".into()));
        }
        let mut gram: Dense = vec![vec![Scalar::zero(); n]; n];
        for (i, j, c) in entries {
            gram[i][j] = c;
        }
        let h = Arc::new(HSpec::new(labels, gram)?);
        let twist = Twist::tau(stars);
        twist.validate(&h)?;
        Ok((h, twist))
    }

    /// `l_0 = dim H^{0*}`.
    pub fn l0(&self) -> usize {
        self.0
            .iter()
            .map(|e| match e {
                TauEntry::SelfPaired(s) if s.is_zero() => 1,
                TauEntry::Pair(s) if s.is_zero() => 2,
                _ => 0,
            })
            .sum()
    }
}

impl FromStr for TauTable {
    type Err = VosaError;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (kind, val) = part
                .split_once(':')
                .ok_or_else(|| VosaError::Parse(format!("tau entry '{part}' needs kind:exponent")))?;
            let v: FracIndex = val.trim().parse()?;
            out.push(match kind.trim() {
                "self" => TauEntry::SelfPaired(v.frac_part()),
                "pair" => TauEntry::Pair(v.frac_part()),
                k => return Err(VosaError::Parse(format!("unknown tau entry kind '{k}'"))),
            });
        }
        Ok(TauTable(out))
    }
}

/// The canonical twisted module(s) of `h` under `twist`: one Fock module, or
/// the pair `M+`, `M-` when a self-paired generator has zero modes.
pub fn build_tau_module(h: Arc<HSpec>, twist: Twist) -> Result<Vec<TwistedModule>> {
    let sector = SectorSpec::new(h, twist)?;
    if sector.split_generator().is_some() {
        Ok(vec![
            TwistedModule::Projected(ProjectedModule::new(sector.clone(), 1)?),
            TwistedModule::Projected(ProjectedModule::new(sector, -1)?),
        ])
    } else {
        Ok(vec![TwistedModule::Fock(FockModule::new(sector))])
    }
}

/// `V(H, Z)` on the polarized basis, split into `V+` and `V-` for odd `l`.
pub fn build_sigma_module(l: usize) -> Result<Vec<TwistedModule>> {
    build_tau_module(Arc::new(HSpec::polarized(l)?), Twist::sigma(l))
}

/// The twist context for `kind` together with its canonical twisted
/// modules, each with a display name. For `g = 1` the module is V itself.
/// A `tau` configuration is described by `tau`, which fixes `l`.
pub fn standard_setup(
    kind: TwistKind,
    l: usize,
    tau: Option<&TauTable>,
) -> Result<(TwistContext, Vec<(String, TwistedModule)>)> {
    Ok(match kind {
        TwistKind::Id => {
            let ctx = TwistContext::identity(l)?;
            let v = TwistedModule::Fock(FockModule::new(ctx.va().sector().clone()));
            (ctx, vec![("V".into(), v)])
        }
        TwistKind::Sigma => {
            let ctx = TwistContext::sigma(l)?;
            let mods = build_sigma_module(l)?.into_iter().map(|m| (m.name(), m)).collect();
            (ctx, mods)
        }
        TwistKind::Tau => {
            let table = match tau {
                Some(t) => t.clone(),
                None if l == 2 => TauTable::swap_pair(),
                None => {
                    return Err(VosaError::InvalidSpec("a tau twist needs an eigenvalue table unless l = 2".into()))
                }
            };
            let (h, twist) = table.realize()?;
            if h.dim() != l {
                return Err(VosaError::InvalidSpec(format!(
                    "l = {l} does not match the tau table, which has {} generators",
                    h.dim()
                )));
            }
            let mods = build_tau_module(h.clone(), twist.clone())?.into_iter().map(|m| (m.name(), m)).collect();
            (TwistContext::new(h, twist)?, mods)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(m: &TwistedModule, w: FracIndex) -> Vec<usize> {
        m.graded_dims(w).into_iter().map(|(_, n)| n).collect()
    }

    #[test]
    fn sigma_ground_states() {
        let m = build_sigma_module(2).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(dims(&m[0], FracIndex::ZERO), vec![2]);
        let pm = build_sigma_module(1).unwrap();
        assert_eq!(pm.len(), 2);
        for m in &pm {
            assert_eq!(dims(m, FracIndex::ZERO), vec![1]);
        }
    }

    #[test]
    fn eigenspaces_are_invariant() {
        for l in [1, 3] {
            for m in build_sigma_module(l).unwrap() {
                if let TwistedModule::Projected(p) = m {
                    assert!(p.check_invariance(FracIndex::new(3, 2)).unwrap());
                }
            }
        }
    }

    #[test]
    fn tau_table_parsing() {
        let t: TauTable = "self:1/2, self:0".parse().unwrap();
        assert_eq!(t, TauTable::swap_pair());
        assert_eq!(t.l0(), 1);
        assert!("self:1/3".parse::<TauTable>().unwrap().realize().is_err());
        assert!("bogus".parse::<TauTable>().is_err());
    }

    #[test]
    fn minus_one_matches_sigma() {
        for l in 1..=3 {
            let (h, t) = TauTable::minus_one(l).realize().unwrap();
            let a = build_tau_module(h, t).unwrap();
            let b = build_sigma_module(l).unwrap();
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                assert_eq!(x.graded_dims(FracIndex::int(2)), y.graded_dims(FracIndex::int(2)));
            }
        }
    }

    #[test]
    fn swap_pair_module() {
        let (h, t) = TauTable::swap_pair().realize().unwrap();
        let ms = build_tau_module(h, t).unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(dims(&ms[0], FracIndex::ZERO), vec![1]);
    }
}

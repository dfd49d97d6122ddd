//! Generator modes acting on Fock monomials.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::frac::FracIndex;
use crate::scalar::{int, Scalar};
use crate::sparse::SparseVec;

use super::hspec::GenId;
use super::monomial::{Factor, Monomial};
use super::sector::{ModeRole, SectorSpec};

/// Linear combination of monomials.
pub type State = SparseVec<Monomial>;

fn push_signed(out: &mut State, r: Option<(Monomial, i64)>, coeff: &Scalar) {
    if let Some((m, s)) = r {
        out.add_term(m, if s > 0 { coeff.clone() } else { -coeff.clone() });
    }
}

/// `gen(n) m` in the given sector.
///
/// Creation modes multiply on the left. Annihilation modes act as
/// `sum_y (gen, y) d/d y(-n)`. A split zero mode does both, with the
/// derivative weighted by `(gen, gen) / 2`.
pub fn generator_mode(sector: &SectorSpec, gen: GenId, n: FracIndex, m: &Monomial) -> Result<State> {
    let mut out = State::new();
    let one = Scalar::one();
    match sector.role(gen, n)? {
        ModeRole::Creation => push_signed(&mut out, m.left_mul(Factor::new(gen, n)), &one),
        ModeRole::Annihilation => annihilate(sector, gen, n, m, &one, &mut out),
        ModeRole::Split => {
            push_signed(&mut out, m.left_mul(Factor::new(gen, n)), &one);
            let half = sector.h().pairing(gen, gen) / int(2);
            push_signed(&mut out, m.remove(&Factor::new(gen, n)), &half);
        }
    }
    Ok(out)
}

fn annihilate(sector: &SectorSpec, gen: GenId, n: FracIndex, m: &Monomial, c: &Scalar, out: &mut State) {
    for (y, pairing) in &sector.h().generator(gen).pairing {
        let target = Factor::new(*y, -n);
        if m.contains(&target) {
            push_signed(out, m.remove(&target), &(c * pairing));
        }
    }
}

/// Linear extension of [`generator_mode`].
pub fn generator_mode_state(sector: &SectorSpec, gen: GenId, n: FracIndex, v: &State) -> Result<State> {
    let mut out = State::new();
    for (m, c) in v {
        let r = generator_mode(sector, gen, n, m)?;
        out.add_scaled(&r, c);
    }
    Ok(out)
}

/// Applies a product of modes, rightmost first, to a monomial.
pub fn apply_word(sector: &SectorSpec, word: &[Factor], m: &Monomial) -> Result<State> {
    let mut v = State::basis(m.clone());
    for f in word.iter().rev() {
        v = generator_mode_state(sector, f.gen, f.mode, &v)?;
        if v.is_zero() {
            break;
        }
    }
    Ok(v)
}

/// Super anticommutator `[x(m), y(n)]_+` evaluated on `w`.
pub fn anticommutator(sector: &SectorSpec, x: Factor, y: Factor, w: &Monomial) -> Result<State> {
    let mut a = apply_word(sector, &[x, y], w)?;
    a.add_assign(&apply_word(sector, &[y, x], w)?);
    Ok(a)
}

/// Whether `s` is a multiple of the basis vector `m`, returning the factor.
pub fn coefficient_of(s: &State, m: &Monomial) -> Option<Scalar> {
    if s.is_zero() {
        return Some(Scalar::zero());
    }
    (s.len() == 1).then(|| s.coeff(m)).filter(|c| !c.is_zero())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fock::hspec::HSpec;
    use crate::fock::twist::Twist;

    fn h(p: i64, q: i64) -> FracIndex {
        FracIndex::new(p, q)
    }

    #[test]
    fn clifford_examples() {
        let s = SectorSpec::neveu_schwarz(Arc::new(HSpec::orthonormal(2).unwrap()));
        let a1 = Monomial::single(0, h(-1, 2));
        let a2 = Monomial::single(1, h(-1, 2));
        assert_eq!(generator_mode(&s, 0, h(1, 2), &a1).unwrap(), State::basis(Monomial::vacuum()));
        assert!(generator_mode(&s, 0, h(1, 2), &a2).unwrap().is_zero());
        assert!(generator_mode(&s, 0, h(-1, 2), &a1).unwrap().is_zero());
    }

    #[test]
    fn split_zero_mode_squares_to_one() {
        let hs = Arc::new(HSpec::polarized(1).unwrap());
        let s = SectorSpec::new(hs, Twist::sigma(1)).unwrap();
        let w = Monomial::single(0, h(-1, 1));
        let once = generator_mode(&s, 0, FracIndex::ZERO, &w).unwrap();
        let twice = generator_mode_state(&s, 0, FracIndex::ZERO, &once).unwrap();
        assert_eq!(twice, State::basis(w));
    }

    #[test]
    fn out_of_support_is_an_error() {
        let s = SectorSpec::neveu_schwarz(Arc::new(HSpec::orthonormal(1).unwrap()));
        assert!(generator_mode(&s, 0, FracIndex::ZERO, &Monomial::vacuum()).is_err());
    }
}

//! The bilinear operations defining the twisted Zhu algebra.

use num_traits::Zero;

use crate::error::{Result, VosaError};
use crate::fock::{Monomial, State};
use crate::frac::FracIndex;
use crate::scalar::{binom_small, Scalar};

use super::context::TwistContext;

/// Common `rho` of a state whose monomials share one eigenspace and weight.
fn tag(ctx: &TwistContext, u: &State) -> Result<(FracIndex, FracIndex)> {
    let mut out: Option<(FracIndex, FracIndex)> = None;
    for m in u.keys() {
        let t = (m.weight(), ctx.rho(m));
        match out {
            None => out = Some(t),
            Some(x) if x != t => return Err(VosaError::NonHomogeneous),
            _ => {}
        }
    }
    Ok(out.unwrap_or((FracIndex::ZERO, FracIndex::ZERO)))
}

/// `Res_z (1+z)^{wt u - 1 + delta + rho + n} z^{-(m + delta + 1)} Y(u, z) v`
/// for a monomial `u`; `m = n = 0` is `u o_g v`.
pub fn relation_mono(ctx: &TwistContext, u: &Monomial, v: &Monomial, m: i64, n: i64) -> Result<State> {
    let delta = ctx.delta(u);
    let rho = ctx.rho(u);
    let expo = u.weight() - 1 + delta + rho + n;
    let mut out = State::new();
    let top = (u.weight() + v.weight() - 1).floor();
    let s_max = top + m + delta + 1;
    for s in 0..=s_max.max(-1) {
        let c = binom_small(expo.ratio(), s as u32);
        if c.is_zero() {
            continue;
        }
        let p = ctx.va().product_mono(u, s - m - delta - 1, v)?;
        out.add_scaled(&p, &c);
    }
    Ok(out)
}

pub fn relation(ctx: &TwistContext, u: &State, v: &State, m: i64, n: i64) -> Result<State> {
    tag(ctx, u)?;
    let mut out = State::new();
    for (a, ca) in u {
        for (b, cb) in v {
            out.add_scaled(&relation_mono(ctx, a, b, m, n)?, &(ca * cb));
        }
    }
    Ok(out)
}

/// `u o_g v`.
pub fn circle_g(ctx: &TwistContext, u: &State, v: &State) -> Result<State> {
    relation(ctx, u, v, 0, 0)
}

pub fn star_mono(ctx: &TwistContext, u: &Monomial, v: &Monomial) -> Result<State> {
    if !ctx.rho(u).is_zero() {
        return Ok(State::new());
    }
    star_formula(ctx, u, v)
}

/// `sum_i C(wt u, i) u_{i-1} v` without the eigenspace condition on `u`.
pub fn star_formula(ctx: &TwistContext, u: &Monomial, v: &Monomial) -> Result<State> {
    let mut out = State::new();
    let top = (u.weight() + v.weight() - 1).floor();
    for i in 0..=(top + 1).max(-1) {
        let c = binom_small(u.weight().ratio(), i as u32);
        if c.is_zero() {
            continue;
        }
        out.add_scaled(&ctx.va().product_mono(u, i - 1, v)?, &c);
    }
    Ok(out)
}

/// `u *_g v`; zero unless `u` lies in `V^{0*}`.
pub fn star_g(ctx: &TwistContext, u: &State, v: &State) -> Result<State> {
    tag(ctx, u)?;
    let mut out = State::new();
    for (a, ca) in u {
        for (b, cb) in v {
            out.add_scaled(&star_mono(ctx, a, b)?, &(ca * cb));
        }
    }
    Ok(out)
}

/// `Res_z (1+z)^{e} z^{-1-k} Y(u,z) v = sum_i C(e, i) u_{i-1-k} v`.
pub fn residue(ctx: &TwistContext, u: &State, e: FracIndex, k: i64, v: &State) -> Result<State> {
    let mut out = State::new();
    for (a, ca) in u {
        for (b, cb) in v {
            let top = (a.weight() + b.weight() - 1).floor();
            for i in 0..=(top + 1 + k).max(-1) {
                let c: Scalar = binom_small(e.ratio(), i as u32);
                if c.is_zero() {
                    continue;
                }
                let p = ctx.va().product_mono(a, i - 1 - k, b)?;
                out.add_scaled(&p, &(c * ca * cb));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::VertexAlgebra;
    use crate::scalar::ratio;

    fn gen(_ctx: &TwistContext, i: u16) -> State {
        VertexAlgebra::generator_state(i)
    }

    #[test]
    fn sigma_circle_of_generator_with_vacuum() {
        let ctx = TwistContext::sigma(1).unwrap();
        let r = circle_g(&ctx, &gen(&ctx, 0), &VertexAlgebra::vacuum()).unwrap();
        let mut want = State::basis(Monomial::single(0, FracIndex::new(-3, 2)));
        want.add_term(Monomial::single(0, -FracIndex::HALF), ratio(1, 2));
        assert_eq!(r, want);
    }

    #[test]
    fn vacuum_circle_vacuum_vanishes() {
        // exponent wt 1 - 1 + delta = 0, so only 1_{-2} 1 = 0 contributes
        let ctx = TwistContext::sigma(2).unwrap();
        let one = VertexAlgebra::vacuum();
        assert!(circle_g(&ctx, &one, &one).unwrap().is_zero());
    }

    #[test]
    fn star_examples() {
        let ctx = TwistContext::identity(1).unwrap();
        let a = Monomial::single(0, -FracIndex::HALF);
        assert_eq!(star_formula(&ctx, &a, &a).unwrap(), VertexAlgebra::vacuum().scaled(&ratio(1, 2)));
        let ctx = TwistContext::sigma(1).unwrap();
        let e = gen(&ctx, 0);
        assert_eq!(star_g(&ctx, &e, &VertexAlgebra::vacuum()).unwrap(), e);
        let one = VertexAlgebra::vacuum();
        let v = ctx.va().omega().clone();
        assert_eq!(star_g(&ctx, &one, &v).unwrap(), v);
    }

    #[test]
    fn odd_states_vanish_for_identity() {
        let ctx = TwistContext::identity(1).unwrap();
        let a = gen(&ctx, 0);
        assert!(star_g(&ctx, &a, &VertexAlgebra::vacuum()).unwrap().is_zero());
        assert!(tag(&ctx, &a).unwrap().1 == FracIndex::HALF);
    }
}

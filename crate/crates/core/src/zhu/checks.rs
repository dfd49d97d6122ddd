//! Residue-class identities in `A_g(V)` and axioms of the computed table.

use crate::error::Result;
use crate::fields::verify::CheckReport;
use crate::fock::{Monomial, State};
use crate::frac::FracIndex;
use crate::scalar::sign;

use super::algebra::{Reducer, ZhuAlgebraResult};
use super::context::TwistContext;
use super::ops::{residue, star_g};

/// For `u, v` in `V^{0*}`:
///
/// * `u * v - (-1)^{uv} Res (1+z)^{wt v - 1} Y(v,z) u` lies in `O_g(V)`,
/// * `u * v - (-1)^{uv} v * u - Res (1+z)^{wt u - 1} Y(u,z) v` lies in `O_g(V)`.
pub fn residue_class_pair(ctx: &TwistContext, red: &Reducer, u: &Monomial, v: &Monomial) -> Result<(bool, bool)> {
    let us = State::basis(u.clone());
    let vs = State::basis(v.clone());
    let s = sign(i64::from(u.parity() * v.parity()));
    let uv = star_g(ctx, &us, &vs)?;
    let mut ii = uv.clone();
    ii.add_scaled(&residue(ctx, &vs, v.weight() - 1, 0, &us)?, &-s.clone());
    let mut iii = uv;
    iii.add_scaled(&star_g(ctx, &vs, &us)?, &-s);
    iii.sub_assign(&residue(ctx, &us, u.weight() - 1, -1, &vs)?);
    Ok((red.is_zero_class(&ii)?, red.is_zero_class(&iii)?))
}

/// Runs [`residue_class_pair`] on all basis pairs in `V^{0*}` with
/// `wt u + wt v <= pair_weight`.
pub fn verify_residue_classes(ctx: &TwistContext, red: &Reducer, pair_weight: FracIndex) -> Result<CheckReport> {
    let mut rep = CheckReport::new("residue-classes");
    let basis: Vec<Monomial> = ctx.va().basis(pair_weight).into_iter().filter(|m| ctx.rho(m).is_zero()).collect();
    for u in &basis {
        for v in &basis {
            if u.weight() + v.weight() > pair_weight {
                continue;
            }
            let (a, b) = residue_class_pair(ctx, red, u, v)?;
            let h = ctx.h();
            rep.record(a, || format!("(ii) u={} v={}", u.display(h), v.display(h)));
            rep.record(b, || format!("(iii) u={} v={}", u.display(h), v.display(h)));
        }
    }
    Ok(rep)
}

/// Associativity, two-sided unit and centrality of `omega` on the table.
pub fn verify_table_axioms(res: &ZhuAlgebraResult) -> CheckReport {
    let mut rep = CheckReport::new("zhu-axioms");
    rep.record(res.check_associative(), || "associativity".into());
    rep.record(res.check_unit(), || "unit".into());
    rep.record(res.check_omega_central(), || "omega central".into());
    rep
}

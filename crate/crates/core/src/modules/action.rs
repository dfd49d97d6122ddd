//! The action of `A_g(V)` on `Omega(M)` through zero modes.

use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::fields::verify::CheckReport;
use crate::fock::{Monomial, State};
use crate::frac::FracIndex;
use crate::linalg::{dense_nullspace, mat_mul, Dense};
use crate::scalar::Scalar;
use crate::zhu::{relation_mono, star_mono, TwistContext, ZeroModeRep, ZhuAlgebraResult};

use super::omega::is_identity;

#[derive(Clone, Debug, Serialize)]
pub struct ActionReport {
    pub dim: usize,
    /// `o(a) o(b) = o(a * b)` on basis pairs.
    pub multiplicative: CheckReport,
    /// `o(x) = 0` for sampled `x` in `O_g(V)`.
    pub kills_relations: CheckReport,
    pub unit_acts_as_identity: bool,
    pub commutant_dim: usize,
    pub simple: bool,
}

impl ActionReport {
    pub fn passed(&self) -> bool {
        self.multiplicative.passed() && self.kills_relations.passed() && self.unit_acts_as_identity
    }
}

fn is_zero(m: &Dense) -> bool {
    m.iter().all(|r| r.iter().all(Zero::is_zero))
}

/// Dimension of `{X : X A = A X}` for all the given matrices.
pub fn commutant_dim(mats: &[Dense], n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let mut system: Dense = Vec::new();
    for a in mats {
        for i in 0..n {
            for j in 0..n {
                // (XA - AX)_{ij} = sum_k X_{ik} A_{kj} - A_{ik} X_{kj}
                let mut row = vec![Scalar::zero(); n * n];
                for k in 0..n {
                    row[i * n + k] += &a[k][j];
                    row[k * n + j] -= &a[i][k];
                }
                system.push(row);
            }
        }
    }
    if system.is_empty() {
        return n * n;
    }
    dense_nullspace(&system, n * n).len()
}

/// Checks that `a -> o(a)` on `rep` factors through `A_g(V)` as an algebra
/// map, sampling relations from pairs with `wt u + wt v <= pair_weight`.
pub fn zhu_action_on_omega(
    ctx: &TwistContext,
    res: &ZhuAlgebraResult,
    rep: &dyn ZeroModeRep,
    pair_weight: FracIndex,
) -> Result<ActionReport> {
    let h = ctx.h().clone();
    let basis = res.basis().to_vec();
    let mats: Vec<Dense> = basis.iter().map(|b| rep.o_matrix(&State::basis(b.clone()))).collect::<Result<_>>()?;
    let mut mult = CheckReport::new("o(a)o(b)=o(a*b)");
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let p = star_mono(ctx, a, b)?;
            let lhs = mat_mul(&mats[i], &mats[j]);
            let rhs = rep.o_matrix(&p)?;
            mult.record(lhs == rhs, || format!("a={} b={}", a.display(&h), b.display(&h)));
        }
    }
    let mut kills = CheckReport::new("o(O_g)=0");
    let vb: Vec<Monomial> = ctx.va().basis(pair_weight);
    for u in &vb {
        for v in &vb {
            if u.weight() + v.weight() > pair_weight {
                continue;
            }
            for (m, n) in [(0, 0), (1, 0), (1, 1)] {
                let x = relation_mono(ctx, u, v, m, n)?;
                let ok = is_zero(&rep.o_matrix(&x)?);
                kills.record(ok, || format!("u={} v={} m={m} n={n}", u.display(&h), v.display(&h)));
            }
        }
    }
    let unit = is_identity(&rep.o_matrix(&State::basis(Monomial::vacuum()))?);
    let cd = commutant_dim(&mats, rep.dim());
    Ok(ActionReport {
        dim: rep.dim(),
        multiplicative: mult,
        kills_relations: kills,
        unit_acts_as_identity: unit,
        commutant_dim: cd,
        simple: cd == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{build_sigma_module, OmegaSpace};
    use crate::zhu::{build_algebra, ZhuOptions};

    #[test]
    fn ramond_ground_states_form_the_simple_module() {
        let ctx = TwistContext::sigma(2).unwrap();
        let om = OmegaSpace::compute(build_sigma_module(2).unwrap().remove(0), FracIndex::ZERO).unwrap();
        let res = build_algebra(&ctx, &ZhuOptions::new(FracIndex::new(5, 2)), Some(&om)).unwrap();
        assert!(res.certified);
        let rep = zhu_action_on_omega(&ctx, &res, &om, FracIndex::new(3, 2)).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.simple);
    }
}

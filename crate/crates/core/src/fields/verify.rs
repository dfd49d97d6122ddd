//! Exact checks of the module axioms: commutator formula, Virasoro relations,
//! translation, associativity and skew symmetry.

use serde::Serialize;

use num_traits::Zero;

use crate::error::Result;
use crate::fock::{Monomial, State};
use crate::frac::FracIndex;
use crate::scalar::{binom_small, int, ratio, sign, Scalar};

use super::algebra::VertexAlgebra;
use super::iter::IterField;
use super::module::{BasisKey, ModVec, VertexModule};

/// Outcome of a batch of exact checks.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), ..Default::default() }
    }

    pub fn record(&mut self, ok: bool, context: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(context());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn absorb(&mut self, other: &CheckReport) {
        self.checked += other.checked;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure.clone();
        }
    }
}

/// One sample for the commutator formula: `(u, m, v, n, w)`.
pub type CommutatorSample = (Monomial, FracIndex, Monomial, FracIndex, BasisKey);

fn mono_state(m: &Monomial) -> State {
    State::basis(m.clone())
}

/// `[u_m, v_n] w` against `sum_i C(m, i) (u_i v)_{m+n-i} w`.
pub fn commutator_holds<M: VertexModule>(
    field: &IterField<M>,
    va: &VertexAlgebra,
    s: &CommutatorSample,
) -> Result<bool> {
    let (u, m, v, n, w) = s;
    let wv = field.mode_mono(v, *n, w)?;
    let mut lhs = field.mode(&mono_state(u), *m, &wv)?;
    let wu = field.mode_mono(u, *m, w)?;
    let sgn = sign(i64::from(u.parity() * v.parity()));
    lhs.sub_assign(&field.mode(&mono_state(v), *n, &wu)?.scaled(&sgn));

    let mut rhs = ModVec::new();
    let top = (u.weight() + v.weight() - 1).floor();
    for i in 0..=top {
        let c = binom_small(m.ratio(), i as u32);
        if c.is_zero() {
            continue;
        }
        let uiv = va.product_mono(u, i, v)?;
        if uiv.is_zero() {
            continue;
        }
        rhs.add_scaled(&field.mode_key(&uiv, *m + *n - i, w)?, &c);
    }
    Ok(lhs == rhs)
}

/// Deterministic spread of commutator samples: sources from V up to
/// `max_src`, targets up to degree `max_deg`, indices in a window around
/// the grading bound.
pub fn commutator_samples<M: VertexModule>(
    field: &IterField<M>,
    va: &VertexAlgebra,
    max_src: FracIndex,
    max_deg: FracIndex,
    limit: usize,
) -> Vec<CommutatorSample> {
    let sources: Vec<Monomial> = va.basis(max_src).into_iter().filter(|m| !m.is_vacuum()).collect();
    let targets = field.module().basis(max_deg);
    let mut all = Vec::new();
    for u in &sources {
        for v in &sources {
            for w in &targets {
                let dw = field.module().degree(w);
                for m in index_window(field.alpha(u), u.weight(), dw, 2) {
                    for n in index_window(field.alpha(v), v.weight(), dw, 2) {
                        // keep the result inside the truncation
                        let out = dw + u.weight() + v.weight() - m - n - 2;
                        if out >= FracIndex::ZERO && out <= max_deg {
                            all.push((u.clone(), m, v.clone(), n, w.clone()));
                        }
                    }
                }
            }
        }
    }
    spread(all, limit)
}

/// Indices in class `alpha` from `wt + deg - 1 - depth` up to the grading
/// bound `wt + deg - 1`.
fn index_window(alpha: FracIndex, wt: FracIndex, deg: FracIndex, depth: i64) -> Vec<FracIndex> {
    let top = wt + deg - 1;
    let start = alpha + (top - alpha).floor();
    (0..=depth + 1).map(|k| start - k).collect()
}

/// Evenly spaced subsequence of length at most `limit`.
pub fn spread<T>(all: Vec<T>, limit: usize) -> Vec<T> {
    if all.len() <= limit || limit == 0 {
        return all;
    }
    let step = all.len() as f64 / limit as f64;
    let picks: Vec<usize> = (0..limit).map(|i| (i as f64 * step) as usize).collect();
    all.into_iter().enumerate().filter(|(i, _)| picks.binary_search(i).is_ok()).map(|(_, x)| x).collect()
}

pub fn check_commutator<M: VertexModule>(
    field: &IterField<M>,
    va: &VertexAlgebra,
    samples: &[CommutatorSample],
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("commutator");
    let h = va.h().clone();
    for s in samples {
        let ok = commutator_holds(field, va, s)?;
        rep.record(ok, || {
            format!("u={} m={} v={} n={} w={}", s.0.display(&h), s.1, s.2.display(&h), s.3, s.4.mono.display(&h))
        });
    }
    Ok(rep)
}

/// `[L(m), L(n)] = (m - n) L(m + n) + c/12 (m^3 - m) delta_{m+n,0}` on the
/// basis of the module up to `max_deg`.
pub fn check_virasoro<M: VertexModule>(
    field: &IterField<M>,
    c: &Scalar,
    range: i64,
    max_deg: FracIndex,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("virasoro");
    for w in field.module().basis(max_deg) {
        let wv = ModVec::basis(w.clone());
        for m in -range..=range {
            for n in -range..=range {
                let out = field.module().degree(&w) - m - n;
                if out < FracIndex::ZERO || out > max_deg {
                    continue;
                }
                let mut lhs = field.virasoro(m, &field.virasoro(n, &wv)?)?;
                lhs.sub_assign(&field.virasoro(n, &field.virasoro(m, &wv)?)?);
                let mut rhs = field.virasoro(m + n, &wv)?.scaled(&int(m - n));
                if m + n == 0 {
                    rhs.add_scaled(&wv, &(c * ratio(m * m * m - m, 12)));
                }
                rep.record(lhs == rhs, || format!("m={m} n={n} w={:?}", w.mono));
            }
        }
    }
    Ok(rep)
}

/// `(L(-1) v)_n = -n v_{n-1}` on module basis vectors.
pub fn translate_holds<M: VertexModule>(
    field: &IterField<M>,
    va: &VertexAlgebra,
    v: &Monomial,
    n: FracIndex,
    w: &BasisKey,
) -> Result<bool> {
    let lv = va.virasoro(-1, &mono_state(v))?;
    let lhs = if lv.is_zero() { ModVec::new() } else { field.mode_key(&lv, n, w)? };
    let rhs = field.mode_mono(v, n - 1, w)?.scaled(&(-n.to_scalar()));
    Ok(lhs == rhs)
}

pub fn check_translate<M: VertexModule>(
    field: &IterField<M>,
    va: &VertexAlgebra,
    sources: &[Monomial],
    span: i64,
    max_deg: FracIndex,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("translate");
    for v in sources {
        let a = field.alpha(v);
        for w in field.module().basis(max_deg) {
            for k in -span..=span {
                let n = a + k;
                let ok = translate_holds(field, va, v, n, &w)?;
                rep.record(ok, || format!("v={:?} n={n} w={:?}", v, w.mono));
            }
        }
    }
    Ok(rep)
}

/// Exponent `k + r/T0` with the least `k >= 0` making
/// `z^{k + r/T0} Y(u, z) w` a power series.
pub fn exponent_g<M: VertexModule>(field: &IterField<M>, u: &Monomial, w: &BasisKey) -> FracIndex {
    let a = field.alpha(u);
    let need = field.module().degree(w) + u.weight() - a;
    a + need.ceil().max(0)
}

/// Exponent `m + s/T` with `m` in `wt u + Z`, `m >= 0`, least such that
/// `z^{m + s/T} Y(u, z) w` is a power series.
pub fn exponent_gsigma<M: VertexModule>(field: &IterField<M>, u: &Monomial, w: &BasisKey) -> FracIndex {
    let s = field.module().sector().twist().rho(u);
    let wt = u.weight();
    let need = field.module().degree(w) + wt - s;
    let mut m = wt.frac_part();
    while m < need {
        m = m + 1;
    }
    m + s
}

/// Coefficients `z0^a z2^b`, `0 <= a <= order`, of both sides of the
/// associativity formula with exponent `e`, for output degrees up to
/// `max_out`.
#[allow(clippy::too_many_arguments)]
pub fn associativity_holds<M: VertexModule>(
    field: &IterField<M>,
    va: &VertexAlgebra,
    u: &Monomial,
    v: &Monomial,
    w: &BasisKey,
    e: FracIndex,
    order: i64,
    max_out: i64,
) -> Result<bool> {
    Ok(associativity_defects(field, va, u, v, w, e, order, max_out)?.is_empty())
}

/// Nonzero differences `LHS - RHS` of the associativity coefficients
/// checked by [`associativity_holds`].
#[allow(clippy::too_many_arguments)]
pub fn associativity_defects<M: VertexModule>(
    field: &IterField<M>,
    va: &VertexAlgebra,
    u: &Monomial,
    v: &Monomial,
    w: &BasisKey,
    e: FracIndex,
    order: i64,
    max_out: i64,
) -> Result<Vec<ModVec>> {
    let mut defects = Vec::new();
    let dw = field.module().degree(w);
    let (wu, wv) = (u.weight(), v.weight());
    let us = mono_state(u);
    for a in 0..=order {
        let b0 = e - a - dw - wu - wv;
        for t in 0..=max_out {
            let b = b0 + t;
            // LHS: sum over m with e - m - 1 >= a
            let mut lhs = ModVec::new();
            let m_hi = e - 1 - a;
            let m_lo = e - a - b - 1 - dw - wv;
            let mut m = m_hi;
            while m >= m_lo {
                let em = (e - m - 1).as_int().expect("integral");
                let c = binom_small(num_rational::Ratio::from_integer(em), a as u32);
                let n = e - m - 1 - a - b - 1;
                if !c.is_zero() {
                    let vw = field.mode_mono(v, n, w)?;
                    if !vw.is_zero() {
                        lhs.add_scaled(&field.mode(&us, m, &vw)?, &c);
                    }
                }
                m = m - 1;
            }
            // RHS: sum_i C(e, i) (u_{i-a-1} v)_{e-i-b-1} w
            let mut rhs = ModVec::new();
            let i_hi = (FracIndex::int(a) + wu + wv).floor();
            for i in 0..=i_hi {
                let c = binom_small(e.ratio(), i as u32);
                if c.is_zero() {
                    continue;
                }
                let prod = va.product_mono(u, i - a - 1, v)?;
                if prod.is_zero() {
                    continue;
                }
                rhs.add_scaled(&field.mode_key(&prod, e - i - b - 1, w)?, &c);
            }
            if lhs != rhs {
                lhs.sub_assign(&rhs);
                defects.push(lhs);
            }
        }
    }
    Ok(defects)
}

/// Skew symmetry in V: `u_n v = (-1)^{|u||v|} sum_j (-1)^{n+j+1}/j! L(-1)^j v_{n+j} u`.
pub fn skew_symmetry_holds(va: &VertexAlgebra, u: &Monomial, v: &Monomial, n: i64) -> Result<bool> {
    let lhs = va.product_mono(u, n, v)?;
    let mut rhs = State::new();
    let top = (u.weight() + v.weight() - 1).floor();
    let sgn = sign(i64::from(u.parity() * v.parity()));
    let mut fact = Scalar::from_integer(1.into());
    for j in 0..=(top - n).max(0) {
        if j > 0 {
            fact *= int(j);
        }
        let mut t = va.product_mono(v, n + j, u)?;
        for _ in 0..j {
            if t.is_zero() {
                break;
            }
            t = va.virasoro(-1, &t)?;
        }
        rhs.add_scaled(&t, &(&sgn * sign(n + j + 1) / &fact));
    }
    Ok(lhs == rhs)
}

pub fn check_skew_symmetry(va: &VertexAlgebra, max_weight: FracIndex) -> Result<CheckReport> {
    let mut rep = CheckReport::new("skew-symmetry");
    let basis = va.basis(max_weight);
    for u in &basis {
        for v in &basis {
            let top = (u.weight() + v.weight() - 1).floor();
            for n in -2..=top {
                let ok = skew_symmetry_holds(va, u, v, n)?;
                rep.record(ok, || format!("u={u:?} v={v:?} n={n}"));
            }
        }
    }
    Ok(rep)
}

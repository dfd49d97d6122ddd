//! Fields of arbitrary states on a twisted module, generated from the
//! generator fields by the iterate formula of the twisted Jacobi identity.
//!
//! For `v = x(mu) rest` with `u = x(-1/2)1`, `p = mu - 1/2` and `u` of mode
//! class `a`:
//!
//! ```text
//! (u_p rest)_q w = sum_i (-1)^i C(p,i) u_{a+p-i} rest_{q-a+i} w
//!                - (-1)^{p + |rest|} sum_i (-1)^i C(p,i) rest_{p+q-a-i} u_{a+i} w
//!                - sum_{i>=1} C(a,i) (u_{p+i} rest)_{q-i} w
//! ```
//!
//! Every sum is finite by the grading bound, and the recursion strictly
//! decreases either the number of factors or the weight of the source.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Result, VosaError};
use crate::fock::{generator_mode, Monomial, SectorSpec, State};
use crate::frac::FracIndex;
use crate::scalar::{binom_small, sign, Scalar};

use super::module::{BasisKey, ModVec, VertexModule};

type MemoKey = (Monomial, FracIndex, BasisKey);

/// Conformal vector `1/2 sum_ij (G^-1)_ij x_i(-3/2) x_j(-1/2) 1`.
pub fn conformal_vector(vsector: &SectorSpec) -> State {
    let mut omega = State::new();
    let half = FracIndex::HALF;
    for (i, j, c) in vsector.h().casimir() {
        let inner = Monomial::single(j, -half);
        let s = generator_mode(vsector, i, FracIndex::new(-3, 2), &inner).expect("creation modes are in support");
        omega.add_scaled(&s, &(c / Scalar::from_integer(2.into())));
    }
    omega
}

/// Weight of a homogeneous state.
pub fn homogeneous_weight(s: &State) -> Result<FracIndex> {
    let mut w = None;
    for m in s.keys() {
        let mw = m.weight();
        match w {
            None => w = Some(mw),
            Some(x) if x != mw => return Err(VosaError::NonHomogeneous),
            _ => {}
        }
    }
    Ok(w.unwrap_or(FracIndex::ZERO))
}

/// Field engine for one module.
pub struct IterField<M> {
    module: M,
    vsector: SectorSpec,
    omega: State,
    memo: RefCell<HashMap<MemoKey, ModVec>>,
}

impl<M: VertexModule> IterField<M> {
    pub fn new(module: M) -> Self {
        let vsector = SectorSpec::neveu_schwarz(module.sector().h().clone());
        let omega = conformal_vector(&vsector);
        IterField { module, vsector, omega, memo: RefCell::new(HashMap::new()) }
    }

    pub fn module(&self) -> &M {
        &self.module
    }

    /// The sector of V itself.
    pub fn vsector(&self) -> &SectorSpec {
        &self.vsector
    }

    pub fn omega(&self) -> &State {
        &self.omega
    }

    pub fn memo_len(&self) -> usize {
        self.memo.borrow().len()
    }

    /// Mode class of the field of `v` on this module.
    pub fn alpha(&self, v: &Monomial) -> FracIndex {
        self.module.sector().twist().alpha(v)
    }

    pub fn check_class(&self, v: &Monomial, q: FracIndex) -> Result<()> {
        let a = self.alpha(v);
        if (q - a).is_integer() {
            Ok(())
        } else {
            Err(VosaError::IndexClass { index: q, class: a })
        }
    }

    /// `v_q w` for a monomial `v` of V and a basis vector `w`.
    pub fn mode_mono(&self, v: &Monomial, q: FracIndex, w: &BasisKey) -> Result<ModVec> {
        if v.is_vacuum() {
            return Ok(if q == FracIndex::int(-1) { ModVec::basis(w.clone()) } else { ModVec::new() });
        }
        self.check_class(v, q)?;
        if self.module.degree(w) + v.weight() - q - 1 < FracIndex::ZERO {
            return Ok(ModVec::new());
        }
        let key = (v.clone(), q, w.clone());
        if let Some(r) = self.memo.borrow().get(&key) {
            return Ok(r.clone());
        }
        let r = self.expand(v, q, w)?;
        self.memo.borrow_mut().insert(key, r.clone());
        Ok(r)
    }

    fn expand(&self, v: &Monomial, q: FracIndex, w: &BasisKey) -> Result<ModVec> {
        let half = FracIndex::HALF;
        let (x, rest) = v.split_first().expect("nonvacuum");
        if rest.is_vacuum() && x.mode == -half {
            return self.module.generator_mode(x.gen, q + half, w);
        }
        let p = x.mode - half;
        let pr = p.ratio();
        let pi = p.as_int().expect("modes of V lie in 1/2 + Z");
        let a = self.module.sector().twist().theta(x.gen);
        let deg_w = self.module.degree(w);
        let wt_rest = rest.weight();
        let mut out = ModVec::new();

        let i_max = (deg_w + wt_rest - q + a - 1).floor();
        for i in 0..=i_max {
            let inner = self.mode_mono(&rest, q - a + i, w)?;
            if inner.is_zero() {
                continue;
            }
            let c = sign(i) * binom_small(pr, i as u32);
            if c.is_zero() {
                continue;
            }
            let outer = self.module.generator_mode_vec(x.gen, a + p - i + half, &inner)?;
            out.add_scaled(&outer, &c);
        }

        let j_max = (deg_w - half - a).floor();
        let s0 = -sign(i64::from(rest.parity()) + pi);
        for i in 0..=j_max {
            let c = &s0 * sign(i) * binom_small(pr, i as u32);
            if c.is_zero() {
                continue;
            }
            let uw = self.module.generator_mode(x.gen, a + i + half, w)?;
            for (k, ck) in &uw {
                let r = self.mode_mono(&rest, p + q - a - i, k)?;
                out.add_scaled(&r, &(&c * ck));
            }
        }

        if !a.is_zero() {
            let k_max = (wt_rest - half - p).floor();
            for i in 1..=k_max {
                let c = -binom_small(a.ratio(), i as u32);
                if c.is_zero() {
                    continue;
                }
                let s = generator_mode(&self.vsector, x.gen, p + i + half, &rest)?;
                for (m, cm) in &s {
                    let r = self.mode_mono(m, q - i, w)?;
                    out.add_scaled(&r, &(&c * cm));
                }
            }
        }
        Ok(out)
    }

    /// `v_q w`, linear in both arguments. Every monomial of `v` must have the
    /// mode class of `q`.
    pub fn mode(&self, v: &State, q: FracIndex, w: &ModVec) -> Result<ModVec> {
        let mut out = ModVec::new();
        for (m, c) in v {
            for (k, d) in w {
                let r = self.mode_mono(m, q, k)?;
                out.add_scaled(&r, &(c * d));
            }
        }
        Ok(out)
    }

    pub fn mode_key(&self, v: &State, q: FracIndex, w: &BasisKey) -> Result<ModVec> {
        let mut out = ModVec::new();
        for (m, c) in v {
            out.add_scaled(&self.mode_mono(m, q, w)?, c);
        }
        Ok(out)
    }

    /// `L(n) w = omega_{n+1} w`.
    pub fn virasoro(&self, n: i64, w: &ModVec) -> Result<ModVec> {
        let omega = self.omega.clone();
        self.mode(&omega, FracIndex::int(n + 1), w)
    }

    /// The zero-mode operator `o(v) = v_{wt v - 1}` of a homogeneous state,
    /// or zero when `v` has no field mode of that index.
    pub fn zero_mode(&self, v: &State, w: &ModVec) -> Result<ModVec> {
        let mut out = ModVec::new();
        for (m, c) in v {
            let q = m.weight() - 1;
            if !(q - self.alpha(m)).is_integer() {
                continue;
            }
            for (k, d) in w {
                out.add_scaled(&self.mode_mono(m, q, k)?, &(c * d));
            }
        }
        Ok(out)
    }

    pub fn clear_memo(&self) {
        self.memo.borrow_mut().clear();
    }
}

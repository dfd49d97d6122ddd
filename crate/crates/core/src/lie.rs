//! The Lie superalgebra `V[g]` of twisted modes `a(q)`.
//!
//! Elements are finite combinations of symbols `a(q)` with `a` a monomial
//! of V. Equality in `V[g]` is only tested through actions on modules; the
//! quotient by the derivative relations is never materialized.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Result, VosaError};
use crate::fields::verify::CheckReport;
use crate::fields::{IterField, ModVec, VertexModule};
use crate::fock::{Monomial, State};
use crate::frac::FracIndex;
use crate::scalar::{binom_small, sign, Scalar};
use crate::sparse::SparseVec;
use crate::zhu::{star_g, TwistContext, ZhuAlgebraResult};

/// The mode `base(index)`, i.e. the image of `t^index ⊗ base`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeSymbol {
    pub base: Monomial,
    pub index: FracIndex,
}

impl ModeSymbol {
    pub fn new(base: Monomial, index: FracIndex) -> Self {
        ModeSymbol { base, index }
    }

    /// `wt a - q - 1`.
    pub fn degree(&self) -> FracIndex {
        self.base.weight() - self.index - 1
    }

    pub fn parity(&self) -> u8 {
        self.base.parity()
    }

    /// `o(a) = a(wt a - 1)`.
    pub fn zero_mode(a: &Monomial) -> Self {
        ModeSymbol { base: a.clone(), index: a.weight() - 1 }
    }
}

/// Linear combination of mode symbols.
pub type ModeElement = SparseVec<ModeSymbol>;

pub fn symbol(base: &Monomial, index: FracIndex) -> ModeElement {
    ModeElement::basis(ModeSymbol::new(base.clone(), index))
}

/// Sign of the degree: positive, zero or negative part of the triangular
/// decomposition.
pub fn triangular_part(x: &ModeSymbol) -> Ordering {
    x.degree().cmp(&FracIndex::ZERO)
}

/// Splits an element into its positive, degree-zero and negative parts.
pub fn triangular_split(x: &ModeElement) -> (ModeElement, ModeElement, ModeElement) {
    let pick = |o: Ordering| x.filter(|s| triangular_part(s) == o);
    (pick(Ordering::Greater), pick(Ordering::Equal), pick(Ordering::Less))
}

/// `[a(p), b(q)] = sum_{i >= 0} C(p, i) (a_i b)(p + q - i)`.
pub fn bracket_symbols(ctx: &TwistContext, x: &ModeSymbol, y: &ModeSymbol) -> Result<ModeElement> {
    let tw = ctx.twist();
    for s in [x, y] {
        let a = tw.alpha(&s.base);
        if !(s.index - a).is_integer() {
            return Err(VosaError::Inconsistent(format!("mode index {} not in class {}", s.index, a)));
        }
    }
    let mut out = ModeElement::new();
    let top = (x.base.weight() + y.base.weight() - 1).floor();
    for i in 0..=top {
        let c = binom_small(x.index.ratio(), i as u32);
        if c.is_zero() {
            continue;
        }
        let prod = ctx.va().product_mono(&x.base, i, &y.base)?;
        let q = x.index + y.index - i;
        for (m, cm) in &prod {
            out.add_term(ModeSymbol::new(m.clone(), q), &c * cm);
        }
    }
    Ok(out)
}

/// Bilinear extension of [`bracket_symbols`].
pub fn bracket(ctx: &TwistContext, x: &ModeElement, y: &ModeElement) -> Result<ModeElement> {
    let mut out = ModeElement::new();
    for (a, ca) in x {
        for (b, cb) in y {
            out.add_scaled(&bracket_symbols(ctx, a, b)?, &(ca * cb));
        }
    }
    Ok(out)
}

/// Action of an element on a module vector.
pub fn act<M: VertexModule>(field: &IterField<M>, x: &ModeElement, w: &ModVec) -> Result<ModVec> {
    let mut out = ModVec::new();
    for (s, c) in x {
        let r = field.mode(&State::basis(s.base.clone()), s.index, w)?;
        out.add_scaled(&r, c);
    }
    Ok(out)
}

/// Graded Jacobi identity for one triple, tested by action on `ws`.
/// Returns `None` when all three double brackets vanish identically.
pub fn jacobi_holds<M: VertexModule>(
    ctx: &TwistContext,
    field: &IterField<M>,
    x: &ModeSymbol,
    y: &ModeSymbol,
    z: &ModeSymbol,
    ws: &[ModVec],
) -> Result<Option<bool>> {
    let (px, py, pz) = (i64::from(x.parity()), i64::from(y.parity()), i64::from(z.parity()));
    let e = |s: &ModeSymbol| ModeElement::basis(s.clone());
    let terms = [
        (bracket(ctx, &e(x), &bracket_symbols(ctx, y, z)?)?, sign(px * pz)),
        (bracket(ctx, &e(y), &bracket_symbols(ctx, z, x)?)?, sign(py * px)),
        (bracket(ctx, &e(z), &bracket_symbols(ctx, x, y)?)?, sign(pz * py)),
    ];
    if terms.iter().all(|(t, _)| t.is_zero()) {
        return Ok(None);
    }
    let mut total = ModeElement::new();
    for (t, s) in &terms {
        total.add_scaled(t, s);
    }
    for w in ws {
        if !act(field, &total, w)?.is_zero() {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// `[x, y]` acts as the super commutator of the actions of `x` and `y`.
pub fn representation_holds<M: VertexModule>(
    ctx: &TwistContext,
    field: &IterField<M>,
    x: &ModeSymbol,
    y: &ModeSymbol,
    w: &ModVec,
) -> Result<bool> {
    let ex = ModeElement::basis(x.clone());
    let ey = ModeElement::basis(y.clone());
    let mut lhs = act(field, &ex, &act(field, &ey, w)?)?;
    let s = sign(i64::from(x.parity() * y.parity()));
    lhs.add_scaled(&act(field, &ey, &act(field, &ex, w)?)?, &-s);
    Ok(lhs == act(field, &bracket_symbols(ctx, x, y)?, w)?)
}

/// Mode symbols with base weight `<= max_weight` and `|index| <= max_index`
/// whose indices are in the twist class of the module.
pub fn sample_symbols(ctx: &TwistContext, max_weight: FracIndex, max_index: FracIndex) -> Vec<ModeSymbol> {
    let mut out = Vec::new();
    for a in ctx.va().basis(max_weight) {
        if a.is_vacuum() {
            continue;
        }
        let cls = ctx.twist().alpha(&a);
        let mut q = cls + (-max_index - cls).ceil();
        while q <= max_index {
            out.push(ModeSymbol::new(a.clone(), q));
            q = q + 1;
        }
    }
    out
}

/// Super Jacobi on a deterministic spread of triples, plus additivity of
/// degrees under the bracket.
pub fn check_jacobi<M: VertexModule>(
    ctx: &TwistContext,
    field: &IterField<M>,
    symbols: &[ModeSymbol],
    ws: &[ModVec],
    limit: usize,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("super-jacobi");
    let n = symbols.len();
    let total = n * n * n;
    if total == 0 {
        return Ok(rep);
    }
    // walk every triple once in a scattered order
    let mut step = 7919 % total;
    while step == 0 || num_integer::gcd(step, total) != 1 {
        step += 1;
    }
    let h = ctx.h().clone();
    let mut t = 0;
    for _ in 0..total {
        if rep.checked >= limit {
            break;
        }
        t = (t + step) % total;
        let (i, j, k) = (t / (n * n), (t / n) % n, t % n);
        let (x, y, z) = (&symbols[i], &symbols[j], &symbols[k]);
        let Some(ok) = jacobi_holds(ctx, field, x, y, z, ws)? else {
            continue;
        };
        rep.record(ok, || {
            format!(
                "{}({}) {}({}) {}({})",
                x.base.display(&h),
                x.index,
                y.base.display(&h),
                y.index,
                z.base.display(&h),
                z.index
            )
        });
    }
    Ok(rep)
}

/// `deg [x, y] = deg x + deg y` for all pairs from `symbols`.
pub fn check_degrees(ctx: &TwistContext, symbols: &[ModeSymbol]) -> Result<CheckReport> {
    let mut rep = CheckReport::new("bracket-degree");
    for x in symbols {
        for y in symbols {
            let b = bracket_symbols(ctx, x, y)?;
            let want = x.degree() + y.degree();
            rep.record(b.keys().all(|s| s.degree() == want), || format!("{:?} {:?}", x.index, y.index));
        }
    }
    Ok(rep)
}

/// `[omega(0), a(q)]` acts as `-q a(q-1)`, and `1(-1)` is central.
pub fn check_mode_identities<M: VertexModule>(
    ctx: &TwistContext,
    field: &IterField<M>,
    symbols: &[ModeSymbol],
    ws: &[ModVec],
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("mode-identities");
    let one = ModeSymbol::new(Monomial::vacuum(), FracIndex::int(-1));
    let omega = ctx.va().omega().clone();
    for x in symbols {
        rep.record(bracket_symbols(ctx, &one, x)?.is_zero(), || format!("[1(-1), {:?}]", x.index));
        let mut lhs = ModeElement::new();
        for (m, c) in &omega {
            lhs.add_scaled(&bracket_symbols(ctx, &ModeSymbol::new(m.clone(), FracIndex::ZERO), x)?, c);
        }
        let rhs = symbol(&x.base, x.index - 1).scaled(&-x.index.to_scalar());
        for w in ws {
            let ok = act(field, &lhs, w)? == act(field, &rhs, w)?;
            rep.record(ok, || format!("[omega(0), a({})]", x.index));
        }
    }
    Ok(rep)
}

/// `o(L(-1) a + L(0) a)` acts as zero.
pub fn check_zero_mode_kernel<M: VertexModule>(
    ctx: &TwistContext,
    field: &IterField<M>,
    max_weight: FracIndex,
    ws: &[ModVec],
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("o((L(-1)+L(0))a)=0");
    let va = ctx.va();
    for a in va.basis(max_weight) {
        if !ctx.rho(&a).is_zero() {
            continue;
        }
        let s = State::basis(a.clone());
        let mut x = va.virasoro(-1, &s)?;
        x.add_assign(&va.virasoro(0, &s)?);
        for w in ws {
            let ok = field.zero_mode(&x, w)?.is_zero();
            rep.record(ok, || a.display(ctx.h()));
        }
    }
    Ok(rep)
}

/// Result of [`verify_hom_to_zhu`].
#[derive(Clone, Debug, serde::Serialize)]
pub struct HomReport {
    pub brackets: CheckReport,
    pub surjective: bool,
}

/// `[o(a), o(b)] -> [a]*[b] - (-1)^{ab} [b]*[a]` on all basis pairs, and
/// every quotient basis element is the class of a zero mode.
pub fn verify_hom_to_zhu(ctx: &TwistContext, res: &ZhuAlgebraResult) -> Result<HomReport> {
    let mut rep = CheckReport::new("bracket-hom");
    let basis = res.basis().to_vec();
    let h = ctx.h().clone();
    for a in &basis {
        for b in &basis {
            let br = bracket_symbols(ctx, &ModeSymbol::zero_mode(a), &ModeSymbol::zero_mode(b))?;
            // every term has degree 0, so it is o(c) for its base c
            let mut lhs_state = State::new();
            for (s, c) in &br {
                debug_assert!(s.degree().is_zero());
                lhs_state.add_term(s.base.clone(), c.clone());
            }
            let lhs = res.reducer.reduce(&lhs_state)?;
            let ab = star_g(ctx, &State::basis(a.clone()), &State::basis(b.clone()))?;
            let ba = star_g(ctx, &State::basis(b.clone()), &State::basis(a.clone()))?;
            let mut rhs = res.reducer.reduce(&ab)?;
            let sg = sign(i64::from(a.parity() * b.parity()));
            rhs.add_scaled(&res.reducer.reduce(&ba)?, &-sg);
            rep.record(lhs == rhs, || format!("a={} b={}", a.display(&h), b.display(&h)));
        }
    }
    let surjective = basis.iter().enumerate().all(|(i, b)| {
        res.reducer
            .reduce(&State::basis(b.clone()))
            .map(|x| crate::zhu::algebra::is_basis_vector(&x, i))
            .unwrap_or(false)
    });
    Ok(HomReport { brackets: rep, surjective })
}

/// Collects the bracket of symbols by degree, for display.
pub fn by_degree(x: &ModeElement) -> BTreeMap<FracIndex, ModeElement> {
    let mut out: BTreeMap<FracIndex, ModeElement> = BTreeMap::new();
    for (s, c) in x {
        out.entry(s.degree()).or_default().add_term(s.clone(), c.clone());
    }
    out
}

/// Convenience: the scalar `c` with `x = c * 1(-1)`, if `x` is central of
/// that form.
pub fn vacuum_coefficient(x: &ModeElement) -> Option<Scalar> {
    let one = ModeSymbol::new(Monomial::vacuum(), FracIndex::int(-1));
    if x.keys().all(|s| *s == one) {
        Some(x.coeff(&one))
    } else {
        None
    }
}

use std::sync::Arc;

use proptest::prelude::*;

use num_traits::{One, Zero};
use vosa_core::fields::{IterField, ModVec, VertexModule};
use vosa_core::fock::{enumerate_basis, graded_dims, normalize, Factor, HSpec, SectorSpec};
use vosa_core::lie::{act, bracket_symbols, sample_symbols, ModeElement};
use vosa_core::linalg::{dense_rank, Dense};
use vosa_core::modules::build_sigma_module;
use vosa_core::scalar::{binom_small, gen_binomial, int, ratio, sign, Scalar};
use vosa_core::zhu::TwistContext;
use vosa_core::FracIndex;

fn factor() -> impl Strategy<Value = Factor> {
    (0u16..3, 0i64..4).prop_map(|(g, k)| Factor::new(g, FracIndex::new(-2 * k - 1, 2)))
}

/// Parity of a permutation by cycle counting.
fn perm_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// Coefficients of `prod_{k>=1} (1 + q^{k-1/2})^l` in powers of `q^{1/2}`.
fn strict_partition_series(l: usize, max_half: usize) -> Vec<usize> {
    let mut c = vec![0usize; max_half + 1];
    c[0] = 1;
    for _ in 0..l {
        let mut k = 1;
        while k <= max_half {
            for i in (k..=max_half).rev() {
                c[i] += c[i - k];
            }
            k += 2;
        }
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_sign_and_idempotence(fs in proptest::collection::vec(factor(), 0..=6)) {
        match normalize(&fs) {
            None => {
                let mut v = fs.clone();
                v.sort();
                prop_assert!(v.windows(2).any(|w| w[0] == w[1]));
            }
            Some((m, s)) => {
                let mut idx: Vec<usize> = (0..fs.len()).collect();
                idx.sort_by(|&a, &b| fs[a].cmp(&fs[b]));
                prop_assert_eq!(s, perm_sign(&idx));
                let (m2, s2) = normalize(m.factors()).unwrap();
                prop_assert_eq!(&m2, &m);
                prop_assert_eq!(s2, 1);
            }
        }
    }

    #[test]
    fn rank_is_invariant_under_row_operations(
        rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 4), 1..6),
        scales in proptest::collection::vec(prop_oneof![-5i64..-1, 1i64..6], 6),
        seed in 0usize..720,
    ) {
        let m: Dense = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        let r = dense_rank(&m);
        let mut perm: Vec<usize> = (0..m.len()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            perm.swap(i, s % (i + 1));
            s /= i + 1;
        }
        let m2: Dense = perm
            .iter()
            .enumerate()
            .map(|(i, &p)| m[p].iter().map(|x| x * ratio(scales[i], 1)).collect())
            .collect();
        prop_assert_eq!(dense_rank(&m2), r);
        let t: Dense = (0..4).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect();
        prop_assert_eq!(dense_rank(&t), r);
    }

    #[test]
    fn pascal_recurrence(p in -20i64..=20, q in prop_oneof![Just(1i64), Just(2), Just(4)], s in 1u32..=12) {
        let a = ratio(p, q);
        let lhs = gen_binomial(&(a.clone() + Scalar::one()), s);
        let rhs = gen_binomial(&a, s) + gen_binomial(&a, s - 1);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(binom_small(num_rational::Ratio::new(p, q), s), gen_binomial(&a, s));
    }

    #[test]
    fn binomial_vanishes_past_nonnegative_integers(n in 0i64..=12, extra in 1u32..=6) {
        let s = n as u32 + extra;
        prop_assert!(gen_binomial(&int(n), s).is_zero());
        prop_assert_eq!(gen_binomial(&int(n), n as u32), Scalar::one());
    }

    #[test]
    fn bracket_is_super_skew(i in 0usize..200, j in 0usize..200) {
        let ctx = TwistContext::sigma(2).unwrap();
        let syms = sample_symbols(&ctx, FracIndex::ONE, FracIndex::new(3, 2));
        let x = &syms[i % syms.len()];
        let y = &syms[j % syms.len()];
        let m = build_sigma_module(2).unwrap().remove(0);
        let field = IterField::new(m);
        let xy = bracket_symbols(&ctx, x, y).unwrap();
        let yx = bracket_symbols(&ctx, y, x).unwrap();
        let mut total = ModeElement::new();
        total.add_assign(&xy);
        total.add_scaled(&yx, &sign(i64::from(x.parity() * y.parity())));
        for k in field.module().basis(FracIndex::ONE) {
            prop_assert!(act(&field, &total, &ModVec::basis(k)).unwrap().is_zero());
        }
    }
}

#[test]
fn graded_dims_are_strict_partition_counts() {
    for l in 1..=4 {
        let h = Arc::new(HSpec::orthonormal(l).unwrap());
        let sector = SectorSpec::neveu_schwarz(h);
        let dims = graded_dims(&enumerate_basis(&sector, FracIndex::int(6)));
        let want = strict_partition_series(l, 12);
        for (k, &w) in want.iter().enumerate() {
            let got = dims.get(&FracIndex::new(k as i64, 2)).copied().unwrap_or(0);
            assert_eq!(got, w, "l={l} weight {k}/2");
        }
    }
}

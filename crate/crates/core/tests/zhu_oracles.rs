//! Twisted Zhu algebras of the free fermion theory compared against the
//! classification of their twisted modules.

use vosa_core::fock::Monomial;
use vosa_core::modules::{build_tau_module, zhu_action_on_omega, DirectSum, OmegaSpace, TauTable};
use vosa_core::zhu::{
    build_algebra, center_and_idempotents, verify_residue_classes, verify_table_axioms, TwistContext, ZeroModeRep,
    ZhuOptions,
};
use vosa_core::FracIndex;

fn half(n: i64) -> FracIndex {
    FracIndex::new(n, 2)
}

#[test]
fn residue_classes_on_untwisted_l2() {
    let ctx = TwistContext::identity(2).unwrap();
    let res = build_algebra(&ctx, &ZhuOptions::new(FracIndex::int(3)), None).unwrap();
    let rep = verify_residue_classes(&ctx, &res.reducer, FracIndex::int(3)).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert!(rep.checked >= 20);
}

#[test]
fn residue_classes_on_sigma_l2() {
    let ctx = TwistContext::sigma(2).unwrap();
    let res = build_algebra(&ctx, &ZhuOptions::new(half(5)), None).unwrap();
    let rep = verify_residue_classes(&ctx, &res.reducer, half(5)).unwrap();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn odd_states_vanish_without_twist() {
    for l in 1..=3 {
        let ctx = TwistContext::identity(l).unwrap();
        let res = build_algebra(&ctx, &ZhuOptions::new(FracIndex::int(2)), None).unwrap();
        for m in ctx.va().basis(half(3)) {
            if m.parity() == 1 {
                assert!(res.reducer.is_zero_class(&vosa_core::fock::State::basis(m)).unwrap());
            }
        }
        assert_eq!(res.dim(), 1);
        assert_eq!(res.basis(), &[Monomial::vacuum()]);
    }
}

#[test]
fn swap_pair_tau() {
    let table = TauTable::swap_pair();
    assert_eq!(table.l0(), 1);
    let (h, twist) = table.realize().unwrap();
    let mods = build_tau_module(h.clone(), twist.clone()).unwrap();
    assert_eq!(mods.len(), 2);
    let oms: Vec<_> = mods.into_iter().map(|m| OmegaSpace::compute(m, FracIndex::ONE).unwrap()).collect();
    for om in &oms {
        assert_eq!(om.dim(), 1);
        assert!(om.equals_degree_zero());
    }
    let sum = DirectSum(oms.iter().map(|o| o as &dyn ZeroModeRep).collect());
    let ctx = TwistContext::new(h, twist).unwrap();
    let res = build_algebra(&ctx, &ZhuOptions::new(half(5)), Some(&sum)).unwrap();
    assert_eq!(res.dim(), 2);
    assert!(res.certified);
    let st = center_and_idempotents(&res);
    assert_eq!(st.blocks, vec![1, 1]);
    assert!(verify_table_axioms(&res).passed());
    for om in &oms {
        let rep = zhu_action_on_omega(&ctx, &res, om, half(3)).unwrap();
        assert!(rep.passed() && rep.simple, "{rep:?}");
    }
}

#[test]
fn minus_one_tau_reproduces_sigma() {
    let (h, twist) = TauTable::minus_one(2).realize().unwrap();
    let ctx = TwistContext::new(h, twist).unwrap();
    let res = build_algebra(&ctx, &ZhuOptions::new(half(5)), None).unwrap();
    assert_eq!(res.dim(), 4);
    assert_eq!(center_and_idempotents(&res).blocks, vec![2]);
}

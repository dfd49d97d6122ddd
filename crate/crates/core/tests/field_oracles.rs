//! Field modes compared against an independent Wick expansion, plus the
//! module axioms on V and on twisted modules.

use std::sync::Arc;

use num_traits::Zero;
use vosa_core::fields::verify::{
    associativity_holds, check_commutator, check_skew_symmetry, check_translate, check_virasoro, commutator_samples,
    exponent_g, exponent_gsigma,
};
use vosa_core::fields::{BasisKey, FockModule, IterField, ModVec, VertexAlgebra, VertexModule};
use vosa_core::fock::space::apply_word;
use vosa_core::fock::{enumerate_basis, Factor, HSpec, Monomial, SectorSpec, State, Twist};
use vosa_core::scalar::{binom_small, int, ratio, Scalar};
use vosa_core::FracIndex;

/// `v_q w` on V computed as the normal ordered product of the divided
/// derivatives of the generator fields.
fn wick_mode(sector: &SectorSpec, v: &Monomial, q: FracIndex, w: &Monomial) -> State {
    if v.is_vacuum() {
        return if q == FracIndex::int(-1) { State::basis(w.clone()) } else { State::new() };
    }
    let fs = v.factors();
    let k = fs.len();
    let ns: Vec<i64> = fs.iter().map(|f| (-f.mode - FracIndex::HALF).as_int().unwrap()).collect();
    let total = q + 1 - fs.iter().fold(FracIndex::ZERO, |acc, f| acc - f.mode);
    let d = w.weight();
    let lo = total - d * (k as i64 - 1) - FracIndex::HALF;
    let mut out = State::new();
    let mut modes = vec![FracIndex::ZERO; k];
    fn rec(
        i: usize,
        remaining: FracIndex,
        lo: FracIndex,
        d: FracIndex,
        fs: &[Factor],
        ns: &[i64],
        modes: &mut Vec<FracIndex>,
        sector: &SectorSpec,
        w: &Monomial,
        out: &mut State,
    ) {
        let k = fs.len();
        if i + 1 == k {
            let m = remaining;
            if m > d + FracIndex::HALF || m < lo {
                return;
            }
            modes[i] = m;
            emit(fs, ns, modes, sector, w, out);
            return;
        }
        let mut m = FracIndex::HALF + (lo - FracIndex::HALF).ceil();
        while m <= d {
            modes[i] = m;
            rec(i + 1, remaining - m, lo, d, fs, ns, modes, sector, w, out);
            m = m + 1;
        }
    }
    fn emit(fs: &[Factor], ns: &[i64], modes: &[FracIndex], sector: &SectorSpec, w: &Monomial, out: &mut State) {
        let mut coeff = Scalar::from_integer(1.into());
        for (i, f) in fs.iter().enumerate() {
            let c = binom_small((-modes[i] - FracIndex::HALF).ratio(), ns[i] as u32);
            coeff *= c;
            let _ = f;
        }
        if coeff.is_zero() {
            return;
        }
        // creators left, annihilators right, stable; sign of the shuffle
        let idx: Vec<usize> = (0..fs.len()).collect();
        let cre: Vec<usize> = idx.iter().copied().filter(|i| modes[*i] < FracIndex::ZERO).collect();
        let ann: Vec<usize> = idx.iter().copied().filter(|i| modes[*i] > FracIndex::ZERO).collect();
        let order: Vec<usize> = cre.iter().chain(ann.iter()).copied().collect();
        let mut inv = 0;
        for a in 0..order.len() {
            for b in a + 1..order.len() {
                if order[a] > order[b] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 1 {
            coeff = -coeff;
        }
        let word: Vec<Factor> = order.iter().map(|i| Factor::new(fs[*i].gen, modes[*i])).collect();
        let r = apply_word(sector, &word, w).unwrap();
        out.add_scaled(&r, &coeff);
    }
    rec(0, total, lo, d, fs, &ns, &mut modes, sector, w, &mut out);
    out
}

fn ns_sector(h: &Arc<HSpec>) -> SectorSpec {
    SectorSpec::neveu_schwarz(h.clone())
}

fn to_state(v: &ModVec) -> State {
    v.map_keys(|k| k.mono.clone())
}

#[test]
fn iterate_formula_matches_wick_expansion() {
    for h in [HSpec::orthonormal(2).unwrap(), HSpec::polarized(3).unwrap()] {
        let h = Arc::new(h);
        let sector = ns_sector(&h);
        let va = VertexAlgebra::new(h.clone());
        let sources = enumerate_basis(&sector, FracIndex::new(5, 2));
        let targets = enumerate_basis(&sector, FracIndex::int(2));
        let mut compared = 0;
        for v in &sources {
            for w in &targets {
                let top = (v.weight() + w.weight() - 1).floor();
                for q in (top - 4)..=top {
                    let q = FracIndex::int(q);
                    let got = to_state(&va.field().mode_mono(v, q, &BasisKey::fock(w.clone())).unwrap());
                    let want = wick_mode(&sector, v, q, w);
                    assert_eq!(got, want, "v={} q={q} w={}", v.display(&h), w.display(&h));
                    compared += 1;
                }
            }
        }
        assert!(compared > 500, "{compared}");
    }
}

#[test]
fn spec_mode_examples() {
    let h = Arc::new(HSpec::orthonormal(1).unwrap());
    let va = VertexAlgebra::new(h);
    let u = VertexAlgebra::generator_state(0);
    assert_eq!(va.product(&u, 0, &u).unwrap(), VertexAlgebra::vacuum());
    let om = va.omega().clone();
    assert_eq!(va.product(&om, 1, &u).unwrap(), u.scaled(&ratio(1, 2)));
    assert!(va.product(&om, 0, &VertexAlgebra::vacuum()).unwrap().is_zero());
    assert_eq!(va.product(&om, 3, &om).unwrap(), VertexAlgebra::vacuum().scaled(&ratio(1, 4)));
}

fn ramond(l: usize) -> IterField<FockModule> {
    let h = Arc::new(HSpec::polarized(l).unwrap());
    IterField::new(FockModule::new(SectorSpec::new(h, Twist::sigma(l)).unwrap()))
}

#[test]
fn ramond_ground_states_have_conformal_weight_l_over_16() {
    for l in 1..=4 {
        let f = ramond(l);
        for g in f.module().basis(FracIndex::ZERO) {
            let v = ModVec::basis(g.clone());
            assert_eq!(f.virasoro(0, &v).unwrap(), v.scaled(&ratio(l as i64, 16)), "l={l}");
        }
    }
}

#[test]
fn virasoro_relations_on_twisted_modules() {
    for l in 1..=3 {
        let f = ramond(l);
        let rep = check_virasoro(&f, &ratio(l as i64, 2), 2, FracIndex::new(3, 2)).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.checked > 10);
    }
    let h = Arc::new(HSpec::polarized(2).unwrap());
    let tau = Twist::tau(vec![FracIndex::new(1, 3), FracIndex::new(2, 3)]);
    let f = IterField::new(FockModule::new(SectorSpec::new(h, tau).unwrap()));
    let rep = check_virasoro(&f, &int(1), 2, FracIndex::new(4, 3)).unwrap();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn commutator_formula_on_twisted_modules() {
    for l in [1usize, 2, 3] {
        let f = ramond(l);
        let va = VertexAlgebra::new(f.module().h().clone());
        let samples = commutator_samples(&f, &va, FracIndex::new(3, 2), FracIndex::new(3, 2), 120);
        assert!(samples.len() >= 60, "l={l} only {}", samples.len());
        let rep = check_commutator(&f, &va, &samples).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
}

#[test]
fn commutator_formula_with_cube_root_twist() {
    let h = Arc::new(HSpec::polarized(2).unwrap());
    let tau = Twist::tau(vec![FracIndex::new(1, 3), FracIndex::new(2, 3)]);
    let f = IterField::new(FockModule::new(SectorSpec::new(h.clone(), tau).unwrap()));
    let va = VertexAlgebra::new(h);
    let samples = commutator_samples(&f, &va, FracIndex::new(3, 2), FracIndex::ONE, 150);
    let rep = check_commutator(&f, &va, &samples).unwrap();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn translation_axiom() {
    let h = Arc::new(HSpec::orthonormal(1).unwrap());
    let va = VertexAlgebra::new(h.clone());
    let v1 = IterField::new(FockModule::new(ns_sector(&h)));
    let sources = vec![Monomial::vacuum(), Monomial::single(0, -FracIndex::HALF)];
    let rep = check_translate(&v1, &va, &sources, 4, FracIndex::int(3)).unwrap();
    assert!(rep.passed(), "{rep:?}");
    let f = ramond(2);
    let va2 = VertexAlgebra::new(f.module().h().clone());
    let mut srcs: Vec<Monomial> = va2.basis(FracIndex::ONE);
    srcs.extend(va2.omega().keys().cloned());
    let rep = check_translate(&f, &va2, &srcs, 3, FracIndex::new(3, 2)).unwrap();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn associativity_with_both_exponent_conventions() {
    let f = ramond(2);
    let va = VertexAlgebra::new(f.module().h().clone());
    let sources = va.basis(FracIndex::ONE);
    let mut n = 0;
    for u in &sources {
        for v in &sources {
            for w in f.module().basis(FracIndex::ONE) {
                let e1 = exponent_g(&f, u, &w);
                let e2 = exponent_gsigma(&f, u, &w);
                assert!((e1 - e2).is_integer());
                assert!(associativity_holds(&f, &va, u, v, &w, e1, 3, 2).unwrap(), "{u:?} {v:?} {w:?}");
                assert!(associativity_holds(&f, &va, u, v, &w, e2, 3, 2).unwrap(), "{u:?} {v:?} {w:?}");
                n += 1;
            }
        }
    }
    assert!(n > 50);
}

#[test]
fn skew_symmetry_in_v() {
    let va = VertexAlgebra::new(Arc::new(HSpec::orthonormal(2).unwrap()));
    let rep = check_skew_symmetry(&va, FracIndex::int(2)).unwrap();
    assert!(rep.passed(), "{rep:?}");
}

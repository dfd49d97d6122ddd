//! The subcommands. Each returns a serializable report, a plain-text
//! rendering and an exit code.

use std::fmt::Write as _;

use anyhow::Result;
use serde::Serialize;
use vosa_core::fields::verify::{
    associativity_holds, check_commutator, check_translate, check_virasoro, commutator_samples, exponent_g,
    exponent_gsigma, CheckReport,
};
use vosa_core::fields::{IterField, ModVec, VertexModule};
use vosa_core::fock::TwistKind;
use vosa_core::lie::{
    check_degrees, check_jacobi, check_mode_identities, check_zero_mode_kernel, sample_symbols, verify_hom_to_zhu,
};
use vosa_core::modules::{
    induce_truncated, standard_setup, zhu_action_on_omega, DirectSum, OmegaSpace, TwistedModule, ZhuModule,
};
use vosa_core::scalar::{format_scalar, ratio};
use vosa_core::zhu::{
    build_algebra_cached, center_and_idempotents, verify_residue_classes, verify_table_axioms, TwistContext,
    ZeroModeRep, ZhuAlgebraResult, ZhuOptions,
};
use vosa_core::FracIndex;

use crate::config::{RunConfig, TwistChoice};

pub const SCHEMA: &str = "vosa-zhu/1";

pub struct Outcome {
    pub json: serde_json::Value,
    pub table: String,
    pub exit: u8,
}

/// Exit code for results that are computed but not certified, or checks
/// that found a counterexample.
pub const EXIT_UNCERTIFIED: u8 = 2;

struct Setup {
    ctx: TwistContext,
    modules: Vec<(String, TwistedModule)>,
}

fn setup(cfg: &RunConfig) -> Result<Setup> {
    let kind = match cfg.twist {
        TwistChoice::Id => TwistKind::Id,
        TwistChoice::Sigma => TwistKind::Sigma,
        TwistChoice::Tau => TwistKind::Tau,
    };
    let tau = if kind == TwistKind::Tau { Some(cfg.tau()?) } else { None };
    let (ctx, modules) = standard_setup(kind, cfg.l, tau.as_ref())?;
    Ok(Setup { ctx, modules })
}

fn omegas(s: &Setup, max_degree: FracIndex) -> Result<Vec<(String, OmegaSpace<TwistedModule>)>> {
    s.modules.iter().map(|(n, m)| Ok((n.clone(), OmegaSpace::compute(m.clone(), max_degree)?))).collect()
}

fn zhu_options(cfg: &RunConfig, w: FracIndex) -> ZhuOptions {
    let mut o = ZhuOptions::new(w);
    o.margin = cfg.margin;
    o
}

fn algebra(
    cfg: &RunConfig,
    s: &Setup,
    w: FracIndex,
    oms: Option<&[(String, OmegaSpace<TwistedModule>)]>,
) -> Result<ZhuAlgebraResult> {
    let sum = oms.map(|o| DirectSum(o.iter().map(|(_, x)| x as &dyn ZeroModeRep).collect()));
    let rep = sum.as_ref().map(|d| d as &dyn ZeroModeRep);
    let (res, status) = build_algebra_cached(&s.ctx, &zhu_options(cfg, w), rep, cfg.cache_dir.as_deref())?;
    if std::env::var_os("VOSA_VERBOSE").is_some() {
        eprintln!("basis cache: {status:?}");
    }
    Ok(res)
}

fn dims_json(d: &[(FracIndex, usize)]) -> Vec<(String, usize)> {
    d.iter().map(|(w, n)| (w.to_string(), *n)).collect()
}

fn to_value<T: Serialize>(t: &T) -> Result<serde_json::Value> {
    Ok(serde_json::to_value(t)?)
}

// ---------------------------------------------------------------- zhu

#[derive(Serialize)]
struct ZhuReport<'a> {
    schema: &'static str,
    command: &'static str,
    config: &'a RunConfig,
    sector: String,
    dim: usize,
    dim_upper: usize,
    dim_lower: Option<usize>,
    closed: bool,
    stabilized: Option<bool>,
    certified: bool,
    basis_labels: Vec<String>,
    parities: Vec<u8>,
    structure_constants: Vec<(usize, usize, usize, String)>,
    unit: Vec<(usize, String)>,
    center_dim: usize,
    radical_dim: usize,
    semisimple: bool,
    blocks: Vec<usize>,
    omega_central: bool,
}

pub fn zhu(cfg: &RunConfig) -> Result<Outcome> {
    let s = setup(cfg)?;
    let oms = if cfg.certify { Some(omegas(&s, FracIndex::ZERO)?) } else { None };
    let res = algebra(cfg, &s, cfg.max_weight, oms.as_deref())?;
    let st = center_and_idempotents(&res);
    let report = ZhuReport {
        schema: SCHEMA,
        command: "zhu",
        config: cfg,
        sector: s.ctx.module_sector()?.describe(),
        dim: res.dim(),
        dim_upper: res.dim_upper,
        dim_lower: res.dim_lower,
        closed: res.reducer.closed,
        stabilized: res.stabilized,
        certified: res.certified,
        basis_labels: res.labels.clone(),
        parities: (0..res.dim()).map(|i| res.parity(i)).collect(),
        structure_constants: res
            .structure_constants()
            .into_iter()
            .map(|(i, j, k, c)| (i, j, k, format_scalar(&c)))
            .collect(),
        unit: res.unit.iter().map(|(i, c)| (*i, format_scalar(c))).collect(),
        center_dim: st.center_dim,
        radical_dim: st.radical_dim,
        semisimple: st.semisimple,
        blocks: st.blocks.clone(),
        omega_central: st.omega_central,
    };
    let ok = if cfg.certify { res.certified } else { res.reducer.closed && res.stabilized != Some(false) };
    let mut t = String::new();
    writeln!(t, "{}", report.sector)?;
    writeln!(t, "dim A_g(V)   {}", report.dim)?;
    writeln!(t, "lower bound  {}", report.dim_lower.map_or("-".into(), |d| d.to_string()))?;
    writeln!(t, "closed       {}", report.closed)?;
    writeln!(t, "stabilized   {}", report.stabilized.map_or("-".into(), |b| b.to_string()))?;
    writeln!(t, "certified    {}", report.certified)?;
    writeln!(t, "center dim   {}", report.center_dim)?;
    writeln!(t, "blocks       {:?}", report.blocks)?;
    writeln!(t, "basis:")?;
    for (i, l) in report.basis_labels.iter().enumerate() {
        writeln!(t, "  [{i}] {l}")?;
    }
    writeln!(t, "products (i, j -> coefficient of k):")?;
    for (i, j, k, c) in &report.structure_constants {
        writeln!(t, "  b{i} * b{j} : {c} b{k}")?;
    }
    Ok(Outcome { json: to_value(&report)?, table: t, exit: if ok { 0 } else { EXIT_UNCERTIFIED } })
}

// ---------------------------------------------------------------- verify

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Jacobi,
    Virasoro,
    ZhuAxioms,
    Lie,
    Omega,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    schema: &'static str,
    command: &'static str,
    suite: Suite,
    config: &'a RunConfig,
    passed: bool,
    checks: Vec<CheckReport>,
    details: Vec<(String, String)>,
    /// Elements of the mode algebra are compared through their action on
    /// modules, not as abstract elements.
    note: Option<&'static str>,
}

fn cap(w: FracIndex, c: FracIndex) -> FracIndex {
    if w < c {
        w
    } else {
        c
    }
}

pub fn verify(cfg: &RunConfig, suite: Suite) -> Result<Outcome> {
    let s = setup(cfg)?;
    let w = cfg.max_weight;
    let small = cap(w, FracIndex::new(3, 2));
    let mut checks = Vec::new();
    let mut details = Vec::new();
    let mut note = None;
    match suite {
        Suite::Jacobi => {
            for (name, m) in &s.modules {
                let f = IterField::new(m.clone());
                let va = s.ctx.va();
                let samples = commutator_samples(&f, va, small, small, 300);
                let mut r = check_commutator(&f, va, &samples)?;
                r.name = format!("commutator on {name}");
                checks.push(r);
                let one = cap(w, FracIndex::ONE);
                let mut srcs = va.basis(one);
                srcs.extend(va.omega().keys().cloned());
                let mut r = check_translate(&f, va, &srcs, 3, one)?;
                r.name = format!("translation on {name}");
                checks.push(r);
                let mut assoc = CheckReport::new(format!("associativity on {name}"));
                for u in &va.basis(one) {
                    for v in &va.basis(one) {
                        for k in f.module().basis(one) {
                            for e in [exponent_g(&f, u, &k), exponent_gsigma(&f, u, &k)] {
                                let ok = associativity_holds(&f, va, u, v, &k, e, 3, 2)?;
                                assoc.record(ok, || {
                                    format!(
                                        "u={} v={} w={} e={e}",
                                        u.display(s.ctx.h()),
                                        v.display(s.ctx.h()),
                                        k.mono.display(s.ctx.h())
                                    )
                                });
                            }
                        }
                    }
                }
                checks.push(assoc);
            }
        }
        Suite::Virasoro => {
            let c = s.ctx.va().central_charge()?;
            let mut cc = CheckReport::new("central charge l/2");
            cc.record(c == ratio(cfg.l as i64, 2), || format!("c = {c}"));
            checks.push(cc);
            details.push(("central_charge".into(), format_scalar(&c)));
            for (name, m) in &s.modules {
                let mut r = check_virasoro(&IterField::new(m.clone()), &c, 2, small)?;
                r.name = format!("virasoro on {name}");
                checks.push(r);
            }
        }
        Suite::ZhuAxioms => {
            let oms = omegas(&s, FracIndex::ZERO)?;
            let res = algebra(cfg, &s, w, Some(&oms))?;
            details.push(("dim".into(), res.dim().to_string()));
            details.push(("certified".into(), res.certified.to_string()));
            checks.push(verify_table_axioms(&res));
            checks.push(verify_residue_classes(&s.ctx, &res.reducer, w)?);
            for (name, om) in &oms {
                let a = zhu_action_on_omega(&s.ctx, &res, om, small)?;
                let mut r = CheckReport::new(format!("zero-mode action on Omega({name})"));
                r.absorb(&a.multiplicative);
                r.absorb(&a.kills_relations);
                r.record(a.unit_acts_as_identity, || "unit".into());
                checks.push(r);
                details.push((format!("Omega({name}) simple"), a.simple.to_string()));
            }
        }
        Suite::Lie => {
            note = Some("mode algebra identities are tested through module actions");
            let syms = sample_symbols(&s.ctx, cap(w, FracIndex::int(2)), FracIndex::new(5, 2));
            checks.push(check_degrees(&s.ctx, &syms)?);
            for (name, m) in &s.modules {
                let f = IterField::new(m.clone());
                let ws: Vec<ModVec> = f.module().basis(FracIndex::ONE).into_iter().map(ModVec::basis).collect();
                for mut r in [
                    check_mode_identities(&s.ctx, &f, &syms, &ws)?,
                    check_jacobi(&s.ctx, &f, &syms, &ws, 150)?,
                    check_zero_mode_kernel(&s.ctx, &f, cap(w, FracIndex::int(2)), &ws)?,
                ] {
                    r.name = format!("{} on {name}", r.name);
                    checks.push(r);
                }
            }
            let res = algebra(cfg, &s, w, None)?;
            let hom = verify_hom_to_zhu(&s.ctx, &res)?;
            let mut r = hom.brackets;
            r.record(hom.surjective, || "not surjective".into());
            checks.push(r);
        }
        Suite::Omega => {
            let deg = cap(w, FracIndex::int(2));
            for (name, om) in omegas(&s, deg)? {
                let mut r = om.recheck(deg)?;
                r.name = format!("Omega({name}) killed by lowering modes");
                r.record(om.equals_degree_zero(), || format!("Omega({name}) is not the degree-zero space"));
                checks.push(r);
                details.push((format!("dim Omega({name})"), om.dim().to_string()));
            }
        }
    }
    let passed = checks.iter().all(CheckReport::passed);
    let report = VerifyReport { schema: SCHEMA, command: "verify", suite, config: cfg, passed, checks, details, note };
    let mut t = String::new();
    for c in &report.checks {
        let status = if c.passed() { "ok  " } else { "FAIL" };
        writeln!(t, "{status} {:<48} {}/{}", c.name, c.checked - c.failures, c.checked)?;
        if let Some(f) = &c.first_failure {
            writeln!(t, "     first failure: {f}")?;
        }
    }
    for (k, v) in &report.details {
        writeln!(t, "{k}: {v}")?;
    }
    writeln!(t, "{}", if passed { "passed" } else { "FAILED" })?;
    Ok(Outcome { json: to_value(&report)?, table: t, exit: if passed { 0 } else { EXIT_UNCERTIFIED } })
}

// ---------------------------------------------------------------- basis

#[derive(Serialize)]
struct ModuleDims {
    name: String,
    graded_dims: Vec<(String, usize)>,
    total: usize,
}

#[derive(Serialize)]
struct BasisReport<'a> {
    schema: &'static str,
    command: &'static str,
    config: &'a RunConfig,
    modules: Vec<ModuleDims>,
}

pub fn basis(cfg: &RunConfig) -> Result<Outcome> {
    let s = setup(cfg)?;
    let modules: Vec<ModuleDims> = s
        .modules
        .iter()
        .map(|(name, m)| {
            let d = m.graded_dims(cfg.max_weight);
            ModuleDims { name: name.clone(), total: d.iter().map(|x| x.1).sum(), graded_dims: dims_json(&d) }
        })
        .collect();
    let mut t = String::new();
    for m in &modules {
        writeln!(t, "{}:", m.name)?;
        for (w, n) in &m.graded_dims {
            writeln!(t, "  {w:>5}  {n}")?;
        }
    }
    let report = BasisReport { schema: SCHEMA, command: "basis", config: cfg, modules };
    Ok(Outcome { json: to_value(&report)?, table: t, exit: 0 })
}

// ---------------------------------------------------------------- omega

#[derive(Serialize)]
struct OmegaEntry {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    keys: Option<&'static str>,
    dim: usize,
    equals_degree_zero: bool,
    basis: Vec<Vec<(String, String)>>,
}

#[derive(Serialize)]
struct OmegaReport<'a> {
    schema: &'static str,
    command: &'static str,
    config: &'a RunConfig,
    searched_to_degree: FracIndex,
    modules: Vec<OmegaEntry>,
}

pub fn omega(cfg: &RunConfig) -> Result<Outcome> {
    let s = setup(cfg)?;
    let deg = cap(cfg.max_weight, FracIndex::int(2));
    let h = s.ctx.h().clone();
    let modules: Vec<OmegaEntry> = omegas(&s, deg)?
        .into_iter()
        .map(|(name, om)| OmegaEntry {
            keys: matches!(om.module(), TwistedModule::Projected(_))
                .then_some("a key m stands for m + s J m, J = e(0)(-1)^F, s the sign of the module"),
            name,
            dim: om.dim(),
            equals_degree_zero: om.equals_degree_zero(),
            basis: om
                .basis()
                .iter()
                .map(|v| v.iter().map(|(k, c)| (k.mono.display(&h), format_scalar(c))).collect())
                .collect(),
        })
        .collect();
    let mut t = String::new();
    for m in &modules {
        writeln!(t, "Omega({}): dim {}, equal to degree 0: {}", m.name, m.dim, m.equals_degree_zero)?;
        for v in &m.basis {
            let terms: Vec<String> = v.iter().map(|(k, c)| format!("{c} {k}")).collect();
            writeln!(t, "  {}", terms.join(" + "))?;
        }
    }
    let report = OmegaReport { schema: SCHEMA, command: "omega", config: cfg, searched_to_degree: deg, modules };
    Ok(Outcome { json: to_value(&report)?, table: t, exit: 0 })
}

// ---------------------------------------------------------------- induce

#[derive(Serialize)]
struct InduceEntry {
    seed: String,
    seed_dim: usize,
    induced_dims: Vec<(String, usize)>,
    quotient_dims: Vec<(String, usize)>,
    simple_dims: Vec<(String, usize)>,
    module_dims: Vec<(String, usize)>,
    matches_module: bool,
    omega_is_seed: bool,
}

#[derive(Serialize)]
struct InduceReport<'a> {
    schema: &'static str,
    command: &'static str,
    config: &'a RunConfig,
    zhu_max_weight: FracIndex,
    zhu_dim: usize,
    seeds: Vec<InduceEntry>,
}

pub fn induce(cfg: &RunConfig) -> Result<Outcome> {
    let s = setup(cfg)?;
    let zw = FracIndex::new(5, 2);
    let oms = omegas(&s, FracIndex::ZERO)?;
    let res = algebra(cfg, &s, zw, Some(&oms))?;
    let mut seeds = Vec::new();
    for (name, om) in &oms {
        let u = ZhuModule::from_rep(&res, om)?;
        let v = induce_truncated(&s.ctx, &res, &u, cfg.max_weight)?;
        let target = om.module().graded_dims(cfg.max_weight);
        seeds.push(InduceEntry {
            seed: format!("Omega({name})"),
            seed_dim: u.dim,
            induced_dims: dims_json(&v.induced_dims),
            quotient_dims: dims_json(&v.quotient_dims),
            simple_dims: dims_json(&v.simple_dims),
            module_dims: dims_json(&target),
            matches_module: v.simple_dims == target,
            omega_is_seed: v.omega_is_seed,
        });
    }
    let ok = seeds.iter().all(|e| e.matches_module && e.omega_is_seed);
    let mut t = String::new();
    for e in &seeds {
        writeln!(t, "L({}) with dim U = {}:", e.seed, e.seed_dim)?;
        writeln!(t, "  degree  M(U)  quotient  L(U)  module")?;
        for (i, (w, n)) in e.induced_dims.iter().enumerate() {
            let q = e.quotient_dims.get(i).map_or(0, |x| x.1);
            let l = e.simple_dims.get(i).map_or(0, |x| x.1);
            let m = e.module_dims.iter().find(|x| &x.0 == w).map_or(0, |x| x.1);
            writeln!(t, "  {w:>6}  {n:>4}  {q:>8}  {l:>4}  {m:>6}")?;
        }
        writeln!(t, "  matches module: {}, Omega(L(U)) = U: {}", e.matches_module, e.omega_is_seed)?;
    }
    let report =
        InduceReport { schema: SCHEMA, command: "induce", config: cfg, zhu_max_weight: zw, zhu_dim: res.dim(), seeds };
    Ok(Outcome { json: to_value(&report)?, table: t, exit: if ok { 0 } else { EXIT_UNCERTIFIED } })
}

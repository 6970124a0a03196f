//! One function per verb: checks, echoed inputs and payload.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::catalog::{check_homogeneous_relations, default_models, model, verify_structure, CatalogError, Label, ModelSpec};
use crate::config::QUADRIC_TOL;
use crate::embedding_lf::decide::lf_decide_homogeneous;
use crate::embedding_lf::rank0::lf_rank0_structure;
use crate::embedding_lf::rank1::{lf_rank1_reduce, rank_one_model_check};
use crate::embedding_lf::rank2::{lf_r2u1_identity_checks, lf_rank2_flat, lf_rank2_generic, lf_rank2_h3, rank_two_homogeneous_points};
use crate::embedding_lf::state::LfJetState;
use crate::embedding_lf::table::{lf_verify_closure, LfRules};
use crate::embedding_lf::LfError;
use crate::embedding_ln::closure::{mutation_controls, verify_closure_ln};
use crate::embedding_ln::curved::{solve_curved_equivariant, CurvedBranch};
use crate::embedding_ln::decide::{decide_embeddable, Target};
use crate::embedding_ln::flat::{solve_flat, transform_to_vi3e};
use crate::embedding_ln::jet::H2Rules;
use crate::embedding_ln::state::JetState;
use crate::embedding_ln::LnError;
use crate::exterior::{pit, Form};
use crate::kerr::{optical_scalars, CongruenceSpec, HPoly, KerrError, SampleBox};
use crate::unitary_frames::{build_mu, mc_expand, umc_table, FramesError};

use super::{Check, CliError, CliResult, Ctx};

type VerbOut = CliResult<(Vec<Check>, Value, Value)>;

impl From<LnError> for CliError {
    fn from(e: LnError) -> Self {
        match e {
            LnError::Input(m) => CliError::Usage(m),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<LfError> for CliError {
    fn from(e: LfError) -> Self {
        match e {
            LfError::Input(m) => CliError::Usage(m),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::UnknownLabel(_) | CatalogError::Param(_) => CliError::Usage(e.to_string()),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<KerrError> for CliError {
    fn from(e: KerrError) -> Self {
        match e {
            KerrError::Parse(_) | KerrError::Input(_) => CliError::Usage(e.to_string()),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<FramesError> for CliError {
    fn from(e: FramesError) -> Self {
        match e {
            FramesError::Input(m) => CliError::Usage(m),
            e => CliError::Failed(e.to_string()),
        }
    }
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

fn sign(eps: i64) -> &'static str {
    if eps > 0 {
        "+1"
    } else {
        "-1"
    }
}

/// Exact check of a residual form; the residual is its numeric size.
fn zero_form(name: String, f: &Form, ctx: &Ctx) -> Check {
    let size = if f.is_zero() { 0.0 } else { pit(f, &ctx.cfg.seeds, &BTreeMap::new()).max_abs.max(f64::MIN_POSITIVE) };
    Check::exact(name, f.is_zero(), size)
}

fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))
}

pub(super) fn verify_mc(eps: &[i64], ctx: &Ctx) -> VerbOut {
    let mut checks = Vec::new();
    for &e in eps {
        let mu = build_mu(e, false)?;
        let mc = mc_expand(&mu)?;
        let printed = umc_table(e)?;
        for g in mu.space.names() {
            let ours = mc.table.gen_rule(g).map_err(failed)?;
            let theirs = printed.gen_rule(g).map_err(failed)?;
            checks.push(zero_form(format!("eps={}/d{g}", sign(e)), &ours.sub(theirs).map_err(failed)?, ctx));
        }
        let entries = mc.entry_residuals.iter().all(|(_, r)| r.is_zero());
        checks.push(Check::exact(format!("eps={}/mu_entries", sign(e)), entries, if entries { 0.0 } else { 1.0 }));
        let d2 = mc.table.check_d_squared().map_err(failed)?;
        checks.push(Check::exact(format!("eps={}/d_squared", sign(e)), d2.all_zero(), d2.nonzero().len() as f64));
    }
    Ok((checks, json!({"epsilon": eps}), json!({"generators": 10})))
}

pub(super) fn catalog_list() -> VerbOut {
    let rows: Vec<Value> = Label::ALL
        .iter()
        .map(|l| json!({"label": l.as_str(), "bianchi": l.bianchi(), "cartan": l.cartan(), "flat": l.is_flat()}))
        .collect();
    let defaults: Vec<Value> = default_models().iter().map(|m| json!({"label": m.label.as_str(), "params": m.params, "constants": m.constants()})).collect();
    Ok((Vec::new(), json!({}), json!({"labels": rows, "defaults": defaults})))
}

fn model_checks(m: &ModelSpec, ctx: &Ctx) -> CliResult<(Vec<Check>, Value)> {
    let lab = m.label.as_str();
    let rel = check_homogeneous_relations(m, &ctx.cfg);
    let mut checks: Vec<Check> = rel
        .checks
        .iter()
        .map(|c| {
            let tol = if c.exact || c.polynomial.is_some() { 0.0 } else { ctx.cfg.catalog_tol };
            Check { name: format!("{lab}/relations/{}", c.name), status: super::Status::from_bool(c.pass), residual: Some(c.residual), tolerance: Some(tol) }
        })
        .collect();
    let st = if rel.pass {
        let s = verify_structure(m, &ctx.cfg)?;
        for c in &s.checks {
            let tol = if c.exact { 0.0 } else { ctx.cfg.catalog_tol };
            checks.push(Check {
                name: format!("{lab}/{}/{}", c.group, c.name),
                status: super::Status::from_bool(c.pass),
                residual: Some(c.residual),
                tolerance: Some(tol),
            });
        }
        serde_json::to_value(&s).map_err(failed)?
    } else {
        checks.push(Check::skipped(format!("{lab}/structure")));
        Value::Null
    };
    Ok((checks, json!({"relations": rel, "structure": st})))
}

pub(super) fn catalog_check(label: Option<&str>, params: &BTreeMap<String, f64>, ctx: &Ctx) -> VerbOut {
    let models = match label {
        Some(l) => vec![model(Label::from_str(l)?, params)?],
        None if params.is_empty() => default_models(),
        None => return Err(CliError::Usage("--param needs --label".into())),
    };
    let mut checks = Vec::new();
    let mut data = serde_json::Map::new();
    for m in &models {
        let (c, d) = model_checks(m, ctx)?;
        checks.extend(c);
        data.insert(m.label.as_str().to_string(), d);
    }
    Ok((checks, json!({"label": label, "params": params}), Value::Object(data)))
}

pub(super) fn embed_closure(eps: &[i64], derived: bool, mutations: usize, ctx: &Ctx) -> VerbOut {
    let rules = if derived { H2Rules::Derived } else { H2Rules::Printed };
    let mut checks = Vec::new();
    let mut cut = serde_json::Map::new();
    for &e in eps {
        let rep = verify_closure_ln(e, rules, &ctx.cfg)?;
        for c in &rep.checks {
            let name = format!("eps={}/{}/{}", sign(e), c.group, c.name);
            checks.push(if c.exact { Check::exact(name, true, 0.0) } else { Check::within(name, c.max_rel, ctx.cfg.pit_tol) });
        }
        cut.insert(sign(e).to_string(), json!(rep.cut));
        if mutations > 0 {
            for (k, m) in mutation_controls(e, mutations, &ctx.cfg)?.iter().enumerate() {
                checks.push(Check {
                    name: format!("eps={}/mutation/{k:02}", sign(e)),
                    status: super::Status::from_bool(m.detected),
                    residual: Some(m.max_abs),
                    tolerance: Some(crate::config::MUTATION_FLOOR),
                });
            }
        }
    }
    Ok((checks, json!({"epsilon": eps, "rules": if derived { "derived" } else { "printed" }, "mutations": mutations}), json!({"cut": cut})))
}

pub(super) fn embed_flat(epsilon: Option<i64>, state: Option<&str>, ctx: &Ctx) -> VerbOut {
    let (st, src) = match state {
        Some(p) => {
            let text = read_file(p)?;
            let s: JetState = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad state: {e}")))?;
            if epsilon.is_some_and(|e| e != s.epsilon) {
                return Err(CliError::Usage("--epsilon disagrees with the state".into()));
            }
            (s, Some(text))
        }
        None => {
            let e = super::epsilons(epsilon)?;
            if e.len() != 1 {
                return Err(CliError::Usage("solve-flat needs --epsilon or --state".into()));
            }
            (JetState::symbolic(e[0])?, None)
        }
    };
    let fe = solve_flat(&st)?;
    let mut checks = Vec::new();
    for (n, f) in &fe.rank_one.closure {
        checks.push(zero_form(format!("rank_one/{n}"), f, ctx));
    }
    for (k, c) in fe.constant.iter().enumerate() {
        checks.push(Check::flag(format!("constant/{k}/exact"), c.exact));
        let t = transform_to_vi3e(&fe.rank_two, c)?;
        checks.push(Check::flag(format!("constant/{k}/vi3e"), t.pass));
    }
    if fe.constant.is_empty() {
        checks.push(Check::skipped("constant"));
    }
    Ok((checks, json!({"state": st, "file": src}), fe.to_json()))
}

pub(super) fn embed_curved(eps: &[i64], branch: Option<&str>, params: &BTreeMap<String, f64>, ctx: &Ctx) -> VerbOut {
    let branches = match branch {
        Some(b) => vec![CurvedBranch::from_str(b)?],
        None => CurvedBranch::ALL.to_vec(),
    };
    if let Some(k) = params.keys().find(|k| *k != "a") {
        return Err(CliError::Usage(format!("unknown parameter {k}; only a is accepted")));
    }
    let a = params.get("a").copied();
    let mut checks = Vec::new();
    let mut sols = Vec::new();
    for &e in eps {
        for &b in &branches {
            let found = solve_curved_equivariant(e, b, a, &ctx.cfg)?;
            for (k, s) in found.iter().enumerate() {
                let base = format!("eps={}/{}/{k}", sign(e), b.as_str());
                checks.push(Check::within(format!("{base}/residual"), s.max_residual, ctx.cfg.catalog_tol));
                checks.push(Check::flag(format!("{base}/relations"), s.relations_pass));
            }
            if found.is_empty() {
                checks.push(Check::skipped(format!("eps={}/{}", sign(e), b.as_str())));
            }
            sols.extend(found);
        }
    }
    Ok((checks, json!({"epsilon": eps, "branch": branch, "params": params}), json!({"solutions": sols})))
}

pub(super) fn embed_decide(label: &str, target: Option<&str>, params: &BTreeMap<String, f64>, ctx: &Ctx) -> VerbOut {
    let spec = model(Label::from_str(label)?, params)?;
    let targets = match target {
        Some(t) => vec![Target::from_str(t)?],
        None => Target::ALL.to_vec(),
    };
    let mut checks = Vec::new();
    let mut out = Vec::new();
    for t in targets {
        let d = decide_embeddable(&spec, t, &ctx.cfg)?;
        checks.push(Check::flag(format!("{}/{}/decided", spec.label, t), true));
        out.push(d);
    }
    let data = if out.len() == 1 { serde_json::to_value(&out[0]) } else { serde_json::to_value(&out) }.map_err(failed)?;
    Ok((checks, json!({"model": spec.label.as_str(), "target": target, "params": params}), data))
}

pub(super) fn lf_closure(derived: bool, ctx: &Ctx) -> VerbOut {
    let rules = if derived { LfRules::Derived } else { LfRules::Printed };
    let rep = lf_verify_closure(rules, &ctx.cfg)?;
    let mut checks: Vec<Check> = rep
        .checks
        .iter()
        .map(|c| if c.exact { Check::exact(format!("closure/{}", c.name), true, 0.0) } else { Check::within(format!("closure/{}", c.name), c.max_rel, ctx.cfg.pit_tol) })
        .collect();
    let (_, cert) = lf_rank0_structure()?;
    checks.push(Check::flag("rank0/certificate", cert.pass));
    let r1 = lf_rank1_reduce()?;
    for (k, f) in &r1.residuals {
        checks.push(zero_form(format!("rank1/print/{k}"), f, ctx));
    }
    let m1 = rank_one_model_check(&r1, &ctx.cfg)?;
    checks.push(Check::within("rank1/model", m1.max_abs, ctx.cfg.rank_tol));
    checks.push(Check::flag("rank1/model_exact", m1.exact && m1.d2_kappa_zero && m1.du_vanishes));
    let h3 = lf_rank2_h3()?;
    let mut blocks = Vec::new();
    for b in [1, -1] {
        let fl = lf_rank2_flat(&h3, b)?;
        checks.push(Check::flag(format!("rank2/u1=0/b={}/blocks", sign(b)), fl.blocks.pass));
        blocks.push(json!({"b": b, "blocks": fl.blocks}));
    }
    let g = lf_rank2_generic(&h3)?;
    for (k, f) in &g.residuals {
        checks.push(zero_form(format!("rank2/u1=1/print/{k}"), f, ctx));
    }
    for c in lf_r2u1_identity_checks(&g, &ctx.cfg)? {
        checks.push(Check::exact(format!("rank2/u1=1/identity/{}", c.name), c.pass, c.max_abs));
    }
    let pts = rank_two_homogeneous_points(&g)?;
    for p in &pts {
        checks.push(Check::flag(format!("rank2/u1=1/point/v0={}/2", p.two_v0), p.identities_vanish && p.flip.is_some()));
    }
    let data = json!({
        "closure": rep,
        "rank0": cert,
        "rank1_model": m1,
        "rank2_blocks": blocks,
        "rank2_points": pts,
    });
    Ok((checks, json!({"rules": if derived { "derived" } else { "printed" }}), data))
}

pub(super) fn lf_classify(path: &str, ctx: &Ctx) -> VerbOut {
    let text = read_file(path)?;
    let st: LfJetState = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad state: {e}")))?;
    let cls = lf_decide_homogeneous(&st, &ctx.cfg)?;
    let tol = ctx.cfg.rank_tol.max(ctx.cfg.catalog_tol);
    let mut checks = vec![Check::flag("classified", true)];
    for (k, r) in &cls.residuals {
        // informational: a nonzero residual is what makes a state non-homogeneous
        let mut c = Check::within(format!("residual/{k}"), *r, tol);
        if c.status == super::Status::Fail {
            c.status = super::Status::Skipped;
        }
        checks.push(c);
    }
    Ok((checks, json!({"state": st}), serde_json::to_value(&cls).map_err(failed)?))
}

pub(super) fn kerr_check(h: &str, sample_box: Option<&str>, samples: usize, ctx: &Ctx) -> VerbOut {
    let poly = HPoly::parse(h)?;
    let mut spec = CongruenceSpec::implicit(poly.clone())?.with_step(ctx.cfg.fd_step);
    if let Some(b) = sample_box {
        spec = spec.with_box(SampleBox::parse(b)?);
    }
    if samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let r = optical_scalars(&spec, samples, ctx.seed, &ctx.cfg)?;
    let tol = ctx.cfg.kerr_tol;
    let checks = vec![
        Check::within("geodesic", r.geodesic_residual, tol),
        Check::within("shear", r.shear_residual, tol),
        Check::within("quadric", r.quadric_residual, QUADRIC_TOL),
        Check::within("null", r.null_residual, QUADRIC_TOL),
    ];
    let inputs = json!({"H": poly.to_string(), "box": spec.sample_domain, "samples": samples, "fd_step": spec.fd_step});
    Ok((checks, inputs, serde_json::to_value(&r).map_err(failed)?))
}

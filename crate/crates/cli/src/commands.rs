//! Command implementations. Each returns the process exit code: 0 = pass,
//! 1 = mathematical failure (report on stdout), 2 = input error.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use qlag_core::bialg::{self, ClassifyContext, Slot};
use qlag_core::l2;
use qlag_core::qla;
use qlag_core::report::Report;
use qlag_core::sample;
use qlag_core::scalar;

use crate::wire::{self, Document, Warnings};

pub struct Ctx {
    pub color: bool,
}

impl Ctx {
    pub fn human(&self, passed: bool, line: &str) {
        let marker = match (passed, self.color) {
            (true, true) => "\x1b[32mPASS\x1b[0m",
            (false, true) => "\x1b[31mFAIL\x1b[0m",
            (true, false) => "PASS",
            (false, false) => "FAIL",
        };
        eprintln!("{marker} {line}");
    }

    pub fn note(&self, line: &str) {
        eprintln!("     {line}");
    }
}

pub fn read_document(path: &Path) -> Result<Document> {
    let bytes = std::fs::read(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    Document::parse(&bytes)
}

pub fn report_json(rep: &Report) -> Value {
    json!({
        "verdict": if rep.passed() { "pass" } else { "fail" },
        "checks": rep.checks.iter().map(|c| json!({
            "id": c.id,
            "witness_total": c.witness_total,
            "witnesses": c.witnesses.iter().map(|w| json!({
                "site": w.site,
                "value": w.value,
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn emit(value: &Value) {
    let mut out = serde_json::to_vec_pretty(value).expect("serialization cannot fail");
    out.push(b'\n');
    std::io::stdout().write_all(&out).expect("stdout");
}

fn warn_out(ctx: &Ctx, warn: &Warnings) {
    for w in &warn.0 {
        ctx.note(&format!("warning: {w}"));
    }
}

fn report_exit(ctx: &Ctx, what: &str, rep: &Report) -> i32 {
    emit(&report_json(rep));
    ctx.human(rep.passed(), what);
    for c in &rep.checks {
        ctx.note(&format!(
            "{}: {}",
            c.id,
            if c.passed() { "ok".to_string() } else { format!("{} witness(es)", c.witness_total) }
        ));
    }
    if rep.passed() {
        0
    } else {
        1
    }
}

pub fn cmd_verify(ctx: &Ctx, path: &Path) -> Result<i32> {
    let doc = read_document(path)?;
    let mut warn = Warnings::default();
    let rep = match doc.kind.as_str() {
        "l2algebra" => {
            let l2 = wire::l2_from_wire(&doc.payload_as()?, &mut warn)?;
            l2::verify_l2(&l2)
        }
        "l2morphism" => {
            let m = wire::morphism_from_wire(&doc.payload_as()?, &mut warn)?;
            l2::verify_morphism(&m)
        }
        "l2twomorphism" => {
            let t = wire::two_morphism_from_wire(&doc.payload_as()?, &mut warn)?;
            l2::verify_two_morphism(&t)
        }
        "xmod" => {
            let x = wire::xmod_from_wire(&doc.payload_as()?, &mut warn)?;
            l2::verify_xmod(&x)
        }
        "ruth" => {
            let r = wire::ruth_from_wire(&doc.payload_as()?, &mut warn)?;
            l2::verify_ruth(&r)
        }
        "qla" => {
            let g = wire::groupoid_from_wire(&doc.payload_as()?, &mut warn)?;
            qla::verify_groupoid(&g).map_err(|e| anyhow!("{e}"))?
        }
        "quasiq" => {
            let (g, s) = wire::quasi_q_from_wire(&doc.payload_as()?, &mut warn)?;
            qla::verify_quasi_q(&g, &s).map_err(|e| anyhow!("{e}"))?
        }
        "proto" => {
            let p = wire::proto_from_wire(&doc.payload_as()?, &mut warn)?;
            bialg::mc_check_proto(&p).map_err(|e| anyhow!("{e}"))?
        }
        "weakl2bialg" => {
            let (g, psi) = wire::weakl2_from_wire(&doc.payload_as()?, &mut warn)?;
            bialg::mc_check_v(&g, &psi).map_err(|e| anyhow!("{e}"))?
        }
        other => bail!("kind `{other}` has no verifier"),
    };
    warn_out(ctx, &warn);
    Ok(report_exit(ctx, &format!("verify {}", path.display()), &rep))
}

pub fn cmd_compose(ctx: &Ctx, f_path: &Path, g_path: &Path) -> Result<i32> {
    let mut warn = Warnings::default();
    let f_doc = read_document(f_path)?;
    let g_doc = read_document(g_path)?;
    if f_doc.kind != "l2morphism" || g_doc.kind != "l2morphism" {
        bail!("compose expects two l2morphism documents");
    }
    let f = wire::morphism_from_wire(&f_doc.payload_as()?, &mut warn)?;
    let g = wire::morphism_from_wire(&g_doc.payload_as()?, &mut warn)?;
    // `compose f g` = g ∘ f (f applied first)
    let comp = l2::compose(&g, &f).map_err(|e| anyhow!("{e}"))?;
    warn_out(ctx, &warn);
    let doc = Document::new(
        "l2morphism",
        serde_json::to_value(wire::morphism_to_wire(&comp))?,
    );
    emit(&serde_json::to_value(&doc)?);
    let rep = l2::verify_morphism(&comp);
    ctx.human(rep.passed(), "compose (composite verified)");
    Ok(if rep.passed() { 0 } else { 1 })
}

pub fn cmd_mc(ctx: &Ctx, dgla: &str, path: &Path) -> Result<i32> {
    let doc = read_document(path)?;
    let mut warn = Warnings::default();
    let rep = match dgla {
        "groupoid" => {
            if doc.kind != "quasiq" {
                bail!("mc --dgla groupoid expects a quasiq document");
            }
            let (g, s) = wire::quasi_q_from_wire(&doc.payload_as()?, &mut warn)?;
            let gd = qlag_core::dgla::build_groupoid_dgla(&g, (-1, 2))
                .map_err(|e| anyhow!("{e}"))?;
            let mut rep = Report::new();
            let mut check = qlag_core::report::Check::new("mc-residual");
            match gd.mc_of_quasi_q(&s) {
                Ok(mc) => {
                    let res = gd.dgla.mc_residual(&mc).map_err(|e| anyhow!("{e}"))?;
                    if !res.is_zero() {
                        for (i, c) in res.coords.iter().enumerate() {
                            if !num_traits::Zero::is_zero(c) {
                                check.witness(vec![i as i64], wire::scalar_string(c));
                            }
                        }
                    }
                }
                Err(e) => check.witness(vec![], format!("not representable: {e}")),
            }
            rep.push(check);
            rep
        }
        "bigbracket" => {
            if doc.kind != "proto" {
                bail!("mc --dgla bigbracket expects a proto document");
            }
            let p = wire::proto_from_wire(&doc.payload_as()?, &mut warn)?;
            bialg::mc_check_proto(&p).map_err(|e| anyhow!("{e}"))?
        }
        "mvf" => {
            if doc.kind != "weakl2bialg" {
                bail!("mc --dgla mvf expects a weakl2bialg document");
            }
            let (g, psi) = wire::weakl2_from_wire(&doc.payload_as()?, &mut warn)?;
            bialg::mc_check_v(&g, &psi).map_err(|e| anyhow!("{e}"))?
        }
        other => bail!("unknown dgla `{other}` (expected groupoid|bigbracket|mvf)"),
    };
    warn_out(ctx, &warn);
    Ok(report_exit(ctx, &format!("mc --dgla {dgla} {}", path.display()), &rep))
}

pub fn cmd_gauge(ctx: &Ctx, b_path: &Path, path: &Path) -> Result<i32> {
    let mut warn = Warnings::default();
    let b_doc = read_document(b_path)?;
    if b_doc.kind != "gaugeparam" {
        bail!("gauge expects a gaugeparam document for --b");
    }
    let bp: wire::GaugePayload = b_doc.payload_as()?;
    let doc = read_document(path)?;
    if doc.kind != "quasiq" {
        bail!("gauge expects a quasiq document");
    }
    let (g, s) = wire::quasi_q_from_wire(&doc.payload_as()?, &mut warn)?;
    if bp.dim_e != g.dim_e || bp.dim_c != g.dim_c {
        bail!("gauge parameter dimensions do not match the structure");
    }
    let b = wire::tensor_from_wire(&bp.b, 2, g.dim_e, g.dim_c, "b", &mut warn)?;
    let moved = qla::gauge_point(&g, &b, &s).map_err(|e| anyhow!("{e}"))?;
    warn_out(ctx, &warn);
    let out = Document::new(
        "quasiq",
        serde_json::to_value(wire::quasi_q_to_wire(&g, &moved))?,
    );
    emit(&serde_json::to_value(&out)?);
    let rep = qla::verify_quasi_q(&g, &moved).map_err(|e| anyhow!("{e}"))?;
    ctx.human(rep.passed(), "gauge (result verified)");
    Ok(if rep.passed() { 0 } else { 1 })
}

pub fn cmd_classify(ctx: &Ctx, path: &Path) -> Result<i32> {
    let doc = read_document(path)?;
    let mut warn = Warnings::default();
    let (mask, rep, context): (BTreeSet<Slot>, Report, ClassifyContext) =
        match doc.kind.as_str() {
            "proto" => {
                let p = wire::proto_from_wire(&doc.payload_as()?, &mut warn)?;
                let mut mask = BTreeSet::new();
                if !p.mu.is_zero() {
                    mask.insert(Slot::QUpper);
                }
                if !p.gamma.is_zero() {
                    mask.insert(Slot::PiUpper);
                }
                if !p.phi.is_zero() {
                    mask.insert(Slot::PhiUpper);
                }
                if !p.chi.is_zero() {
                    mask.insert(Slot::FUpper);
                }
                let rep = bialg::mc_check_proto(&p).map_err(|e| anyhow!("{e}"))?;
                (mask, rep, ClassifyContext::PointCoreZero)
            }
            "weakl2bialg" => {
                let (g, psi) = wire::weakl2_from_wire(&doc.payload_as()?, &mut warn)?;
                let rep = bialg::mc_check_v(&g, &psi).map_err(|e| anyhow!("{e}"))?;
                (psi.mask(), rep, ClassifyContext::PointTwoTerm)
            }
            other => bail!("kind `{other}` cannot be classified"),
        };
    warn_out(ctx, &warn);
    let label = bialg::classify(context, &mask, rep.passed());
    let tags: Vec<&str> = mask.iter().map(Slot::tag).collect();
    let out = json!({
        "mask": tags,
        "verdict": if rep.passed() { "pass" } else { "fail" },
        "label": label,
        "report": report_json(&rep),
    });
    emit(&out);
    let line = match &label {
        Some(l) => format!("classify {}: {}", path.display(), l),
        None => format!("classify {}: no table row for this mask", path.display()),
    };
    ctx.human(rep.passed(), &line);
    Ok(if rep.passed() { 0 } else { 1 })
}

pub fn cmd_extend(ctx: &Ctx, h_path: &Path, xi_path: &Path, path: &Path) -> Result<i32> {
    let mut warn = Warnings::default();
    let doc = read_document(path)?;
    if doc.kind != "quasiq" {
        bail!("extend expects a quasiq document");
    }
    let (g, s) = wire::quasi_q_from_wire(&doc.payload_as()?, &mut warn)?;
    let h_form: wire::WireForm =
        serde_json::from_slice(&std::fs::read(h_path)?).context("malformed h form")?;
    let xi_form: wire::WireForm =
        serde_json::from_slice(&std::fs::read(xi_path)?).context("malformed xi form")?;
    let h = wire::form_from_wire(&h_form, g.algebra(), "h", &mut warn)?;
    let xi = wire::form_from_wire(&xi_form, g.base_algebra(), "xi", &mut warn)?;
    warn_out(ctx, &warn);
    let pre = qla::cocycle_check(&g, &s, &h, &xi).map_err(|e| anyhow!("{e}"))?;
    if !pre.passed() {
        emit(&report_json(&pre));
        ctx.human(false, "extend (cocycle check)");
        return Ok(1);
    }
    let (ge, se) = qla::central_extend(&g, &s, &h, &xi).map_err(|e| anyhow!("{e}"))?;
    let out = Document::new(
        "quasiq",
        serde_json::to_value(wire::quasi_q_to_wire(&ge, &se))?,
    );
    emit(&serde_json::to_value(&out)?);
    let rep = qla::verify_quasi_q(&ge, &se).map_err(|e| anyhow!("{e}"))?;
    ctx.human(rep.passed(), "extend (extension verified)");
    Ok(if rep.passed() { 0 } else { 1 })
}

pub fn cmd_roundtrip(ctx: &Ctx, path: &Path) -> Result<i32> {
    let doc = read_document(path)?;
    let mut warn = Warnings::default();
    if doc.kind != "l2algebra" {
        bail!("roundtrip expects an l2algebra document");
    }
    let l2 = wire::l2_from_wire(&doc.payload_as()?, &mut warn)?;
    let (g, s) = qla::from_l2(&l2).map_err(|e| anyhow!("{e}"))?;
    let back = qla::to_l2_unchecked(&g, &s).map_err(|e| anyhow!("{e}"))?;
    warn_out(ctx, &warn);
    let identical = back == l2;
    let out = json!({
        "identical": identical,
        "structure": serde_json::to_value(wire::quasi_q_to_wire(&g, &s))?,
    });
    emit(&out);
    ctx.human(identical, &format!("roundtrip {}", path.display()));
    Ok(if identical { 0 } else { 1 })
}

pub fn cmd_dualize(ctx: &Ctx, path: &Path) -> Result<i32> {
    let doc = read_document(path)?;
    let mut warn = Warnings::default();
    let (g, s) = match doc.kind.as_str() {
        "quasiq" => wire::quasi_q_from_wire(&doc.payload_as()?, &mut warn)?,
        "l2algebra" => {
            let l2 = wire::l2_from_wire(&doc.payload_as()?, &mut warn)?;
            qla::from_l2(&l2).map_err(|e| anyhow!("{e}"))?
        }
        other => bail!("kind `{other}` cannot be dualized"),
    };
    warn_out(ctx, &warn);
    let dual = qla::dual_quasi_poisson(&g, &s).map_err(|e| anyhow!("{e}"))?;
    let rep = qla::verify_dual(&dual).map_err(|e| anyhow!("{e}"))?;
    // serialize Π by its coefficient table over coordinate pairs
    let dim = dual.calc.dim_h();
    let mut pi_table = Vec::new();
    for a in 0..dim as u32 {
        for b in (a + 1)..dim as u32 {
            let v = dual
                .pi
                .eval(&[&dual.calc.coord(a as usize), &dual.calc.coord(b as usize)])
                .map_err(|e| anyhow!("{e}"))?;
            if !v.is_zero() {
                let entries: Vec<Value> = v
                    .terms()
                    .map(|(m, c)| json!([m, wire::scalar_string(c)]))
                    .collect();
                pi_table.push(json!({"pair": [a, b], "value": entries}));
            }
        }
    }
    let out = json!({
        "report": report_json(&rep),
        "pi": pi_table,
        "tri": wire::tensor_to_wire(&dual.tri),
    });
    emit(&out);
    ctx.human(rep.passed(), &format!("dualize {}", path.display()));
    Ok(if rep.passed() { 0 } else { 1 })
}

pub fn cmd_random(
    ctx: &Ctx,
    kind: &str,
    dims: &str,
    seed: u64,
    density: Option<&str>,
) -> Result<i32> {
    let parts: Vec<usize> = dims
        .split(',')
        .map(|p| p.trim().parse::<usize>().context("bad --dims"))
        .collect::<Result<_>>()?;
    let mut warn = Warnings::default();
    let density = match density {
        None => scalar::half(),
        Some(d) => wire::parse_scalar(d, "--density", &mut warn)?,
    };
    if density < scalar::zero() || density > scalar::one() {
        bail!("--density must lie in [0,1]");
    }
    let mut doc = match kind {
        "l2" => {
            let (de, dc) = dims2(&parts)?;
            let l2 = sample::random_valid_l2(seed, de.max(1), dc.max(1));
            Document::new("l2algebra", serde_json::to_value(wire::l2_to_wire(&l2))?)
        }
        "l2raw" => {
            let (de, dc) = dims2(&parts)?;
            let l2 = sample::random_raw_l2(seed, de, dc, &density);
            Document::new("l2algebra", serde_json::to_value(wire::l2_to_wire(&l2))?)
        }
        "xmod" => {
            let x = sample::random_xmod(seed);
            Document::new("xmod", serde_json::to_value(wire::xmod_to_wire(&x))?)
        }
        "ruth" => {
            let r = sample::random_ruth(seed, seed % 5);
            Document::new("ruth", serde_json::to_value(wire::ruth_to_wire(&r))?)
        }
        "proto" => {
            let p = sample::random_proto(seed);
            Document::new("proto", serde_json::to_value(wire::proto_to_wire(&p))?)
        }
        "quasiq" => {
            let (de, dc) = dims2(&parts)?;
            let l2 = sample::random_valid_l2(seed, de.max(1), dc.max(1));
            let (g, s) = qla::from_l2(&l2).map_err(|e| anyhow!("{e}"))?;
            Document::new("quasiq", serde_json::to_value(wire::quasi_q_to_wire(&g, &s))?)
        }
        other => bail!("unknown kind `{other}` (expected l2|l2raw|xmod|ruth|proto|quasiq)"),
    };
    doc.metadata.seed = Some(seed);
    doc.metadata.name = Some(format!("{kind}-{dims}-{seed}"));
    warn_out(ctx, &warn);
    std::io::stdout().write_all(&doc.to_bytes())?;
    ctx.human(true, &format!("random --kind {kind} --seed {seed}"));
    Ok(0)
}

fn dims2(parts: &[usize]) -> Result<(usize, usize)> {
    match parts {
        [e] => Ok((*e, 1)),
        [e, c] => Ok((*e, *c)),
        _ => bail!("--dims expects `E` or `E,C`"),
    }
}

pub fn cmd_suite(ctx: &Ctx, seeds: u64) -> Result<i32> {
    let results = qlag_core::suite::run_all(seeds);
    let all = results.iter().all(|r| r.passed);
    let out = json!({
        "verdict": if all { "pass" } else { "fail" },
        "seeds": seeds,
        "batteries": results.iter().map(|r| json!({
            "name": r.name,
            "passed": r.passed,
            "cases": r.cases,
            "detail": r.detail,
        })).collect::<Vec<_>>(),
    });
    emit(&out);
    for r in &results {
        ctx.human(r.passed, &format!("{} ({} cases)", r.name, r.cases));
        if !r.passed {
            ctx.note(&r.detail);
        }
    }
    Ok(if all { 0 } else { 1 })
}

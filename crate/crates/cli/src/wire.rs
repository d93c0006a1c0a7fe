//! JSON wire formats.
//!
//! Scalars travel as strings `"p/q"` (or `"p"` when the denominator is 1) and
//! are normalized on parse with a warning when not in lowest terms. Tensors
//! are arrays of `{"in": [i, ...], "out": [[j, "p/q"], ...]}` with zero-based,
//! strictly increasing `"in"`. Exterior elements reuse the tensor entry shape
//! with a single output slot. Every document is self-contained:
//! `{"kind": ..., "metadata": {...}, "payload": {...}}`.

use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use qlag_core::algebra::{Algebra, ExtElement};
use qlag_core::l2::{CrossedModule, L2Algebra, L2Morphism, L2TwoMorphism, Ruth};
use qlag_core::linalg::Mat;
use qlag_core::mvcalc::Derivation;
use qlag_core::groupoid::PointVBGroupoid;
use qlag_core::qla::QuasiQStructure;
use qlag_core::scalar::Scalar;
use qlag_core::tensor::AltTensor;

pub const FORMAT_VERSION: &str = "1";

/// Warnings accumulated while parsing (e.g. normalized rationals).
#[derive(Debug, Default)]
pub struct Warnings(pub Vec<String>);

impl Warnings {
    pub fn push(&mut self, w: String) {
        self.0.push(w);
    }
}

pub fn parse_scalar(s: &str, at: &str, warn: &mut Warnings) -> Result<Scalar> {
    let (num, den) = match s.split_once('/') {
        None => (s.trim(), "1"),
        Some((n, d)) => (n.trim(), d.trim()),
    };
    let n = BigInt::from_str(num).with_context(|| format!("bad numerator at {at}: `{s}`"))?;
    let d = BigInt::from_str(den).with_context(|| format!("bad denominator at {at}: `{s}`"))?;
    if d.is_zero() {
        bail!("zero denominator at {at}: `{s}`");
    }
    let sc = Scalar::new(n.clone(), d.clone());
    if sc.numer() != &n || sc.denom() != &d {
        warn.push(format!("normalized `{s}` to `{sc}` at {at}"));
    }
    Ok(sc)
}

pub fn scalar_string(c: &Scalar) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WireEntry {
    #[serde(rename = "in")]
    pub input: Vec<u32>,
    pub out: Vec<(usize, String)>,
}

pub type WireTensor = Vec<WireEntry>;

pub fn tensor_to_wire(t: &AltTensor) -> WireTensor {
    t.entries()
        .map(|(tuple, v)| WireEntry {
            input: tuple.clone(),
            out: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j, scalar_string(c)))
                .collect(),
        })
        .collect()
}

pub fn tensor_from_wire(
    w: &WireTensor,
    arity: usize,
    in_dim: usize,
    out_dim: usize,
    at: &str,
    warn: &mut Warnings,
) -> Result<AltTensor> {
    let mut t = AltTensor::zero(arity, in_dim, out_dim);
    for (i, e) in w.iter().enumerate() {
        if e.input.windows(2).any(|p| p[0] >= p[1]) {
            bail!("{at}[{i}].in must be strictly increasing");
        }
        let mut v = vec![qlag_core::scalar::zero(); out_dim];
        for (j, c) in &e.out {
            if *j >= out_dim {
                bail!("{at}[{i}].out index {j} out of range {out_dim}");
            }
            v[*j] = parse_scalar(c, &format!("{at}[{i}].out"), warn)?;
        }
        t.set(&e.input, v)
            .map_err(|err| anyhow!("{at}[{i}]: {err}"))?;
    }
    Ok(t)
}

pub type WireMatrix = Vec<Vec<String>>;

pub fn matrix_to_wire(m: &Mat) -> WireMatrix {
    (0..m.rows)
        .map(|i| (0..m.cols).map(|j| scalar_string(m.at(i, j))).collect())
        .collect()
}

pub fn matrix_from_wire(
    w: &WireMatrix,
    rows: usize,
    cols: usize,
    at: &str,
    warn: &mut Warnings,
) -> Result<Mat> {
    if w.len() != rows || w.iter().any(|r| r.len() != cols) {
        bail!("{at} must be a {rows}x{cols} matrix");
    }
    let mut m = Mat::zeros(rows, cols);
    for (i, row) in w.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            m.set(i, j, parse_scalar(c, &format!("{at}[{i}][{j}]"), warn)?);
        }
    }
    Ok(m)
}

/// An exterior-algebra element: entries with increasing monomials and a
/// single coefficient each.
pub type WireForm = Vec<WireEntry>;

pub fn form_to_wire(e: &ExtElement) -> WireForm {
    e.terms()
        .map(|(m, c)| WireEntry { input: m.clone(), out: vec![(0, scalar_string(c))] })
        .collect()
}

pub fn form_from_wire(
    w: &WireForm,
    alg: &std::sync::Arc<Algebra>,
    at: &str,
    warn: &mut Warnings,
) -> Result<ExtElement> {
    let mut out = ExtElement::zero(alg);
    for (i, entry) in w.iter().enumerate() {
        let mut coeff = qlag_core::scalar::zero();
        for (j, c) in &entry.out {
            if *j != 0 {
                bail!("{at}[{i}]: forms have a single output slot");
            }
            coeff = parse_scalar(c, &format!("{at}[{i}]"), warn)?;
        }
        for &g in &entry.input {
            if g as usize >= alg.len() {
                bail!("{at}[{i}]: generator {g} out of range");
            }
        }
        out = out
            .add(&ExtElement::monomial(alg, &entry.input, coeff))
            .map_err(|e| anyhow!("{at}[{i}]: {e}"))?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// payloads
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct L2Payload {
    pub dim_e: usize,
    pub dim_c: usize,
    pub partial: WireMatrix,
    pub bracket: WireTensor,
    pub nabla: Vec<WireMatrix>,
    pub k: WireTensor,
}

pub fn l2_to_wire(l2: &L2Algebra) -> L2Payload {
    L2Payload {
        dim_e: l2.dim_e,
        dim_c: l2.dim_c,
        partial: matrix_to_wire(&l2.partial),
        bracket: tensor_to_wire(&l2.bracket),
        nabla: l2.nabla.iter().map(matrix_to_wire).collect(),
        k: tensor_to_wire(&l2.k),
    }
}

pub fn l2_from_wire(p: &L2Payload, warn: &mut Warnings) -> Result<L2Algebra> {
    if p.nabla.len() != p.dim_e {
        bail!("nabla must hold one matrix per side basis vector");
    }
    let partial = matrix_from_wire(&p.partial, p.dim_e, p.dim_c, "partial", warn)?;
    let bracket = tensor_from_wire(&p.bracket, 2, p.dim_e, p.dim_e, "bracket", warn)?;
    let nabla = p
        .nabla
        .iter()
        .enumerate()
        .map(|(i, m)| matrix_from_wire(m, p.dim_c, p.dim_c, &format!("nabla[{i}]"), warn))
        .collect::<Result<Vec<_>>>()?;
    let k = tensor_from_wire(&p.k, 3, p.dim_e, p.dim_c, "k", warn)?;
    L2Algebra::new(p.dim_e, p.dim_c, partial, bracket, nabla, k).map_err(|e| anyhow!("{e}"))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismPayload {
    pub source: L2Payload,
    pub target: L2Payload,
    pub f0: WireMatrix,
    pub f1: WireMatrix,
    pub beta: WireTensor,
}

pub fn morphism_to_wire(m: &L2Morphism) -> MorphismPayload {
    MorphismPayload {
        source: l2_to_wire(&m.source),
        target: l2_to_wire(&m.target),
        f0: matrix_to_wire(&m.f0),
        f1: matrix_to_wire(&m.f1),
        beta: tensor_to_wire(&m.beta),
    }
}

pub fn morphism_from_wire(p: &MorphismPayload, warn: &mut Warnings) -> Result<L2Morphism> {
    let source = l2_from_wire(&p.source, warn)?;
    let target = l2_from_wire(&p.target, warn)?;
    let f0 = matrix_from_wire(&p.f0, target.dim_e, source.dim_e, "f0", warn)?;
    let f1 = matrix_from_wire(&p.f1, target.dim_c, source.dim_c, "f1", warn)?;
    let beta = tensor_from_wire(&p.beta, 2, source.dim_e, target.dim_c, "beta", warn)?;
    L2Morphism::new(source, target, f0, f1, beta).map_err(|e| anyhow!("{e}"))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoMorphismPayload {
    pub from: MorphismPayload,
    pub to: MorphismPayload,
    pub theta: WireMatrix,
}

pub fn two_morphism_to_wire(t: &L2TwoMorphism) -> TwoMorphismPayload {
    TwoMorphismPayload {
        from: morphism_to_wire(&t.from),
        to: morphism_to_wire(&t.to),
        theta: matrix_to_wire(&t.theta),
    }
}

pub fn two_morphism_from_wire(
    p: &TwoMorphismPayload,
    warn: &mut Warnings,
) -> Result<L2TwoMorphism> {
    let from = morphism_from_wire(&p.from, warn)?;
    let to = morphism_from_wire(&p.to, warn)?;
    let theta = matrix_from_wire(
        &p.theta,
        from.target.dim_c,
        from.source.dim_e,
        "theta",
        warn,
    )?;
    L2TwoMorphism::new(from, to, theta).map_err(|e| anyhow!("{e}"))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct XmodPayload {
    pub dim_g: usize,
    pub dim_h: usize,
    pub g_bracket: WireTensor,
    pub h_bracket: WireTensor,
    pub partial: WireMatrix,
    pub action: Vec<WireMatrix>,
}

pub fn xmod_to_wire(x: &CrossedModule) -> XmodPayload {
    XmodPayload {
        dim_g: x.dim_g,
        dim_h: x.dim_h,
        g_bracket: tensor_to_wire(&x.g_bracket),
        h_bracket: tensor_to_wire(&x.h_bracket),
        partial: matrix_to_wire(&x.partial),
        action: x.action.iter().map(matrix_to_wire).collect(),
    }
}

pub fn xmod_from_wire(p: &XmodPayload, warn: &mut Warnings) -> Result<CrossedModule> {
    if p.action.len() != p.dim_g {
        bail!("action must hold one matrix per g basis vector");
    }
    Ok(CrossedModule {
        dim_g: p.dim_g,
        dim_h: p.dim_h,
        g_bracket: tensor_from_wire(&p.g_bracket, 2, p.dim_g, p.dim_g, "g_bracket", warn)?,
        h_bracket: tensor_from_wire(&p.h_bracket, 2, p.dim_h, p.dim_h, "h_bracket", warn)?,
        partial: matrix_from_wire(&p.partial, p.dim_g, p.dim_h, "partial", warn)?,
        action: p
            .action
            .iter()
            .enumerate()
            .map(|(i, m)| matrix_from_wire(m, p.dim_h, p.dim_h, &format!("action[{i}]"), warn))
            .collect::<Result<Vec<_>>>()?,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RuthPayload {
    pub dim_g: usize,
    pub dim_v0: usize,
    pub dim_v1: usize,
    pub g_bracket: WireTensor,
    pub partial: WireMatrix,
    pub nabla0: Vec<WireMatrix>,
    pub nabla1: Vec<WireMatrix>,
    pub omega: WireTensor,
}

pub fn ruth_to_wire(r: &Ruth) -> RuthPayload {
    RuthPayload {
        dim_g: r.dim_g,
        dim_v0: r.dim_v0,
        dim_v1: r.dim_v1,
        g_bracket: tensor_to_wire(&r.g_bracket),
        partial: matrix_to_wire(&r.partial),
        nabla0: r.nabla0.iter().map(matrix_to_wire).collect(),
        nabla1: r.nabla1.iter().map(matrix_to_wire).collect(),
        omega: tensor_to_wire(&r.omega),
    }
}

pub fn ruth_from_wire(p: &RuthPayload, warn: &mut Warnings) -> Result<Ruth> {
    if p.nabla0.len() != p.dim_g || p.nabla1.len() != p.dim_g {
        bail!("nabla0/nabla1 must hold one matrix per g basis vector");
    }
    Ok(Ruth {
        dim_g: p.dim_g,
        dim_v0: p.dim_v0,
        dim_v1: p.dim_v1,
        g_bracket: tensor_from_wire(&p.g_bracket, 2, p.dim_g, p.dim_g, "g_bracket", warn)?,
        partial: matrix_from_wire(&p.partial, p.dim_v1, p.dim_v0, "partial", warn)?,
        nabla0: p
            .nabla0
            .iter()
            .enumerate()
            .map(|(i, m)| {
                matrix_from_wire(m, p.dim_v0, p.dim_v0, &format!("nabla0[{i}]"), warn)
            })
            .collect::<Result<Vec<_>>>()?,
        nabla1: p
            .nabla1
            .iter()
            .enumerate()
            .map(|(i, m)| {
                matrix_from_wire(m, p.dim_v1, p.dim_v1, &format!("nabla1[{i}]"), warn)
            })
            .collect::<Result<Vec<_>>>()?,
        omega: tensor_from_wire(
            &p.omega,
            2,
            p.dim_g,
            p.dim_v0 * p.dim_v1,
            "omega",
            warn,
        )?,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupoidPayload {
    pub dim_c: usize,
    pub dim_e: usize,
    pub partial: WireMatrix,
}

pub fn groupoid_to_wire(g: &PointVBGroupoid) -> GroupoidPayload {
    GroupoidPayload {
        dim_c: g.dim_c,
        dim_e: g.dim_e,
        partial: matrix_to_wire(&g.partial),
    }
}

pub fn groupoid_from_wire(p: &GroupoidPayload, warn: &mut Warnings) -> Result<PointVBGroupoid> {
    let partial = matrix_from_wire(&p.partial, p.dim_e, p.dim_c, "partial", warn)?;
    PointVBGroupoid::new(p.dim_c, p.dim_e, partial).map_err(|e| anyhow!("{e}"))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuasiQPayload {
    pub groupoid: GroupoidPayload,
    /// Generator values of the degree-1 field, one form per generator of the
    /// groupoid function algebra (core duals first, then side duals).
    pub q_field: Vec<WireForm>,
    /// `Λ³E → C`.
    pub q_section: WireTensor,
}

pub fn quasi_q_to_wire(g: &PointVBGroupoid, s: &QuasiQStructure) -> QuasiQPayload {
    QuasiQPayload {
        groupoid: groupoid_to_wire(g),
        q_field: (0..g.dim_h() as u32).map(|i| form_to_wire(s.q_field.value(i))).collect(),
        q_section: tensor_to_wire(&s.q_section),
    }
}

pub fn quasi_q_from_wire(
    p: &QuasiQPayload,
    warn: &mut Warnings,
) -> Result<(PointVBGroupoid, QuasiQStructure)> {
    let g = groupoid_from_wire(&p.groupoid, warn)?;
    if p.q_field.len() != g.dim_h() {
        bail!("q_field must hold one form per generator ({} expected)", g.dim_h());
    }
    let values = p
        .q_field
        .iter()
        .enumerate()
        .map(|(i, f)| form_from_wire(f, g.algebra(), &format!("q_field[{i}]"), warn))
        .collect::<Result<Vec<_>>>()?;
    let q_field = Derivation::new(g.algebra(), 1, values).map_err(|e| anyhow!("{e}"))?;
    let q_section =
        tensor_from_wire(&p.q_section, 3, g.dim_e, g.dim_c, "q_section", warn)?;
    let s = QuasiQStructure::new(&g, q_field, q_section).map_err(|e| anyhow!("{e}"))?;
    Ok((g, s))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionProblemPayload {
    pub structure: QuasiQPayload,
    /// `h ∈ Λ²H*` (groupoid algebra monomials).
    pub h: WireForm,
    /// `ξ ∈ Λ³E*` (base algebra monomials).
    pub xi: WireForm,
    /// Optional second pair for classification.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h2: Option<WireForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi2: Option<WireForm>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProtoPayload {
    pub dim_g: usize,
    pub mu: WireTensor,
    pub gamma: WireTensor,
    pub phi: WireTensor,
    pub chi: WireTensor,
}

pub fn proto_to_wire(p: &qlag_core::bialg::ProtoBialgebra) -> ProtoPayload {
    ProtoPayload {
        dim_g: p.dim_g,
        mu: tensor_to_wire(&p.mu),
        gamma: tensor_to_wire(&p.gamma),
        phi: tensor_to_wire(&p.phi),
        chi: tensor_to_wire(&p.chi),
    }
}

pub fn proto_from_wire(
    p: &ProtoPayload,
    warn: &mut Warnings,
) -> Result<qlag_core::bialg::ProtoBialgebra> {
    let npairs = qlag_core::bialg::pair_count(p.dim_g);
    qlag_core::bialg::ProtoBialgebra::new(
        p.dim_g,
        tensor_from_wire(&p.mu, 2, p.dim_g, p.dim_g, "mu", warn)?,
        tensor_from_wire(&p.gamma, 1, p.dim_g, npairs, "gamma", warn)?,
        tensor_from_wire(&p.phi, 3, p.dim_g, 1, "phi", warn)?,
        tensor_from_wire(&p.chi, 3, p.dim_g, 1, "chi", warn)?,
    )
    .map_err(|e| anyhow!("{e}"))
}

/// A multivector or section element serialized as a table with a declared
/// bidegree: values are forms over the groupoid algebra.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WireMv {
    pub arity: usize,
    pub degree: i64,
    pub table: Vec<(Vec<u32>, WireForm)>,
}

pub fn mv_to_wire(g: &PointVBGroupoid, e: &ExtElement) -> Result<WireMv> {
    let md = qlag_core::mvcalc::MultiDeriv::from_elem(g.mv_algebra(), e.clone())
        .map_err(|e| anyhow!("{e}"))?;
    let pool: Vec<u32> = (0..g.dim_h() as u32).collect();
    let mut table = Vec::new();
    for tuple in qlag_core::groupoid::subsets(&pool, md.arity) {
        let v = md.eval_gens(&tuple).map_err(|e| anyhow!("{e}"))?;
        if !v.is_zero() {
            let form = qlag_core::mvcalc::project_to_base(g.algebra(), &v)
                .map_err(|e| anyhow!("{e}"))?;
            table.push((tuple, form_to_wire(&form)));
        }
    }
    Ok(WireMv { arity: md.arity, degree: md.degree, table })
}

pub fn mv_from_wire(
    g: &PointVBGroupoid,
    w: &WireMv,
    at: &str,
    warn: &mut Warnings,
) -> Result<ExtElement> {
    let mut entries = Vec::new();
    for (i, (tuple, form)) in w.table.iter().enumerate() {
        let f = form_from_wire(form, g.algebra(), &format!("{at}.table[{i}]"), warn)?;
        let lifted = qlag_core::mvcalc::lift_to_mv(g.mv_algebra(), &f)
            .map_err(|e| anyhow!("{e}"))?;
        entries.push((tuple.clone(), lifted));
    }
    let md = qlag_core::mvcalc::MultiDeriv::from_table(
        g.mv_algebra(),
        w.arity,
        w.degree,
        entries,
    )
    .map_err(|e| anyhow!("{at}: {e}"))?;
    Ok(md.elem().clone())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeakL2Payload {
    pub groupoid: GroupoidPayload,
    pub f_low: WireForm,
    pub f_up: WireForm,
    pub q_low: WireMv,
    pub q_up: WireMv,
    pub t: WireMv,
    pub pi_up: WireMv,
    pub pi_low: WireMv,
    pub phi_up: WireMv,
    pub phi_low: WireMv,
}

pub fn weakl2_to_wire(
    g: &PointVBGroupoid,
    psi: &qlag_core::bialg::WeakL2Bialgebra,
) -> Result<WeakL2Payload> {
    let base_form = |e: &ExtElement| -> Result<WireForm> {
        Ok(form_to_wire(e))
    };
    Ok(WeakL2Payload {
        groupoid: groupoid_to_wire(g),
        f_low: base_form(&qlag_core::mvcalc::project_to_base(g.algebra(), &psi.f_low)
            .map_err(|e| anyhow!("{e}"))?)?,
        f_up: base_form(&qlag_core::mvcalc::project_to_base(g.algebra(), &psi.f_up)
            .map_err(|e| anyhow!("{e}"))?)?,
        q_low: mv_to_wire(g, &psi.q_low)?,
        q_up: mv_to_wire(g, &psi.q_up)?,
        t: mv_to_wire(g, &psi.t)?,
        pi_up: mv_to_wire(g, &psi.pi_up)?,
        pi_low: mv_to_wire(g, &psi.pi_low)?,
        phi_up: mv_to_wire(g, &psi.phi_up)?,
        phi_low: mv_to_wire(g, &psi.phi_low)?,
    })
}

pub fn weakl2_from_wire(
    p: &WeakL2Payload,
    warn: &mut Warnings,
) -> Result<(PointVBGroupoid, qlag_core::bialg::WeakL2Bialgebra)> {
    let g = groupoid_from_wire(&p.groupoid, warn)?;
    let lift = |f: &WireForm, at: &str, warn: &mut Warnings| -> Result<ExtElement> {
        let e = form_from_wire(f, g.algebra(), at, warn)?;
        qlag_core::mvcalc::lift_to_mv(g.mv_algebra(), &e).map_err(|e| anyhow!("{e}"))
    };
    let psi = qlag_core::bialg::WeakL2Bialgebra {
        f_low: lift(&p.f_low, "f_low", warn)?,
        f_up: lift(&p.f_up, "f_up", warn)?,
        q_low: mv_from_wire(&g, &p.q_low, "q_low", warn)?,
        q_up: mv_from_wire(&g, &p.q_up, "q_up", warn)?,
        t: mv_from_wire(&g, &p.t, "t", warn)?,
        pi_up: mv_from_wire(&g, &p.pi_up, "pi_up", warn)?,
        pi_low: mv_from_wire(&g, &p.pi_low, "pi_low", warn)?,
        phi_up: mv_from_wire(&g, &p.phi_up, "phi_up", warn)?,
        phi_low: mv_from_wire(&g, &p.phi_low, "phi_low", warn)?,
    };
    Ok((g, psi))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GaugePayload {
    pub dim_e: usize,
    pub dim_c: usize,
    /// `Λ²E → C`.
    pub b: WireTensor,
}

// ---------------------------------------------------------------------------
// documents
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub version: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub kind: String,
    pub metadata: Metadata,
    pub payload: serde_json::Value,
}

impl Document {
    pub fn new(kind: &str, payload: serde_json::Value) -> Self {
        Document {
            kind: kind.into(),
            metadata: Metadata { name: None, seed: None, version: FORMAT_VERSION.into() },
            payload,
        }
    }

    pub fn parse(bytes: &[u8]) -> Result<Document> {
        let doc: Document = serde_json::from_slice(bytes).context("malformed document")?;
        const KINDS: [&str; 11] = [
            "l2algebra",
            "l2morphism",
            "l2twomorphism",
            "xmod",
            "ruth",
            "qla",
            "quasiq",
            "extension-problem",
            "proto",
            "weakl2bialg",
            "gaugeparam",
        ];
        if !KINDS.contains(&doc.kind.as_str()) {
            bail!("unknown document kind `{}` (at .kind)", doc.kind);
        }
        Ok(doc)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("serialization cannot fail");
        out.push(b'\n');
        out
    }

    pub fn payload_as<T: serde::de::DeserializeOwned>(&self) -> Result<T> {
        serde_json::from_value(self.payload.clone())
            .with_context(|| format!("invalid `{}` payload", self.kind))
    }
}

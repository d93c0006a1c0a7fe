//! Maurer–Cartan classification of bialgebra-type structures at a point.
//!
//! Proto-bialgebra data `(μ, γ, φ, χ)` on a vector space `g` packages into a
//! single degree-3 element `Θ` of the big-bracket algebra `Λ(g ⊕ g*)`;
//! validity is `½{Θ,Θ} = 0`, and [`mc_check_proto`] reports the residual
//! decomposed by component type. For two-term data the nine-component tuple
//! `((f,F),(q,Q),t,(Π,π),(Φ,φ))` is checked against the two sets of 5+6
//! equations by [`mc_check_v`], whose verdict coincides with the Maurer–Cartan
//! residual in the multivector-field dgla. [`classify`] maps nonzero-component
//! masks (plus the verdict) to the table labels, and [`drinfeld_twist`] acts
//! by the terminating gauge exponential in the big bracket.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

use crate::algebra::{Algebra, ExtElement, Gen};
use crate::error::Error;
use crate::groupoid::PointVBGroupoid;
use crate::mvcalc::MultiDeriv;
use crate::qla::section_elem;
use crate::report::{Check, Report};
use crate::scalar::{self};
use crate::tensor::AltTensor;
use crate::Result;

/// Proto-bialgebra data on an ungraded space `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtoBialgebra {
    pub dim_g: usize,
    /// `Λ²g → g`.
    pub mu: AltTensor,
    /// `g → Λ²g`: entry at `(i)` is the coefficient vector over increasing
    /// pairs `(a<b)` of `γ(e_i)`.
    pub gamma: AltTensor,
    /// `Λ³g` coefficients over increasing triples.
    pub phi: AltTensor,
    /// `Λ³g*` coefficients over increasing triples.
    pub chi: AltTensor,
}

/// Number of increasing pairs in dimension `n`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The increasing pairs of `0..n` in order.
pub fn pairs(n: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for a in 0..n as u32 {
        for b in (a + 1)..n as u32 {
            out.push((a, b));
        }
    }
    out
}

impl ProtoBialgebra {
    pub fn new(
        dim_g: usize,
        mu: AltTensor,
        gamma: AltTensor,
        phi: AltTensor,
        chi: AltTensor,
    ) -> Result<Self> {
        if mu.arity != 2 || mu.in_dim != dim_g || mu.out_dim != dim_g {
            return Err(Error::ShapeMismatch("mu must be Λ²g → g".to_string()));
        }
        if gamma.arity != 1 || gamma.in_dim != dim_g || gamma.out_dim != pair_count(dim_g) {
            return Err(Error::ShapeMismatch("gamma must be g → Λ²g".to_string()));
        }
        if phi.arity != 3 || phi.in_dim != dim_g || phi.out_dim != 1 {
            return Err(Error::ShapeMismatch("phi must be a 3-vector table".to_string()));
        }
        if chi.arity != 3 || chi.in_dim != dim_g || chi.out_dim != 1 {
            return Err(Error::ShapeMismatch("chi must be a 3-form table".to_string()));
        }
        Ok(ProtoBialgebra { dim_g, mu, gamma, phi, chi })
    }

    pub fn lie_algebra(dim_g: usize, mu: AltTensor) -> Result<Self> {
        let gamma = AltTensor::zero(1, dim_g, pair_count(dim_g));
        let phi = AltTensor::zero(3, dim_g, 1);
        let chi = AltTensor::zero(3, dim_g, 1);
        ProtoBialgebra::new(dim_g, mu, gamma, phi, chi)
    }
}

/// The big-bracket algebra on `g`: base generators `ξ` (duals, degree 1) and
/// momenta (elements of `g`, degree 1), with `{p_i, ξ^j} = δ`.
pub fn big_bracket_algebra(dim_g: usize) -> Arc<Algebra> {
    Algebra::multivector((0..dim_g).map(|i| Gen::new(format!("u{i}"), 1)).collect(), 2)
}

/// The packaged element `Θ = χ + μ + γ + φ` (arities 0..3 in the momenta).
pub fn proto_element(p: &ProtoBialgebra) -> Result<ExtElement> {
    let alg = big_bracket_algebra(p.dim_g);
    let n = p.dim_g;
    let mut theta = ExtElement::zero(&alg);
    // χ: a 3-form in the duals
    for (tuple, v) in p.chi.entries() {
        theta = theta.add(&ExtElement::monomial(&alg, tuple, v[0].clone()))?;
    }
    // μ: the degree-1 derivation of the bracket (Chevalley–Eilenberg values)
    let mut entries = Vec::new();
    for a in 0..n as u32 {
        let mut val = ExtElement::zero(&alg);
        for b in 0..n as u32 {
            for c in (b + 1)..n as u32 {
                let br = p.mu.eval(&[b, c])?;
                if !br[a as usize].is_zero() {
                    val = val.add(&ExtElement::monomial(&alg, &[b, c], -br[a as usize].clone()))?;
                }
            }
        }
        entries.push((vec![a], val));
    }
    theta = theta.add(MultiDeriv::from_table(&alg, 1, 1, entries)?.elem())?;
    // γ: the bivector with Π(ξᵃ,ξᵇ) = Σ_i γ(e_i)^{ab} ξⁱ
    let prs = pairs(n);
    let mut entries = Vec::new();
    for (pi, &(a, b)) in prs.iter().enumerate() {
        let mut val = ExtElement::zero(&alg);
        for i in 0..n as u32 {
            let row = p.gamma.eval(&[i])?;
            if !row[pi].is_zero() {
                val = val.add(&ExtElement::gen(&alg, i).scale(&row[pi]))?;
            }
        }
        if !val.is_zero() {
            entries.push((vec![a, b], val));
        }
    }
    theta = theta.add(MultiDeriv::from_table(&alg, 2, -1, entries)?.elem())?;
    // φ: the constant 3-vector
    let mut entries = Vec::new();
    for (tuple, v) in p.phi.entries() {
        if !v[0].is_zero() {
            entries.push((tuple.clone(), ExtElement::constant(&alg, v[0].clone())));
        }
    }
    theta = theta.add(MultiDeriv::from_table(&alg, 3, -3, entries)?.elem())?;
    Ok(theta)
}

/// The residual `½{Θ,Θ}` decomposed by momentum arity:
/// `proto-4form` (Λ⁴g*), `proto-jacobi` (Jacobiator type), `proto-cocycle`,
/// `proto-cojacobi`, `proto-4vector` (Λ⁴g).
pub fn mc_check_proto(p: &ProtoBialgebra) -> Result<Report> {
    let theta = proto_element(p)?;
    let residual = theta.bracket(&theta)?.scale(&scalar::half());
    let mut report = Report::new();
    let parts = residual.arity_parts();
    let names = [
        "proto-4form",
        "proto-jacobi",
        "proto-cocycle",
        "proto-cojacobi",
        "proto-4vector",
    ];
    for (j, name) in names.iter().enumerate() {
        let mut check = Check::new(*name);
        if let Some(part) = parts.get(&j) {
            if !part.is_zero() {
                check.witness(vec![j as i64], part.display());
            }
        }
        report.push(check);
    }
    Ok(report)
}

/// Splits a big-bracket element of total degree 3 back into proto components.
pub fn proto_of_element(dim_g: usize, theta: &ExtElement) -> Result<ProtoBialgebra> {
    let alg = big_bracket_algebra(dim_g);
    if !Algebra::compatible(&alg, theta.algebra()) {
        return Err(Error::GeneratorSetMismatch);
    }
    let n = dim_g;
    let parts = theta.arity_parts();
    let zero = ExtElement::zero(&alg);
    let chi_part = parts.get(&0).unwrap_or(&zero);
    let mu_part = parts.get(&1).unwrap_or(&zero);
    let gamma_part = parts.get(&2).unwrap_or(&zero);
    let phi_part = parts.get(&3).unwrap_or(&zero);

    let mut chi = AltTensor::zero(3, n, 1);
    for (mono, c) in chi_part.terms() {
        chi.set(mono, vec![c.clone()])?;
    }
    let mut mu = AltTensor::zero(2, n, n);
    if !mu_part.is_zero() {
        let md = MultiDeriv::from_elem(&alg, mu_part.clone())?;
        for b in 0..n as u32 {
            for c in (b + 1)..n as u32 {
                let mut out = vec![scalar::zero(); n];
                for a in 0..n as u32 {
                    // ⟨ξᵃ-value convention⟩: Q ξᵃ = -Σ μᵃ ξξ
                    let v = md.eval_gens(&[a])?;
                    out[a as usize] = -v.coeff(&[b, c]);
                }
                if out.iter().any(|x| !x.is_zero()) {
                    mu.set(&[b, c], out)?;
                }
            }
        }
    }
    let prs = pairs(n);
    let mut gamma = AltTensor::zero(1, n, prs.len());
    if !gamma_part.is_zero() {
        let md = MultiDeriv::from_elem(&alg, gamma_part.clone())?;
        for i in 0..n as u32 {
            let mut row = vec![scalar::zero(); prs.len()];
            for (pi, &(a, b)) in prs.iter().enumerate() {
                let v = md.eval_gens(&[a, b])?;
                row[pi] = v.coeff(&[i]);
            }
            if row.iter().any(|x| !x.is_zero()) {
                gamma.set(&[i], row)?;
            }
        }
    }
    let mut phi = AltTensor::zero(3, n, 1);
    if !phi_part.is_zero() {
        let md = MultiDeriv::from_elem(&alg, phi_part.clone())?;
        for a in 0..n as u32 {
            for b in (a + 1)..n as u32 {
                for c in (b + 1)..n as u32 {
                    let v = md.eval_gens(&[a, b, c])?;
                    let coef = v.coeff(&[]);
                    if !coef.is_zero() {
                        phi.set(&[a, b, c], vec![coef])?;
                    }
                }
            }
        }
    }
    ProtoBialgebra::new(n, mu, gamma, phi, chi)
}

/// Gauge twist in the big bracket: `e^{ad_λ}Θ` for a degree-2 element `λ`
/// (zero differential, so the series is the plain exponential). Errors when
/// the adjoint action fails to terminate within the cap.
pub fn drinfeld_twist(lambda: &ExtElement, theta: &ExtElement, cap: u32) -> Result<ExtElement> {
    if lambda.homogeneous_degree().filter(|&d| d == 2).is_none() && !lambda.is_zero() {
        return Err(Error::DegreeMismatch {
            expected: 2,
            got: lambda.homogeneous_degree().unwrap_or(0),
        });
    }
    let mut out = theta.clone();
    let mut term = theta.clone();
    let mut kfact = scalar::one();
    for k in 1..=cap as i64 {
        term = lambda.bracket(&term)?;
        if term.is_zero() {
            return Ok(out);
        }
        kfact = kfact * scalar::int(k);
        out = out.add(&term.scale(&kfact.recip()))?;
    }
    Err(Error::NonNilpotent { cap })
}

// ---------------------------------------------------------------------------
// classification
// ---------------------------------------------------------------------------

/// The nine component slots of a degree-1 element of the multivector-field
/// dgla, in the order of the component list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Slot {
    FLower,
    FUpper,
    QLower,
    QUpper,
    T,
    PiUpper,
    PiLower,
    PhiUpper,
    PhiLower,
}

impl Slot {
    pub fn tag(&self) -> &'static str {
        match self {
            Slot::FLower => "f",
            Slot::FUpper => "F",
            Slot::QLower => "q",
            Slot::QUpper => "Q",
            Slot::T => "t",
            Slot::PiUpper => "Pi",
            Slot::PiLower => "pi",
            Slot::PhiUpper => "Phi",
            Slot::PhiLower => "phi",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Slot> {
        Some(match tag {
            "f" => Slot::FLower,
            "F" => Slot::FUpper,
            "q" => Slot::QLower,
            "Q" => Slot::QUpper,
            "t" => Slot::T,
            "Pi" => Slot::PiUpper,
            "pi" => Slot::PiLower,
            "Phi" => Slot::PhiUpper,
            "phi" => Slot::PhiLower,
            _ => return None,
        })
    }
}

/// The classification context: which table applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifyContext {
    /// Point base with zero core.
    PointCoreZero,
    /// Point base with nonzero core (two-term structures).
    PointTwoTerm,
    /// General base groupoid (labels only; the artifact cannot verify these).
    Groupoid,
}

/// Exact table lookup from the nonzero-component mask and the Maurer–Cartan
/// verdict. Returns the table row name, `"trivial"` for the empty mask, or
/// `None` for masks outside the tables.
pub fn classify(
    context: ClassifyContext,
    mask: &BTreeSet<Slot>,
    mc_holds: bool,
) -> Option<String> {
    if !mc_holds {
        return Some("not Maurer-Cartan".to_string());
    }
    if mask.is_empty() {
        return Some("trivial".to_string());
    }
    use Slot::*;
    let m: Vec<Slot> = mask.iter().copied().collect();
    let is = |slots: &[Slot]| {
        let want: BTreeSet<Slot> = slots.iter().copied().collect();
        want == *mask
    };
    let label = match context {
        ClassifyContext::PointCoreZero => {
            if is(&[QUpper]) {
                "Lie algebra"
            } else if is(&[QUpper, PiUpper]) {
                "Lie bialgebra"
            } else if is(&[FUpper, QUpper, PiUpper]) {
                "quasi-Lie bialgebra"
            } else if is(&[FUpper, QUpper, PiUpper, PhiUpper]) {
                "proto-bialgebra"
            } else {
                return unnamed(&m);
            }
        }
        ClassifyContext::PointTwoTerm => {
            if is(&[QUpper]) {
                "strict L2-algebra"
            } else if is(&[QLower, QUpper]) {
                "L2-algebra"
            } else if is(&[QUpper, PiUpper]) {
                "strict Lie 2-bialgebra"
            } else if is(&[QLower, QUpper, PiUpper, PiLower]) {
                "weak Lie 2-bialgebra"
            } else if is(&[QLower, QUpper, T, PiUpper, PiLower]) {
                "2-term L-infinity[0,1]-bialgebra"
            } else if mask.len() == 9 {
                "quasi weak Lie 2-bialgebra"
            } else {
                return unnamed(&m);
            }
        }
        ClassifyContext::Groupoid => {
            if is(&[QUpper]) {
                "LA-groupoid"
            } else if is(&[QLower, QUpper]) {
                "quasi LA-groupoid"
            } else if is(&[PiUpper]) {
                "PVB-groupoid"
            } else if is(&[PiUpper, PiLower]) {
                "quasi PVB-groupoid"
            } else if is(&[QUpper, PiUpper]) {
                "Lie-bialgebroid groupoid"
            } else if is(&[QUpper, PiUpper, PiLower]) {
                "quasi-Poisson LA-groupoid"
            } else if is(&[FUpper, QUpper, PiUpper, PhiUpper]) {
                "multiplicative proto-bialgebroid"
            } else {
                return unnamed(&m);
            }
        }
    };
    Some(label.to_string())
}

fn unnamed(_mask: &[Slot]) -> Option<String> {
    None
}

// ---------------------------------------------------------------------------
// the 5+6 equation checker
// ---------------------------------------------------------------------------

/// The nine-component tuple over a linear groupoid. Sections are held as
/// multivector-algebra elements (side forms and core momenta only); the
/// multivector parts live in the same algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakL2Bialgebra {
    /// `f ∈ Λ⁴E*` (base form), as a groupoid-side section element of `Λ⁰A`.
    pub f_low: ExtElement,
    /// `F ∈ Λ³H*`, lifted into the multivector algebra (arity 0).
    pub f_up: ExtElement,
    /// `q`: section of `Λ¹A` in degree 2.
    pub q_low: ExtElement,
    /// `Q`: arity-1 multivector of degree 1.
    pub q_up: ExtElement,
    /// `t`: section of `Λ²A` in degree 0.
    pub t: ExtElement,
    /// `Π`: arity-2 multivector of degree -1.
    pub pi_up: ExtElement,
    /// `π`: section of `Λ³A` in degree -2.
    pub pi_low: ExtElement,
    /// `Φ`: arity-3 multivector of degree -3.
    pub phi_up: ExtElement,
    /// `φ`: section of `Λ⁴A` in degree -4.
    pub phi_low: ExtElement,
}

impl WeakL2Bialgebra {
    pub fn zero(g: &PointVBGroupoid) -> Self {
        let z = ExtElement::zero(g.mv_algebra());
        WeakL2Bialgebra {
            f_low: z.clone(),
            f_up: z.clone(),
            q_low: z.clone(),
            q_up: z.clone(),
            t: z.clone(),
            pi_up: z.clone(),
            pi_low: z.clone(),
            phi_up: z.clone(),
            phi_low: z,
        }
    }

    /// Builds the `(q, Q)`-only tuple of a quasi Q-structure.
    pub fn from_quasi_q(
        g: &PointVBGroupoid,
        s: &crate::qla::QuasiQStructure,
    ) -> Result<Self> {
        let mut out = WeakL2Bialgebra::zero(g);
        out.q_low = section_elem(g, &s.q_section)?;
        out.q_up = MultiDeriv::from_derivation(g.mv_algebra(), &s.q_field)?.elem().clone();
        Ok(out)
    }

    /// The nonzero-component mask.
    pub fn mask(&self) -> BTreeSet<Slot> {
        let mut m = BTreeSet::new();
        let pairs: [(&ExtElement, Slot); 9] = [
            (&self.f_low, Slot::FLower),
            (&self.f_up, Slot::FUpper),
            (&self.q_low, Slot::QLower),
            (&self.q_up, Slot::QUpper),
            (&self.t, Slot::T),
            (&self.pi_up, Slot::PiUpper),
            (&self.pi_low, Slot::PiLower),
            (&self.phi_up, Slot::PhiUpper),
            (&self.phi_low, Slot::PhiLower),
        ];
        for (e, s) in pairs {
            if !e.is_zero() {
                m.insert(s);
            }
        }
        m
    }
}

/// Evaluates the two sets of 5+6 equations. Checks `v-mult` (the
/// multiplicativity type conditions on `F, Q, Π, Φ`), then `a1`..`a5` (the
/// extension-difference equations in multivector land) and `b1`..`b6` (the
/// invariance equations, compared through right extensions).
pub fn mc_check_v(g: &PointVBGroupoid, psi: &WeakL2Bialgebra) -> Result<Report> {
    let mut report = Report::new();
    let mv = g.mv_algebra();

    let mut mult = Check::new("v-mult");
    // F: cocycle condition
    if !psi.f_up.is_zero() {
        let f_base = crate::mvcalc::project_to_base(g.algebra(), &psi.f_up)?;
        let defect = g.multiplicative_function_defect(&f_base)?;
        if !defect.is_zero() {
            mult.witness(vec![0], defect.display());
        }
    }
    // Q: ideal test
    if !psi.q_up.is_zero() {
        let qd = MultiDeriv::from_elem(mv, psi.q_up.clone())?.to_derivation(g.algebra())?;
        if let Some((idx, r)) = g.multiplicativity_witness(&qd)? {
            mult.witness(vec![1, idx as i64], r.display());
        }
    }
    // Π, Φ: bracket compatibility
    for (slot, e) in [(2i64, &psi.pi_up), (3, &psi.phi_up)] {
        if !e.is_zero() {
            let md = MultiDeriv::from_elem(mv, e.clone())?;
            if let Some(idx) = g.bracket_compat_witness(&md)? {
                mult.witness(vec![slot, idx as i64], "extension bracket escapes sections");
            }
        }
    }
    report.push(mult);

    // A equations: σʳ - σˡ + brackets = 0 in multivector land
    let half = scalar::half();
    let a_eqs: [(&str, &ExtElement, Vec<(ExtElement, Option<&ExtElement>)>); 5] = [
        (
            "a1",
            &psi.f_low,
            vec![(psi.q_up.bracket(&psi.f_up)?, None)],
        ),
        (
            "a2",
            &psi.q_low,
            vec![
                (psi.q_up.bracket(&psi.q_up)?.scale(&half), None),
                (psi.pi_up.bracket(&psi.f_up)?, None),
            ],
        ),
        (
            "a3",
            &psi.t,
            vec![
                (psi.pi_up.bracket(&psi.q_up)?, None),
                (psi.phi_up.bracket(&psi.f_up)?, None),
            ],
        ),
        (
            "a4",
            &psi.pi_low,
            vec![
                (psi.pi_up.bracket(&psi.pi_up)?.scale(&half), None),
                (psi.q_up.bracket(&psi.phi_up)?, None),
            ],
        ),
        (
            "a5",
            &psi.phi_low,
            vec![(psi.pi_up.bracket(&psi.phi_up)?, None)],
        ),
    ];
    for (name, sec, brackets) in a_eqs {
        let mut check = Check::new(name);
        let mut r = g.ext_diff(sec)?;
        for (b, _) in brackets {
            r = r.add(&b)?;
        }
        if !r.is_zero() {
            check.witness(vec![], r.display());
        }
        report.push(check);
    }

    // B equations, compared through right extensions:
    // Σ {X, σʳ} = 0 for each displayed sum.
    let rext = |sec: &ExtElement| g.right_ext(sec);
    let b_eqs: [(&str, Vec<ExtElement>); 6] = [
        (
            "b1",
            vec![
                psi.f_up.bracket(&rext(&psi.q_low)?)?,
                psi.q_up.bracket(&rext(&psi.f_low)?)?,
            ],
        ),
        (
            "b2",
            vec![
                psi.f_up.bracket(&rext(&psi.t)?)?,
                psi.q_up.bracket(&rext(&psi.q_low)?)?,
                psi.pi_up.bracket(&rext(&psi.f_low)?)?,
            ],
        ),
        (
            "b3",
            vec![
                psi.f_up.bracket(&rext(&psi.pi_low)?)?,
                psi.q_up.bracket(&rext(&psi.t)?)?,
                psi.pi_up.bracket(&rext(&psi.q_low)?)?,
                psi.phi_up.bracket(&rext(&psi.f_low)?)?,
            ],
        ),
        (
            "b4",
            vec![
                psi.f_up.bracket(&rext(&psi.phi_low)?)?,
                psi.q_up.bracket(&rext(&psi.pi_low)?)?,
                psi.pi_up.bracket(&rext(&psi.t)?)?,
                psi.phi_up.bracket(&rext(&psi.q_low)?)?,
            ],
        ),
        (
            "b5",
            vec![
                psi.q_up.bracket(&rext(&psi.phi_low)?)?,
                psi.pi_up.bracket(&rext(&psi.pi_low)?)?,
                psi.phi_up.bracket(&rext(&psi.t)?)?,
            ],
        ),
        (
            "b6",
            vec![
                psi.pi_up.bracket(&rext(&psi.phi_low)?)?,
                psi.phi_up.bracket(&rext(&psi.pi_low)?)?,
            ],
        ),
    ];
    for (name, terms) in b_eqs {
        let mut check = Check::new(name);
        let mut r = ExtElement::zero(mv);
        for t in terms {
            r = r.add(&t)?;
        }
        if !r.is_zero() {
            check.witness(vec![], r.display());
        }
        report.push(check);
    }

    Ok(report)
}

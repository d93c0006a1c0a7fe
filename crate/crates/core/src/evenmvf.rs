//! Polynomial multivector calculus on the even dual space `H*`.
//!
//! Coordinates `x_α` (degree 0) are indexed by the `c.. e..` basis of `H`;
//! momenta `ψ^α` are odd, and the pairing bracket of degree -1 is the
//! Schouten bracket of polynomial multivector fields. A [`LinearPolyMVF`] is a
//! multivector whose coefficients have polynomial degree ≤ 1; the dictionary
//! `σ` maps linear multivectors to derivations of the exterior algebra on the
//! odd side (and intertwines the brackets), which is the engine behind the
//! duality between quasi Q-structures and linear quasi-Poisson data.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::vec;
use num_traits::Zero;

use crate::algebra::{Algebra, ExtElement, Gen};
use crate::error::Error;
use crate::groupoid::PointVBGroupoid;
use crate::linalg::Mat;
use crate::mvcalc::{Derivation, MultiDeriv};
#[cfg(test)]
use crate::scalar;
use crate::scalar::Scalar;
use crate::tensor::AltTensor;
use crate::Result;

/// The even multivector calculus attached to a linear groupoid: polynomial
/// multivectors on `H*` together with the dual groupoid `H* ⇉ C*`.
#[derive(Debug, Clone)]
pub struct EvenCalc {
    pub dim_c: usize,
    pub dim_e: usize,
    /// `dim_e × dim_c` boundary of the underlying groupoid.
    pub partial: Mat,
    alg: Arc<Algebra>,
}

/// A polynomial multivector field with coefficients of degree ≤ 1 and
/// multivector degree ≤ 4.
pub type LinearPolyMVF = MultiDeriv;

impl EvenCalc {
    pub fn new(dim_c: usize, dim_e: usize, partial: Mat) -> Result<Self> {
        if partial.rows != dim_e || partial.cols != dim_c {
            return Err(Error::ShapeMismatch("boundary must be dim_e x dim_c".to_string()));
        }
        let dim_h = dim_c + dim_e;
        let mut gens = Vec::with_capacity(dim_h);
        for i in 0..dim_c {
            gens.push(Gen::new(format!("xc{i}"), 0));
        }
        for a in 0..dim_e {
            gens.push(Gen::new(format!("xe{a}"), 0));
        }
        Ok(EvenCalc { dim_c, dim_e, partial, alg: Algebra::multivector(gens, 1) })
    }

    pub fn for_groupoid(g: &PointVBGroupoid) -> Result<Self> {
        EvenCalc::new(g.dim_c, g.dim_e, g.partial.clone())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn dim_h(&self) -> usize {
        self.dim_c + self.dim_e
    }

    pub fn coord(&self, alpha: usize) -> ExtElement {
        ExtElement::gen(&self.alg, alpha as u32)
    }

    pub fn momentum(&self, alpha: usize) -> ExtElement {
        ExtElement::gen(&self.alg, (self.dim_h() + alpha) as u32)
    }

    /// Checks linearity: every monomial has coordinate degree ≤ 1, and the
    /// multivector degree is within the supported window.
    pub fn check_linear(&self, p: &MultiDeriv) -> Result<()> {
        if p.arity > 4 {
            return Err(Error::WindowTooSmall { degree: p.arity as i64 });
        }
        let dim_h = self.dim_h() as u32;
        for (mono, _) in p.elem().terms() {
            let coord_deg = mono.iter().filter(|&&g| g < dim_h).count();
            if coord_deg > 1 {
                return Err(Error::UnsupportedGrading(
                    "coefficients must have polynomial degree ≤ 1".to_string(),
                ));
            }
        }
        Ok(())
    }

    /// Schouten bracket of polynomial multivector fields; preserves linearity
    /// and must stay within the degree window.
    pub fn linear_schouten(&self, p: &MultiDeriv, r: &MultiDeriv) -> Result<MultiDeriv> {
        self.check_linear(p)?;
        self.check_linear(r)?;
        let out = p.schouten(r)?;
        if out.arity > 4 {
            return Err(Error::WindowTooSmall { degree: out.arity as i64 });
        }
        Ok(out)
    }

    /// The linear multivector of a pre-bracket tensor on `H`: the bivector
    /// with `{ℓ_h, ℓ_{h'}} = ℓ_{[h,h']}` (and zero on constants).
    pub fn lie_poisson(&self, bracket: &AltTensor) -> Result<MultiDeriv> {
        let dim_h = self.dim_h();
        if bracket.arity != 2 || bracket.in_dim != dim_h || bracket.out_dim != dim_h {
            return Err(Error::ShapeMismatch("pre-bracket tensor on H".to_string()));
        }
        let mut entries = Vec::new();
        for a in 0..dim_h as u32 {
            for b in (a + 1)..dim_h as u32 {
                let v = bracket.eval(&[a, b])?;
                let mut val = ExtElement::zero(&self.alg);
                for (g, c) in v.into_iter().enumerate() {
                    if !c.is_zero() {
                        val = val.add(&self.coord(g).scale(&c))?;
                    }
                }
                if !val.is_zero() {
                    entries.push((vec![a, b], val));
                }
            }
        }
        // even-calculus bidegree: linear coefficients make the internal degree 0
        MultiDeriv::from_table(&self.alg, 2, 0, entries)
    }

    /// The Poisson bracket of two functions under a bivector.
    pub fn poisson_bracket(
        &self,
        pi: &MultiDeriv,
        f: &ExtElement,
        g: &ExtElement,
    ) -> Result<ExtElement> {
        pi.eval(&[f, g])
    }

    /// Vertical lift: an element of the odd exterior algebra on `H*`-duals
    /// becomes the constant multivector with the same index pattern.
    pub fn lift_form(&self, g: &PointVBGroupoid, omega: &ExtElement) -> Result<ExtElement> {
        if !Algebra::compatible(g.algebra(), omega.algebra()) {
            return Err(Error::GeneratorSetMismatch);
        }
        let mut out = ExtElement::zero(&self.alg);
        for (mono, c) in omega.terms() {
            let shifted: Vec<u32> =
                mono.iter().map(|&i| i + self.dim_h() as u32).collect();
            out = out.add(&ExtElement::monomial(&self.alg, &shifted, c.clone()))?;
        }
        Ok(out)
    }

    /// Reads a constant multivector back as a form on the odd side.
    pub fn lower_form(&self, g: &PointVBGroupoid, x: &ExtElement) -> Result<ExtElement> {
        let dim_h = self.dim_h() as u32;
        let mut out = ExtElement::zero(g.algebra());
        for (mono, c) in x.terms() {
            if mono.iter().any(|&i| i < dim_h) {
                return Err(Error::Precondition(
                    "multivector has non-constant coefficients".to_string(),
                ));
            }
            let shifted: Vec<u32> = mono.iter().map(|&i| i - dim_h).collect();
            out = out.add(&ExtElement::monomial(g.algebra(), &shifted, c.clone()))?;
        }
        Ok(out)
    }

    /// The derivation `σ_β` of the odd function algebra attached to a linear
    /// multivector `β`: `σ_β(ω)↑ = ±[β, ω↑]` with the suspension sign
    /// `(-1)^{a(a-1)/2}` for arity `a`. The sign is what makes `σ` of the
    /// linear bivector of a bracket equal the Chevalley–Eilenberg derivation
    /// on the nose; `σ` then intertwines the brackets strictly whenever one
    /// arity is odd (in particular on all bivector/trivector pairs), and up to
    /// the sign `(-1)^{(a₁-1)(a₂-1)}` in general.
    pub fn sigma_of(&self, g: &PointVBGroupoid, beta: &MultiDeriv) -> Result<Derivation> {
        self.check_linear(beta)?;
        let a = beta.arity;
        let negate = (a * (a.saturating_sub(1)) / 2) % 2 == 1;
        let mut values = Vec::with_capacity(self.dim_h());
        for alpha in 0..self.dim_h() {
            let lifted = self.momentum(alpha);
            let br = beta.elem().bracket(&lifted)?;
            let v = self.lower_form(g, &br)?;
            values.push(if negate { v.neg() } else { v });
        }
        Derivation::new(g.algebra(), beta.arity as i64 - 1, values)
    }

    // ---- dual groupoid H* ⇉ C* ------------------------------------------

    /// Pullback of the `i`-th base coordinate of `C*` along the dual source:
    /// `x_{c_i} - Σ_a ∂[a][i] x_{e_a}`.
    pub fn dual_s_coord(&self, i: usize) -> ExtElement {
        let mut v = self.coord(i);
        for a in 0..self.dim_e {
            let coef = self.partial.at(a, i);
            if !coef.is_zero() {
                v = v.sub(&self.coord(self.dim_c + a).scale(coef)).unwrap();
            }
        }
        v
    }

    /// Pullback along the dual target: `x_{c_i}`.
    pub fn dual_t_coord(&self, i: usize) -> ExtElement {
        self.coord(i)
    }

    /// The right-invariant trivector of the reinterpreted section `q`:
    /// `πʳ = Σ_i t̃*(ν_i) Λ³R̃(qⁱ)` with `R̃(η) = (∂*η, η)`.
    pub fn pi_right(&self, q: &AltTensor) -> Result<MultiDeriv> {
        self.pi_ext(q, true)
    }

    /// The left-invariant trivector: coefficients through `s̃*`, fiber through
    /// `L̃(η) = (0, η)`.
    pub fn pi_left(&self, q: &AltTensor) -> Result<MultiDeriv> {
        self.pi_ext(q, false)
    }

    fn r_momentum(&self, a: usize) -> ExtElement {
        // R̃(e*_a) = Σ_i ∂[a][i] ψ^{c_i} + ψ^{e_a}
        let mut v = self.momentum(self.dim_c + a);
        for i in 0..self.dim_c {
            let coef = self.partial.at(a, i);
            if !coef.is_zero() {
                v = v.add(&self.momentum(i).scale(coef)).unwrap();
            }
        }
        v
    }

    fn pi_ext(&self, q: &AltTensor, right: bool) -> Result<MultiDeriv> {
        if q.arity != 3 || q.in_dim != self.dim_e || q.out_dim != self.dim_c {
            return Err(Error::ShapeMismatch("section must be Λ³E → C".to_string()));
        }
        let mut out = ExtElement::zero(&self.alg);
        for (tuple, v) in q.entries() {
            // fiber part Λ³ of the embedded E*-directions
            let mut fiber = ExtElement::one(&self.alg);
            for &a in tuple {
                let leg = if right {
                    self.r_momentum(a as usize)
                } else {
                    self.momentum(self.dim_c + a as usize)
                };
                fiber = fiber.mul(&leg)?;
            }
            for (i, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let base = if right { self.dual_t_coord(i) } else { self.dual_s_coord(i) };
                out = out.add(&base.mul(&fiber)?.scale(c))?;
            }
        }
        if out.is_zero() {
            return Ok(MultiDeriv::zero(&self.alg, 3, 0));
        }
        MultiDeriv::from_elem(&self.alg, out)
    }
}

impl EvenCalc {
    /// Multiplicativity of a bivector over the dual groupoid `H* ⇉ C*`:
    /// coisotropy of the multiplication graph `{(m̃(ξ,ζ), ξ, ζ)}` with respect
    /// to `Π ⊞ (-Π) ⊞ (-Π)`. Returns the first witnessing pair of ideal
    /// generators, if any.
    pub fn dual_multiplicativity_witness(
        &self,
        pi: &MultiDeriv,
    ) -> Result<Option<(usize, usize)>> {
        let dim_h = self.dim_h();
        // triple even algebra
        let mut gens = Vec::with_capacity(3 * dim_h);
        for k in 0..3 {
            for i in 0..self.dim_c {
                gens.push(Gen::new(format!("t{k}xc{i}"), 0));
            }
            for a in 0..self.dim_e {
                gens.push(Gen::new(format!("t{k}xe{a}"), 0));
            }
        }
        let triple = Algebra::multivector(gens, 1);
        let embed = |k: usize, x: &ExtElement| -> Result<ExtElement> {
            let mut images = Vec::with_capacity(2 * dim_h);
            for g in 0..dim_h as u32 {
                images.push(ExtElement::gen(&triple, (k * dim_h) as u32 + g));
            }
            for g in 0..dim_h as u32 {
                images.push(ExtElement::gen(
                    &triple,
                    (3 * dim_h + k * dim_h) as u32 + g,
                ));
            }
            x.subst(&triple, &images)
        };
        let mut pi3 = embed(0, pi.elem())?;
        pi3 = pi3.sub(&embed(1, pi.elem())?)?;
        pi3 = pi3.sub(&embed(2, pi.elem())?)?;

        // parameters (u = ξ_C, v = ξ_E, w = ζ_E) and the coordinate images of
        // the three factors (product, ξ, ζ)
        let n_params = self.dim_c + 2 * self.dim_e;
        let mut params = Vec::with_capacity(n_params);
        for i in 0..self.dim_c {
            params.push(Gen::new(format!("u{i}"), 0));
        }
        for a in 0..self.dim_e {
            params.push(Gen::new(format!("v{a}"), 0));
        }
        for a in 0..self.dim_e {
            params.push(Gen::new(format!("w{a}"), 0));
        }
        let par = Algebra::exterior(params);
        let u = |i: usize| ExtElement::gen(&par, i as u32);
        let v = |a: usize| ExtElement::gen(&par, (self.dim_c + a) as u32);
        let w = |a: usize| ExtElement::gen(&par, (self.dim_c + self.dim_e + a) as u32);
        let mut coord_images: Vec<ExtElement> = Vec::with_capacity(3 * dim_h);
        // factor 0: (ξ_C, ξ_E + ζ_E)
        for i in 0..self.dim_c {
            coord_images.push(u(i));
        }
        for a in 0..self.dim_e {
            coord_images.push(v(a).add(&w(a))?);
        }
        // factor 1: ξ
        for i in 0..self.dim_c {
            coord_images.push(u(i));
        }
        for a in 0..self.dim_e {
            coord_images.push(v(a));
        }
        // factor 2: ζ = (ξ_C - ∂*ξ_E, ζ_E)
        for i in 0..self.dim_c {
            let mut x = u(i);
            for a in 0..self.dim_e {
                let coef = self.partial.at(a, i);
                if !coef.is_zero() {
                    x = x.sub(&v(a).scale(coef))?;
                }
            }
            coord_images.push(x);
        }
        for a in 0..self.dim_e {
            coord_images.push(w(a));
        }

        // annihilator of the graph: linear functionals (coordinate
        // combinations) vanishing along the parametrization
        let mut m = Mat::zeros(n_params, 3 * dim_h);
        for (g, img) in coord_images.iter().enumerate() {
            for (mono, c) in img.terms() {
                debug_assert_eq!(mono.len(), 1);
                m.set(mono[0] as usize, g, c.clone());
            }
        }
        let ann: Vec<Vec<Scalar>> = m.kernel_basis();
        let ann_elems: Vec<ExtElement> = ann
            .iter()
            .map(|coefs| {
                let mut e = ExtElement::zero(&triple);
                for (g, c) in coefs.iter().enumerate() {
                    if !c.is_zero() {
                        e = e.add(&ExtElement::gen(&triple, g as u32).scale(c)).unwrap();
                    }
                }
                e
            })
            .collect();

        // restriction to the graph for functions on (H*)³
        let graph_images: Vec<ExtElement> = coord_images;
        let restrict = |x: &ExtElement| -> Result<ExtElement> {
            let mut images = graph_images.clone();
            // momenta never appear in the restricted functions
            for _ in 0..3 * dim_h {
                images.push(ExtElement::zero(&par));
            }
            x.subst(&par, &images)
        };

        if pi3.is_zero() {
            return Ok(None);
        }
        let pi3_md = MultiDeriv::from_elem(&triple, pi3)?;
        for (i, li) in ann_elems.iter().enumerate() {
            for (j, lj) in ann_elems.iter().enumerate().skip(i) {
                let val = pi3_md.eval(&[li, lj])?;
                if !restrict(&val)?.is_zero() {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qla::{from_l2, h_bracket_tensor};
    use crate::sample;

    #[test]
    fn lie_poisson_reproduces_bracket() {
        let l2 = sample::strict_so3();
        let (g, _) = from_l2(&l2).unwrap();
        let ec = EvenCalc::for_groupoid(&g).unwrap();
        let hb = h_bracket_tensor(&l2);
        let pi = ec.lie_poisson(&hb).unwrap();
        for a in 0..ec.dim_h() {
            for b in 0..ec.dim_h() {
                if a == b {
                    continue;
                }
                let got = ec
                    .poisson_bracket(&pi, &ec.coord(a), &ec.coord(b))
                    .unwrap();
                let v = if a < b {
                    hb.eval(&[a as u32, b as u32]).unwrap()
                } else {
                    hb.eval(&[a as u32, b as u32]).unwrap()
                };
                let mut want = ExtElement::zero(ec.algebra());
                for (g, c) in v.into_iter().enumerate() {
                    if !c.is_zero() {
                        want = want.add(&ec.coord(g).scale(&c)).unwrap();
                    }
                }
                assert_eq!(got, want, "pair ({a},{b})");
            }
        }
    }

    #[test]
    fn sigma_of_lie_poisson_is_ce() {
        // σ-compatibility on so(3): the linear bivector of the bracket maps to
        // the Chevalley–Eilenberg derivation.
        let l2 = sample::strict_so3();
        let (g, s) = from_l2(&l2).unwrap();
        let ec = EvenCalc::for_groupoid(&g).unwrap();
        let pi = ec.lie_poisson(&h_bracket_tensor(&l2)).unwrap();
        let sigma = ec.sigma_of(&g, &pi).unwrap();
        assert_eq!(sigma, s.q_field);
    }

    #[test]
    fn sigma_intertwines_brackets() {
        use crate::rng::Rng;
        let mut rng = Rng::new(12);
        for seed in 0..25u64 {
            let l2 = sample::random_valid_l2(seed, 3, 2);
            let (g, _) = from_l2(&l2).unwrap();
            let ec = EvenCalc::for_groupoid(&g).unwrap();
            // random linear bivector and trivector
            let dim = ec.dim_h() as u32;
            let mut b2 = ExtElement::zero(ec.algebra());
            let mut b3 = ExtElement::zero(ec.algebra());
            for a in 0..dim {
                for b in (a + 1)..dim {
                    let coef = rng.sparse_scalar(&scalar::half());
                    if !coef.is_zero() {
                        let x = rng.below(dim as u64) as usize;
                        let mono = [
                            x as u32,
                            dim + a,
                            dim + b,
                        ];
                        b2 = b2
                            .add(&ExtElement::monomial(ec.algebra(), &mono, coef))
                            .unwrap();
                    }
                    for c in (b + 1)..dim {
                        let coef = rng.sparse_scalar(&scalar::ratio(1, 4));
                        if !coef.is_zero() {
                            let x = rng.below(dim as u64) as usize;
                            let mono = [x as u32, dim + a, dim + b, dim + c];
                            b3 = b3
                                .add(&ExtElement::monomial(ec.algebra(), &mono, coef))
                                .unwrap();
                        }
                    }
                }
            }
            if b2.is_zero() || b3.is_zero() {
                continue;
            }
            let p = MultiDeriv::from_elem(ec.algebra(), b2).unwrap();
            let r = MultiDeriv::from_elem(ec.algebra(), b3).unwrap();
            let lhs = ec
                .sigma_of(&g, &ec.linear_schouten(&p, &r).unwrap())
                .unwrap();
            let rhs = ec
                .sigma_of(&g, &p)
                .unwrap()
                .commutator(&ec.sigma_of(&g, &r).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "seed {seed}");
        }
    }

    #[test]
    fn constant_bivectors_commute() {
        let ec = EvenCalc::new(1, 2, Mat::zeros(2, 1)).unwrap();
        let dim = ec.dim_h() as u32;
        let p = MultiDeriv::from_elem(
            ec.algebra(),
            ExtElement::monomial(ec.algebra(), &[dim, dim + 1], scalar::one()),
        )
        .unwrap();
        let r = MultiDeriv::from_elem(
            ec.algebra(),
            ExtElement::monomial(ec.algebra(), &[dim + 1, dim + 2], scalar::one()),
        )
        .unwrap();
        assert!(ec.linear_schouten(&p, &r).unwrap().is_zero());
    }
}

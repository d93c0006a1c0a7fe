//! The linear groupoid `H = C ⊕ E ⇉ E` over a point, and the calculus that
//! lives on it.
//!
//! Structure maps, in the splitting fixed by the unit section `u(e) = (0,e)`:
//!
//! ```text
//! s(c,e) = e,   t(c,e) = e + ∂c,   u(e) = (0,e),   m((c',e+∂c),(c,e)) = (c+c',e)
//! ```
//!
//! Functions on the shifted groupoid are the exterior algebra on generators
//! `c*₀..` (core duals) and `e*₀..` (side duals), all of degree 1. The module
//! provides the pullbacks along all structure maps, multiplicativity tests
//! (cocycle condition for functions, preservation of the multiplication-graph
//! ideal for derivations, bracket compatibility with invariant extensions for
//! higher multivectors), and the left/right invariant extensions of sections of
//! the algebroid `A_H`, realized as substitution homomorphisms of the
//! multivector algebra.
//!
//! Sections of `Λʲ A_H` of degree `m` are held as multivector elements whose
//! monomials use only `e*` generators (the coefficient form, `m+j` of them) and
//! core momenta `p_c` (`j` of them). The right extension pulls the coefficient
//! form back along the target and keeps core momenta (the kernel-of-source
//! embedding `c ↦ (c,0)`); the left extension keeps the form (source pullback)
//! and sends `p_c ↦ p_c - Σ ∂ᵃᵢ p_e` (the kernel-of-target embedding
//! `c ↦ (c,-∂c)`).

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};
use num_traits::Zero;

use crate::algebra::{Algebra, ExtElement, Gen, Mono};
use crate::error::Error;
use crate::linalg::Mat;
use crate::mvcalc::{Derivation, MultiDeriv};
use crate::scalar::{self, Scalar};
use crate::tensor::AltTensor;
use crate::Result;

/// The linear groupoid `C ⊕ E ⇉ E` over a point, determined by `∂ : C → E`.
#[derive(Debug, Clone)]
pub struct PointVBGroupoid {
    pub dim_c: usize,
    pub dim_e: usize,
    /// `dim_e × dim_c` matrix of `∂`.
    pub partial: Mat,
    alg: Arc<Algebra>,
    mv: Arc<Algebra>,
    base: Arc<Algebra>,
    base_mv: Arc<Algebra>,
    comp: Arc<Algebra>,
    triple: Arc<Algebra>,
    ann: Vec<ExtElement>,
}

impl PartialEq for PointVBGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.dim_c == other.dim_c && self.dim_e == other.dim_e && self.partial == other.partial
    }
}

impl PointVBGroupoid {
    pub fn new(dim_c: usize, dim_e: usize, partial: Mat) -> Result<Self> {
        if partial.rows != dim_e || partial.cols != dim_c {
            return Err(Error::ShapeMismatch(format!(
                "boundary map must be {dim_e}x{dim_c}, got {}x{}",
                partial.rows, partial.cols
            )));
        }
        let dim_h = dim_c + dim_e;
        let mut gens = Vec::with_capacity(dim_h);
        for i in 0..dim_c {
            gens.push(Gen::new(format!("c{i}"), 1));
        }
        for a in 0..dim_e {
            gens.push(Gen::new(format!("e{a}"), 1));
        }
        let alg = Algebra::exterior(gens.clone());
        let mv = Algebra::multivector(gens, 2);
        let base =
            Algebra::exterior((0..dim_e).map(|a| Gen::new(format!("e{a}"), 1)).collect());
        let base_mv =
            Algebra::multivector((0..dim_e).map(|a| Gen::new(format!("e{a}"), 1)).collect(), 2);
        let mut comp_gens = Vec::new();
        for i in 0..dim_c {
            comp_gens.push(Gen::new(format!("l{i}"), 1)); // left core factor c'
        }
        for i in 0..dim_c {
            comp_gens.push(Gen::new(format!("r{i}"), 1)); // right core factor c
        }
        for a in 0..dim_e {
            comp_gens.push(Gen::new(format!("b{a}"), 1)); // shared base point e
        }
        let comp = Algebra::exterior(comp_gens);
        let mut triple_gens = Vec::new();
        for k in 0..3 {
            for i in 0..dim_c {
                triple_gens.push(Gen::new(format!("f{k}c{i}"), 1));
            }
            for a in 0..dim_e {
                triple_gens.push(Gen::new(format!("f{k}e{a}"), 1));
            }
        }
        let triple = Algebra::exterior(triple_gens);
        let mut g = PointVBGroupoid {
            dim_c,
            dim_e,
            partial,
            alg,
            mv,
            base,
            base_mv,
            comp,
            triple,
            ann: Vec::new(),
        };
        g.ann = g.compute_ann_basis();
        Ok(g)
    }

    pub fn dim_h(&self) -> usize {
        self.dim_c + self.dim_e
    }

    /// Functions on `H[1]`: the exterior algebra on `c*` and `e*` generators.
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    /// Multivector fields on `H[1]`.
    pub fn mv_algebra(&self) -> &Arc<Algebra> {
        &self.mv
    }

    /// Functions on the base `E[1]`.
    pub fn base_algebra(&self) -> &Arc<Algebra> {
        &self.base
    }

    /// Multivector fields on the base `E[1]`.
    pub fn base_mv_algebra(&self) -> &Arc<Algebra> {
        &self.base_mv
    }

    /// Functions on the composable space `C ⊕ C ⊕ E`.
    pub fn composable_algebra(&self) -> &Arc<Algebra> {
        &self.comp
    }

    pub fn c_gen(&self, i: usize) -> u32 {
        debug_assert!(i < self.dim_c);
        i as u32
    }

    pub fn e_gen(&self, a: usize) -> u32 {
        debug_assert!(a < self.dim_e);
        (self.dim_c + a) as u32
    }

    fn t_image(&self, a: usize) -> ExtElement {
        // t*(e*_a) = e*_a + Σ_i ∂[a][i] c*_i
        let mut v = ExtElement::gen(&self.alg, self.e_gen(a));
        for i in 0..self.dim_c {
            let coef = self.partial.at(a, i);
            if !coef.is_zero() {
                v = v
                    .add(&ExtElement::gen(&self.alg, self.c_gen(i)).scale(coef))
                    .expect("same algebra");
            }
        }
        v
    }

    /// Pullback along the source `s(c,e) = e`.
    pub fn s_pullback(&self, f: &ExtElement) -> Result<ExtElement> {
        let images: Vec<ExtElement> =
            (0..self.dim_e).map(|a| ExtElement::gen(&self.alg, self.e_gen(a))).collect();
        f.subst(&self.alg, &images)
    }

    /// Pullback along the target `t(c,e) = e + ∂c`.
    pub fn t_pullback(&self, f: &ExtElement) -> Result<ExtElement> {
        let images: Vec<ExtElement> = (0..self.dim_e).map(|a| self.t_image(a)).collect();
        f.subst(&self.alg, &images)
    }

    /// Pullback along the unit `u(e) = (0,e)`.
    pub fn u_pullback(&self, f: &ExtElement) -> Result<ExtElement> {
        let mut images = Vec::with_capacity(self.dim_h());
        for _ in 0..self.dim_c {
            images.push(ExtElement::zero(&self.base));
        }
        for a in 0..self.dim_e {
            images.push(ExtElement::gen(&self.base, a as u32));
        }
        f.subst(&self.base, &images)
    }

    /// Pullback along the multiplication, onto the composable space
    /// parametrized by `(c', c, e) ↦ ((c', e+∂c), (c, e))` with product
    /// `(c+c', e)`.
    pub fn m_pullback(&self, f: &ExtElement) -> Result<ExtElement> {
        let mut images = Vec::with_capacity(self.dim_h());
        for i in 0..self.dim_c {
            let v = ExtElement::gen(&self.comp, i as u32)
                .add(&ExtElement::gen(&self.comp, (self.dim_c + i) as u32))?;
            images.push(v);
        }
        for a in 0..self.dim_e {
            images.push(ExtElement::gen(&self.comp, (2 * self.dim_c + a) as u32));
        }
        f.subst(&self.comp, &images)
    }

    /// Pullback along the first projection `(c',c,e) ↦ (c', e+∂c)`.
    pub fn pr1_pullback(&self, f: &ExtElement) -> Result<ExtElement> {
        let mut images = Vec::with_capacity(self.dim_h());
        for i in 0..self.dim_c {
            images.push(ExtElement::gen(&self.comp, i as u32));
        }
        for a in 0..self.dim_e {
            let mut v = ExtElement::gen(&self.comp, (2 * self.dim_c + a) as u32);
            for i in 0..self.dim_c {
                let coef = self.partial.at(a, i);
                if !coef.is_zero() {
                    v = v.add(
                        &ExtElement::gen(&self.comp, (self.dim_c + i) as u32).scale(coef),
                    )?;
                }
            }
            images.push(v);
        }
        f.subst(&self.comp, &images)
    }

    /// Pullback along the second projection `(c',c,e) ↦ (c, e)`.
    pub fn pr2_pullback(&self, f: &ExtElement) -> Result<ExtElement> {
        let mut images = Vec::with_capacity(self.dim_h());
        for i in 0..self.dim_c {
            images.push(ExtElement::gen(&self.comp, (self.dim_c + i) as u32));
        }
        for a in 0..self.dim_e {
            images.push(ExtElement::gen(&self.comp, (2 * self.dim_c + a) as u32));
        }
        f.subst(&self.comp, &images)
    }

    /// Cocycle defect for functions: `m*f - pr₁*f - pr₂*f` on composables.
    pub fn multiplicative_function_defect(&self, f: &ExtElement) -> Result<ExtElement> {
        let m = self.m_pullback(f)?;
        let p1 = self.pr1_pullback(f)?;
        let p2 = self.pr2_pullback(f)?;
        m.sub(&p1)?.sub(&p2)
    }

    pub fn is_multiplicative_function(&self, f: &ExtElement) -> Result<bool> {
        Ok(self.multiplicative_function_defect(f)?.is_zero())
    }

    fn embed_factor(&self, k: usize, f: &ExtElement) -> Result<ExtElement> {
        let off = (k * self.dim_h()) as u32;
        let images: Vec<ExtElement> =
            (0..self.dim_h()).map(|g| ExtElement::gen(&self.triple, off + g as u32)).collect();
        f.subst(&self.triple, &images)
    }

    /// The derivation `D ⊞ D ⊞ D` on functions of `H³[1]`.
    pub fn triple_derivation(&self, d: &Derivation) -> Result<Derivation> {
        let mut values = Vec::with_capacity(3 * self.dim_h());
        for k in 0..3 {
            for g in 0..self.dim_h() as u32 {
                values.push(self.embed_factor(k, d.value(g))?);
            }
        }
        Derivation::new(&self.triple, d.degree, values)
    }

    fn compute_ann_basis(&self) -> Vec<ExtElement> {
        // Annihilator of graph(m) = {((c+c', e), (c', e+∂c), (c, e))} inside
        // (H³)*. Columns: the 3·dim_h triple generators; rows: coordinates of
        // the restriction to the (c', c, e) parameter space.
        let n = 3 * self.dim_h();
        let params = 2 * self.dim_c + self.dim_e;
        let mut m = Mat::zeros(params, n);
        for g in 0..n {
            let img = self.graph_pullback(&ExtElement::gen(&self.triple, g as u32)).unwrap();
            for (mono, c) in img.terms() {
                debug_assert_eq!(mono.len(), 1);
                m.set(mono[0] as usize, g, c.clone());
            }
        }
        m.kernel_basis()
            .into_iter()
            .map(|v| {
                let mut e = ExtElement::zero(&self.triple);
                for (g, c) in v.into_iter().enumerate() {
                    if !c.is_zero() {
                        e = e.add(&ExtElement::gen(&self.triple, g as u32).scale(&c)).unwrap();
                    }
                }
                e
            })
            .collect()
    }

    /// Degree-1 generators of the vanishing ideal of `graph(m) ⊂ H³`.
    pub fn ann_basis(&self) -> &[ExtElement] {
        &self.ann
    }

    /// Restriction of a function on `H³[1]` to the graph of multiplication,
    /// in the `(c', c, e)` parameters.
    pub fn graph_pullback(&self, f: &ExtElement) -> Result<ExtElement> {
        let mut images = Vec::with_capacity(3 * self.dim_h());
        // factor 0: (c + c', e)
        for i in 0..self.dim_c {
            images.push(
                ExtElement::gen(&self.comp, i as u32)
                    .add(&ExtElement::gen(&self.comp, (self.dim_c + i) as u32))?,
            );
        }
        for a in 0..self.dim_e {
            images.push(ExtElement::gen(&self.comp, (2 * self.dim_c + a) as u32));
        }
        // factor 1: (c', e + ∂c)
        for i in 0..self.dim_c {
            images.push(ExtElement::gen(&self.comp, i as u32));
        }
        for a in 0..self.dim_e {
            let mut v = ExtElement::gen(&self.comp, (2 * self.dim_c + a) as u32);
            for i in 0..self.dim_c {
                let coef = self.partial.at(a, i);
                if !coef.is_zero() {
                    v = v.add(
                        &ExtElement::gen(&self.comp, (self.dim_c + i) as u32).scale(coef),
                    )?;
                }
            }
            images.push(v);
        }
        // factor 2: (c, e)
        for i in 0..self.dim_c {
            images.push(ExtElement::gen(&self.comp, (self.dim_c + i) as u32));
        }
        for a in 0..self.dim_e {
            images.push(ExtElement::gen(&self.comp, (2 * self.dim_c + a) as u32));
        }
        f.subst(&self.comp, &images)
    }

    /// Ideal-preservation test for a derivation: for every degree-1 generator
    /// `λ` of the graph ideal, `(D⊞D⊞D)(λ)` must again vanish on the graph.
    /// On failure returns the witnessing generator index and the residual.
    pub fn multiplicativity_witness(
        &self,
        d: &Derivation,
    ) -> Result<Option<(usize, ExtElement)>> {
        let tri = self.triple_derivation(d)?;
        for (idx, lam) in self.ann.iter().enumerate() {
            let r = self.graph_pullback(&tri.apply(lam)?)?;
            if !r.is_zero() {
                return Ok(Some((idx, r)));
            }
        }
        Ok(None)
    }

    pub fn is_multiplicative_derivation(&self, d: &Derivation) -> Result<bool> {
        Ok(self.multiplicativity_witness(d)?.is_none())
    }

    // ---- sections and invariant extensions -------------------------------

    /// True when the element uses only `e*` generators and core momenta: the
    /// representation of a section of `Λ• A_H`.
    pub fn is_section_elem(&self, x: &ExtElement) -> bool {
        if !Algebra::compatible(&self.mv, x.algebra()) {
            return false;
        }
        let dim_h = self.dim_h() as u32;
        x.terms().all(|(m, _)| {
            m.iter().all(|&g| {
                let is_core_dual = (g as usize) < self.dim_c;
                let is_e_momentum = g >= dim_h + self.dim_c as u32;
                !is_core_dual && !is_e_momentum
            })
        })
    }

    /// Right-invariant extension of a section: pull the coefficient form back
    /// along the target, embed core directions by `c ↦ (c, 0)`.
    pub fn right_ext(&self, sec: &ExtElement) -> Result<ExtElement> {
        if !self.is_section_elem(sec) {
            return Err(Error::Precondition("not a section element".to_string()));
        }
        self.mv_subst(sec, |g| self.right_ext_image(g))
    }

    /// Left-invariant extension: keep the coefficient form (source pullback),
    /// embed core directions by `c ↦ (c, -∂c)`.
    pub fn left_ext(&self, sec: &ExtElement) -> Result<ExtElement> {
        if !self.is_section_elem(sec) {
            return Err(Error::Precondition("not a section element".to_string()));
        }
        self.mv_subst(sec, |g| self.left_ext_image(g))
    }

    fn right_ext_image(&self, g: u32) -> ExtElement {
        let dim_h = self.dim_h() as u32;
        if g >= self.dim_c as u32 && g < dim_h {
            // e*_a ↦ t*(e*_a)
            let a = g as usize - self.dim_c;
            let mut v = ExtElement::gen(&self.mv, g);
            for i in 0..self.dim_c {
                let coef = self.partial.at(a, i);
                if !coef.is_zero() {
                    v = v.add(&ExtElement::gen(&self.mv, i as u32).scale(coef)).unwrap();
                }
            }
            v
        } else {
            ExtElement::gen(&self.mv, g)
        }
    }

    fn left_ext_image(&self, g: u32) -> ExtElement {
        let dim_h = self.dim_h() as u32;
        if g >= dim_h && g < dim_h + self.dim_c as u32 {
            // p_{c_i} ↦ p_{c_i} - Σ_a ∂[a][i] p_{e_a}
            let i = (g - dim_h) as usize;
            let mut v = ExtElement::gen(&self.mv, g);
            for a in 0..self.dim_e {
                let coef = self.partial.at(a, i);
                if !coef.is_zero() {
                    let p_e = dim_h + (self.dim_c + a) as u32;
                    v = v.sub(&ExtElement::gen(&self.mv, p_e).scale(coef)).unwrap();
                }
            }
            v
        } else {
            ExtElement::gen(&self.mv, g)
        }
    }

    fn mv_subst(
        &self,
        x: &ExtElement,
        image: impl Fn(u32) -> ExtElement,
    ) -> Result<ExtElement> {
        let images: Vec<ExtElement> = (0..self.mv.len() as u32).map(image).collect();
        x.subst(&self.mv, &images)
    }

    /// `d(σ) = σʳ - σˡ`, the differential of the groupoid dgla on sections.
    pub fn ext_diff(&self, sec: &ExtElement) -> Result<ExtElement> {
        self.right_ext(sec)?.sub(&self.left_ext(sec)?)
    }

    /// Basis of section elements of `Λʲ A_H` in degree `m`: monomials with
    /// `m + j` base-form factors and `j` core momenta.
    pub fn section_basis(&self, j: usize, m: i64) -> Vec<ExtElement> {
        let form = m + j as i64;
        if form < 0 || form > self.dim_e as i64 || j > self.dim_c {
            return Vec::new();
        }
        let e_pool: Vec<u32> = (0..self.dim_e).map(|a| self.e_gen(a)).collect();
        let p_pool: Vec<u32> =
            (0..self.dim_c).map(|i| self.dim_h() as u32 + i as u32).collect();
        let mut out = Vec::new();
        for fs in subsets(&e_pool, form as usize) {
            for ps in subsets(&p_pool, j) {
                let mut mono = fs.clone();
                mono.extend_from_slice(&ps);
                out.push(ExtElement::monomial(&self.mv, &mono, scalar::one()));
            }
        }
        out
    }

    /// Solves `right_ext(σ) = x` for a section `σ` of `Λʲ A_H` in degree `m`;
    /// the extension is injective on sections, so the solution is unique when
    /// it exists.
    pub fn solve_right_ext(&self, x: &ExtElement, j: usize, m: i64) -> Result<ExtElement> {
        self.solve_ext(x, j, m, true)
    }

    pub fn solve_left_ext(&self, x: &ExtElement, j: usize, m: i64) -> Result<ExtElement> {
        self.solve_ext(x, j, m, false)
    }

    fn solve_ext(&self, x: &ExtElement, j: usize, m: i64, right: bool) -> Result<ExtElement> {
        let basis = self.section_basis(j, m);
        if basis.is_empty() {
            return if x.is_zero() {
                Ok(ExtElement::zero(&self.mv))
            } else {
                Err(Error::NotSolvable("no sections of the requested bidegree".to_string()))
            };
        }
        let images: Vec<ExtElement> = basis
            .iter()
            .map(|b| if right { self.right_ext(b) } else { self.left_ext(b) })
            .collect::<Result<_>>()?;
        let mut support: BTreeMap<Mono, usize> = BTreeMap::new();
        for e in images.iter().chain(core::iter::once(x)) {
            for (mono, _) in e.terms() {
                let next = support.len();
                support.entry(mono.clone()).or_insert(next);
            }
        }
        let rows = support.len();
        let mut mat = Mat::zeros(rows, basis.len());
        for (col, e) in images.iter().enumerate() {
            for (mono, c) in e.terms() {
                mat.set(support[mono], col, c.clone());
            }
        }
        let mut rhs = vec![scalar::zero(); rows];
        for (mono, c) in x.terms() {
            rhs[support[mono]] = c.clone();
        }
        let sol = mat
            .solve(&rhs)
            .ok_or_else(|| Error::NotSolvable("not an invariant extension".to_string()))?;
        let mut out = ExtElement::zero(&self.mv);
        for (c, b) in sol.into_iter().zip(&basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(&c))?;
            }
        }
        Ok(out)
    }

    // ---- multiplicative kernels ------------------------------------------

    /// Basis of multiplicative functions of degree `k` (the cocycle kernel).
    pub fn multiplicative_function_basis(&self, k: usize) -> Vec<ExtElement> {
        let pool: Vec<u32> = (0..self.dim_h() as u32).collect();
        let monos = subsets(&pool, k);
        let images: Vec<ExtElement> = monos
            .iter()
            .map(|m| {
                self.multiplicative_function_defect(&ExtElement::monomial(
                    &self.alg,
                    m,
                    scalar::one(),
                ))
                .unwrap()
            })
            .collect();
        kernel_combinations(&monos, &images, &self.alg)
    }

    /// Basis of multiplicative derivations of degree `k` (ideal-test kernel).
    pub fn multiplicative_derivation_basis(&self, k: i64) -> Vec<Derivation> {
        let pool: Vec<u32> = (0..self.dim_h() as u32).collect();
        if 1 + k < 0 || 1 + k > self.dim_h() as i64 {
            return Vec::new();
        }
        let vals = subsets(&pool, (1 + k) as usize);
        let mut raw: Vec<Derivation> = Vec::new();
        for g in 0..self.dim_h() as u32 {
            for m in &vals {
                let mut values = vec![ExtElement::zero(&self.alg); self.dim_h()];
                values[g as usize] = ExtElement::monomial(&self.alg, m, scalar::one());
                raw.push(Derivation::new(&self.alg, k, values).unwrap());
            }
        }
        // Constraint: the graph restriction of (D⊞3)(λ) vanishes for every λ.
        let mut support: BTreeMap<(usize, Mono), usize> = BTreeMap::new();
        let mut cols: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(raw.len());
        for d in &raw {
            let tri = self.triple_derivation(d).unwrap();
            let mut col = Vec::new();
            for (li, lam) in self.ann.iter().enumerate() {
                let r = self.graph_pullback(&tri.apply(lam).unwrap()).unwrap();
                for (mono, c) in r.terms() {
                    let next = support.len();
                    let row = *support.entry((li, mono.clone())).or_insert(next);
                    col.push((row, c.clone()));
                }
            }
            cols.push(col);
        }
        let mut mat = Mat::zeros(support.len(), raw.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col {
                mat.set(*i, j, c.clone());
            }
        }
        mat.kernel_basis()
            .into_iter()
            .map(|v| {
                let mut d = Derivation::zero(&self.alg, k);
                for (c, b) in v.into_iter().zip(&raw) {
                    if !c.is_zero() {
                        d = d.add(&b.scale(&c)).unwrap();
                    }
                }
                d
            })
            .collect()
    }

    /// The section families against which bracket compatibility is imposed:
    /// arity-0 sections (base forms, whose extensions are the two pullbacks)
    /// and arity-1 sections. Products of these span all higher sections, so
    /// compatibility against them is preserved by the Schouten bracket.
    fn compat_section_set(&self) -> Vec<(usize, i64, ExtElement)> {
        let mut out = Vec::new();
        for m in 1..=self.dim_e as i64 {
            for sec in self.section_basis(0, m) {
                out.push((0usize, m, sec));
            }
        }
        for m in -1..self.dim_e as i64 {
            for sec in self.section_basis(1, m) {
                out.push((1usize, m, sec));
            }
        }
        out
    }

    /// Bracket-compatibility defect of a multivector `Π` against the arity-1
    /// section basis: `({Π, σʳ}, {Π, σˡ})` must equal `(τʳ, τˡ)` for a single
    /// section `τ`. Returns `None` when compatible, else an offending section
    /// index.
    pub fn bracket_compat_witness(&self, p: &MultiDeriv) -> Result<Option<usize>> {
        for (idx, (js, m, sec)) in self.compat_section_set().into_iter().enumerate() {
            if p.arity + js == 0 {
                continue; // two functions bracket to zero
            }
            let r = p.elem().bracket(&self.right_ext(&sec)?)?;
            let l = p.elem().bracket(&self.left_ext(&sec)?)?;
            let jt = p.arity + js - 1;
            let mt = p.degree + m;
            let tau = match self.solve_right_ext(&r, jt, mt) {
                Ok(t) => t,
                Err(_) => return Ok(Some(idx)),
            };
            if self.left_ext(&tau)? != l {
                return Ok(Some(idx));
            }
        }
        Ok(None)
    }

    /// Basis of multiplicative arity-`j` multivectors of internal degree `k`
    /// for `j ≥ 2`: those whose bracket with every invariant extension of a
    /// section is again the matching invariant extension of one section.
    pub fn multiplicative_multivector_basis(&self, j: usize, k: i64) -> Vec<MultiDeriv> {
        let theta = j as i64 + k;
        if theta < 0 || theta > self.dim_h() as i64 || j > self.dim_h() {
            return Vec::new();
        }
        let theta_pool: Vec<u32> = (0..self.dim_h() as u32).collect();
        let p_pool: Vec<u32> = (self.dim_h() as u32..2 * self.dim_h() as u32).collect();
        let mut raw: Vec<ExtElement> = Vec::new();
        for f in subsets(&theta_pool, theta as usize) {
            for ps in subsets(&p_pool, j) {
                let mut mono = f.clone();
                mono.extend_from_slice(&ps);
                raw.push(ExtElement::monomial(&self.mv, &mono, scalar::one()));
            }
        }
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (js, m, sec) in self.compat_section_set() {
            if j + js == 0 {
                continue; // two functions bracket to zero
            }
            {
                let rext = self.right_ext(&sec).unwrap();
                let lext = self.left_ext(&sec).unwrap();
                let tau_basis = self.section_basis(j + js - 1, k + m);
                let r_img: Vec<ExtElement> =
                    tau_basis.iter().map(|t| self.right_ext(t).unwrap()).collect();
                let l_img: Vec<ExtElement> =
                    tau_basis.iter().map(|t| self.left_ext(t).unwrap()).collect();
                let brackets: Vec<(ExtElement, ExtElement)> = raw
                    .iter()
                    .map(|pi| (pi.bracket(&rext).unwrap(), pi.bracket(&lext).unwrap()))
                    .collect();
                // stacked (right; left) coordinates
                let mut support: BTreeMap<(bool, Mono), usize> = BTreeMap::new();
                fn touch(side: bool, e: &ExtElement, sup: &mut BTreeMap<(bool, Mono), usize>) {
                    for (mono, _) in e.terms() {
                        let next = sup.len();
                        sup.entry((side, mono.clone())).or_insert(next);
                    }
                }
                for (r, l) in &brackets {
                    touch(false, r, &mut support);
                    touch(true, l, &mut support);
                }
                for (r, l) in r_img.iter().zip(&l_img) {
                    touch(false, r, &mut support);
                    touch(true, l, &mut support);
                }
                let dim = support.len();
                if dim == 0 {
                    continue;
                }
                let mut n_mat = Mat::zeros(dim, tau_basis.len());
                for (col, (r, l)) in r_img.iter().zip(&l_img).enumerate() {
                    for (mono, c) in r.terms() {
                        n_mat.set(support[&(false, mono.clone())], col, c.clone());
                    }
                    for (mono, c) in l.terms() {
                        n_mat.set(support[&(true, mono.clone())], col, c.clone());
                    }
                }
                let left_null = n_mat.transpose().kernel_basis();
                if left_null.is_empty() {
                    continue;
                }
                let mut m_mat = Mat::zeros(dim, raw.len());
                for (col, (r, l)) in brackets.iter().enumerate() {
                    for (mono, c) in r.terms() {
                        m_mat.set(support[&(false, mono.clone())], col, c.clone());
                    }
                    for (mono, c) in l.terms() {
                        m_mat.set(support[&(true, mono.clone())], col, c.clone());
                    }
                }
                for y in left_null {
                    let mut row = vec![scalar::zero(); raw.len()];
                    for (col, r) in row.iter_mut().enumerate() {
                        for (i, yc) in y.iter().enumerate() {
                            if !yc.is_zero() && !m_mat.at(i, col).is_zero() {
                                *r += yc * m_mat.at(i, col);
                            }
                        }
                    }
                    if row.iter().any(|c| !c.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let kernel = if rows.is_empty() {
            Mat::zeros(0, raw.len()).kernel_basis()
        } else {
            Mat::from_rows(rows).kernel_basis()
        };
        kernel
            .into_iter()
            .map(|v| {
                let mut e = ExtElement::zero(&self.mv);
                for (c, b) in v.into_iter().zip(&raw) {
                    if !c.is_zero() {
                        e = e.add(&b.scale(&c)).unwrap();
                    }
                }
                MultiDeriv::from_elem(&self.mv, e).unwrap()
            })
            .collect()
    }

    /// Restricts a family of multivector elements (uniform arity `j`, internal
    /// degree `k`) to the subspace whose brackets with invariant extensions of
    /// arity-1 sections are again matching invariant extensions. Returns the
    /// coefficient combinations of the inputs spanning that subspace.
    pub fn intersect_bracket_compat(
        &self,
        elems: &[ExtElement],
        j: usize,
        k: i64,
    ) -> Vec<ExtElement> {
        if elems.is_empty() {
            return Vec::new();
        }
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (js, m, sec) in self.compat_section_set() {
            if j + js == 0 {
                continue; // two functions bracket to zero
            }
            {
                let rext = self.right_ext(&sec).unwrap();
                let lext = self.left_ext(&sec).unwrap();
                let tau_basis = self.section_basis(j + js - 1, k + m);
                let r_img: Vec<ExtElement> =
                    tau_basis.iter().map(|t| self.right_ext(t).unwrap()).collect();
                let l_img: Vec<ExtElement> =
                    tau_basis.iter().map(|t| self.left_ext(t).unwrap()).collect();
                let brackets: Vec<(ExtElement, ExtElement)> = elems
                    .iter()
                    .map(|pi| (pi.bracket(&rext).unwrap(), pi.bracket(&lext).unwrap()))
                    .collect();
                let mut support: BTreeMap<(bool, Mono), usize> = BTreeMap::new();
                fn touch(side: bool, e: &ExtElement, sup: &mut BTreeMap<(bool, Mono), usize>) {
                    for (mono, _) in e.terms() {
                        let next = sup.len();
                        sup.entry((side, mono.clone())).or_insert(next);
                    }
                }
                for (r, l) in &brackets {
                    touch(false, r, &mut support);
                    touch(true, l, &mut support);
                }
                for (r, l) in r_img.iter().zip(&l_img) {
                    touch(false, r, &mut support);
                    touch(true, l, &mut support);
                }
                let dim = support.len();
                if dim == 0 {
                    continue;
                }
                let mut n_mat = Mat::zeros(dim, tau_basis.len());
                for (col, (r, l)) in r_img.iter().zip(&l_img).enumerate() {
                    for (mono, c) in r.terms() {
                        n_mat.set(support[&(false, mono.clone())], col, c.clone());
                    }
                    for (mono, c) in l.terms() {
                        n_mat.set(support[&(true, mono.clone())], col, c.clone());
                    }
                }
                let left_null = n_mat.transpose().kernel_basis();
                if left_null.is_empty() {
                    continue;
                }
                let mut m_mat = Mat::zeros(dim, elems.len());
                for (col, (r, l)) in brackets.iter().enumerate() {
                    for (mono, c) in r.terms() {
                        m_mat.set(support[&(false, mono.clone())], col, c.clone());
                    }
                    for (mono, c) in l.terms() {
                        m_mat.set(support[&(true, mono.clone())], col, c.clone());
                    }
                }
                for y in left_null {
                    let mut row = vec![scalar::zero(); elems.len()];
                    for (col, r) in row.iter_mut().enumerate() {
                        for (i, yc) in y.iter().enumerate() {
                            if !yc.is_zero() && !m_mat.at(i, col).is_zero() {
                                *r += yc * m_mat.at(i, col);
                            }
                        }
                    }
                    if row.iter().any(|c| !c.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let kernel = if rows.is_empty() {
            return elems.to_vec();
        } else {
            Mat::from_rows(rows).kernel_basis()
        };
        kernel
            .into_iter()
            .map(|v| {
                let mut e = ExtElement::zero(&self.mv);
                for (c, b) in v.into_iter().zip(elems) {
                    if !c.is_zero() {
                        e = e.add(&b.scale(&c)).unwrap();
                    }
                }
                e
            })
            .collect()
    }

    // ---- Chevalley–Eilenberg ----------------------------------------------

    /// The degree-1 derivation of `ΛH*` encoding an antisymmetric pre-bracket
    /// on `H` (anchor zero): `Q(θ)(h₀,h₁) = -θ([h₀,h₁])`.
    pub fn ce_of_bracket(&self, bracket: &AltTensor) -> Result<Derivation> {
        let dim_h = self.dim_h();
        if bracket.arity != 2 || bracket.in_dim != dim_h || bracket.out_dim != dim_h {
            return Err(Error::ShapeMismatch("pre-bracket tensor on H".to_string()));
        }
        let mut values = vec![ExtElement::zero(&self.alg); dim_h];
        for alpha in 0..dim_h as u32 {
            for beta in alpha + 1..dim_h as u32 {
                let v = bracket.eval(&[alpha, beta])?;
                for (gamma, coef) in v.iter().enumerate() {
                    if !coef.is_zero() {
                        let term =
                            ExtElement::monomial(&self.alg, &[alpha, beta], -coef.clone());
                        values[gamma] = values[gamma].add(&term)?;
                    }
                }
            }
        }
        Derivation::new(&self.alg, 1, values)
    }

    /// The base component of a source-projectable derivation: `Q₀` with
    /// `Q(s*ω) = s*(Q₀ ω)`. Errors when `Q` is not source-projectable.
    pub fn base_component(&self, q: &Derivation) -> Result<Derivation> {
        let mut values = Vec::with_capacity(self.dim_e);
        for a in 0..self.dim_e {
            let v = q.value(self.e_gen(a));
            let mut out = ExtElement::zero(&self.base);
            for (mono, c) in v.terms() {
                if mono.iter().any(|&g| (g as usize) < self.dim_c) {
                    return Err(Error::Precondition(
                        "derivation is not source-projectable".to_string(),
                    ));
                }
                let shifted: Vec<u32> = mono.iter().map(|&g| g - self.dim_c as u32).collect();
                out = out.add(&ExtElement::monomial(&self.base, &shifted, c.clone()))?;
            }
            values.push(out);
        }
        Derivation::new(&self.base, q.degree, values)
    }
}

/// All strictly increasing `k`-subsets of a pool of generator indices.
pub fn subsets(pool: &[u32], k: usize) -> Vec<Vec<u32>> {
    fn rec(pool: &[u32], k: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    if k > pool.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    rec(pool, k, 0, &mut cur, &mut out);
    out
}

/// Given raw basis monomials and the images of a linear map on them, returns
/// the kernel as element combinations.
fn kernel_combinations(
    monos: &[Mono],
    images: &[ExtElement],
    alg: &Arc<Algebra>,
) -> Vec<ExtElement> {
    let mut support: BTreeMap<Mono, usize> = BTreeMap::new();
    for img in images {
        for (m, _) in img.terms() {
            let next = support.len();
            support.entry(m.clone()).or_insert(next);
        }
    }
    let mut mat = Mat::zeros(support.len(), monos.len());
    for (j, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            mat.set(support[m], j, c.clone());
        }
    }
    mat.kernel_basis()
        .into_iter()
        .map(|v| {
            let mut e = ExtElement::zero(alg);
            for (c, m) in v.into_iter().zip(monos) {
                if !c.is_zero() {
                    e = e.add(&ExtElement::monomial(alg, m, c)).unwrap();
                }
            }
            e
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    /// dim C = 1, dim E = 1, ∂ = 2.
    fn tiny() -> PointVBGroupoid {
        PointVBGroupoid::new(1, 1, Mat::from_i64(1, 1, &[2])).unwrap()
    }

    #[test]
    fn target_pullback_adds_boundary_term() {
        let g = tiny();
        let e = ExtElement::gen(g.base_algebra(), 0);
        let te = g.t_pullback(&e).unwrap();
        // t*(e*) = e* + 2 c*
        assert_eq!(te.coeff(&[1]), int(1));
        assert_eq!(te.coeff(&[0]), int(2));
        let se = g.s_pullback(&e).unwrap();
        assert_eq!(se.coeff(&[1]), int(1));
        assert_eq!(se.coeff(&[0]), int(0));
    }

    #[test]
    fn pullback_contravariant_and_multiplicative() {
        let g = PointVBGroupoid::new(1, 2, Mat::from_i64(2, 1, &[1, -1])).unwrap();
        let e0 = ExtElement::gen(g.base_algebra(), 0);
        let e1 = ExtElement::gen(g.base_algebra(), 1);
        let w = e0.mul(&e1).unwrap();
        let tw = g.t_pullback(&w).unwrap();
        let expect = g.t_pullback(&e0).unwrap().mul(&g.t_pullback(&e1).unwrap()).unwrap();
        assert_eq!(tw, expect);
        let us = g.u_pullback(&g.s_pullback(&w).unwrap()).unwrap();
        assert_eq!(us, w);
    }

    #[test]
    fn zero_derivation_is_multiplicative() {
        let g = tiny();
        let d = Derivation::zero(g.algebra(), 1);
        assert!(g.is_multiplicative_derivation(&d).unwrap());
    }

    #[test]
    fn ann_basis_has_expected_dimension() {
        // dim ann = 3 dim H - (2 dim C + dim E)
        let g = PointVBGroupoid::new(2, 3, Mat::zeros(3, 2)).unwrap();
        assert_eq!(g.ann_basis().len(), 3 * 5 - (2 * 2 + 3));
    }

    #[test]
    fn extensions_are_injective_and_solvable() {
        let g = PointVBGroupoid::new(1, 2, Mat::from_i64(2, 1, &[1, 0])).unwrap();
        for m in -1..2i64 {
            for sec in g.section_basis(1, m) {
                let r = g.right_ext(&sec).unwrap();
                let back = g.solve_right_ext(&r, 1, m).unwrap();
                assert_eq!(back, sec);
                let l = g.left_ext(&sec).unwrap();
                let back = g.solve_left_ext(&l, 1, m).unwrap();
                assert_eq!(back, sec);
            }
        }
    }

    #[test]
    fn ext_diff_squares_to_zero() {
        // d(σ) = σʳ - σˡ as sections: applying r/l again is meaningless, but d
        // composed through the dgla means d(dσ) where dσ is a multiplicative
        // derivation; here we check the extensions commute appropriately by
        // verifying dσ is ideal-multiplicative for arity-1 sections.
        let g = PointVBGroupoid::new(2, 2, Mat::from_i64(2, 2, &[1, 0, 3, -2])).unwrap();
        for m in [0i64, 1] {
            for sec in g.section_basis(1, m) {
                let d = g.ext_diff(&sec).unwrap();
                let md = MultiDeriv::from_elem(g.mv_algebra(), d).unwrap();
                if md.is_zero() {
                    continue;
                }
                let der = md.to_derivation(g.algebra()).unwrap();
                assert!(g.is_multiplicative_derivation(&der).unwrap());
            }
        }
    }
}

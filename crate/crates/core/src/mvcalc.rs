//! Derivations and multiderivations of free graded-commutative algebras.
//!
//! A degree-`k` [`Derivation`] is stored by its generator values and extended by
//! `X(fg) = X(f)g + (-1)^{|f|k} f X(g)`; equality of derivations is equality of
//! all generator values. A [`MultiDeriv`] of arity `j` is an element of the
//! multivector algebra over the base (see [`Algebra::multivector`]) with
//! momentum count `j`; its Schouten bracket is the pairing bracket there, and
//! evaluation on arguments is the iterated bracket. Restricted to arity 1 the
//! Schouten bracket is the graded commutator, and `[Q,Q] = 2Q²` for odd `Q`.

use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{Algebra, ExtElement};
use crate::error::Error;
use crate::scalar::{self, Scalar};
use crate::Result;

/// A degree-`k` derivation of a free graded-commutative algebra, stored on
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    alg: Arc<Algebra>,
    pub degree: i64,
    values: Vec<ExtElement>,
}

impl Derivation {
    pub fn new(alg: &Arc<Algebra>, degree: i64, values: Vec<ExtElement>) -> Result<Self> {
        if values.len() != alg.len() {
            return Err(Error::DimensionMismatch(
                "one value per generator is required".to_string(),
            ));
        }
        for (i, v) in values.iter().enumerate() {
            if !Algebra::compatible(alg, v.algebra()) {
                return Err(Error::GeneratorSetMismatch);
            }
            let want = alg.degree_of(i as u32) + degree;
            if let Some(d) = v.homogeneous_degree() {
                if d != want && !v.is_zero() {
                    return Err(Error::DegreeMismatch { expected: want, got: d });
                }
            } else if !v.is_zero() {
                return Err(Error::UnsupportedGrading(
                    "derivation values must be homogeneous".to_string(),
                ));
            }
        }
        Ok(Derivation { alg: alg.clone(), degree, values })
    }

    pub fn zero(alg: &Arc<Algebra>, degree: i64) -> Self {
        let values = (0..alg.len()).map(|_| ExtElement::zero(alg)).collect();
        Derivation { alg: alg.clone(), degree, values }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn value(&self, i: u32) -> &ExtElement {
        &self.values[i as usize]
    }

    pub fn values(&self) -> &[ExtElement] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(ExtElement::is_zero)
    }

    /// Applies the derivation to an arbitrary element via the Leibniz rule.
    pub fn apply(&self, x: &ExtElement) -> Result<ExtElement> {
        if !Algebra::compatible(&self.alg, x.algebra()) {
            return Err(Error::GeneratorSetMismatch);
        }
        let mut out = ExtElement::zero(&self.alg);
        for (m, c) in x.terms() {
            out = out.add(&self.apply_mono(m)?.scale(c))?;
        }
        Ok(out)
    }

    fn apply_mono(&self, m: &[u32]) -> Result<ExtElement> {
        // X(g·rest) = X(g)·rest + (-1)^{|g| k} g·X(rest)
        if m.is_empty() {
            return Ok(ExtElement::zero(&self.alg));
        }
        let g = m[0];
        let rest = &m[1..];
        let rest_elem = ExtElement::monomial(&self.alg, rest, scalar::one());
        let mut out = self.values[g as usize].mul(&rest_elem)?;
        if !rest.is_empty() {
            let mut tail = ExtElement::gen(&self.alg, g).mul(&self.apply_mono(rest)?)?;
            if (self.alg.degree_of(g) % 2 != 0) && (self.degree % 2 != 0) {
                tail = tail.neg();
            }
            out = out.add(&tail)?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, got: other.degree });
        }
        if !Algebra::compatible(&self.alg, &other.alg) {
            return Err(Error::GeneratorSetMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(Derivation { alg: self.alg.clone(), degree: self.degree, values })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Derivation {
            alg: self.alg.clone(),
            degree: self.degree,
            values: self.values.iter().map(|v| v.scale(s)).collect(),
        }
    }

    /// Graded commutator `[X,Y] = XY - (-1)^{|X||Y|} YX`, again a derivation.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        if !Algebra::compatible(&self.alg, &other.alg) {
            return Err(Error::GeneratorSetMismatch);
        }
        let degree = self.degree + other.degree;
        let sign = (self.degree % 2 != 0) && (other.degree % 2 != 0);
        let mut values = Vec::with_capacity(self.alg.len());
        for i in 0..self.alg.len() as u32 {
            let xy = self.apply(other.value(i))?;
            let yx = other.apply(self.value(i))?;
            values.push(if sign { xy.add(&yx)? } else { xy.sub(&yx)? });
        }
        Derivation::new(&self.alg, degree, values)
    }

    /// `X ∘ X` on generators; a derivation again when `X` is odd.
    pub fn square(&self) -> Result<Self> {
        if self.degree % 2 == 0 {
            return Err(Error::UnsupportedGrading(
                "square of an even derivation is not a derivation".to_string(),
            ));
        }
        let mut values = Vec::with_capacity(self.alg.len());
        for i in 0..self.alg.len() as u32 {
            values.push(self.apply(self.value(i))?);
        }
        Derivation::new(&self.alg, 2 * self.degree, values)
    }
}

/// An arity-`j`, internal-degree-`k` multiderivation, held as an element of the
/// multivector algebra over its base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiDeriv {
    mv: Arc<Algebra>,
    pub arity: usize,
    pub degree: i64,
    elem: ExtElement,
}

impl MultiDeriv {
    /// Wraps a multivector-algebra element. The element must have uniform
    /// momentum count and be homogeneous in total degree.
    pub fn from_elem(mv: &Arc<Algebra>, elem: ExtElement) -> Result<Self> {
        if !Algebra::compatible(mv, elem.algebra()) {
            return Err(Error::GeneratorSetMismatch);
        }
        let shift = -mv.bracket_degree();
        let parts = elem.arity_parts();
        if parts.len() > 1 {
            return Err(Error::UnsupportedGrading("mixed arity".to_string()));
        }
        let arity = parts.keys().next().copied().unwrap_or(0);
        let total = match elem.homogeneous_degree() {
            Some(t) => t,
            None if elem.is_zero() => 0,
            None => {
                return Err(Error::UnsupportedGrading(
                    "multiderivation must be homogeneous".to_string(),
                ))
            }
        };
        let degree = total - shift * arity as i64;
        Ok(MultiDeriv { mv: mv.clone(), arity, degree, elem })
    }

    pub fn zero(mv: &Arc<Algebra>, arity: usize, degree: i64) -> Self {
        MultiDeriv { mv: mv.clone(), arity, degree, elem: ExtElement::zero(mv) }
    }

    pub fn elem(&self) -> &ExtElement {
        &self.elem
    }

    pub fn multivector_algebra(&self) -> &Arc<Algebra> {
        &self.mv
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.arity != other.arity && !self.is_zero() && !other.is_zero() {
            return Err(Error::ArityMismatch { expected: self.arity, got: other.arity });
        }
        let sum = self.elem.add(&other.elem)?;
        if sum.is_zero() {
            return Ok(MultiDeriv::zero(&self.mv, self.arity, self.degree));
        }
        MultiDeriv::from_elem(&self.mv, sum)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        MultiDeriv {
            mv: self.mv.clone(),
            arity: self.arity,
            degree: self.degree,
            elem: self.elem.scale(s),
        }
    }

    /// Evaluation on momentum-free elements: the iterated pairing bracket
    /// `{..{{P,f₁},f₂}..,f_j}`, a momentum-free element again.
    pub fn eval(&self, args: &[&ExtElement]) -> Result<ExtElement> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: args.len() });
        }
        let mut acc = self.elem.clone();
        for a in args {
            if !a.is_momentum_free() {
                return Err(Error::Precondition(
                    "multiderivation arguments must be momentum-free".to_string(),
                ));
            }
            acc = acc.bracket(a)?;
        }
        debug_assert!(acc.is_momentum_free());
        Ok(acc)
    }

    /// Evaluation on base generators by index.
    pub fn eval_gens(&self, args: &[u32]) -> Result<ExtElement> {
        let elems: Vec<ExtElement> = args.iter().map(|&i| ExtElement::gen(&self.mv, i)).collect();
        let refs: Vec<&ExtElement> = elems.iter().collect();
        self.eval(&refs)
    }

    /// Builds a multiderivation from its value table on strictly increasing
    /// base-generator tuples. Calibrated so that `eval_gens(tuple)` returns the
    /// given value exactly.
    pub fn from_table<I>(mv: &Arc<Algebra>, arity: usize, degree: i64, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, ExtElement)>,
    {
        let mut total = ExtElement::zero(mv);
        for (tuple, value) in entries {
            if tuple.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, got: tuple.len() });
            }
            if tuple.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Precondition(
                    "table tuples must be strictly increasing".to_string(),
                ));
            }
            if value.is_zero() {
                continue;
            }
            let ps: Vec<u32> = tuple.iter().map(|&i| mv.momentum_of(i)).collect();
            let p_mono = ExtElement::monomial(mv, &ps, scalar::one());
            // Per homogeneous part, fix the sign by evaluating the candidate.
            for (_, part) in value.degree_parts() {
                let candidate = part.mul(&p_mono)?;
                let probe =
                    MultiDeriv { mv: mv.clone(), arity, degree, elem: candidate.clone() };
                let got = probe.eval_gens(&tuple)?;
                if got == part {
                    total = total.add(&candidate)?;
                } else if got == part.neg() {
                    total = total.sub(&candidate)?;
                } else {
                    return Err(Error::Precondition(
                        "table calibration failed (value collides with tuple)".to_string(),
                    ));
                }
            }
        }
        if total.is_zero() {
            return Ok(MultiDeriv::zero(mv, arity, degree));
        }
        let out = MultiDeriv::from_elem(mv, total)?;
        if out.arity != arity {
            return Err(Error::ArityMismatch { expected: arity, got: out.arity });
        }
        if out.degree != degree {
            return Err(Error::DegreeMismatch { expected: degree, got: out.degree });
        }
        Ok(out)
    }

    /// Schouten bracket: the pairing bracket of the multivector algebra.
    /// Bidegree `(-1, 0)` in (arity, internal degree).
    pub fn schouten(&self, other: &Self) -> Result<Self> {
        let elem = self.elem.bracket(&other.elem)?;
        if elem.is_zero() {
            return Ok(MultiDeriv::zero(
                &self.mv,
                (self.arity + other.arity).saturating_sub(1),
                self.degree + other.degree,
            ));
        }
        MultiDeriv::from_elem(&self.mv, elem)
    }

    /// The arity-1 multiderivation of a derivation: `X ↦ Σ X(g)·p_g`.
    pub fn from_derivation(mv: &Arc<Algebra>, x: &Derivation) -> Result<Self> {
        let n_base = mv.n_base();
        if x.algebra().len() != n_base {
            return Err(Error::DimensionMismatch(
                "derivation base does not match multivector base".to_string(),
            ));
        }
        let mut elem = ExtElement::zero(mv);
        for i in 0..n_base as u32 {
            let v = lift_to_mv(mv, x.value(i))?;
            let p = ExtElement::gen(mv, mv.momentum_of(i));
            elem = elem.add(&v.mul(&p)?)?;
        }
        if elem.is_zero() {
            return Ok(MultiDeriv::zero(mv, 1, x.degree));
        }
        MultiDeriv::from_elem(mv, elem)
    }

    /// Converts an arity-1 multiderivation back into a derivation on the base.
    pub fn to_derivation(&self, base: &Arc<Algebra>) -> Result<Derivation> {
        if self.is_zero() {
            return Ok(Derivation::zero(base, self.degree));
        }
        if self.arity != 1 {
            return Err(Error::ArityMismatch { expected: 1, got: self.arity });
        }
        let mut values = Vec::with_capacity(base.len());
        for i in 0..base.len() as u32 {
            let v = self.eval_gens(&[i])?;
            values.push(project_to_base(base, &v)?);
        }
        Derivation::new(base, self.degree, values)
    }
}

/// Re-reads a base-algebra element inside the multivector algebra (whose first
/// `n_base` generators coincide with the base generators).
pub fn lift_to_mv(mv: &Arc<Algebra>, x: &ExtElement) -> Result<ExtElement> {
    let n_base = mv.n_base();
    if x.algebra().len() != n_base {
        return Err(Error::DimensionMismatch("element does not live on the base".to_string()));
    }
    let mut out = ExtElement::zero(mv);
    for (m, c) in x.terms() {
        out = out.add(&ExtElement::monomial(mv, m, c.clone()))?;
    }
    Ok(out)
}

/// Inverse of [`lift_to_mv`] for momentum-free elements.
pub fn project_to_base(base: &Arc<Algebra>, x: &ExtElement) -> Result<ExtElement> {
    if !x.is_momentum_free() {
        return Err(Error::Precondition("element has momentum factors".to_string()));
    }
    let mut out = ExtElement::zero(base);
    for (m, c) in x.terms() {
        out = out.add(&ExtElement::monomial(base, m, c.clone()))?;
    }
    Ok(out)
}

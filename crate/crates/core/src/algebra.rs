//! Free graded-commutative algebras with exact sparse coefficients.
//!
//! An [`Algebra`] is a finite list of graded generators; an [`ExtElement`] is a
//! sparse linear combination of sorted generator monomials. Odd generators square
//! to zero, even generators may repeat, and every product or transposition picks
//! up the Koszul sign of the permutation that sorts it.
//!
//! An algebra may additionally carry a *pairing bracket*: a graded Poisson
//! bracket of a fixed degree `n` determined by its values on generator pairs and
//! extended as a biderivation. Instantiations used elsewhere:
//!
//! * multivector fields on an odd linear space (generators of degree 1, momenta
//!   of degree 1, `n = -2`) — this is simultaneously the big-bracket algebra;
//! * polynomial multivector fields on an even space (coordinates of degree 0,
//!   momenta of degree 1, `n = -1`), whose bracket is the Schouten bracket.
//!
//! The bracket conventions, for shifted degree `x̃ = |x| + n`:
//!
//! ```text
//! {x,y} = -(-1)^{x̃ ỹ} {y,x}
//! {x,yz} = {x,y} z + (-1)^{x̃ |y|} y {x,z}
//! {x,{y,z}} = {{x,y},z} + (-1)^{x̃ ỹ} {y,{x,z}}
//! ```

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};
use num_traits::Zero;

use crate::error::Error;
use crate::scalar::{self, Scalar};
use crate::Result;

/// A graded generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gen {
    pub label: String,
    pub degree: i64,
}

impl Gen {
    pub fn new(label: impl Into<String>, degree: i64) -> Self {
        Gen { label: label.into(), degree }
    }

    fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

/// A sorted generator monomial (indices ascending, repeats adjacent).
pub type Mono = Vec<u32>;

/// A free graded-commutative algebra on finitely many generators, optionally
/// with a pairing-induced graded Poisson bracket.
#[derive(Debug, PartialEq, Eq)]
pub struct Algebra {
    gens: Vec<Gen>,
    /// Generators `0..n_base` are coordinates; the rest are momenta (when this
    /// algebra was built by [`Algebra::multivector`]).
    n_base: usize,
    bracket_degree: i64,
    /// Complete table: both orientations stored.
    pairing: BTreeMap<(u32, u32), Scalar>,
}

impl Algebra {
    /// A plain free graded-commutative algebra (no bracket).
    pub fn exterior(gens: Vec<Gen>) -> Arc<Self> {
        let n = gens.len();
        Arc::new(Algebra { gens, n_base: n, bracket_degree: 0, pairing: BTreeMap::new() })
    }

    /// The multivector algebra over a base generator set: each base generator
    /// `g` of degree `d` gets a conjugate momentum of degree `shift - d`, and
    /// the bracket of degree `-shift` pairs them: `{p_g, g} = 1`.
    ///
    /// With all base degrees 1 and `shift = 2` this is the algebra of
    /// multivector fields on the odd space (equivalently the big bracket on
    /// `Λ(W ⊕ W*)`); with base degrees 0 and `shift = 1` it is the polynomial
    /// multivector calculus on an even space with its Schouten bracket.
    pub fn multivector(base: Vec<Gen>, shift: i64) -> Arc<Self> {
        let n_base = base.len();
        let mut gens = base;
        let momenta: Vec<Gen> = gens
            .iter()
            .map(|g| Gen::new(format!("p_{}", g.label), shift - g.degree))
            .collect();
        gens.extend(momenta);
        let mut pairing = BTreeMap::new();
        for i in 0..n_base {
            let g = i as u32;
            let p = (i + n_base) as u32;
            pairing.insert((p, g), scalar::one());
            // {g,p} = -(-1)^{g̃ p̃} {p,g} with shifted degrees g̃ = |g| - shift.
            let sg = koszul(gens[p as usize].degree - shift, gens[g as usize].degree - shift);
            pairing.insert((g, p), if sg { scalar::one() } else { -scalar::one() });
        }
        Arc::new(Algebra { gens, n_base, bracket_degree: -shift, pairing })
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn n_base(&self) -> usize {
        self.n_base
    }

    pub fn bracket_degree(&self) -> i64 {
        self.bracket_degree
    }

    pub fn degree_of(&self, i: u32) -> i64 {
        self.gens[i as usize].degree
    }

    pub fn is_momentum(&self, i: u32) -> bool {
        (i as usize) >= self.n_base
    }

    pub fn momentum_of(&self, base: u32) -> u32 {
        debug_assert!((base as usize) < self.n_base);
        base + self.n_base as u32
    }

    pub fn base_of(&self, momentum: u32) -> u32 {
        debug_assert!(self.is_momentum(momentum));
        momentum - self.n_base as u32
    }

    fn pair(&self, a: u32, b: u32) -> Option<&Scalar> {
        self.pairing.get(&(a, b))
    }

    /// Two algebras interoperate when they have identical generator data.
    pub fn compatible(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

fn parity(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

/// `(-1)^{ab}` as a bool flag (`true` = negative).
fn koszul(a: i64, b: i64) -> bool {
    parity(a) && parity(b)
}

/// Sorts a monomial, returning the Koszul sign, or `None` when an odd generator
/// repeats.
fn normalize_mono(alg: &Algebra, mut m: Vec<u32>) -> Option<(Mono, bool)> {
    // insertion sort, counting transpositions of odd pairs
    let mut neg = false;
    for i in 1..m.len() {
        let mut j = i;
        while j > 0 && m[j - 1] > m[j] {
            if alg.gens[m[j - 1] as usize].is_odd() && alg.gens[m[j] as usize].is_odd() {
                neg = !neg;
            }
            m.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in m.windows(2) {
        if w[0] == w[1] && alg.gens[w[0] as usize].is_odd() {
            return None;
        }
    }
    Some((m, neg))
}

/// Merges two sorted monomials with the Koszul sign of the shuffle.
fn mul_mono(alg: &Algebra, a: &[u32], b: &[u32]) -> Option<(Mono, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut neg = false;
    let mut i = 0;
    let mut j = 0;
    // number of odd generators remaining in a[i..]
    let mut odd_rest: Vec<u32> = Vec::with_capacity(a.len() + 1);
    {
        let mut c = 0u32;
        odd_rest.push(0);
        for &x in a.iter().rev() {
            if alg.gens[x as usize].is_odd() {
                c += 1;
            }
            odd_rest.push(c);
        }
        odd_rest.reverse(); // odd_rest[i] = #odd in a[i..]
    }
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] crosses a[i..]
            if alg.gens[b[j] as usize].is_odd() && odd_rest[i] % 2 == 1 {
                neg = !neg;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    for w in out.windows(2) {
        if w[0] == w[1] && alg.gens[w[0] as usize].is_odd() {
            return None;
        }
    }
    Some((out, neg))
}

fn mono_degree(alg: &Algebra, m: &[u32]) -> i64 {
    m.iter().map(|&i| alg.gens[i as usize].degree).sum()
}

/// A sparse element of a free graded-commutative algebra.
#[derive(Clone)]
pub struct ExtElement {
    alg: Arc<Algebra>,
    terms: BTreeMap<Mono, Scalar>,
}

impl PartialEq for ExtElement {
    fn eq(&self, other: &Self) -> bool {
        Algebra::compatible(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for ExtElement {}

impl core::fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl ExtElement {
    pub fn zero(alg: &Arc<Algebra>) -> Self {
        ExtElement { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &Arc<Algebra>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), scalar::one());
        ExtElement { alg: alg.clone(), terms }
    }

    pub fn constant(alg: &Arc<Algebra>, c: Scalar) -> Self {
        let mut e = Self::zero(alg);
        e.add_term(Vec::new(), c);
        e
    }

    pub fn gen(alg: &Arc<Algebra>, i: u32) -> Self {
        assert!((i as usize) < alg.len(), "generator index out of range");
        let mut e = Self::zero(alg);
        e.add_term(vec![i], scalar::one());
        e
    }

    /// A (possibly unsorted) monomial with coefficient.
    pub fn monomial(alg: &Arc<Algebra>, indices: &[u32], coeff: Scalar) -> Self {
        let mut e = Self::zero(alg);
        if let Some((m, neg)) = normalize_mono(alg, indices.to_vec()) {
            e.add_term(m, if neg { -coeff } else { coeff });
        }
        e
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &[u32]) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(scalar::zero)
    }

    fn add_term(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compat(&self, other: &Self) -> Result<()> {
        if Algebra::compatible(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::GeneratorSetMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.alg);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(&self.alg);
        }
        let mut out = Self::zero(&self.alg);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * s);
        }
        out
    }

    /// Graded-commutative product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut out = Self::zero(&self.alg);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, neg)) = mul_mono(&self.alg, ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Total degree when homogeneous (zero reports `Some(any)` as `None`-free 0).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| mono_degree(&self.alg, m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Splits into homogeneous components by total degree.
    pub fn degree_parts(&self) -> BTreeMap<i64, ExtElement> {
        let mut out: BTreeMap<i64, ExtElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = mono_degree(&self.alg, m);
            out.entry(d)
                .or_insert_with(|| ExtElement::zero(&self.alg))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Splits by momentum count (arity), for multivector algebras.
    pub fn arity_parts(&self) -> BTreeMap<usize, ExtElement> {
        let mut out: BTreeMap<usize, ExtElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            let a = m.iter().filter(|&&i| self.alg.is_momentum(i)).count();
            out.entry(a)
                .or_insert_with(|| ExtElement::zero(&self.alg))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// True when no monomial contains a momentum generator.
    pub fn is_momentum_free(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&i| !self.alg.is_momentum(i)))
    }

    /// The algebra homomorphism sending generator `i` to `images[i]`, applied to
    /// `self`. Images must be homogeneous of the generator's degree and live in
    /// a common target algebra.
    pub fn subst(&self, target: &Arc<Algebra>, images: &[ExtElement]) -> Result<Self> {
        if images.len() != self.alg.len() {
            return Err(Error::DimensionMismatch(
                "one image per generator is required".to_string(),
            ));
        }
        for (i, im) in images.iter().enumerate() {
            if !Algebra::compatible(target, &im.alg) {
                return Err(Error::GeneratorSetMismatch);
            }
            if let Some(d) = im.homogeneous_degree() {
                let want = self.alg.gens[i].degree;
                if d != want && !im.is_zero() {
                    return Err(Error::DegreeMismatch { expected: want, got: d });
                }
            } else if !im.is_zero() {
                return Err(Error::UnsupportedGrading(
                    "generator image must be homogeneous".to_string(),
                ));
            }
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Self::constant(target, c.clone());
            for &i in m {
                acc = acc.mul(&images[i as usize])?;
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// The pairing bracket, when the algebra carries one.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        if self.alg.pairing.is_empty() {
            return Err(Error::UnsupportedGrading(
                "algebra carries no pairing bracket".to_string(),
            ));
        }
        let mut out = Self::zero(&self.alg);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let b = bracket_mono(&self.alg, ma, mb);
                out = out.add(&b.scale(&(ca * cb)))?;
            }
        }
        Ok(out)
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mono = if m.is_empty() {
                "1".to_string()
            } else {
                let labels: Vec<&str> =
                    m.iter().map(|&i| self.alg.gens[i as usize].label.as_str()).collect();
                labels.join("^")
            };
            parts.push(format!("({c})·{mono}"));
        }
        parts.join(" + ")
    }
}

/// `{u, v}` for monomials, via the biderivation recursion.
fn bracket_mono(alg: &Arc<Algebra>, u: &[u32], v: &[u32]) -> ExtElement {
    let n = alg.bracket_degree;
    if u.is_empty() {
        return ExtElement::zero(alg);
    }
    if u.len() == 1 {
        // {g, v} = Σ_j (-1)^{(|g|+n)·|v_<j|} <g,v_j> v∖j
        let g = u[0];
        let gdeg = alg.degree_of(g) + n;
        let mut out = ExtElement::zero(alg);
        let mut prefix = 0i64;
        for (j, &vj) in v.iter().enumerate() {
            if let Some(p) = alg.pair(g, vj) {
                let mut rest: Vec<u32> = Vec::with_capacity(v.len() - 1);
                rest.extend_from_slice(&v[..j]);
                rest.extend_from_slice(&v[j + 1..]);
                let neg = koszul(gdeg, prefix);
                let c = if neg { -p.clone() } else { p.clone() };
                out.add_term(rest, c);
            }
            prefix += alg.degree_of(vj);
        }
        return out;
    }
    // {g·rest, v} = g·{rest, v} + (-1)^{|rest|·(|v|+n)} {g, v}·rest
    let g = u[0];
    let rest = &u[1..];
    let rest_deg = mono_degree(alg, rest);
    let v_deg = mono_degree(alg, v);
    let g_elem = ExtElement::monomial(alg, &[g], scalar::one());
    let rest_elem = ExtElement::monomial(alg, rest, scalar::one());
    let term1 = g_elem.mul(&bracket_mono(alg, rest, v)).expect("same algebra");
    let mut term2 = bracket_mono(alg, &[g], v).mul(&rest_elem).expect("same algebra");
    if koszul(rest_deg, v_deg + n) {
        term2 = term2.neg();
    }
    term1.add(&term2).expect("same algebra")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn odd3() -> Arc<Algebra> {
        Algebra::exterior(vec![Gen::new("a", 1), Gen::new("b", 1), Gen::new("c", 1)])
    }

    #[test]
    fn odd_generators_anticommute() {
        let alg = odd3();
        let a = ExtElement::gen(&alg, 0);
        let b = ExtElement::gen(&alg, 1);
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        assert_eq!(ab, ba.neg());
        assert!(a.mul(&a).unwrap().is_zero());
    }

    #[test]
    fn even_generators_commute_and_repeat() {
        let alg = Algebra::exterior(vec![Gen::new("x", 2), Gen::new("t", 1)]);
        let x = ExtElement::gen(&alg, 0);
        let x2 = x.mul(&x).unwrap();
        assert_eq!(x2.coeff(&[0, 0]), int(1));
        let t = ExtElement::gen(&alg, 1);
        assert_eq!(x.mul(&t).unwrap(), t.mul(&x).unwrap());
    }

    #[test]
    fn monomial_normalization_sign() {
        let alg = odd3();
        // b^a = -a^b
        let e = ExtElement::monomial(&alg, &[1, 0], int(1));
        assert_eq!(e.coeff(&[0, 1]), int(-1));
        // c^b^a = -a^b^c (three transpositions... (2,1,0) has 3 inversions)
        let e = ExtElement::monomial(&alg, &[2, 1, 0], int(1));
        assert_eq!(e.coeff(&[0, 1, 2]), int(-1));
    }

    #[test]
    fn subst_is_algebra_hom() {
        let alg = odd3();
        let a = ExtElement::gen(&alg, 0);
        let b = ExtElement::gen(&alg, 1);
        let c = ExtElement::gen(&alg, 2);
        // a ↦ a + b, b ↦ c, c ↦ 0
        let images = vec![a.add(&b).unwrap(), c.clone(), ExtElement::zero(&alg)];
        let ab = a.mul(&b).unwrap();
        let got = ab.subst(&alg, &images).unwrap();
        let want = a.add(&b).unwrap().mul(&c).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn odd_poisson_pairing() {
        // two odd coordinates with odd momenta, shift 2 (bracket degree -2)
        let alg = Algebra::multivector(vec![Gen::new("a", 1), Gen::new("b", 1)], 2);
        let a = ExtElement::gen(&alg, 0);
        let pa = ExtElement::gen(&alg, alg.momentum_of(0));
        let pb = ExtElement::gen(&alg, alg.momentum_of(1));
        assert_eq!(pa.bracket(&a).unwrap(), ExtElement::one(&alg));
        // symmetric for odd/odd with n = -2
        assert_eq!(a.bracket(&pa).unwrap(), ExtElement::one(&alg));
        assert!(pa.bracket(&pb).unwrap().is_zero());
    }

    #[test]
    fn even_schouten_pairing() {
        // even coordinate x with odd momentum, shift 1 (bracket degree -1)
        let alg = Algebra::multivector(vec![Gen::new("x", 0)], 1);
        let x = ExtElement::gen(&alg, 0);
        let p = ExtElement::gen(&alg, 1);
        assert_eq!(p.bracket(&x).unwrap(), ExtElement::one(&alg));
        // {x,p} = -(-1)^{(0-1)(1-1)}{p,x} = -1
        assert_eq!(x.bracket(&p).unwrap(), ExtElement::one(&alg).neg());
    }
}

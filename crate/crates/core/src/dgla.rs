//! Finite windows of differential graded Lie algebras as structure-constant
//! bundles.
//!
//! A [`Dgla`] stores, per degree in a window, a finite basis, the differential
//! blocks `d_i: L^i → L^{i+1}`, and sparse bracket tables per degree pair.
//! [`verify_dgla`] sweeps `d² = 0`, graded antisymmetry, the Leibniz rule and
//! graded Jacobi over all basis tuples whose intermediate degrees stay inside
//! the window. Degree-1 elements carry Maurer–Cartan residuals
//! `dx + ½[x,x]`; degree-0 elements act by gauge transformations through the
//! terminating exponential series.
//!
//! Three builders assemble the dglas used elsewhere: the groupoid dgla
//! `L^i = Γ^{i+1}A ⊕ X^{1,i}_mul`, the big bracket on `Λ(W ⊕ W*)`, and the
//! multivector-field dgla with components `Γ^{k+1}Λ^j A ⊕ X^{j,k}_mul` for
//! `2j + k - 2 = i`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

use crate::algebra::{Algebra, ExtElement, Gen};
use crate::error::Error;
use crate::groupoid::{subsets, PointVBGroupoid};
use crate::linalg::Mat;
use crate::mvcalc::{Derivation, MultiDeriv};
use crate::report::{Check, Report};
use crate::scalar::{self, Scalar};
use crate::Result;

/// One graded component: dimension and display labels for its basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DglaComponent {
    pub dim: usize,
    pub labels: Vec<String>,
}

/// A finite-window differential graded Lie algebra over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct Dgla {
    pub window: (i64, i64),
    components: BTreeMap<i64, DglaComponent>,
    /// `d_i: L^i → L^{i+1}` (absent = zero).
    diff: BTreeMap<i64, Mat>,
    /// sparse: (i, j) -> list of (a, b, coefficients in L^{i+j}).
    brackets: BTreeMap<(i64, i64), BTreeMap<(usize, usize), Vec<Scalar>>>,
}

/// A homogeneous element.
#[derive(Debug, Clone, PartialEq)]
pub struct DglaElem {
    pub degree: i64,
    pub coords: Vec<Scalar>,
}

impl DglaElem {
    pub fn zero(dgla: &Dgla, degree: i64) -> Self {
        DglaElem { degree, coords: vec![scalar::zero(); dgla.dim(degree)] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        DglaElem {
            degree: self.degree,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        DglaElem {
            degree: self.degree,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        DglaElem { degree: self.degree, coords: self.coords.iter().map(|c| c * s).collect() }
    }
}

impl Dgla {
    pub fn new(window: (i64, i64), components: BTreeMap<i64, DglaComponent>) -> Self {
        Dgla { window, components, diff: BTreeMap::new(), brackets: BTreeMap::new() }
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.components.get(&degree).map_or(0, |c| c.dim)
    }

    pub fn component(&self, degree: i64) -> Option<&DglaComponent> {
        self.components.get(&degree)
    }

    pub fn in_window(&self, degree: i64) -> bool {
        degree >= self.window.0 && degree <= self.window.1
    }

    pub fn set_diff(&mut self, degree: i64, m: Mat) -> Result<()> {
        if m.cols != self.dim(degree) || m.rows != self.dim(degree + 1) {
            return Err(Error::ShapeMismatch(format!("differential block at {degree}")));
        }
        self.diff.insert(degree, m);
        Ok(())
    }

    pub fn set_bracket_entry(
        &mut self,
        di: i64,
        dj: i64,
        a: usize,
        b: usize,
        value: Vec<Scalar>,
    ) -> Result<()> {
        if value.len() != self.dim(di + dj) {
            return Err(Error::ShapeMismatch(format!("bracket value in degree {}", di + dj)));
        }
        if value.iter().all(Zero::is_zero) {
            return Ok(());
        }
        self.brackets.entry((di, dj)).or_default().insert((a, b), value);
        Ok(())
    }

    pub fn d(&self, x: &DglaElem) -> DglaElem {
        let out_dim = self.dim(x.degree + 1);
        match self.diff.get(&x.degree) {
            None => DglaElem { degree: x.degree + 1, coords: vec![scalar::zero(); out_dim] },
            Some(m) => DglaElem { degree: x.degree + 1, coords: m.apply(&x.coords) },
        }
    }

    pub fn bracket(&self, x: &DglaElem, y: &DglaElem) -> DglaElem {
        let degree = x.degree + y.degree;
        let mut coords = vec![scalar::zero(); self.dim(degree)];
        if let Some(table) = self.brackets.get(&(x.degree, y.degree)) {
            for (a, xa) in x.coords.iter().enumerate() {
                if xa.is_zero() {
                    continue;
                }
                for (b, yb) in y.coords.iter().enumerate() {
                    if yb.is_zero() {
                        continue;
                    }
                    if let Some(v) = table.get(&(a, b)) {
                        let c = xa * yb;
                        for (o, w) in coords.iter_mut().zip(v) {
                            *o += &c * w;
                        }
                    }
                }
            }
        }
        DglaElem { degree, coords }
    }

    pub fn basis_elem(&self, degree: i64, i: usize) -> DglaElem {
        let mut e = DglaElem::zero(self, degree);
        e.coords[i] = scalar::one();
        e
    }

    /// The Maurer–Cartan residual `dx + ½[x,x]` of a degree-1 element.
    pub fn mc_residual(&self, x: &DglaElem) -> Result<DglaElem> {
        if x.degree != 1 {
            return Err(Error::DegreeMismatch { expected: 1, got: x.degree });
        }
        Ok(self.d(x).add(&self.bracket(x, x).scale(&scalar::half())))
    }

    /// Gauge action of a degree-0 element on a degree-1 element:
    /// `e^b·x = e^{ad_b}(x) - Σ_{k≥0} ad_b^k(db)/(k+1)!`.
    /// Errors when `ad_b` fails to vanish within `cap` iterations.
    pub fn gauge_transform(&self, b: &DglaElem, x: &DglaElem, cap: u32) -> Result<DglaElem> {
        if b.degree != 0 {
            return Err(Error::DegreeMismatch { expected: 0, got: b.degree });
        }
        if x.degree != 1 {
            return Err(Error::DegreeMismatch { expected: 1, got: x.degree });
        }
        let mut out = x.clone();
        // e^{ad_b}(x)
        let mut term = x.clone();
        let mut kfact = scalar::one();
        for k in 1..=cap as i64 {
            term = self.bracket(b, &term);
            if term.is_zero() {
                break;
            }
            kfact = kfact * scalar::int(k);
            out = out.add(&term.scale(&kfact.recip()));
            if k as u32 == cap {
                return Err(Error::NonNilpotent { cap });
            }
        }
        // - Σ ad_b^k(db)/(k+1)!
        let db = self.d(b);
        let mut term = db;
        let mut factor = scalar::one(); // (k+1)! running
        let mut k = 0i64;
        loop {
            if term.is_zero() {
                break;
            }
            factor = factor * scalar::int(k + 1);
            out = out.sub(&term.scale(&factor.recip()));
            term = self.bracket(b, &term);
            k += 1;
            if k as u32 > cap {
                return Err(Error::NonNilpotent { cap });
            }
        }
        Ok(out)
    }

    /// The twisted differential `d_x = d + [x, ·]` for a degree-1 element,
    /// returned as matrix blocks over the window (blocks whose target leaves
    /// the window are dropped).
    pub fn twist_differential(&self, x: &DglaElem) -> Result<BTreeMap<i64, Mat>> {
        if x.degree != 1 {
            return Err(Error::DegreeMismatch { expected: 1, got: x.degree });
        }
        let mut out = BTreeMap::new();
        for (&deg, comp) in &self.components {
            if !self.in_window(deg + 1) {
                continue;
            }
            let mut m = Mat::zeros(self.dim(deg + 1), comp.dim);
            for i in 0..comp.dim {
                let e = self.basis_elem(deg, i);
                let v = self.d(&e).add(&self.bracket(x, &e));
                for (r, c) in v.coords.into_iter().enumerate() {
                    m.set(r, i, c);
                }
            }
            out.insert(deg, m);
        }
        Ok(out)
    }
}

/// Axiom sweep: `d-squared`, `antisymmetry`, `leibniz`, `jacobi`, each over
/// basis tuples with in-window intermediate degrees.
pub fn verify_dgla(dgla: &Dgla) -> Report {
    let mut report = Report::new();
    let degrees: Vec<i64> = dgla.components.keys().copied().collect();

    let mut dsq = Check::new("d-squared");
    for &i in &degrees {
        if !dgla.in_window(i + 1) || !dgla.in_window(i + 2) {
            continue;
        }
        for a in 0..dgla.dim(i) {
            let e = dgla.basis_elem(i, a);
            let v = dgla.d(&dgla.d(&e));
            if !v.is_zero() {
                dsq.witness(vec![i, a as i64], fmt_coords(&v.coords));
            }
        }
    }
    report.push(dsq);

    let mut anti = Check::new("antisymmetry");
    for &i in &degrees {
        for &j in &degrees {
            if !dgla.in_window(i + j) {
                continue;
            }
            for a in 0..dgla.dim(i) {
                for b in 0..dgla.dim(j) {
                    let x = dgla.basis_elem(i, a);
                    let y = dgla.basis_elem(j, b);
                    let xy = dgla.bracket(&x, &y);
                    let yx = dgla.bracket(&y, &x);
                    let sign = if (i % 2 != 0) && (j % 2 != 0) {
                        scalar::one()
                    } else {
                        -scalar::one()
                    };
                    let r = xy.sub(&yx.scale(&sign));
                    if !r.is_zero() {
                        anti.witness(vec![i, a as i64, j, b as i64], fmt_coords(&r.coords));
                    }
                }
            }
        }
    }
    report.push(anti);

    let mut leib = Check::new("leibniz");
    for &i in &degrees {
        for &j in &degrees {
            if !dgla.in_window(i + j) || !dgla.in_window(i + j + 1) {
                continue;
            }
            if !dgla.in_window(i + 1) || !dgla.in_window(j + 1) {
                continue;
            }
            for a in 0..dgla.dim(i) {
                for b in 0..dgla.dim(j) {
                    let x = dgla.basis_elem(i, a);
                    let y = dgla.basis_elem(j, b);
                    let lhs = dgla.d(&dgla.bracket(&x, &y));
                    let mut rhs = dgla.bracket(&dgla.d(&x), &y);
                    let t2 = dgla.bracket(&x, &dgla.d(&y));
                    rhs = if i % 2 != 0 { rhs.sub(&t2) } else { rhs.add(&t2) };
                    let r = lhs.sub(&rhs);
                    if !r.is_zero() {
                        leib.witness(vec![i, a as i64, j, b as i64], fmt_coords(&r.coords));
                    }
                }
            }
        }
    }
    report.push(leib);

    let mut jac = Check::new("jacobi");
    for &i in &degrees {
        for &j in &degrees {
            for &k in &degrees {
                if !dgla.in_window(i + j + k)
                    || !dgla.in_window(j + k)
                    || !dgla.in_window(i + j)
                    || !dgla.in_window(i + k)
                {
                    continue;
                }
                for a in 0..dgla.dim(i) {
                    for b in 0..dgla.dim(j) {
                        for c in 0..dgla.dim(k) {
                            let x = dgla.basis_elem(i, a);
                            let y = dgla.basis_elem(j, b);
                            let z = dgla.basis_elem(k, c);
                            let lhs = dgla.bracket(&x, &dgla.bracket(&y, &z));
                            let mut rhs = dgla.bracket(&dgla.bracket(&x, &y), &z);
                            let t2 = dgla.bracket(&y, &dgla.bracket(&x, &z));
                            rhs = if (i % 2 != 0) && (j % 2 != 0) {
                                rhs.sub(&t2)
                            } else {
                                rhs.add(&t2)
                            };
                            let r = lhs.sub(&rhs);
                            if !r.is_zero() {
                                jac.witness(
                                    vec![i, a as i64, j, b as i64, k, c as i64],
                                    fmt_coords(&r.coords),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    report.push(jac);

    report
}

fn fmt_coords(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|c| format!("{c}")).collect();
    format!("({})", parts.join(","))
}

// ---------------------------------------------------------------------------
// the groupoid dgla
// ---------------------------------------------------------------------------

/// The groupoid dgla with its concrete basis elements kept alongside, so that
/// coordinates can be read back into derivations and section tensors.
pub struct GroupoidDgla {
    pub dgla: Dgla,
    pub groupoid: PointVBGroupoid,
    /// per degree: section basis elements (multivector-algebra elements).
    pub section_basis: BTreeMap<i64, Vec<ExtElement>>,
    /// per degree: multiplicative-derivation basis.
    pub field_basis: BTreeMap<i64, Vec<Derivation>>,
}

impl GroupoidDgla {
    /// Coordinates of a (section, field) pair in degree `deg`.
    pub fn coords_of(
        &self,
        deg: i64,
        section: &ExtElement,
        field: &Derivation,
    ) -> Result<DglaElem> {
        let secs = self.section_basis.get(&deg).cloned().unwrap_or_default();
        let fields = self.field_basis.get(&deg).cloned().unwrap_or_default();
        // sections: coordinates by monomial matching
        let mut sec_coords = solve_in_basis_elems(&secs, section)?;
        let mut field_coords = solve_in_basis_derivations(&fields, field)?;
        let mut coords = Vec::with_capacity(sec_coords.len() + field_coords.len());
        coords.append(&mut sec_coords);
        coords.append(&mut field_coords);
        Ok(DglaElem { degree: deg, coords })
    }

    /// The (section element, derivation) pair of a coordinate vector.
    pub fn parts_of(&self, x: &DglaElem) -> (ExtElement, Derivation) {
        let secs = self.section_basis.get(&x.degree).cloned().unwrap_or_default();
        let fields = self.field_basis.get(&x.degree).cloned().unwrap_or_default();
        let g = &self.groupoid;
        let mut sec = ExtElement::zero(g.mv_algebra());
        for (c, b) in x.coords.iter().zip(&secs) {
            if !c.is_zero() {
                sec = sec.add(&b.scale(c)).unwrap();
            }
        }
        let mut field = Derivation::zero(g.algebra(), x.degree);
        for (c, b) in x.coords[secs.len()..].iter().zip(&fields) {
            if !c.is_zero() {
                field = field.add(&b.scale(c)).unwrap();
            }
        }
        (sec, field)
    }

    /// The Maurer–Cartan element of a quasi Q-structure: `(q, Q)` in degree 1.
    pub fn mc_of_quasi_q(&self, s: &crate::qla::QuasiQStructure) -> Result<DglaElem> {
        let sec = crate::qla::section_elem(&self.groupoid, &s.q_section)?;
        self.coords_of(1, &sec, &s.q_field)
    }

    /// Reads a degree-1 element back as a quasi Q-structure.
    pub fn quasi_q_of_mc(&self, x: &DglaElem) -> Result<crate::qla::QuasiQStructure> {
        let (sec, field) = self.parts_of(x);
        let q = crate::qla::section_tensor(&self.groupoid, &sec, 2)?;
        crate::qla::QuasiQStructure::new(&self.groupoid, field, q)
    }
}


fn solve_in_basis_general(basis: &[ExtElement], x: &ExtElement) -> Result<Vec<Scalar>> {
    if basis.is_empty() {
        return if x.is_zero() {
            Ok(Vec::new())
        } else {
            Err(Error::NotSolvable("empty basis".to_string()))
        };
    }
    let mut support: BTreeMap<crate::algebra::Mono, usize> = BTreeMap::new();
    for e in basis.iter().chain(core::iter::once(x)) {
        for (m, _) in e.terms() {
            let next = support.len();
            support.entry(m.clone()).or_insert(next);
        }
    }
    let mut mat = Mat::zeros(support.len(), basis.len());
    for (col, e) in basis.iter().enumerate() {
        for (m, c) in e.terms() {
            mat.set(support[m], col, c.clone());
        }
    }
    let mut rhs = vec![scalar::zero(); support.len()];
    for (m, c) in x.terms() {
        rhs[support[m]] = c.clone();
    }
    mat.solve(&rhs)
        .ok_or_else(|| Error::NotSolvable("element outside the span".to_string()))
}

fn solve_in_basis_elems(basis: &[ExtElement], x: &ExtElement) -> Result<Vec<Scalar>> {
    // basis elements here are monomials with unit coefficient and disjoint
    // supports (the section bases), so coordinates are direct reads
    let mut coords = vec![scalar::zero(); basis.len()];
    let mut residual = x.clone();
    for (i, b) in basis.iter().enumerate() {
        let (mono, coef) = b.terms().next().expect("basis elements are single monomials");
        let c = residual.coeff(mono);
        if !c.is_zero() {
            let factor = &c / coef;
            coords[i] = factor.clone();
            residual = residual.sub(&b.scale(&factor))?;
        }
    }
    if !residual.is_zero() {
        return Err(Error::NotSolvable("element outside the section basis".to_string()));
    }
    Ok(coords)
}

fn solve_in_basis_derivations(basis: &[Derivation], x: &Derivation) -> Result<Vec<Scalar>> {
    if basis.is_empty() {
        return if x.is_zero() {
            Ok(Vec::new())
        } else {
            Err(Error::NotSolvable("no multiplicative fields in this degree".to_string()))
        };
    }
    // coordinates over the joint support of generator values
    let alg_len = basis[0].values().len();
    let mut support: BTreeMap<(u32, Vec<u32>), usize> = BTreeMap::new();
    for d in basis.iter().chain(core::iter::once(x)) {
        for g in 0..alg_len as u32 {
            for (mono, _) in d.value(g).terms() {
                let next = support.len();
                support.entry((g, mono.clone())).or_insert(next);
            }
        }
    }
    let mut mat = Mat::zeros(support.len(), basis.len());
    for (col, d) in basis.iter().enumerate() {
        for g in 0..alg_len as u32 {
            for (mono, c) in d.value(g).terms() {
                mat.set(support[&(g, mono.clone())], col, c.clone());
            }
        }
    }
    let mut rhs = vec![scalar::zero(); support.len()];
    for g in 0..alg_len as u32 {
        for (mono, c) in x.value(g).terms() {
            rhs[support[&(g, mono.clone())]] = c.clone();
        }
    }
    mat.solve(&rhs)
        .ok_or_else(|| Error::NotSolvable("field is not multiplicative".to_string()))
}

/// Builds the groupoid dgla `L^i = Γ^{i+1}A ⊕ X^{1,i}_mul` over the window.
pub fn build_groupoid_dgla(g: &PointVBGroupoid, window: (i64, i64)) -> Result<GroupoidDgla> {
    let mut components = BTreeMap::new();
    let mut section_basis = BTreeMap::new();
    let mut field_basis = BTreeMap::new();
    for deg in window.0..=window.1 {
        let secs = g.section_basis(1, deg + 1);
        let fields = g.multiplicative_derivation_basis(deg);
        let dim = secs.len() + fields.len();
        let mut labels = Vec::with_capacity(dim);
        for (i, _) in secs.iter().enumerate() {
            labels.push(format!("s{deg}.{i}"));
        }
        for (i, _) in fields.iter().enumerate() {
            labels.push(format!("x{deg}.{i}"));
        }
        components.insert(deg, DglaComponent { dim, labels });
        section_basis.insert(deg, secs);
        field_basis.insert(deg, fields);
    }
    let dgla = Dgla::new(window, components);
    let mut out = GroupoidDgla { dgla, groupoid: g.clone(), section_basis, field_basis };

    // differential: d(a) = aʳ - aˡ into the field part; zero on fields
    for deg in window.0..=window.1 {
        if deg + 1 > window.1 {
            continue;
        }
        let secs = &out.section_basis[&deg];
        let n_from = out.dgla.dim(deg);
        let n_to = out.dgla.dim(deg + 1);
        let mut m = Mat::zeros(n_to, n_from);
        for (col, sec) in secs.iter().enumerate() {
            let diff = g.ext_diff(sec)?;
            let der = crate::qla::ext_to_derivation(g, diff, deg + 1)?;
            let coords = solve_in_basis_derivations(&out.field_basis[&(deg + 1)], &der)?;
            let off = out.section_basis[&(deg + 1)].len();
            for (r, c) in coords.into_iter().enumerate() {
                m.set(off + r, col, c);
            }
        }
        out.dgla.set_diff(deg, m)?;
    }

    // brackets
    for di in window.0..=window.1 {
        for dj in window.0..=window.1 {
            if !out.dgla.in_window(di + dj) {
                continue;
            }
            let si = out.section_basis[&di].len();
            let sj = out.section_basis[&dj].len();
            let fi = out.field_basis[&di].clone();
            let fj = out.field_basis[&dj].clone();
            let target_secs = out.section_basis[&(di + dj)].clone();
            let target_fields = out.field_basis[&(di + dj)].clone();
            let n_target_sec = target_secs.len();
            let dim_target = out.dgla.dim(di + dj);
            // field-field: commutator, lands in fields
            for (a, xa) in fi.iter().enumerate() {
                for (b, xb) in fj.iter().enumerate() {
                    let comm = xa.commutator(xb)?;
                    let coords = solve_in_basis_derivations(&target_fields, &comm)?;
                    let mut v = vec![scalar::zero(); dim_target];
                    for (r, c) in coords.into_iter().enumerate() {
                        v[n_target_sec + r] = c;
                    }
                    out.dgla.set_bracket_entry(di, dj, si + a, sj + b, v)?;
                }
            }
            // field-section: [X, a] = (-1)^{|X|} · (the section with right
            // extension [X, aʳ]); the degree sign is forced by the Leibniz
            // rule and reproduces the gauge formula +[Q, bʳ]∘u.
            let secs_j = out.section_basis[&dj].clone();
            for (a, xa) in fi.iter().enumerate() {
                let x_hat = MultiDeriv::from_derivation(g.mv_algebra(), xa)?;
                for (b, sb) in secs_j.iter().enumerate() {
                    let br = x_hat.elem().bracket(&g.right_ext(sb)?)?;
                    let tau = g.solve_right_ext(&br, 1, di + dj + 1)?;
                    let coords = solve_in_basis_elems(&target_secs, &tau)?;
                    let neg_x = di % 2 != 0;
                    let mut v = vec![scalar::zero(); dim_target];
                    for (r, c) in coords.into_iter().enumerate() {
                        v[r] = if neg_x { -c } else { c };
                    }
                    out.dgla.set_bracket_entry(di, dj, si + a, b, v)?;
                }
            }
            // section-field: [a, X] = -(-1)^{|a||X|}[X, a]
            let secs_i = out.section_basis[&di].clone();
            for (a, sa) in secs_i.iter().enumerate() {
                for (b, xb) in fj.iter().enumerate() {
                    let x_hat = MultiDeriv::from_derivation(g.mv_algebra(), xb)?;
                    let br = x_hat.elem().bracket(&g.right_ext(sa)?)?;
                    let tau = g.solve_right_ext(&br, 1, di + dj + 1)?;
                    let coords = solve_in_basis_elems(&target_secs, &tau)?;
                    let neg_x = dj % 2 != 0;
                    let negate = !((di % 2 != 0) && (dj % 2 != 0));
                    let flip = negate != neg_x;
                    let mut v = vec![scalar::zero(); dim_target];
                    for (r, c) in coords.into_iter().enumerate() {
                        v[r] = if flip { -c } else { c };
                    }
                    out.dgla.set_bracket_entry(di, dj, a, sj + b, v)?;
                }
            }
            // section-section: zero over a point base
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// the big bracket
// ---------------------------------------------------------------------------

/// The big-bracket dgla on `Λ(W ⊕ W*)` for an ungraded space of dimension
/// `dim_w`: generators `w*` and `w` all of degree 1, the pairing bracket
/// `{w*_i, w_j} = δ_ij`, zero differential. Dgla degree = exterior degree - 2.
pub struct BigBracket {
    pub dgla: Dgla,
    pub algebra: Arc<Algebra>,
    /// per dgla degree: the monomial basis.
    pub basis: BTreeMap<i64, Vec<ExtElement>>,
}

impl BigBracket {
    pub fn coords_of(&self, x: &ExtElement) -> Result<DglaElem> {
        let deg = x
            .homogeneous_degree()
            .ok_or_else(|| Error::UnsupportedGrading("inhomogeneous element".to_string()))?
            - 2;
        let basis = self
            .basis
            .get(&deg)
            .ok_or(Error::WindowTooSmall { degree: deg })?;
        let coords = solve_in_basis_elems(basis, x)?;
        Ok(DglaElem { degree: deg, coords })
    }

    pub fn elem_of(&self, x: &DglaElem) -> ExtElement {
        let basis = &self.basis[&x.degree];
        let mut out = ExtElement::zero(&self.algebra);
        for (c, b) in x.coords.iter().zip(basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c)).unwrap();
            }
        }
        out
    }
}

/// Builds the big bracket for an ungraded `W` of dimension `dim_w`, with the
/// window in dgla degrees.
pub fn build_big_bracket(dim_w: usize, window: (i64, i64)) -> Result<BigBracket> {
    let gens: Vec<Gen> = (0..dim_w).map(|i| Gen::new(format!("w{i}"), 1)).collect();
    // multivector algebra over W*[1]: base = w* duals, momenta = w directions
    let algebra = Algebra::multivector(
        (0..dim_w).map(|i| Gen::new(format!("u{i}"), 1)).collect(),
        2,
    );
    let _ = gens;
    let pool: Vec<u32> = (0..2 * dim_w as u32).collect();
    let mut components = BTreeMap::new();
    let mut basis: BTreeMap<i64, Vec<ExtElement>> = BTreeMap::new();
    for deg in window.0..=window.1 {
        let ext_deg = deg + 2;
        if !(0..=2 * dim_w as i64).contains(&ext_deg) {
            components.insert(deg, DglaComponent { dim: 0, labels: Vec::new() });
            basis.insert(deg, Vec::new());
            continue;
        }
        let monos = subsets(&pool, ext_deg as usize);
        let elems: Vec<ExtElement> = monos
            .iter()
            .map(|m| ExtElement::monomial(&algebra, m, scalar::one()))
            .collect();
        let labels = monos.iter().map(|m| format!("{m:?}")).collect();
        components.insert(deg, DglaComponent { dim: elems.len(), labels });
        basis.insert(deg, elems);
    }
    let mut dgla = Dgla::new(window, components);
    for di in window.0..=window.1 {
        for dj in window.0..=window.1 {
            if !(di + dj >= window.0 && di + dj <= window.1) {
                continue;
            }
            let bi = basis[&di].clone();
            let bj = basis[&dj].clone();
            let target = basis[&(di + dj)].clone();
            for (a, xa) in bi.iter().enumerate() {
                for (b, xb) in bj.iter().enumerate() {
                    let br = xa.bracket(xb)?;
                    if br.is_zero() {
                        continue;
                    }
                    let coords = solve_in_basis_elems(&target, &br)?;
                    dgla.set_bracket_entry(di, dj, a, b, coords)?;
                }
            }
        }
    }
    Ok(BigBracket { dgla, algebra, basis })
}


// ---------------------------------------------------------------------------
// the multivector-field dgla
// ---------------------------------------------------------------------------

/// The multivector-field dgla of a linear groupoid: in degree `d` the sum over
/// `2j + k - 2 = d` of `Γ^{k+1}Λʲ A` (sections) and the multiplicative part of
/// `X^{j,k}` (functions by the cocycle kernel for `j = 0`, the ideal test for
/// `j = 1`, bracket compatibility for `j ≥ 2`). The differential is
/// `σ ↦ σʳ - σˡ`; brackets are the Schouten bracket on the multivector parts
/// and the solved mixed bracket with the Leibniz-forced degree sign.
pub struct MvfDgla {
    pub dgla: Dgla,
    pub groupoid: PointVBGroupoid,
    /// per dgla degree: `(j, k)` slot list in order.
    pub slots: BTreeMap<i64, Vec<(usize, i64)>>,
    /// per dgla degree: section basis elements per slot, flattened.
    pub section_basis: BTreeMap<i64, Vec<ExtElement>>,
    /// per dgla degree: multiplicative multivector elements per slot, flattened
    /// (functions lifted into the multivector algebra).
    pub field_basis: BTreeMap<i64, Vec<ExtElement>>,
}

impl MvfDgla {
    /// Coordinates of a (section, field) pair of multivector elements.
    pub fn coords_of(&self, deg: i64, section: &ExtElement, field: &ExtElement) -> Result<DglaElem> {
        let secs = self.section_basis.get(&deg).cloned().unwrap_or_default();
        let fields = self.field_basis.get(&deg).cloned().unwrap_or_default();
        let mut c1 = solve_in_basis_general(&secs, section)?;
        let mut c2 = solve_in_basis_general(&fields, field)?;
        let mut coords = Vec::with_capacity(c1.len() + c2.len());
        coords.append(&mut c1);
        coords.append(&mut c2);
        Ok(DglaElem { degree: deg, coords })
    }

    /// The (section, field) pair of multivector elements of a coordinate
    /// vector.
    pub fn parts_of(&self, x: &DglaElem) -> (ExtElement, ExtElement) {
        let g = &self.groupoid;
        let secs = self.section_basis.get(&x.degree).cloned().unwrap_or_default();
        let fields = self.field_basis.get(&x.degree).cloned().unwrap_or_default();
        let mut sec = ExtElement::zero(g.mv_algebra());
        for (c, b) in x.coords.iter().zip(&secs) {
            if !c.is_zero() {
                sec = sec.add(&b.scale(c)).unwrap();
            }
        }
        let mut field = ExtElement::zero(g.mv_algebra());
        for (c, b) in x.coords[secs.len()..].iter().zip(&fields) {
            if !c.is_zero() {
                field = field.add(&b.scale(c)).unwrap();
            }
        }
        (sec, field)
    }
}

/// Builds the multivector-field dgla over a window of dgla degrees, with
/// arities capped at `j ≤ 4`.
pub fn build_mvf_dgla(g: &PointVBGroupoid, window: (i64, i64)) -> Result<MvfDgla> {
    let mut components = BTreeMap::new();
    let mut slots = BTreeMap::new();
    let mut section_basis: BTreeMap<i64, Vec<ExtElement>> = BTreeMap::new();
    let mut field_basis: BTreeMap<i64, Vec<ExtElement>> = BTreeMap::new();
    for deg in window.0..=window.1 {
        let mut slot_list = Vec::new();
        let mut secs = Vec::new();
        let mut fields = Vec::new();
        for j in 0..=4usize {
            let k = deg + 2 - 2 * j as i64;
            // sections of Γ^{k+1}Λʲ
            let sb = g.section_basis(j, k + 1);
            // multiplicative part of X^{j,k}: the primary condition (cocycle
            // for functions, graph-ideal preservation for fields) intersected
            // with bracket compatibility, which the dgla brackets require
            let fb: Vec<ExtElement> = match j {
                0 => {
                    let raw: Vec<ExtElement> = g
                        .multiplicative_function_basis(k.max(0) as usize)
                        .into_iter()
                        .filter(|_| k >= 0)
                        .map(|f| crate::mvcalc::lift_to_mv(g.mv_algebra(), &f).unwrap())
                        .collect();
                    g.intersect_bracket_compat(&raw, 0, k)
                }
                1 => {
                    let raw: Vec<ExtElement> = g
                        .multiplicative_derivation_basis(k)
                        .into_iter()
                        .map(|d| {
                            MultiDeriv::from_derivation(g.mv_algebra(), &d)
                                .unwrap()
                                .elem()
                                .clone()
                        })
                        .collect();
                    g.intersect_bracket_compat(&raw, 1, k)
                }
                _ => g
                    .multiplicative_multivector_basis(j, k)
                    .into_iter()
                    .map(|m| m.elem().clone())
                    .collect(),
            };
            if !sb.is_empty() || !fb.is_empty() {
                slot_list.push((j, k));
            }
            secs.extend(sb);
            fields.extend(fb.into_iter().filter(|e| !e.is_zero()));
        }
        let dim = secs.len() + fields.len();
        let labels = (0..dim).map(|i| format!("v{deg}.{i}")).collect();
        components.insert(deg, DglaComponent { dim, labels });
        slots.insert(deg, slot_list);
        section_basis.insert(deg, secs);
        field_basis.insert(deg, fields);
    }
    let dgla = Dgla::new(window, components);
    let mut out = MvfDgla { dgla, groupoid: g.clone(), slots, section_basis, field_basis };

    // differential: sections ↦ fields, σ ↦ σʳ - σˡ
    for deg in window.0..window.1 {
        let secs = out.section_basis[&deg].clone();
        let n_to = out.dgla.dim(deg + 1);
        let mut m = Mat::zeros(n_to, out.dgla.dim(deg));
        for (col, sec) in secs.iter().enumerate() {
            let diff = g.ext_diff(sec)?;
            let coords = solve_in_basis_general(&out.field_basis[&(deg + 1)], &diff)?;
            let off = out.section_basis[&(deg + 1)].len();
            for (r, c) in coords.into_iter().enumerate() {
                m.set(off + r, col, c);
            }
        }
        out.dgla.set_diff(deg, m)?;
    }

    // brackets
    for di in window.0..=window.1 {
        for dj in window.0..=window.1 {
            if !out.dgla.in_window(di + dj) {
                continue;
            }
            let si = out.section_basis[&di].len();
            let sj = out.section_basis[&dj].len();
            let fi = out.field_basis[&di].clone();
            let fj = out.field_basis[&dj].clone();
            let secs_i = out.section_basis[&di].clone();
            let secs_j = out.section_basis[&dj].clone();
            let target_secs = out.section_basis[&(di + dj)].clone();
            let target_fields = out.field_basis[&(di + dj)].clone();
            let n_tsec = target_secs.len();
            let dim_target = out.dgla.dim(di + dj);
            // field-field: Schouten
            for (a, xa) in fi.iter().enumerate() {
                for (b, xb) in fj.iter().enumerate() {
                    let br = xa.bracket(xb)?;
                    let coords = solve_in_basis_general(&target_fields, &br)?;
                    let mut v = vec![scalar::zero(); dim_target];
                    for (r, c) in coords.into_iter().enumerate() {
                        v[n_tsec + r] = c;
                    }
                    out.dgla.set_bracket_entry(di, dj, si + a, sj + b, v)?;
                }
            }
            // field-section: [X, σ] = (-1)^{|X|} solve_r({X, σʳ})
            for (a, xa) in fi.iter().enumerate() {
                let x_md = MultiDeriv::from_elem(g.mv_algebra(), xa.clone())?;
                for (b, sb) in secs_j.iter().enumerate() {
                    let sb_md = MultiDeriv::from_elem(g.mv_algebra(), sb.clone())?;
                    let br = xa.bracket(&g.right_ext(sb)?)?;
                    let jt = x_md.arity + sb_md.arity - 1;
                    let mt = x_md.degree + sb_md.degree;
                    let tau = g.solve_right_ext(&br, jt, mt)?;
                    let coords = solve_in_basis_general(&target_secs, &tau)?;
                    let neg = di.rem_euclid(2) == 1;
                    let mut v = vec![scalar::zero(); dim_target];
                    for (r, c) in coords.into_iter().enumerate() {
                        v[r] = if neg { -c } else { c };
                    }
                    out.dgla.set_bracket_entry(di, dj, si + a, b, v)?;
                }
            }
            // section-field: antisymmetry
            for (a, sa) in secs_i.iter().enumerate() {
                let sa_md = MultiDeriv::from_elem(g.mv_algebra(), sa.clone())?;
                for (b, xb) in fj.iter().enumerate() {
                    let x_md = MultiDeriv::from_elem(g.mv_algebra(), xb.clone())?;
                    let br = xb.bracket(&g.right_ext(sa)?)?;
                    let jt = x_md.arity + sa_md.arity - 1;
                    let mt = x_md.degree + sa_md.degree;
                    let tau = g.solve_right_ext(&br, jt, mt)?;
                    let coords = solve_in_basis_general(&target_secs, &tau)?;
                    let neg_x = dj.rem_euclid(2) == 1;
                    let negate = !((di % 2 != 0) && (dj % 2 != 0));
                    let flip = negate != neg_x;
                    let mut v = vec![scalar::zero(); dim_target];
                    for (r, c) in coords.into_iter().enumerate() {
                        v[r] = if flip { -c } else { c };
                    }
                    out.dgla.set_bracket_entry(di, dj, a, sj + b, v)?;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qla::from_l2;
    use crate::sample;

    #[test]
    fn lie_algebra_in_degree_zero_passes() {
        // so(3) as a dgla concentrated in degree 0 with d = 0
        let mut components = BTreeMap::new();
        components.insert(0, DglaComponent { dim: 3, labels: vec!["x".into(), "y".into(), "z".into()] });
        let mut dgla = Dgla::new((0, 0), components);
        let so3 = sample::so3_bracket();
        for a in 0..3 {
            for b in 0..3 {
                if a == b {
                    continue;
                }
                let v = so3.eval(&[a as u32, b as u32]).unwrap();
                dgla.set_bracket_entry(0, 0, a, b, v).unwrap();
            }
        }
        assert!(verify_dgla(&dgla).passed());
    }

    #[test]
    fn groupoid_dgla_verifies_and_mc_matches() {
        let l2 = sample::strict_so3();
        let (g, s) = from_l2(&l2).unwrap();
        let gd = build_groupoid_dgla(&g, (-1, 3)).unwrap();
        let rep = verify_dgla(&gd.dgla);
        assert!(rep.passed(), "failing: {:?}", rep.failing());
        let mc = gd.mc_of_quasi_q(&s).unwrap();
        let res = gd.dgla.mc_residual(&mc).unwrap();
        assert!(res.is_zero(), "MC residual {:?}", res.coords);
        // round trip through coordinates
        let s2 = gd.quasi_q_of_mc(&mc).unwrap();
        assert_eq!(s2, s);
    }

    #[test]
    fn big_bracket_pairing_and_jacobi() {
        let bb = build_big_bracket(3, (-2, 4)).unwrap();
        let rep = verify_dgla(&bb.dgla);
        assert!(rep.passed(), "failing: {:?}", rep.failing());
        // {θ, e} = 1 for dual pairs
        let theta = ExtElement::gen(&bb.algebra, 0);
        let e = ExtElement::gen(&bb.algebra, 3);
        assert_eq!(theta.bracket(&e).unwrap(), ExtElement::one(&bb.algebra));
    }

    #[test]
    fn mvf_dgla_verifies_on_small_instance() {
        // dims (1,2) keeps the sweep cheap; the axioms must hold exactly
        let l2 = sample::random_valid_l2(11, 2, 1);
        let (g, _) = from_l2(&l2).unwrap();
        let vd = build_mvf_dgla(&g, (-2, 2)).unwrap();
        let rep = verify_dgla(&vd.dgla);
        assert!(rep.passed(), "failing: {:?}", rep.failing());
    }

    #[test]
    fn mvf_degree_one_has_expected_slots() {
        let g = crate::groupoid::PointVBGroupoid::new(3, 3, Mat::zeros(3, 3)).unwrap();
        let vd = build_mvf_dgla(&g, (1, 1)).unwrap();
        let slots = &vd.slots[&1];
        // (j,k) pairs with 2j + k = 3: functions (0,3), fields (1,1),
        // bivectors (2,-1), trivectors (3,-3); the 4-vector slot (4,-5)
        // vanishes for dim C = 3.
        assert!(slots.contains(&(0, 3)));
        assert!(slots.contains(&(1, 1)));
        assert!(slots.contains(&(2, -1)));
        assert!(slots.contains(&(3, -3)));
    }

    #[test]
    fn gauge_of_mc_is_mc_in_groupoid_dgla() {
        use crate::rng::Rng;
        let mut rng = Rng::new(5);
        for seed in 0..8u64 {
            let l2 = sample::random_valid_l2(seed, 3, 2);
            let (g, s) = from_l2(&l2).unwrap();
            let gd = build_groupoid_dgla(&g, (-1, 3)).unwrap();
            let mc = gd.mc_of_quasi_q(&s).unwrap();
            assert!(gd.dgla.mc_residual(&mc).unwrap().is_zero());
            // gauge by a section-part parameter (the field part generates
            // diffeomorphisms, whose adjoint need not be nilpotent)
            let mut b = DglaElem::zero(&gd.dgla, 0);
            for c in b.coords.iter_mut().take(gd.section_basis[&0].len()) {
                *c = rng.sparse_scalar(&scalar::half());
            }
            let moved = gd.dgla.gauge_transform(&b, &mc, 20).unwrap();
            let res = gd.dgla.mc_residual(&moved).unwrap();
            assert!(res.is_zero(), "seed {seed}: gauge broke MC");
        }
    }
}

//! Acceptance suite. One test per criterion; each prints a single
//! `criterion N: PASS/FAIL — summary` line. Every comparison is exact
//! (tolerance zero); no criterion is deferred.

use std::collections::BTreeSet;
use std::time::Instant;

use num_traits::Zero;

use qlag_core::algebra::ExtElement;
use qlag_core::bialg::{self, Slot};
use qlag_core::dgla::{build_groupoid_dgla, build_mvf_dgla, DglaElem};
use qlag_core::l2::{
    self, ce_degree2, compose, hcompose, vcompose, verify_l2, verify_morphism,
    verify_two_morphism, L2Morphism, L2TwoMorphism,
};
use qlag_core::linalg::Mat;
use qlag_core::qla::{
    self, central_extend, classify_extension, cocycle_check, cocycle_space, dual_quasi_poisson,
    from_l2, gauge_point, to_l2_unchecked, verify_dual, verify_quasi_q,
    ExtensionClassification,
};
use qlag_core::rng::Rng;
use qlag_core::sample;
use qlag_core::scalar::{self, Scalar};
use qlag_core::tensor::AltTensor;

fn conclude(n: u32, what: &str, ok: bool, detail: String) {
    println!(
        "criterion {n}: {} — {what}{}",
        if ok { "PASS" } else { "FAIL" },
        if detail.is_empty() { String::new() } else { format!(" ({detail})") }
    );
    assert!(ok, "criterion {n} failed: {detail}");
}

/// Criterion 1: the four verdict routes agree on ≥100 seeded bundles with
/// dim E, dim C ≤ 3, including engineered failing samples for each axiom.
/// Exact equality; single-threaded runtime under 120 s.
#[test]
fn criterion_1_three_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = Rng::new(0xACC1);
    let mut samples = 0usize;
    let mut mismatch = Vec::new();
    // perturbations can land on another valid structure (e.g. scaling the
    // coherence tensor of a string-type instance); retry until the engineered
    // sample genuinely fails, falling back through the break kinds
    let engineer = |l2: &qlag_core::l2::L2Algebra, kind: sample::Break, rng: &mut Rng| {
        for _ in 0..40 {
            let cand = sample::perturb_l2(l2, kind, rng);
            if !verify_l2(&cand).passed() {
                return Some(cand);
            }
        }
        for fallback in [sample::Break::Jacobi, sample::Break::Chain, sample::Break::NablaAntisym] {
            for _ in 0..40 {
                let cand = sample::perturb_l2(l2, fallback, rng);
                if !verify_l2(&cand).passed() {
                    return Some(cand);
                }
            }
        }
        None
    };
    for seed in 0..50u64 {
        let valid = sample::random_valid_l2(seed, 3, 3);
        let broken: Vec<qlag_core::l2::L2Algebra> = [
            sample::Break::Chain,
            sample::Break::NablaAntisym,
            sample::Break::Jacobi,
            sample::Break::Coherence,
        ]
        .into_iter()
        .filter_map(|kind| {
            // degenerate dimensions (e.g. a line with zero boundary) admit no
            // failing perturbation at all; engineer the break on a reference
            // instance instead so that every seed contributes failing samples
            engineer(&valid, kind, &mut rng)
                .or_else(|| engineer(&sample::strict_so3(), kind, &mut rng))
        })
        .collect();
        if broken.len() < 4 {
            mismatch.push(format!("seed {seed}: could not engineer failing samples"));
        }
        for (idx, inst) in std::iter::once(&valid).chain(broken.iter()).enumerate() {
            samples += 1;
            let va = verify_l2(inst).passed();
            let vb = ce_degree2(inst).unwrap().square().unwrap().is_zero();
            let (g, s) = from_l2(inst).unwrap();
            let vc = verify_quasi_q(&g, &s).unwrap().passed();
            let vd = verify_dual(&dual_quasi_poisson(&g, &s).unwrap()).unwrap().passed();
            if !(va == vb && vb == vc && vc == vd) {
                mismatch.push(format!("seed {seed} variant {idx}: ({va},{vb},{vc},{vd})"));
            }
            if idx == 0 && !va {
                mismatch.push(format!("seed {seed}: valid sample rejected"));
            }
            if idx > 0 && va {
                mismatch.push(format!("seed {seed} variant {idx}: engineered break passed"));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = mismatch.is_empty() && samples >= 100 && elapsed.as_secs() < 120;
    conclude(
        1,
        "three-oracle equivalence",
        ok,
        format!("{samples} samples in {:.1}s{}", elapsed.as_secs_f64(), {
            if mismatch.is_empty() { String::new() } else { format!("; {}", mismatch.join("; ")) }
        }),
    );
}

/// Criterion 2: for 50 seeded groupoids, a degree-1 element of the groupoid
/// dgla has zero Maurer–Cartan residual iff it verifies as a quasi
/// Q-structure — sampled from images, gauge orbits, and perturbations.
#[test]
fn criterion_2_mc_bijection() {
    let mut rng = Rng::new(0xACC2);
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for seed in 0..50u64 {
        let l2 = sample::random_valid_l2(seed, 3, 2);
        let (g, s) = from_l2(&l2).unwrap();
        let gd = build_groupoid_dgla(&g, (-1, 2)).unwrap();
        let mc = gd.mc_of_quasi_q(&s).unwrap();
        let b = sample::random_gauge_parameter(&mut rng, g.dim_e, g.dim_c, &scalar::half());
        let gauged = gd.mc_of_quasi_q(&gauge_point(&g, &b, &s).unwrap()).unwrap();
        let mut perturbed = mc.clone();
        if !perturbed.coords.is_empty() {
            let i = rng.below(perturbed.coords.len() as u64) as usize;
            perturbed.coords[i] += rng.nonzero_scalar();
        }
        for (tag, x) in [("image", &mc), ("gauge", &gauged), ("perturbed", &perturbed)] {
            checked += 1;
            let residual_zero = gd.dgla.mc_residual(x).unwrap().is_zero();
            let qq = gd.quasi_q_of_mc(x).unwrap();
            let verifies = verify_quasi_q(&g, &qq).unwrap().passed();
            if residual_zero != verifies {
                failures.push(format!("seed {seed} {tag}: residual {residual_zero} vs verify {verifies}"));
            }
        }
    }
    conclude(2, "Maurer-Cartan bijection", failures.is_empty(), format!("{checked} elements{}",
        if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }));
}

/// Criterion 3: gauge transformations through the dgla agree component-wise
/// with the direct formula on 50 samples, preserve verification, and the
/// zero parameter is neutral.
#[test]
fn criterion_3_gauge_coherence() {
    let mut rng = Rng::new(0xACC3);
    let mut failures = Vec::new();
    for seed in 0..50u64 {
        let l2 = sample::random_valid_l2(seed, 3, 2);
        let (g, s) = from_l2(&l2).unwrap();
        let b = sample::random_gauge_parameter(&mut rng, g.dim_e, g.dim_c, &scalar::half());
        let direct = gauge_point(&g, &b, &s).unwrap();
        if !verify_quasi_q(&g, &direct).unwrap().passed() {
            failures.push(format!("seed {seed}: gauge broke verification"));
        }
        let gd = build_groupoid_dgla(&g, (-1, 2)).unwrap();
        let mc = gd.mc_of_quasi_q(&s).unwrap();
        let b_elem = qla::section_elem(&g, &b).unwrap();
        let b_coords = gd
            .coords_of(0, &b_elem, &qlag_core::mvcalc::Derivation::zero(g.algebra(), 0))
            .unwrap();
        let via_dgla = gd.dgla.gauge_transform(&b_coords, &mc, 24).unwrap();
        let expect = gd.mc_of_quasi_q(&direct).unwrap();
        if via_dgla != expect {
            failures.push(format!("seed {seed}: component mismatch"));
        }
        let neutral = gauge_point(&g, &AltTensor::zero(2, g.dim_e, g.dim_c), &s).unwrap();
        if neutral != s {
            failures.push(format!("seed {seed}: zero parameter not neutral"));
        }
    }
    conclude(3, "gauge coherence", failures.is_empty(), failures.join("; "));
}

fn random_two_morphism(seed: u64, from: &L2Morphism) -> L2TwoMorphism {
    let mut rng = Rng::new(seed);
    let s = &from.source;
    let t = &from.target;
    let mut theta = Mat::zeros(t.dim_c, s.dim_e);
    for i in 0..t.dim_c {
        for j in 0..s.dim_e {
            theta.set(i, j, rng.sparse_scalar(&scalar::half()));
        }
    }
    let g0 = l2::mat_sub(&from.f0, &t.partial.mul(&theta));
    let g1 = l2::mat_sub(&from.f1, &theta.mul(&s.partial));
    let mut gamma = AltTensor::zero(2, s.dim_e, t.dim_c);
    for a in 0..s.dim_e as u32 {
        for b in (a + 1)..s.dim_e as u32 {
            let ea = l2::basis_vec(s.dim_e, a as usize);
            let eb = l2::basis_vec(s.dim_e, b as usize);
            let mut v = from.beta.eval(&[a, b]).unwrap();
            let t1 = t.nabla_vec(&from.f0.apply(&ea), &theta.apply(&eb));
            let t2 = t.nabla_vec(&g0.apply(&eb), &theta.apply(&ea));
            let t3 = theta.apply(&s.bracket_vec(&ea, &eb));
            for i in 0..t.dim_c {
                v[i] = &v[i] - &t1[i] + &t2[i] + &t3[i];
            }
            gamma.set(&[a, b], v).unwrap();
        }
    }
    let to = L2Morphism::new(s.clone(), t.clone(), g0, g1, gamma).unwrap();
    L2TwoMorphism::new(from.clone(), to, theta).unwrap()
}

/// Criterion 4: associativity and units for composition, verification
/// preservation, and the interchange law, on 100 random pasting diagrams.
#[test]
fn criterion_4_two_category_laws() {
    let mut rng = Rng::new(0xACC4);
    let mut failures = Vec::new();
    let mut diagrams = 0usize;
    for seed in 0..100u64 {
        let l2 = sample::random_valid_l2(seed, 3, 2);
        let (g, s) = from_l2(&l2).unwrap();
        let mk = |rng: &mut Rng| -> L2Morphism {
            let b = sample::random_gauge_parameter(rng, g.dim_e, g.dim_c, &scalar::half());
            let gauged = gauge_point(&g, &b, &s).unwrap();
            let middle = to_l2_unchecked(&g, &gauged).unwrap();
            let m = qla::gauge_as_morphism(&middle, &l2, &b).unwrap();
            L2Morphism::new(l2.clone(), l2.clone(), m.f0, m.f1, m.beta).unwrap()
        };
        let f = mk(&mut rng);
        let gm = mk(&mut rng);
        let h = mk(&mut rng);
        let left = compose(&compose(&f, &gm).unwrap(), &h).unwrap();
        let right = compose(&f, &compose(&gm, &h).unwrap()).unwrap();
        if left != right {
            failures.push(format!("seed {seed}: associativity"));
        }
        let id = L2Morphism::identity(&l2);
        if compose(&f, &id).unwrap() != f || compose(&id, &f).unwrap() != f {
            failures.push(format!("seed {seed}: units"));
        }
        // verification preservation for a genuinely composable verified pair:
        // m_a: A → L (gauge by b1), then m_b: B → A (gauge of the gauged
        // structure by b2)
        {
            let b1 = sample::random_gauge_parameter(&mut rng, g.dim_e, g.dim_c, &scalar::half());
            let s1 = gauge_point(&g, &b1, &s).unwrap();
            let a_mid = to_l2_unchecked(&g, &s1).unwrap();
            let m_a = qla::gauge_as_morphism(&a_mid, &l2, &b1).unwrap();
            let b2 = sample::random_gauge_parameter(&mut rng, g.dim_e, g.dim_c, &scalar::half());
            let s2 = gauge_point(&g, &b2, &s1).unwrap();
            let b_mid = to_l2_unchecked(&g, &s2).unwrap();
            let m_b = qla::gauge_as_morphism(&b_mid, &a_mid, &b2).unwrap();
            if !verify_morphism(&m_a).passed() || !verify_morphism(&m_b).passed() {
                failures.push(format!("seed {seed}: gauge morphisms not verified"));
            }
            let c = compose(&m_a, &m_b).unwrap();
            if !verify_morphism(&c).passed() {
                failures.push(format!("seed {seed}: composite not verified"));
            }
        }
        // interchange on a pasting square
        let id_m = L2Morphism::identity(&l2);
        let a1 = random_two_morphism(seed * 11 + 1, &id_m);
        let a2 = random_two_morphism(seed * 11 + 2, &a1.to);
        let c1 = random_two_morphism(seed * 11 + 3, &L2Morphism::identity(&l2));
        let c2 = random_two_morphism(seed * 11 + 4, &c1.to);
        let lhs = hcompose(&vcompose(&c2, &c1).unwrap(), &vcompose(&a2, &a1).unwrap()).unwrap();
        let rhs = vcompose(&hcompose(&c2, &a2).unwrap(), &hcompose(&c1, &a1).unwrap()).unwrap();
        if lhs != rhs {
            failures.push(format!("seed {seed}: interchange"));
        }
        if !verify_two_morphism(&lhs).passed() {
            failures.push(format!("seed {seed}: pasting not verified"));
        }
        diagrams += 1;
    }
    conclude(4, "strict 2-category laws", failures.is_empty() && diagrams >= 100,
        format!("{diagrams} diagrams{}", if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }));
}

/// Criterion 5: the fixed named instances behave exactly as documented.
#[test]
fn criterion_5_named_instances() {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();

    // so(3) differential squares to zero
    let so3 = qlag_core::l2::L2Algebra::new(
        3,
        0,
        Mat::zeros(3, 0),
        sample::so3_bracket(),
        vec![Mat::zeros(0, 0); 3],
        AltTensor::zero(3, 3, 0),
    )
    .unwrap();
    let (_, s) = from_l2(&so3).unwrap();
    if !s.q_field.square().unwrap().is_zero() {
        failures.push("so(3) differential does not square to zero".into());
    }

    // the string structure passes
    if !verify_l2(&sample::string_so3()).passed() {
        failures.push("string structure rejected".into());
    }

    // the crossed module (id, ad) round-trips
    let x = sample::xmod_so3_id();
    let strict = l2::xmod_to_strict(&x).unwrap();
    match l2::strict_to_xmod(&strict) {
        Ok(back) if back == x => {}
        _ => failures.push("crossed-module round trip broke".into()),
    }

    // the documented failing bracket fails exactly at the Jacobi check with
    // the predicted witness
    let rep = verify_l2(&sample::failing_jacobi());
    let l2c = rep.check("l2").unwrap();
    if rep.failing() != vec!["l2"]
        || l2c.witnesses[0].site != vec![0, 1, 2]
        || l2c.witnesses[0].value != "(0,0,-1)"
    {
        failures.push("failing bracket witness mismatch".into());
    }

    let ok = failures.is_empty() && start.elapsed().as_secs() < 4;
    conclude(5, "fixed named instances", ok, format!("{:.2}s{}", start.elapsed().as_secs_f64(),
        if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }));
}

/// An independent solvability decision by row reduction, written directly
/// against the raw system (re-deriving the stacked matrix).
fn exhaustive_solvable(
    g: &qlag_core::groupoid::PointVBGroupoid,
    s: &qla::QuasiQStructure,
    h1: &ExtElement,
    xi1: &ExtElement,
    h2: &ExtElement,
    xi2: &ExtElement,
) -> bool {
    use qlag_core::groupoid::subsets;
    let q0 = g.base_component(&s.q_field).unwrap();
    let pool: Vec<u32> = (0..g.dim_e as u32).collect();
    let b_basis = subsets(&pool, 2);
    // naive augmented elimination over a dense support enumeration
    let mut columns: Vec<Vec<(String, Scalar)>> = Vec::new();
    for mono in &b_basis {
        let b = ExtElement::monomial(g.base_algebra(), mono, scalar::one());
        let e1 = q0.apply(&b).unwrap();
        let e2 = g.s_pullback(&b).unwrap().sub(&g.t_pullback(&b).unwrap()).unwrap();
        let mut col = Vec::new();
        for (m, c) in e1.terms() {
            col.push((format!("a{m:?}"), c.clone()));
        }
        for (m, c) in e2.terms() {
            col.push((format!("b{m:?}"), c.clone()));
        }
        columns.push(col);
    }
    let mut rhs: Vec<(String, Scalar)> = Vec::new();
    for (m, c) in xi1.sub(xi2).unwrap().terms() {
        rhs.push((format!("a{m:?}"), c.clone()));
    }
    for (m, c) in h1.sub(h2).unwrap().terms() {
        rhs.push((format!("b{m:?}"), c.clone()));
    }
    let mut keys: BTreeSet<String> = BTreeSet::new();
    for col in &columns {
        for (k, _) in col {
            keys.insert(k.clone());
        }
    }
    for (k, _) in &rhs {
        keys.insert(k.clone());
    }
    let keys: Vec<String> = keys.into_iter().collect();
    let n = keys.len();
    let m = columns.len();
    // dense augmented matrix, naive Gauss-Jordan written independently
    let mut a: Vec<Vec<Scalar>> = vec![vec![scalar::zero(); m + 1]; n];
    for (j, col) in columns.iter().enumerate() {
        for (k, c) in col {
            let i = keys.iter().position(|x| x == k).unwrap();
            a[i][j] = c.clone();
        }
    }
    for (k, c) in &rhs {
        let i = keys.iter().position(|x| x == k).unwrap();
        a[i][m] = c.clone();
    }
    let mut row = 0usize;
    for col in 0..m {
        let Some(p) = (row..n).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].clone().recip();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..=m {
                    let v = &a[i][j] - &f * &a[row][j];
                    a[i][j] = v;
                }
            }
        }
        row += 1;
        if row == n {
            break;
        }
    }
    // inconsistent iff a zero row has nonzero rhs
    !(0..n).any(|i| a[i][..m].iter().all(Zero::is_zero) && !a[i][m].is_zero())
}

/// Criterion 6: sampled cocycle pairs extend to verified structures; the
/// extension classifier returns substitution-verified certificates or exact
/// infeasibility certificates, agreeing with exhaustive solvability.
#[test]
fn criterion_6_central_extensions() {
    let mut rng = Rng::new(0xACC6);
    let mut failures = Vec::new();
    let mut instances = 0usize;
    for seed in 0..30u64 {
        let l2 = sample::random_valid_l2(seed, 3, 2);
        let (g, s) = from_l2(&l2).unwrap();
        let space = cocycle_space(&g, &s).unwrap();
        let pick = |rng: &mut Rng| {
            let mut h = ExtElement::zero(g.algebra());
            let mut xi = ExtElement::zero(g.base_algebra());
            for (hb, xb) in &space {
                let c = rng.sparse_scalar(&scalar::half());
                if !c.is_zero() {
                    h = h.add(&hb.scale(&c)).unwrap();
                    xi = xi.add(&xb.scale(&c)).unwrap();
                }
            }
            (h, xi)
        };
        let (h1, xi1) = pick(&mut rng);
        let (h2, xi2) = pick(&mut rng);
        instances += 1;
        if !cocycle_check(&g, &s, &h1, &xi1).unwrap().passed() {
            failures.push(format!("seed {seed}: sampled pair fails cocycle check"));
            continue;
        }
        let (ge, se) = central_extend(&g, &s, &h1, &xi1).unwrap();
        if !verify_quasi_q(&ge, &se).unwrap().passed() {
            failures.push(format!("seed {seed}: extension does not verify"));
        }
        let oracle = exhaustive_solvable(&g, &s, &h1, &xi1, &h2, &xi2);
        match classify_extension(&g, &s, &h1, &xi1, &h2, &xi2).unwrap() {
            ExtensionClassification::Equivalent { b } => {
                if !oracle {
                    failures.push(format!("seed {seed}: classifier solvable, oracle not"));
                }
                let q0 = g.base_component(&s.q_field).unwrap();
                let ok1 = xi1.sub(&xi2).unwrap() == q0.apply(&b).unwrap();
                let ok2 = h1.sub(&h2).unwrap()
                    == g.s_pullback(&b).unwrap().sub(&g.t_pullback(&b).unwrap()).unwrap();
                if !(ok1 && ok2) {
                    failures.push(format!("seed {seed}: certificate fails substitution"));
                }
            }
            ExtensionClassification::Inequivalent { certificate } => {
                if oracle {
                    failures.push(format!("seed {seed}: classifier infeasible, oracle solvable"));
                }
                if certificate.iter().all(Zero::is_zero) {
                    failures.push(format!("seed {seed}: empty certificate"));
                }
            }
        }
    }
    conclude(6, "central extensions", failures.is_empty() && instances == 30,
        format!("{instances} instances{}", if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }));
}

/// Criterion 7: the standard bialgebra on sl2 passes; the 5+6-equation
/// checker matches the multivector-field dgla residual component-wise on 30
/// seeded two-term instances; the classifier reproduces every table row.
#[test]
fn criterion_7_bialgebra_tables() {
    let mut failures: Vec<String> = Vec::new();
    // sl2 standard bialgebra
    let sl2 = sample::random_proto(1);
    if !bialg::mc_check_proto(&sl2).unwrap().passed() {
        failures.push("sl2 bialgebra rejected".into());
    }

    // component-wise agreement with the dgla residual
    let mut rng = Rng::new(0xACC7);
    for seed in 0..30u64 {
        let dims = [(1usize, 2usize), (2, 2), (1, 1)][(seed % 3) as usize];
        let l2 = sample::random_valid_l2(seed, dims.1, dims.0);
        let (g, s) = from_l2(&l2).unwrap();
        let vd = build_mvf_dgla(&g, (1, 2)).unwrap();
        // sample a degree-1 element: the quasi-q tuple plus random coords
        let psi0 = bialg::WeakL2Bialgebra::from_quasi_q(&g, &s).unwrap();
        let mut coords = vd
            .coords_of(1, &psi0.q_low, &psi0.q_up)
            .unwrap();
        if seed % 2 == 1 && !coords.coords.is_empty() {
            let i = rng.below(coords.coords.len() as u64) as usize;
            coords.coords[i] += rng.nonzero_scalar();
        }
        let (sec, field) = vd.parts_of(&coords);
        // split by arity into the nine slots
        let mut psi = bialg::WeakL2Bialgebra::zero(&g);
        for (arity, part) in sec.arity_parts() {
            match arity {
                0 => psi.f_low = part,
                1 => psi.q_low = part,
                2 => psi.t = part,
                3 => psi.pi_low = part,
                _ => psi.phi_low = part,
            }
        }
        for (arity, part) in field.arity_parts() {
            match arity {
                0 => psi.f_up = part,
                1 => psi.q_up = part,
                2 => psi.pi_up = part,
                _ => psi.phi_up = part,
            }
        }
        let rep = bialg::mc_check_v(&g, &psi).unwrap();
        let residual = vd.dgla.mc_residual(&coords).unwrap();
        if rep.passed() != residual.is_zero() {
            failures.push(format!("seed {seed}: verdicts differ"));
            continue;
        }
        // component-wise: the field part equals the A-residual sum and the
        // right extension of the section part is minus the B-residual sum
        let (res_sec, res_field) = vd.parts_of(&residual);
        let mut a_sum = ExtElement::zero(g.mv_algebra());
        let half = scalar::half();
        for term in [
            g.ext_diff(&psi.f_low).unwrap(),
            psi.q_up.bracket(&psi.f_up).unwrap(),
            g.ext_diff(&psi.q_low).unwrap(),
            psi.q_up.bracket(&psi.q_up).unwrap().scale(&half),
            psi.pi_up.bracket(&psi.f_up).unwrap(),
            g.ext_diff(&psi.t).unwrap(),
            psi.pi_up.bracket(&psi.q_up).unwrap(),
            psi.phi_up.bracket(&psi.f_up).unwrap(),
            g.ext_diff(&psi.pi_low).unwrap(),
            psi.pi_up.bracket(&psi.pi_up).unwrap().scale(&half),
            psi.q_up.bracket(&psi.phi_up).unwrap(),
            g.ext_diff(&psi.phi_low).unwrap(),
            psi.pi_up.bracket(&psi.phi_up).unwrap(),
        ] {
            a_sum = a_sum.add(&term).unwrap();
        }
        if res_field != a_sum {
            failures.push(format!("seed {seed}: field components differ"));
        }
        let rext = |x: &ExtElement| g.right_ext(x).unwrap();
        let mut b_sum = ExtElement::zero(g.mv_algebra());
        for term in [
            psi.f_up.bracket(&rext(&psi.q_low)).unwrap(),
            psi.q_up.bracket(&rext(&psi.f_low)).unwrap(),
            psi.f_up.bracket(&rext(&psi.t)).unwrap(),
            psi.q_up.bracket(&rext(&psi.q_low)).unwrap(),
            psi.pi_up.bracket(&rext(&psi.f_low)).unwrap(),
            psi.f_up.bracket(&rext(&psi.pi_low)).unwrap(),
            psi.q_up.bracket(&rext(&psi.t)).unwrap(),
            psi.pi_up.bracket(&rext(&psi.q_low)).unwrap(),
            psi.phi_up.bracket(&rext(&psi.f_low)).unwrap(),
            psi.f_up.bracket(&rext(&psi.phi_low)).unwrap(),
            psi.q_up.bracket(&rext(&psi.pi_low)).unwrap(),
            psi.pi_up.bracket(&rext(&psi.t)).unwrap(),
            psi.phi_up.bracket(&rext(&psi.q_low)).unwrap(),
            psi.q_up.bracket(&rext(&psi.phi_low)).unwrap(),
            psi.pi_up.bracket(&rext(&psi.pi_low)).unwrap(),
            psi.phi_up.bracket(&rext(&psi.t)).unwrap(),
            psi.pi_up.bracket(&rext(&psi.phi_low)).unwrap(),
            psi.phi_up.bracket(&rext(&psi.pi_low)).unwrap(),
        ] {
            b_sum = b_sum.add(&term).unwrap();
        }
        if rext(&res_sec) != b_sum.neg() {
            failures.push(format!("seed {seed}: section components differ"));
        }
    }

    // every table row from its mask
    use qlag_core::bialg::{classify, ClassifyContext::*};
    let m = |tags: &[&str]| -> BTreeSet<Slot> {
        tags.iter().map(|t| Slot::from_tag(t).unwrap()).collect()
    };
    let rows: [(qlag_core::bialg::ClassifyContext, &[&str], &str); 15] = [
        (PointCoreZero, &["Q"], "Lie algebra"),
        (PointCoreZero, &["Q", "Pi"], "Lie bialgebra"),
        (PointCoreZero, &["F", "Q", "Pi"], "quasi-Lie bialgebra"),
        (PointCoreZero, &["F", "Q", "Pi", "Phi"], "proto-bialgebra"),
        (PointTwoTerm, &["Q"], "strict L2-algebra"),
        (PointTwoTerm, &["q", "Q"], "L2-algebra"),
        (PointTwoTerm, &["Q", "Pi"], "strict Lie 2-bialgebra"),
        (PointTwoTerm, &["q", "Q", "Pi", "pi"], "weak Lie 2-bialgebra"),
        (PointTwoTerm, &["q", "Q", "t", "Pi", "pi"], "2-term L-infinity[0,1]-bialgebra"),
        (
            PointTwoTerm,
            &["f", "F", "q", "Q", "t", "Pi", "pi", "Phi", "phi"],
            "quasi weak Lie 2-bialgebra",
        ),
        (Groupoid, &["Q"], "LA-groupoid"),
        (Groupoid, &["q", "Q"], "quasi LA-groupoid"),
        (Groupoid, &["Pi"], "PVB-groupoid"),
        (Groupoid, &["Pi", "pi"], "quasi PVB-groupoid"),
        (Groupoid, &["Q", "Pi"], "Lie-bialgebroid groupoid"),
    ];
    for (ctx, tags, want) in rows {
        match classify(ctx, &m(tags), true) {
            Some(got) if got == want => {}
            other => failures.push(format!("mask {tags:?}: got {other:?}, want {want}")),
        }
    }

    conclude(7, "bialgebra tables", failures.is_empty(), failures.join("; "));
}

/// Criterion 8: the representation-up-to-homotopy dictionary round-trips and
/// the axiom families correspond, on 50 seeded instances including
/// Bianchi-violating ones.
#[test]
fn criterion_8_ruth_dictionary() {
    let mut failures = Vec::new();
    let mut bianchi_violations = 0usize;
    for seed in 0..50u64 {
        let flavor = seed % 5;
        let r = sample::random_ruth(seed, flavor);
        let ruth_rep = l2::verify_ruth(&r);
        let chain_ok = ruth_rep.check("ruth-chain").unwrap().passed();
        if !ruth_rep.check("ruth-bianchi").unwrap().passed() {
            bianchi_violations += 1;
        }
        match l2::ruth_to_morphism(&r) {
            Err(_) => {
                if chain_ok {
                    failures.push(format!("seed {seed}: conversion failed on chain-valid input"));
                }
            }
            Ok(morphism) => {
                if !chain_ok {
                    failures.push(format!("seed {seed}: chain-violating input converted"));
                    continue;
                }
                let back =
                    l2::morphism_to_ruth(&morphism, r.dim_v0, r.dim_v1, &r.partial).unwrap();
                if back != r {
                    failures.push(format!("seed {seed}: round trip differs"));
                }
                let mor_rep = verify_morphism(&morphism);
                let curv_ok = ruth_rep.check("ruth-curv1").unwrap().passed()
                    && ruth_rep.check("ruth-curv0").unwrap().passed();
                if curv_ok != mor_rep.check("l2mor1").unwrap().passed() {
                    failures.push(format!("seed {seed}: curvature vs bracket equation"));
                }
                if ruth_rep.check("ruth-bianchi").unwrap().passed()
                    != mor_rep.check("l2mor3").unwrap().passed()
                {
                    failures.push(format!("seed {seed}: Bianchi vs coherence equation"));
                }
                if ruth_rep.passed() != mor_rep.passed() {
                    failures.push(format!("seed {seed}: total verdicts differ"));
                }
            }
        }
    }
    conclude(8, "representation dictionary", failures.is_empty() && bianchi_violations >= 5,
        format!("{bianchi_violations} Bianchi violations among 50 instances{}",
            if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }));
}

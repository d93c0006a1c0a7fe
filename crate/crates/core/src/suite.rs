//! Seeded property batteries, one per module family. Each battery runs a
//! fixed number of deterministic instances and reports pass/fail with a
//! counter, so the command-line `suite` driver can print a stable matrix.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::ExtElement;
use crate::dgla::{build_groupoid_dgla, verify_dgla};
use crate::l2::{ce_degree2, verify_l2};
use crate::qla::{
    dual_quasi_poisson, from_l2, gauge_point, q_as_nat_transf, to_l2_unchecked, verify_dual,
    verify_quasi_q,
};
use crate::rng::Rng;
use crate::sample;
use crate::scalar;
use num_traits::Zero;

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub detail: String,
}

fn result(name: &str, cases: u64, failures: Vec<String>) -> SuiteResult {
    SuiteResult {
        name: name.into(),
        passed: failures.is_empty(),
        cases,
        detail: if failures.is_empty() {
            String::from("ok")
        } else {
            failures.join("; ")
        },
    }
}

/// Three-oracle agreement on valid and per-axiom-perturbed instances.
pub fn battery_oracles(seeds: u64) -> SuiteResult {
    let mut failures = Vec::new();
    let mut rng = Rng::new(0x07AC);
    for seed in 0..seeds {
        let l2 = sample::random_valid_l2(seed, 3, 3);
        let variants = [
            (l2.clone(), true),
            (
                sample::perturb_l2(
                    &l2,
                    match seed % 4 {
                        0 => sample::Break::Chain,
                        1 => sample::Break::NablaAntisym,
                        2 => sample::Break::Jacobi,
                        _ => sample::Break::Coherence,
                    },
                    &mut rng,
                ),
                false,
            ),
        ];
        for (inst, expect_valid) in variants {
            let va = verify_l2(&inst).passed();
            let vb = match ce_degree2(&inst).and_then(|q| q.square()) {
                Ok(sq) => sq.is_zero(),
                Err(_) => false,
            };
            let (g, s) = match from_l2(&inst) {
                Ok(x) => x,
                Err(e) => {
                    failures.push(format!("seed {seed}: from_l2 failed: {e}"));
                    continue;
                }
            };
            let vc = verify_quasi_q(&g, &s).map(|r| r.passed()).unwrap_or(false);
            let vd = dual_quasi_poisson(&g, &s)
                .and_then(|d| verify_dual(&d))
                .map(|r| r.passed())
                .unwrap_or(false);
            if !(va == vb && vb == vc && vc == vd) {
                failures.push(format!(
                    "seed {seed}: verdicts diverge ({va},{vb},{vc},{vd})"
                ));
            }
            if expect_valid && !va {
                failures.push(format!("seed {seed}: valid instance rejected"));
            }
        }
    }
    result("three-oracle-agreement", seeds, failures)
}

/// Round trips between two-term structures and quasi Q-structures.
pub fn battery_round_trip(seeds: u64) -> SuiteResult {
    let mut failures = Vec::new();
    for seed in 0..seeds {
        let l2 = sample::random_valid_l2(seed, 3, 3);
        let (g, s) = from_l2(&l2).unwrap();
        match to_l2_unchecked(&g, &s) {
            Ok(back) if back == l2 => {}
            Ok(_) => failures.push(format!("seed {seed}: round trip changed tensors")),
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
        let (_, s2) = from_l2(&to_l2_unchecked(&g, &s).unwrap()).unwrap();
        if s2 != s {
            failures.push(format!("seed {seed}: structure round trip differs"));
        }
    }
    result("dictionary-round-trip", seeds, failures)
}

/// Gauge transformations preserve verification and agree with the dgla gauge.
pub fn battery_gauge(seeds: u64) -> SuiteResult {
    let mut failures = Vec::new();
    let mut rng = Rng::new(0x6A06E);
    for seed in 0..seeds {
        let l2 = sample::random_valid_l2(seed, 3, 2);
        let (g, s) = from_l2(&l2).unwrap();
        let b = sample::random_gauge_parameter(&mut rng, g.dim_e, g.dim_c, &scalar::half());
        let moved = match gauge_point(&g, &b, &s) {
            Ok(m) => m,
            Err(e) => {
                failures.push(format!("seed {seed}: gauge failed: {e}"));
                continue;
            }
        };
        if !verify_quasi_q(&g, &moved).unwrap().passed() {
            failures.push(format!("seed {seed}: gauge broke verification"));
        }
        // agreement with the abstract dgla gauge
        let gd = build_groupoid_dgla(&g, (-1, 2)).unwrap();
        let mc = gd.mc_of_quasi_q(&s).unwrap();
        let b_sec = crate::qla::section_elem(&g, &b).unwrap();
        let b_coords = gd
            .coords_of(0, &b_sec, &crate::mvcalc::Derivation::zero(g.algebra(), 0))
            .unwrap();
        let moved_abs = gd.dgla.gauge_transform(&b_coords, &mc, 20).unwrap();
        let expect = gd.mc_of_quasi_q(&moved).unwrap();
        if moved_abs != expect {
            failures.push(format!("seed {seed}: dgla gauge disagrees"));
        }
    }
    result("gauge-coherence", seeds, failures)
}

/// The groupoid dgla verifies its axioms and matches the MC dictionary.
pub fn battery_dgla(seeds: u64) -> SuiteResult {
    let mut failures = Vec::new();
    for seed in 0..seeds.min(8) {
        let l2 = sample::random_valid_l2(seed, 2, 2);
        let (g, s) = from_l2(&l2).unwrap();
        let gd = build_groupoid_dgla(&g, (-1, 2)).unwrap();
        let rep = verify_dgla(&gd.dgla);
        if !rep.passed() {
            failures.push(format!("seed {seed}: axioms fail at {:?}", rep.failing()));
        }
        let mc = gd.mc_of_quasi_q(&s).unwrap();
        if !gd.dgla.mc_residual(&mc).unwrap().is_zero() {
            failures.push(format!("seed {seed}: MC residual nonzero"));
        }
    }
    result("groupoid-dgla-axioms", seeds.min(8), failures)
}

/// The natural-transformation view agrees with the homotopy equation.
pub fn battery_nat_transf(seeds: u64) -> SuiteResult {
    let mut failures = Vec::new();
    let mut rng = Rng::new(0x27A);
    for seed in 0..seeds {
        let l2 = sample::random_valid_l2(seed, 3, 2);
        let (g, mut s) = from_l2(&l2).unwrap();
        if seed % 2 == 1 && g.dim_e >= 3 && g.dim_c >= 1 {
            // perturb q
            let mut v = s.q_section.eval(&[0, 1, 2]).unwrap();
            v[0] += rng.nonzero_scalar();
            s.q_section.set(&[0, 1, 2], v).unwrap();
        }
        let nt = q_as_nat_transf(&g, &s).unwrap();
        let qq = verify_quasi_q(&g, &s).unwrap();
        let nt_ok = nt.check("nt-exchange").unwrap().passed();
        let hom_ok = qq.check("homotopy").unwrap().passed();
        if nt_ok != hom_ok {
            failures.push(format!("seed {seed}: exchange vs homotopy differ"));
        }
    }
    result("natural-transformation-view", seeds, failures)
}

/// Ruths: round trip and per-equation agreement.
pub fn battery_ruth(seeds: u64) -> SuiteResult {
    let mut failures = Vec::new();
    for seed in 0..seeds {
        let flavor = seed % 5;
        let r = sample::random_ruth(seed, flavor);
        let ruth_rep = crate::l2::verify_ruth(&r);
        let chain_ok = ruth_rep.check("ruth-chain").unwrap().passed();
        match crate::l2::ruth_to_morphism(&r) {
            Err(_) if chain_ok => {
                failures.push(format!("seed {seed}: conversion failed on chain-valid"))
            }
            Err(_) => {}
            Ok(m) => {
                if !chain_ok {
                    failures.push(format!("seed {seed}: chain-violating converted"));
                    continue;
                }
                let back =
                    crate::l2::morphism_to_ruth(&m, r.dim_v0, r.dim_v1, &r.partial).unwrap();
                if back != r {
                    failures.push(format!("seed {seed}: round trip differs"));
                }
                let mor = crate::l2::verify_morphism(&m);
                if mor.passed() != ruth_rep.passed() {
                    failures.push(format!("seed {seed}: verdicts differ"));
                }
            }
        }
    }
    result("ruth-dictionary", seeds, failures)
}

/// Crossed modules: axioms versus the strict structure, with round trips.
pub fn battery_xmod(seeds: u64) -> SuiteResult {
    let mut failures = Vec::new();
    for seed in 0..seeds {
        let x = sample::random_xmod(seed);
        let xrep = crate::l2::verify_xmod(&x);
        let strict = crate::l2::xmod_to_strict(&x).unwrap();
        let l2rep = verify_l2(&strict);
        // the strict verdict sees everything except h-Jacobi/Peiffer mismatch
        // against the recovered bracket; compare via the full round trip
        match crate::l2::strict_to_xmod(&strict) {
            Ok(back) => {
                let round_ok = back == x;
                if xrep.passed() && (!l2rep.passed() || !round_ok) {
                    failures.push(format!("seed {seed}: valid xmod broke downstream"));
                }
                if !xrep.passed() && l2rep.passed() && round_ok {
                    failures.push(format!("seed {seed}: invalid xmod passed everywhere"));
                }
            }
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    result("crossed-module-dictionary", seeds, failures)
}

/// Proto-bialgebras: the jacobi component mirrors the bracket verdict.
pub fn battery_proto(seeds: u64) -> SuiteResult {
    let mut failures = Vec::new();
    for seed in 0..seeds {
        let p = sample::random_proto(seed);
        let rep = crate::bialg::mc_check_proto(&p).unwrap();
        // independent bracket check
        let lie = crate::l2::L2Algebra {
            dim_e: p.dim_g,
            dim_c: 0,
            partial: crate::linalg::Mat::zeros(p.dim_g, 0),
            bracket: p.mu.clone(),
            nabla: Vec::new(),
            k: crate::tensor::AltTensor::zero(3, p.dim_g, 0),
        };
        let mut jac_ok = true;
        for a in 0..p.dim_g {
            for b in a + 1..p.dim_g {
                for c in b + 1..p.dim_g {
                    if lie.jacobiator(a, b, c).iter().any(|x| !x.is_zero()) {
                        jac_ok = false;
                    }
                }
            }
        }
        let mut fixed = lie;
        fixed.nabla = Vec::new();
        if rep.check("proto-jacobi").unwrap().passed() != jac_ok {
            failures.push(format!("seed {seed}: jacobi component disagrees"));
        }
    }
    result("proto-bialgebra-jacobi", seeds, failures)
}

/// Extension cocycles: sampled cocycles extend to verified structures.
pub fn battery_extensions(seeds: u64) -> SuiteResult {
    let mut failures = Vec::new();
    for seed in 0..seeds {
        let l2 = sample::random_valid_l2(seed, 3, 2);
        let (g, s) = from_l2(&l2).unwrap();
        let space = crate::qla::cocycle_space(&g, &s).unwrap();
        let mut rng = Rng::new(seed ^ 0xE07);
        let mut h = ExtElement::zero(g.algebra());
        let mut xi = ExtElement::zero(g.base_algebra());
        for (hb, xb) in &space {
            let c = rng.sparse_scalar(&scalar::half());
            if !c.is_zero() {
                h = h.add(&hb.scale(&c)).unwrap();
                xi = xi.add(&xb.scale(&c)).unwrap();
            }
        }
        match crate::qla::central_extend(&g, &s, &h, &xi) {
            Ok((ge, se)) => {
                if !verify_quasi_q(&ge, &se).unwrap().passed() {
                    failures.push(format!("seed {seed}: extension fails verification"));
                }
            }
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    result("central-extensions", seeds, failures)
}

/// Runs every battery with the given seed count.
pub fn run_all(seeds: u64) -> Vec<SuiteResult> {
    alloc::vec![
        battery_oracles(seeds),
        battery_round_trip(seeds),
        battery_gauge(seeds),
        battery_dgla(seeds),
        battery_nat_transf(seeds),
        battery_ruth(seeds),
        battery_xmod(seeds),
        battery_proto(seeds),
        battery_extensions(seeds),
    ]
}

//! Property tests for the pairing-bracket engine: graded antisymmetry, the
//! Leibniz rule, and graded Jacobi, exactly, on random elements of the odd
//! multivector algebra (shift 2) and the even Schouten algebra (shift 1).

use std::sync::Arc;

use proptest::prelude::*;
use qlag_core::algebra::{Algebra, ExtElement, Gen};
use qlag_core::scalar;

fn odd_mv() -> Arc<Algebra> {
    Algebra::multivector(
        vec![Gen::new("a", 1), Gen::new("b", 1), Gen::new("c", 1)],
        2,
    )
}

fn even_mv() -> Arc<Algebra> {
    Algebra::multivector(vec![Gen::new("x", 0), Gen::new("y", 0), Gen::new("z", 0)], 1)
}

/// Random homogeneous element: a sum of random monomials of a common degree.
fn homogeneous(alg: &Arc<Algebra>, seed: u64) -> ExtElement {
    let mut rng = qlag_core::rng::Rng::new(seed);
    let n = alg.len() as u64;
    // pick a target monomial as a subset, then collect monomials of its degree
    let mut base = Vec::new();
    for i in 0..n {
        if rng.next_u64() % 3 == 0 {
            base.push(i as u32);
        }
    }
    let target: i64 = base.iter().map(|&i| alg.degree_of(i)).sum();
    let mut out = ExtElement::zero(alg);
    for _ in 0..4 {
        let mut mono = Vec::new();
        let mut deg = 0;
        for _ in 0..alg.len() {
            let i = rng.below(n) as u32;
            mono.push(i);
            deg += alg.degree_of(i);
            if deg >= target {
                break;
            }
        }
        if deg == target {
            out = out
                .add(&ExtElement::monomial(alg, &mono, rng.grid_scalar()))
                .unwrap();
        }
    }
    if out.is_zero() {
        ExtElement::monomial(alg, &base, scalar::one())
    } else {
        out
    }
}

fn shifted_parity(alg: &Arc<Algebra>, x: &ExtElement) -> i64 {
    x.homogeneous_degree().unwrap_or(0) + alg.bracket_degree()
}

fn sign(p: i64, q: i64) -> i64 {
    if p.rem_euclid(2) == 1 && q.rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

fn scaled(x: &ExtElement, s: i64) -> ExtElement {
    x.scale(&scalar::int(s))
}

fn check_axioms(alg: &Arc<Algebra>, sx: u64, sy: u64, sz: u64) {
    let x = homogeneous(alg, sx);
    let y = homogeneous(alg, sy);
    let z = homogeneous(alg, sz);
    let xt = shifted_parity(alg, &x);
    let yt = shifted_parity(alg, &y);

    // antisymmetry: {x,y} = -(-1)^{x̃ỹ}{y,x}
    let lhs = x.bracket(&y).unwrap();
    let rhs = scaled(&y.bracket(&x).unwrap(), -sign(xt, yt));
    assert_eq!(lhs, rhs, "antisymmetry");

    // Leibniz: {x,yz} = {x,y}z + (-1)^{x̃|y|} y{x,z}
    let ydeg = y.homogeneous_degree().unwrap_or(0);
    let lhs = x.bracket(&y.mul(&z).unwrap()).unwrap();
    let rhs = x
        .bracket(&y)
        .unwrap()
        .mul(&z)
        .unwrap()
        .add(&scaled(&y.mul(&x.bracket(&z).unwrap()).unwrap(), sign(xt, ydeg)))
        .unwrap();
    assert_eq!(lhs, rhs, "Leibniz");

    // Jacobi: {x,{y,z}} = {{x,y},z} + (-1)^{x̃ỹ}{y,{x,z}}
    let lhs = x.bracket(&y.bracket(&z).unwrap()).unwrap();
    let rhs = x
        .bracket(&y)
        .unwrap()
        .bracket(&z)
        .unwrap()
        .add(&scaled(&y.bracket(&x.bracket(&z).unwrap()).unwrap(), sign(xt, yt)))
        .unwrap();
    assert_eq!(lhs, rhs, "Jacobi");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn odd_engine_axioms(sx in 0u64..10_000, sy in 0u64..10_000, sz in 0u64..10_000) {
        check_axioms(&odd_mv(), sx, sy, sz);
    }

    #[test]
    fn even_engine_axioms(sx in 0u64..10_000, sy in 0u64..10_000, sz in 0u64..10_000) {
        check_axioms(&even_mv(), sx, sy, sz);
    }
}

#[test]
fn mixed_degree_engine_axioms() {
    // the degree-2 model's cotangent: base generators of degrees 1 and 2
    let alg = Algebra::multivector(
        vec![Gen::new("e", 1), Gen::new("f", 1), Gen::new("c", 2)],
        3,
    );
    for s in 0..40u64 {
        check_axioms(&alg, s, s.wrapping_mul(77) + 1, s.wrapping_mul(131) + 2);
    }
}

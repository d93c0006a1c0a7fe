//! Named instances and seeded random generators for tests and property suites.

use alloc::vec;
use num_traits::Zero;
use alloc::vec::Vec;

use crate::l2::L2Algebra;
use crate::linalg::Mat;
use crate::rng::Rng;
use crate::scalar::{self, Scalar};
use crate::tensor::AltTensor;

/// The cross-product bracket on ℚ³.
pub fn so3_bracket() -> AltTensor {
    let mut t = AltTensor::zero(2, 3, 3);
    t.set(&[0, 1], vec![scalar::int(0), scalar::int(0), scalar::int(1)]).unwrap();
    t.set(&[1, 2], vec![scalar::int(1), scalar::int(0), scalar::int(0)]).unwrap();
    t.set(&[2, 0], vec![scalar::int(0), scalar::int(1), scalar::int(0)]).unwrap();
    t
}

/// The determinant 3-form on ℚ³ with values in ℚ.
pub fn det3() -> AltTensor {
    let mut t = AltTensor::zero(3, 3, 1);
    t.set(&[0, 1, 2], vec![scalar::int(1)]).unwrap();
    t
}

/// The string-type structure on so(3): `E = ℚ³` with the cross product,
/// `C = ℚ`, `∂ = 0`, `∇ = 0`, `K = det`.
pub fn string_so3() -> L2Algebra {
    L2Algebra {
        dim_e: 3,
        dim_c: 1,
        partial: Mat::zeros(3, 1),
        bracket: so3_bracket(),
        nabla: vec![Mat::zeros(1, 1); 3],
        k: det3(),
    }
}

/// The strict structure of the crossed module `(id: so(3) → so(3), ad)`.
pub fn strict_so3() -> L2Algebra {
    let mut nabla = Vec::new();
    for a in 0..3u32 {
        let mut m = Mat::zeros(3, 3);
        for j in 0..3u32 {
            let v = so3_bracket().eval(&[a, j]).unwrap();
            for (i, c) in v.into_iter().enumerate() {
                m.set(i, j as usize, c);
            }
        }
        nabla.push(m);
    }
    L2Algebra {
        dim_e: 3,
        dim_c: 3,
        partial: Mat::identity(3),
        bracket: so3_bracket(),
        nabla,
        k: AltTensor::zero(3, 3, 3),
    }
}

/// The crossed module `(id: so(3) → so(3), ad)`.
pub fn xmod_so3_id() -> crate::l2::CrossedModule {
    let strict = strict_so3();
    crate::l2::CrossedModule {
        dim_g: 3,
        dim_h: 3,
        g_bracket: so3_bracket(),
        h_bracket: so3_bracket(),
        partial: Mat::identity(3),
        action: strict.nabla,
    }
}

/// The documented bracket violating Jacobi: `[e1,e2]=e3, [e1,e3]=e1, [e2,e3]=0`
/// with `C = 0`-like trivial core data and `K = 0`; its Jacobiator on
/// `(e1,e2,e3)` equals `e3`.
pub fn failing_jacobi() -> L2Algebra {
    let mut t = AltTensor::zero(2, 3, 3);
    t.set(&[0, 1], vec![scalar::int(0), scalar::int(0), scalar::int(1)]).unwrap();
    t.set(&[0, 2], vec![scalar::int(1), scalar::int(0), scalar::int(0)]).unwrap();
    L2Algebra {
        dim_e: 3,
        dim_c: 1,
        partial: Mat::zeros(3, 1),
        bracket: t,
        nabla: vec![Mat::zeros(1, 1); 3],
        k: AltTensor::zero(3, 3, 1),
    }
}

/// Small catalogue of exact Lie brackets in dimensions ≤ 3, used as seeds.
fn lie_bracket_catalogue(dim: usize, pick: u64) -> AltTensor {
    match dim {
        0 | 1 => AltTensor::zero(2, dim.max(1), dim.max(1)),
        2 => {
            let mut t = AltTensor::zero(2, 2, 2);
            if pick % 2 == 1 {
                // affine line: [e0,e1] = e1
                t.set(&[0, 1], vec![scalar::int(0), scalar::int(1)]).unwrap();
            }
            t
        }
        _ => match pick % 4 {
            0 => AltTensor::zero(2, 3, 3),
            1 => so3_bracket(),
            2 => {
                // Heisenberg: [e0,e1] = e2
                let mut t = AltTensor::zero(2, 3, 3);
                t.set(&[0, 1], vec![scalar::int(0), scalar::int(0), scalar::int(1)])
                    .unwrap();
                t
            }
            _ => {
                // sl2: [h,e] = 2e, [h,f] = -2f, [e,f] = h  (order: e0=h, e1=e, e2=f)
                let mut t = AltTensor::zero(2, 3, 3);
                t.set(&[0, 1], vec![scalar::int(0), scalar::int(2), scalar::int(0)]).unwrap();
                t.set(&[0, 2], vec![scalar::int(0), scalar::int(0), scalar::int(-2)])
                    .unwrap();
                t.set(&[1, 2], vec![scalar::int(1), scalar::int(0), scalar::int(0)]).unwrap();
                t
            }
        },
    }
}

/// A random invertible matrix with grid entries (determinant checked exactly).
pub fn random_invertible(rng: &mut Rng, n: usize) -> Mat {
    loop {
        let mut m = Mat::identity(n);
        for i in 0..n {
            for j in 0..n {
                if i != j && rng.below(3) == 0 {
                    m.set(i, j, rng.small_int(1));
                }
            }
        }
        // random diagonal units
        for i in 0..n {
            if rng.below(4) == 0 {
                m.set(i, i, -scalar::one());
            }
        }
        if m.rank() == n {
            return m;
        }
    }
}

fn conjugate_bracket(b: &AltTensor, g: &Mat, ginv: &Mat) -> AltTensor {
    // [x,y]' = g⁻¹ [gx, gy]
    let n = b.in_dim;
    let mut out = AltTensor::zero(2, n, n);
    for i in 0..n as u32 {
        for j in (i + 1)..n as u32 {
            let gi: Vec<Scalar> = (0..n).map(|r| g.at(r, i as usize).clone()).collect();
            let gj: Vec<Scalar> = (0..n).map(|r| g.at(r, j as usize).clone()).collect();
            let v = b.eval_vectors(&[gi, gj]).unwrap();
            out.set(&[i, j], ginv.apply(&v)).unwrap();
        }
    }
    out
}

/// A deterministic valid two-term structure for a seed: drawn from crossed
/// modules, string-type structures, and `gl` complexes, then conjugated by a
/// random basis change (validity is preserved exactly).
pub fn random_valid_l2(seed: u64, max_dim_e: usize, max_dim_c: usize) -> L2Algebra {
    let mut rng = Rng::new(seed ^ 0x51_1AB);
    let kind = rng.below(4);
    let l2 = match kind {
        0 => {
            // strict: inclusion of an ideal-ish via identity or zero boundary
            let dim = 1 + rng.below(max_dim_e.min(3) as u64) as usize;
            let g = lie_bracket_catalogue(dim, rng.next_u64());
            let mut nabla = Vec::new();
            for a in 0..dim as u32 {
                let mut m = Mat::zeros(dim, dim);
                for j in 0..dim as u32 {
                    let v = g.eval(&[a, j]).unwrap();
                    for (i, c) in v.into_iter().enumerate() {
                        m.set(i, j as usize, c);
                    }
                }
                nabla.push(m);
            }
            L2Algebra {
                dim_e: dim,
                dim_c: dim,
                partial: Mat::identity(dim),
                bracket: g,
                nabla,
                k: AltTensor::zero(3, dim, dim),
            }
        }
        1 => {
            // string-type: any Lie bracket, C arbitrary, ∂ = 0, ∇ = 0, K random
            // (for dim E ≤ 3 every K is coherent: the 4-form identities vanish)
            let dim_e = 1 + rng.below(max_dim_e.min(3) as u64) as usize;
            let dim_c = 1 + rng.below(max_dim_c as u64) as usize;
            let g = lie_bracket_catalogue(dim_e, rng.next_u64());
            // K must land in the kernel of ∂ = 0 trivially but needs ∂K = Jac = 0
            let mut k = AltTensor::zero(3, dim_e, dim_c);
            if dim_e == 3 {
                let v: Vec<Scalar> = (0..dim_c).map(|_| rng.grid_scalar()).collect();
                k.set(&[0, 1, 2], v).unwrap();
            }
            L2Algebra {
                dim_e,
                dim_c,
                partial: Mat::zeros(dim_e, dim_c),
                bracket: g,
                nabla: vec![Mat::zeros(dim_c, dim_c); dim_e],
                k,
            }
        }
        2 => {
            // gl of a small complex
            let v0 = 1 + rng.below(2) as usize;
            let v1 = 1 + rng.below(2) as usize;
            let mut partial = Mat::zeros(v1, v0);
            for i in 0..v1 {
                for j in 0..v0 {
                    partial.set(i, j, rng.small_int(1));
                }
            }
            crate::l2::gl_of_complex(v0, v1, &partial).unwrap()
        }
        _ => {
            // abelian with boundary: zero brackets, random ∂ and compatible zero rest
            let dim_e = 1 + rng.below(max_dim_e as u64) as usize;
            let dim_c = 1 + rng.below(max_dim_c as u64) as usize;
            let mut partial = Mat::zeros(dim_e, dim_c);
            for i in 0..dim_e {
                for j in 0..dim_c {
                    partial.set(i, j, rng.small_int(1));
                }
            }
            L2Algebra {
                dim_e,
                dim_c,
                partial,
                bracket: AltTensor::zero(2, dim_e, dim_e),
                nabla: vec![Mat::zeros(dim_c, dim_c); dim_e],
                k: AltTensor::zero(3, dim_e, dim_c),
            }
        }
    };
    conjugate_l2(&l2, &mut rng)
}

/// Conjugates a structure by random basis changes of `E` and `C`; validity and
/// failure patterns are preserved.
pub fn conjugate_l2(l2: &L2Algebra, rng: &mut Rng) -> L2Algebra {
    let ge = random_invertible(rng, l2.dim_e);
    let ge_inv = invert(&ge);
    let gc = random_invertible(rng, l2.dim_c);
    let gc_inv = invert(&gc);
    // ∂' = ge⁻¹ ∂ gc ; [x,y]' = ge⁻¹[ge x, ge y] ; ∇'_x c = gc⁻¹ ∇_{ge x}(gc c) ;
    // K'(x,y,z) = gc⁻¹ K(ge x, ge y, ge z)
    let partial = ge_inv.mul(&l2.partial).mul(&gc);
    let bracket = conjugate_bracket(&l2.bracket, &ge, &ge_inv);
    let mut nabla = Vec::new();
    for a in 0..l2.dim_e {
        let mut m = Mat::zeros(l2.dim_c, l2.dim_c);
        for (b, nb) in l2.nabla.iter().enumerate() {
            let coef = ge.at(b, a).clone();
            if coef.is_zero() {
                continue;
            }
            let add = gc_inv.mul(nb).mul(&gc);
            for i in 0..l2.dim_c {
                for j in 0..l2.dim_c {
                    let v = m.at(i, j) + &coef * add.at(i, j);
                    m.set(i, j, v);
                }
            }
        }
        nabla.push(m);
    }
    let mut k = AltTensor::zero(3, l2.dim_e, l2.dim_c);
    for i in 0..l2.dim_e as u32 {
        for j in (i + 1)..l2.dim_e as u32 {
            for l in (j + 1)..l2.dim_e as u32 {
                let cols = |c: u32| -> Vec<Scalar> {
                    (0..l2.dim_e).map(|r| ge.at(r, c as usize).clone()).collect()
                };
                let v = l2.k.eval_vectors(&[cols(i), cols(j), cols(l)]).unwrap();
                let v = gc_inv.apply(&v);
                k.set(&[i, j, l], v).unwrap();
            }
        }
    }
    L2Algebra { dim_e: l2.dim_e, dim_c: l2.dim_c, partial, bracket, nabla, k }
}

/// Exact inverse of an invertible matrix.
pub fn invert(m: &Mat) -> Mat {
    let n = m.rows;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut b = vec![scalar::zero(); n];
        b[j] = scalar::one();
        cols.push(m.solve(&b).expect("matrix is invertible"));
    }
    let mut out = Mat::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            out.set(i, j, col[i].clone());
        }
    }
    out
}

/// Which axiom to break in [`perturb_l2`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Break {
    Chain,
    NablaAntisym,
    Jacobi,
    Curvature,
    Coherence,
}

/// Perturbs one structure tensor of a valid instance in a generic direction,
/// producing an instance that fails verification.
pub fn perturb_l2(l2: &L2Algebra, which: Break, rng: &mut Rng) -> L2Algebra {
    let mut out = l2.clone();
    let c = rng.nonzero_scalar();
    match which {
        Break::Chain => {
            // generic ∂-perturbation breaks ∂∇ = [e,∂c] (or l2 when ∇ = 0)
            let i = rng.below(l2.dim_e as u64) as usize;
            let j = rng.below(l2.dim_c as u64) as usize;
            let v = out.partial.at(i, j) + &c;
            out.partial.set(i, j, v);
        }
        Break::NablaAntisym => {
            let a = rng.below(l2.dim_e as u64) as usize;
            let i = rng.below(l2.dim_c as u64) as usize;
            let j = rng.below(l2.dim_c as u64) as usize;
            let v = out.nabla[a].at(i, j) + &c;
            out.nabla[a].set(i, j, v);
        }
        Break::Jacobi => {
            if l2.dim_e < 2 {
                return perturb_l2(l2, Break::Chain, rng);
            }
            let a = rng.below((l2.dim_e - 1) as u64) as u32;
            let b = a + 1 + rng.below((l2.dim_e as u64) - 1 - a as u64) as u32;
            let g = rng.below(l2.dim_e as u64) as usize;
            let mut v = out.bracket.eval(&[a, b]).unwrap();
            v[g] += &c;
            out.bracket.set(&[a, b], v).unwrap();
        }
        Break::Curvature | Break::Coherence => {
            if l2.dim_e < 3 || l2.dim_c == 0 {
                return perturb_l2(
                    l2,
                    if l2.dim_e >= 2 { Break::Jacobi } else { Break::Chain },
                    rng,
                );
            }
            let mut v = out.k.eval(&[0, 1, 2]).unwrap();
            let g = rng.below(l2.dim_c as u64) as usize;
            v[g] += &c;
            out.k.set(&[0, 1, 2], v).unwrap();
        }
    }
    out
}

/// A deterministic representation up to homotopy for a seed. `flavor`:
/// `0` valid with ω = 0 (flat chain pairs), `1` valid with ω ≠ 0 (scalar
/// complex with matching connections), `2` Bianchi-violating, `3`
/// curvature-violating, `4` chain-violating.
pub fn random_ruth(seed: u64, flavor: u64) -> crate::l2::Ruth {
    use crate::l2::Ruth;
    let mut rng = Rng::new(seed ^ 0xD0_0D);
    match flavor % 5 {
        0 => {
            // flat chain representation: g abelian, ∂ random, ∇ scalar-matched
            let dim_g = 1 + rng.below(3) as usize;
            let v0 = 1 + rng.below(2) as usize;
            let v1 = 1 + rng.below(2) as usize;
            let mut partial = Mat::zeros(v1, v0);
            for i in 0..v1 {
                for j in 0..v0 {
                    partial.set(i, j, rng.small_int(1));
                }
            }
            // ∇⁰ = λ_a·id, ∇¹ = λ_a·id intertwine any ∂ and are flat for
            // abelian g
            let mut nabla0 = Vec::new();
            let mut nabla1 = Vec::new();
            for _ in 0..dim_g {
                let lam = rng.grid_scalar();
                let mut m0 = Mat::zeros(v0, v0);
                for i in 0..v0 {
                    m0.set(i, i, lam.clone());
                }
                let mut m1 = Mat::zeros(v1, v1);
                for i in 0..v1 {
                    m1.set(i, i, lam.clone());
                }
                nabla0.push(m0);
                nabla1.push(m1);
            }
            Ruth {
                dim_g,
                dim_v0: v0,
                dim_v1: v1,
                g_bracket: AltTensor::zero(2, dim_g, dim_g),
                partial,
                nabla0,
                nabla1,
                omega: AltTensor::zero(2, dim_g, v0 * v1),
            }
        }
        1 => {
            // valid with ω ≠ 0: abelian g, ∂ = 0, equal scalar connections
            let dim_g = 2 + rng.below(2) as usize;
            let v0 = 1usize;
            let v1 = 1usize;
            let mut nabla0 = Vec::new();
            let mut nabla1 = Vec::new();
            for _ in 0..dim_g {
                let lam = rng.grid_scalar();
                nabla0.push(Mat::from_rows(vec![vec![lam.clone()]]));
                nabla1.push(Mat::from_rows(vec![vec![lam]]));
            }
            let mut omega = AltTensor::zero(2, dim_g, 1);
            for a in 0..dim_g as u32 {
                for b in (a + 1)..dim_g as u32 {
                    omega.set(&[a, b], vec![rng.grid_scalar()]).unwrap();
                }
            }
            Ruth {
                dim_g,
                dim_v0: v0,
                dim_v1: v1,
                g_bracket: AltTensor::zero(2, dim_g, dim_g),
                partial: Mat::zeros(1, 1),
                nabla0,
                nabla1,
                omega,
            }
        }
        2 => {
            // Bianchi-violating: zero connections, ∂ = 0, random ω. The
            // bracket must be non-unimodular so that the boundary of the top
            // 3-vector is nonzero (unimodular 3-dim algebras pair to zero and
            // every ω is closed); [e0,e1] = e1 does it.
            let dim_g = 3;
            let v0 = 1 + rng.below(2) as usize;
            let v1 = 1usize;
            let mut omega = AltTensor::zero(2, dim_g, v0 * v1);
            for a in 0..dim_g as u32 {
                for b in (a + 1)..dim_g as u32 {
                    let v: Vec<Scalar> = (0..v0 * v1).map(|_| rng.grid_scalar()).collect();
                    omega.set(&[a, b], v).unwrap();
                }
            }
            let mut aff = AltTensor::zero(2, 3, 3);
            aff.set(&[0, 1], vec![scalar::zero(), scalar::one(), scalar::zero()])
                .unwrap();
            crate::l2::Ruth {
                dim_g,
                dim_v0: v0,
                dim_v1: v1,
                g_bracket: aff,
                partial: Mat::zeros(v1, v0),
                nabla0: vec![Mat::zeros(v0, v0); dim_g],
                nabla1: vec![Mat::zeros(v1, v1); dim_g],
                omega,
            }
        }
        3 => {
            // curvature-violating: start from flavor 0 and perturb ω only
            let mut r = random_ruth(seed, 0);
            if r.dim_g >= 2 {
                let mut v = vec![scalar::zero(); r.dim_v0 * r.dim_v1];
                v[0] = rng.nonzero_scalar();
                r.omega.set(&[0, 1], v).unwrap();
            }
            r
        }
        _ => {
            // chain-violating: non-intertwining connections over ∂ = id
            let dim_g = 1 + rng.below(3) as usize;
            let n = 1 + rng.below(2) as usize;
            let mut nabla0 = Vec::new();
            let mut nabla1 = Vec::new();
            for _ in 0..dim_g {
                let mut m0 = Mat::zeros(n, n);
                let mut m1 = Mat::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        m0.set(i, j, rng.small_int(1));
                        m1.set(i, j, rng.small_int(1));
                    }
                }
                nabla0.push(m0);
                nabla1.push(m1);
            }
            crate::l2::Ruth {
                dim_g,
                dim_v0: n,
                dim_v1: n,
                g_bracket: AltTensor::zero(2, dim_g, dim_g),
                partial: Mat::identity(n),
                nabla0,
                nabla1,
                omega: AltTensor::zero(2, dim_g, n * n),
            }
        }
    }
}

/// A deterministic crossed module for a seed; even seeds are valid, odd seeds
/// carry a random perturbation of one axiom.
pub fn random_xmod(seed: u64) -> crate::l2::CrossedModule {
    let mut rng = Rng::new(seed ^ 0xC0_FE);
    let valid = match rng.below(3) {
        0 => xmod_so3_id(),
        1 => {
            // abelian h with a representation and ∂ = 0
            let dim_g = 1 + rng.below(3) as usize;
            let dim_h = 1 + rng.below(2) as usize;
            let g = lie_bracket_catalogue(dim_g, rng.next_u64());
            // scalar representation by a functional vanishing on brackets:
            // α_x = λ(x)·id with λ∘[,] = 0 enforced by λ = 0 on the derived
            // part; for the catalogue it is simplest to use λ = 0 unless
            // abelian
            let abelian = g.is_zero();
            let mut action = Vec::new();
            for _ in 0..dim_g {
                let lam = if abelian { rng.grid_scalar() } else { scalar::zero() };
                let mut m = Mat::zeros(dim_h, dim_h);
                for i in 0..dim_h {
                    m.set(i, i, lam.clone());
                }
                action.push(m);
            }
            crate::l2::CrossedModule {
                dim_g,
                dim_h,
                g_bracket: g,
                h_bracket: AltTensor::zero(2, dim_h, dim_h),
                partial: Mat::zeros(dim_g, dim_h),
                action,
            }
        }
        _ => {
            // direct sum of (id, ad) with an abelian line
            let x = xmod_so3_id();
            x
        }
    };
    if seed % 2 == 0 {
        return valid;
    }
    let mut bad = valid;
    let a = rng.below(bad.dim_g as u64) as usize;
    let i = rng.below(bad.dim_h as u64) as usize;
    let j = rng.below(bad.dim_h as u64) as usize;
    let v = bad.action[a].at(i, j) + rng.nonzero_scalar();
    bad.action[a].set(i, j, v);
    bad
}

/// A deterministic proto-bialgebra bundle; seeds cycle through Lie algebras,
/// Lie bialgebras, and randomly perturbed failing data.
pub fn random_proto(seed: u64) -> crate::bialg::ProtoBialgebra {
    use crate::bialg::{pair_count, ProtoBialgebra};
    let mut rng = Rng::new(seed ^ 0xB1A6);
    let dim = 3usize;
    match seed % 3 {
        0 => ProtoBialgebra::lie_algebra(dim, lie_bracket_catalogue(dim, rng.next_u64()))
            .unwrap(),
        1 => {
            // coboundary cobracket on a catalogue algebra: γ = ∂(e_a ∧ e_b)
            let mu = lie_bracket_catalogue(dim, 3); // sl2
            let mut gamma = AltTensor::zero(1, dim, pair_count(dim));
            // γ(x) = [x,e1]∧e2 + e1∧[x,e2] for r = e1∧e2
            let prs = crate::bialg::pairs(dim);
            for x in 0..dim as u32 {
                let xe1 = mu.eval(&[x, 1]).unwrap();
                let xe2 = mu.eval(&[x, 2]).unwrap();
                let mut row = vec![scalar::zero(); prs.len()];
                for (pi, &(a, b)) in prs.iter().enumerate() {
                    // coefficient of e_a∧e_b in [x,e1]∧e2 + e1∧[x,e2]
                    let mut c = scalar::zero();
                    if b == 2 {
                        c += &xe1[a as usize];
                    }
                    if a == 2 {
                        c -= &xe1[b as usize];
                    }
                    if a == 1 {
                        c += &xe2[b as usize];
                    }
                    if b == 1 {
                        c -= &xe2[a as usize];
                    }
                    row[pi] = c;
                }
                if row.iter().any(|c| !c.is_zero()) {
                    gamma.set(&[x], row).unwrap();
                }
            }
            ProtoBialgebra::new(
                dim,
                mu,
                gamma,
                AltTensor::zero(3, dim, 1),
                AltTensor::zero(3, dim, 1),
            )
            .unwrap()
        }
        _ => {
            let mut p =
                ProtoBialgebra::lie_algebra(dim, lie_bracket_catalogue(dim, rng.next_u64()))
                    .unwrap();
            // random perturbation somewhere
            match rng.below(3) {
                0 => {
                    let mut v = p.mu.eval(&[0, 1]).unwrap();
                    v[rng.below(dim as u64) as usize] += rng.nonzero_scalar();
                    p.mu.set(&[0, 1], v).unwrap();
                }
                1 => {
                    let mut row = vec![scalar::zero(); pair_count(dim)];
                    row[rng.below(pair_count(dim) as u64) as usize] = rng.nonzero_scalar();
                    p.gamma.set(&[rng.below(dim as u64) as u32], row).unwrap();
                }
                _ => {
                    p.phi.set(&[0, 1, 2], vec![rng.nonzero_scalar()]).unwrap();
                }
            }
            p
        }
    }
}

/// A random gauge parameter `Λ²E → C` with the given density.
pub fn random_gauge_parameter(
    rng: &mut Rng,
    dim_e: usize,
    dim_c: usize,
    density: &Scalar,
) -> AltTensor {
    let mut b = AltTensor::zero(2, dim_e, dim_c);
    for a in 0..dim_e as u32 {
        for bb in (a + 1)..dim_e as u32 {
            let v: Vec<Scalar> = (0..dim_c).map(|_| rng.sparse_scalar(density)).collect();
            b.set(&[a, bb], v).unwrap();
        }
    }
    b
}

/// A random morphism-shaped tensor triple between two structures.
pub fn random_morphism_tensors(
    rng: &mut Rng,
    s: &L2Algebra,
    t: &L2Algebra,
) -> (Mat, Mat, AltTensor) {
    let mut f0 = Mat::zeros(t.dim_e, s.dim_e);
    for i in 0..t.dim_e {
        for j in 0..s.dim_e {
            f0.set(i, j, rng.sparse_scalar(&scalar::half()));
        }
    }
    let mut f1 = Mat::zeros(t.dim_c, s.dim_c);
    for i in 0..t.dim_c {
        for j in 0..s.dim_c {
            f1.set(i, j, rng.sparse_scalar(&scalar::half()));
        }
    }
    let mut beta = AltTensor::zero(2, s.dim_e, t.dim_c);
    for a in 0..s.dim_e as u32 {
        for b in (a + 1)..s.dim_e as u32 {
            let v: Vec<Scalar> =
                (0..t.dim_c).map(|_| rng.sparse_scalar(&scalar::half())).collect();
            beta.set(&[a, b], v).unwrap();
        }
    }
    (f0, f1, beta)
}

/// A raw (unvalidated) structure-constant bundle with the given entry density.
/// Deterministic: same seed and parameters give bit-identical output; density
/// 0 yields all-zero tensors and density 1 populates every increasing tuple.
pub fn random_raw_l2(
    seed: u64,
    dim_e: usize,
    dim_c: usize,
    density: &Scalar,
) -> L2Algebra {
    let mut rng = Rng::new(seed ^ 0x0AA7);
    let mut partial = Mat::zeros(dim_e, dim_c);
    for i in 0..dim_e {
        for j in 0..dim_c {
            partial.set(i, j, rng.sparse_scalar(density));
        }
    }
    let mut bracket = AltTensor::zero(2, dim_e, dim_e);
    for a in 0..dim_e as u32 {
        for b in (a + 1)..dim_e as u32 {
            let v: Vec<Scalar> = (0..dim_e)
                .map(|_| if rng.bernoulli(density) { rng.grid_scalar() } else { scalar::zero() })
                .collect();
            bracket.set(&[a, b], v).unwrap();
        }
    }
    let mut nabla = Vec::new();
    for _ in 0..dim_e {
        let mut m = Mat::zeros(dim_c, dim_c);
        for i in 0..dim_c {
            for j in 0..dim_c {
                m.set(i, j, rng.sparse_scalar(density));
            }
        }
        nabla.push(m);
    }
    let mut k = AltTensor::zero(3, dim_e, dim_c);
    for a in 0..dim_e as u32 {
        for b in (a + 1)..dim_e as u32 {
            for c in (b + 1)..dim_e as u32 {
                let v: Vec<Scalar> = (0..dim_c)
                    .map(|_| {
                        if rng.bernoulli(density) {
                            rng.grid_scalar()
                        } else {
                            scalar::zero()
                        }
                    })
                    .collect();
                k.set(&[a, b, c], v).unwrap();
            }
        }
    }
    L2Algebra { dim_e, dim_c, partial, bracket, nabla, k }
}

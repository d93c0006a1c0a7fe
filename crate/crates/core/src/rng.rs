//! Deterministic seeded randomness for instance generation and property suites.
//!
//! A hand-rolled splitmix64 keeps the stream identical across platforms and
//! builds; the crate never needs cryptographic or high-volume randomness.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::{self, Scalar};

#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` (n > 0). The tiny modulo bias is irrelevant here.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    /// Bernoulli draw with exact rational probability `p ∈ [0,1]`:
    /// accepts iff `u < p·2⁶⁴` computed in exact integer arithmetic.
    pub fn bernoulli(&mut self, p: &Scalar) -> bool {
        if p.is_zero() {
            return false;
        }
        if p >= &scalar::one() {
            return true;
        }
        let u = BigInt::from(self.next_u64());
        let two64 = BigInt::one() << 64u32;
        // u < p * 2^64  ⇔  u * denom < numer * 2^64
        &u * p.denom() < p.numer() * two64
    }

    /// One value from the fixed small rational grid used for random structure
    /// constants.
    pub fn grid_scalar(&mut self) -> Scalar {
        const GRID: [(i64, i64); 9] =
            [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (3, 1), (-3, 1), (1, 3)];
        let (n, d) = GRID[self.below(GRID.len() as u64) as usize];
        scalar::ratio(n, d)
    }

    /// Grid scalar, or zero with probability `1 - density`.
    pub fn sparse_scalar(&mut self, density: &Scalar) -> Scalar {
        if self.bernoulli(density) {
            self.grid_scalar()
        } else {
            scalar::zero()
        }
    }

    /// A nonzero grid scalar.
    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let s = self.grid_scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Splits off an independent stream (for reproducible sub-generators).
    pub fn fork(&mut self) -> Rng {
        Rng::new(self.next_u64() ^ 0xA076_1D64_78BD_642F)
    }
}

impl Rng {
    /// Signed small integer in `[-bound, bound]`.
    pub fn small_int(&mut self, bound: u64) -> Scalar {
        let span = 2 * bound + 1;
        let v = self.below(span) as i64 - bound as i64;
        scalar::int(v)
    }
}

//! Alternating multilinear tensors with exact entries.
//!
//! An [`AltTensor`] of arity `k` maps `Λᵏ(input)` to a single output component.
//! It is stored only on strictly increasing index tuples; evaluation on an
//! arbitrary tuple applies the sign of the sorting permutation and vanishes on
//! repeated indices. There is no `1/k!` normalization anywhere: sums run over
//! shuffles, never averages.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use alloc::{format, vec};
use num_traits::Zero;

use crate::error::Error;
use crate::scalar::{self, Scalar};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltTensor {
    pub arity: usize,
    pub in_dim: usize,
    pub out_dim: usize,
    /// strictly increasing tuple -> dense output vector
    entries: BTreeMap<Vec<u32>, Vec<Scalar>>,
}

/// Sorts an index tuple, returning `None` on repeats, else the tuple with the
/// parity of the sorting permutation (`true` = odd).
pub fn sort_tuple(args: &[u32]) -> Option<(Vec<u32>, bool)> {
    let mut v = args.to_vec();
    let mut neg = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            neg = !neg;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, neg))
}

impl AltTensor {
    pub fn zero(arity: usize, in_dim: usize, out_dim: usize) -> Self {
        AltTensor { arity, in_dim, out_dim, entries: BTreeMap::new() }
    }

    /// Sets the value on a (possibly unsorted) tuple; the stored entry is the
    /// signed value on the sorted tuple. Repeated indices are rejected.
    pub fn set(&mut self, args: &[u32], value: Vec<Scalar>) -> Result<()> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: args.len() });
        }
        if value.len() != self.out_dim {
            return Err(Error::DimensionMismatch(format!(
                "output vector has length {}, expected {}",
                value.len(),
                self.out_dim
            )));
        }
        for &a in args {
            if a as usize >= self.in_dim {
                return Err(Error::IndexOutOfRange { index: a as usize, dim: self.in_dim });
            }
        }
        let (key, neg) = sort_tuple(args).ok_or_else(|| {
            Error::Precondition("repeated index in alternating tensor entry".into())
        })?;
        let value = if neg { value.into_iter().map(|c| -c).collect() } else { value };
        if value.iter().all(Zero::is_zero) {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
        Ok(())
    }

    /// Adds `value` into the slot for `args` (with the sorting sign).
    pub fn accumulate(&mut self, args: &[u32], value: Vec<Scalar>) -> Result<()> {
        let Some((key, neg)) = sort_tuple(args) else {
            return Ok(()); // repeated index contributes nothing
        };
        let mut cur = self.entries.remove(&key).unwrap_or_else(|| vec![scalar::zero(); self.out_dim]);
        for (c, v) in cur.iter_mut().zip(value) {
            *c += if neg { -v } else { v };
        }
        if cur.iter().all(Zero::is_zero) {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, cur);
        }
        Ok(())
    }

    /// Signed evaluation per the increasing-tuple convention; zero on repeats.
    pub fn eval(&self, args: &[u32]) -> Result<Vec<Scalar>> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: args.len() });
        }
        for &a in args {
            if a as usize >= self.in_dim {
                return Err(Error::IndexOutOfRange { index: a as usize, dim: self.in_dim });
            }
        }
        let Some((key, neg)) = sort_tuple(args) else {
            return Ok(vec![scalar::zero(); self.out_dim]);
        };
        match self.entries.get(&key) {
            None => Ok(vec![scalar::zero(); self.out_dim]),
            Some(v) => Ok(if neg { v.iter().map(|c| -c.clone()).collect() } else { v.clone() }),
        }
    }

    /// Multilinear evaluation on arbitrary input vectors.
    pub fn eval_vectors(&self, args: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: args.len() });
        }
        let mut out = vec![scalar::zero(); self.out_dim];
        let mut idx = vec![0u32; self.arity];
        self.eval_vectors_rec(args, 0, &mut idx, &scalar::one(), &mut out)?;
        Ok(out)
    }

    fn eval_vectors_rec(
        &self,
        args: &[Vec<Scalar>],
        slot: usize,
        idx: &mut Vec<u32>,
        coeff: &Scalar,
        out: &mut [Scalar],
    ) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        if slot == self.arity {
            let v = self.eval(idx)?;
            for (o, x) in out.iter_mut().zip(v) {
                *o += coeff * x;
            }
            return Ok(());
        }
        for (i, c) in args[slot].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            idx[slot] = i as u32;
            let next = coeff * c;
            self.eval_vectors_rec(args, slot + 1, idx, &next, out)?;
        }
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &Vec<Scalar>)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.arity, self.in_dim, self.out_dim) != (other.arity, other.in_dim, other.out_dim) {
            return Err(Error::ShapeMismatch("tensor addition".into()));
        }
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.accumulate(k, v.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return AltTensor::zero(self.arity, self.in_dim, self.out_dim);
        }
        let mut out = self.clone();
        for v in out.entries.values_mut() {
            for c in v.iter_mut() {
                *c *= s;
            }
        }
        out
    }
}

//! Dense exact-rational matrices and Gaussian elimination.
//!
//! Dimensions in this crate are tiny (tens, occasionally a few hundred), so a
//! dense representation with fraction-free-ish row reduction is plenty.

use alloc::{vec, vec::Vec};
use num_traits::Zero;

use crate::scalar::{self, Scalar};

/// A dense `rows × cols` matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl core::fmt::Debug for Mat {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds from integer entries, row-major.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Mat { rows, cols, data: entries.iter().map(|&n| scalar::int(n)).collect() }
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = scalar::zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.at(r, c).recip();
            for j in c..self.cols {
                let v = self.at(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in c..self.cols {
                        let v = self.at(i, j) - &f * self.at(r, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// A basis of the right kernel `{v : Mv = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let pivot_row: alloc::collections::BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        for free in 0..self.cols {
            if pivot_row.contains_key(&free) {
                continue;
            }
            let mut v = vec![scalar::zero(); self.cols];
            v[free] = scalar::one();
            for (&pc, &pr) in &pivot_row {
                v[pc] = -m.at(pr, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `Mx = b` exactly. Returns any particular solution, or `None` when
    /// the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len(), "solve shape");
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![scalar::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Solves `Mx = b` for many right-hand sides with a single elimination.
    /// Returns one solution per column, or `None` for inconsistent columns.
    pub fn solve_columns(&self, rhs: &[Vec<Scalar>]) -> Vec<Option<Vec<Scalar>>> {
        let k = rhs.len();
        let mut aug = Mat::zeros(self.rows, self.cols + k);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            for (jj, b) in rhs.iter().enumerate() {
                aug.set(i, self.cols + jj, b[i].clone());
            }
        }
        // eliminate on the coefficient columns only
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == aug.rows {
                break;
            }
            let Some(p) = (r..aug.rows).find(|&i| !aug.at(i, c).is_zero()) else {
                continue;
            };
            for j in 0..aug.cols {
                let tmp = aug.at(r, j).clone();
                aug.set(r, j, aug.at(p, j).clone());
                aug.set(p, j, tmp);
            }
            let inv = aug.at(r, c).recip();
            for j in c..aug.cols {
                let v = aug.at(r, j) * &inv;
                aug.set(r, j, v);
            }
            for i in 0..aug.rows {
                if i != r && !aug.at(i, c).is_zero() {
                    let f = aug.at(i, c).clone();
                    for j in c..aug.cols {
                        let v = aug.at(i, j) - &f * aug.at(r, j);
                        aug.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        (0..k)
            .map(|jj| {
                let col = self.cols + jj;
                // inconsistent iff a non-pivot row carries a nonzero entry
                for i in rank..self.rows {
                    if !aug.at(i, col).is_zero() {
                        return None;
                    }
                }
                let mut x = vec![scalar::zero(); self.cols];
                for (row, &pc) in pivots.iter().enumerate() {
                    x[pc] = aug.at(row, col).clone();
                }
                Some(x)
            })
            .collect()
    }

    /// For an inconsistent system `Mx = b`, a functional `y` with `yᵀM = 0` and
    /// `yᵀb ≠ 0`: an exact certificate of infeasibility.
    pub fn infeasibility_certificate(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let t = self.transpose();
        // y ranges over the left kernel of M = right kernel of Mᵀ.
        for y in t.kernel_basis() {
            let mut dot = scalar::zero();
            for i in 0..self.rows {
                if !y[i].is_zero() && !b[i].is_zero() {
                    dot += &y[i] * &b[i];
                }
            }
            if !dot.is_zero() {
                return Some(y);
            }
        }
        None
    }
}

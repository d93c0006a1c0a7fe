//! Exact-rational calculus for two-term L-infinity algebras, quasi Q-structures
//! on linear groupoid models, and big-bracket bialgebra classification.
//!
//! Everything here is carried by structure constants over the rationals and every
//! identity is checked exactly: there is no floating point anywhere in the crate.
//! The main layers are
//!
//! * [`algebra`] — free graded-commutative algebras with sparse exact coefficients,
//!   optionally equipped with a pairing-induced graded Poisson bracket. This single
//!   engine hosts exterior algebras of odd generators, the even polynomial calculus
//!   on dual spaces, and shifted-cotangent multivector algebras.
//! * [`mvcalc`] — derivations and multiderivations of those algebras: graded
//!   commutators, Schouten brackets, Chevalley–Eilenberg differentials.
//! * [`groupoid`] — the linear groupoid `H = C ⊕ E ⇉ E` over a point, with
//!   multiplicativity tests and left/right invariant extensions of sections.
//! * [`dgla`] — finite windows of differential graded Lie algebras as first-class
//!   structure-constant bundles, Maurer–Cartan residuals and gauge transformations,
//!   and builders for the groupoid, big-bracket and multivector-field dglas.
//! * [`l2`], [`qla`], [`bialg`] — the two-term structures themselves: L₂-algebras
//!   and their strict 2-category, quasi Q-structures with the two-way dictionary,
//!   dual linear quasi-Poisson structures, central extensions, and the
//!   Maurer–Cartan classification of bialgebra-type data.
//!
//! The crate is `no_std`-compatible (with `alloc`); the companion CLI crate adds
//! file formats and a command-line driver.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod bialg;
pub mod dgla;
pub mod error;
pub mod evenmvf;
pub mod graded;
pub mod groupoid;
pub mod l2;
pub mod linalg;
pub mod mvcalc;
pub mod qla;
pub mod report;
pub mod rng;
pub mod sample;
pub mod scalar;
pub mod suite;
pub mod tensor;

pub use error::Error;
pub use scalar::Scalar;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

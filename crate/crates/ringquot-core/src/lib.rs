//! Exact computation of rings of quotients for finite-dimensional unital
//! associative algebras over GF(p) and over the rationals.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalar`] / [`linalg`] — exact field arithmetic and dense linear algebra
//!   with canonical (RREF) subspace representations;
//! * [`algebra`] — structure-constant algebras, named constructors, extensions;
//! * [`structure`] — Jacobson radical, primitive idempotents, simple modules,
//!   composition series and matrix-algebra certificates;
//! * [`bimodule`] — bimodules, hom/tensor/dual, projective covers, injective
//!   hulls, colon ideals;
//! * [`filters`] — Gabriel filters with a minimal cofinal ideal, density,
//!   torsion submodules, tensoring kernels;
//! * [`quotients`] — one-sided and symmetric modules/rings of quotients,
//!   maximal quotients by two independent routes;
//! * [`perfect`] — perfectness certificates (epi + flat, elementwise, filter
//!   conditions) and the degenerate classical quotient;
//! * [`descent`] — iterated `S'` descent inside an ambient overring, reaching
//!   total (perfect maximal) quotient rings.
//!
//! Everything is exact: no floating point, no probabilistic answers without a
//! certificate. Searches that exhaust a finite configuration space do so only
//! over finite fields and under explicit dimension budgets; over Q the same
//! answers are produced by linear constructions and verified.
//!
//! The crate is `no_std` (with `alloc`); the companion CLI crate carries IO.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod bimodule;
pub mod descent;
pub mod error;
pub mod filters;
pub mod linalg;
pub mod perfect;
pub(crate) mod poly;
pub mod quotients;
pub mod rng;
pub mod scalar;
pub mod structure;

pub use error::{Error, Result};
pub use scalar::{FieldDesc, Scalar};

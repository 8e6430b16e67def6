//! Exact-arithmetic engine for finite-dimensional (quasi)triangular Hopf
//! algebras and the braided categories they present.
//!
//! Everything is computed over the cyclotomic tower Q(zeta_{2^k}), k <= 4,
//! with exact rational coefficients; there is no floating point anywhere.
//! The layers build on each other: scalars, exact linear algebra, finite
//! algebras and their module theory, Hopf structure (Nichols algebras and
//! Drinfeld doubles), braided representation categories, metric groups with
//! Gauss sums, and a top-level verifier that bundles the named checks.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod hopf;
pub mod linalg;
pub mod metric;
pub mod repcat;
pub mod rng;
pub mod scalar;
pub mod special;
pub mod verifier;

pub use scalar::CycScalar;

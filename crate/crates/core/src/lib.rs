//! Exact combinatorics of spherical homogeneous spaces.
//!
//! The crate models the basic combinatorial invariants of a spherical
//! `G`-variety (weight lattice, spherical roots and valuation cone, colors,
//! weight monoid) over a reductive group given by its root datum, and
//! implements the decidable procedures built on them: validation, the
//! invariant comparisons behind the uniqueness theorems, localization at a
//! weight, hidden colors, and the equivariant automorphism group `(X/Λ)^*`.
//!
//! All arithmetic is exact (`BigInt` / `BigRational`).

pub mod catalog;
pub mod cli;
pub mod compare;
pub mod datum;
pub mod error;
pub mod format;
pub mod lattice;
pub mod localize;
pub mod monoid;
pub mod rootsys;

pub use error::{Error, Result};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

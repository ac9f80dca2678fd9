//! Exact computer algebra for the classifying rings `V^A` of `A`-typical
//! formal `A`-modules over `p`-adic number rings.
//!
//! The crate is `no_std` (it only needs `alloc`). Everything is exact: rationals
//! are arbitrary precision and no floating point is used anywhere.
//!
//! Layout:
//!
//! * [`number_ring`]: towers `Q_p ⊂ unramified ⊂ Eisenstein`, field elements,
//!   valuations, residues, embeddings and a prime-splitting scan.
//! * [`graded`]: sparse graded polynomials in `v_1, …, v_N` and the monomial
//!   order in which the highest-index generator is most significant.
//! * [`formal_module`]: Hazewinkel logarithm coefficients `ℓ_n`.
//! * [`gamma`]: the comparison maps `γ: V^A → V^B` and checks on them.
//! * [`torsion`]: power-torsion and eventual-division decisions for cyclic
//!   modules, Smith normal forms, local cohomology at `(p)` and the
//!   nonrealizability certificates.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod formal_module;
pub mod gamma;
pub mod graded;
pub mod number_ring;
pub mod torsion;

mod rational;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;

//! Correctness auditing for the ElGamal-based extended private information
//! retrieval (EPIR) protocol.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure
//! computation:
//!
//! * [`gf`]: arithmetic in `K = GF(p)` and `L = GF(p^n)` with log/antilog
//!   tables, polynomials over `K` and `L`, and a small text grammar.
//! * [`elgamal`]: ElGamal over `L^×` with explicit randomness.
//! * [`epir`]: executable versions of the full protocol and of its
//!   restricted single-block form, producing [`epir::Transcript`]s.
//! * [`analysis`]: exact failure probabilities by exhaustive enumeration,
//!   cyclotomic coset decompositions, and the `ω(n)` / `h(n)` bound
//!   machinery together with invariant checks built on them.
//!
//! IO, parallel drivers, report formats and the command line live in the
//! `epir-cli` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod elgamal;
pub mod epir;
mod error;
pub mod gf;
mod registry;

pub use error::{Error, Result};
pub use registry::{builtin_modulus, BUILTIN_DEGREES};

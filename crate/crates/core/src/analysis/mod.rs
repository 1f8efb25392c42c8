//! Exact failure probabilities, coset structure and the `ω(n)` bound.

pub mod bounds;
pub mod class_p;
pub mod cosets;
pub mod failure;
pub mod verify;

pub use bounds::{
    count_irreducible, omega_bruteforce, omega_h, phi, BoundRecord, IrreducibleCounts,
};
pub use class_p::{in_class_p, lemma_root_check, root_report, ClassRoots};
pub use cosets::{cyclotomic_cosets, decompose, CosetDecomposition, CosetTable};
pub use failure::{epsilon, eta, indicator_h, to_decimal, EpsilonCount, FailureStats, Rounding};

//! Linear codes over finite chain rings and over matrix rings M_k(F_q).
//!
//! The crate builds codes from multiplicity functions on functional orbits,
//! computes their symmetrized (or rank-partition) enumerators exactly, runs
//! MacWilliams transforms through integer Kravchuk matrices, and constructs
//! pairs of codes with equal weight enumerators whose duals differ. Those
//! pairs drive a classifier that decides, where it can, whether a weight
//! respects duality.

pub mod chaingap;
pub mod chainring;
pub mod codes;
pub mod enumerators;
pub mod exactmath;
pub mod field;
pub mod matrixgap;
pub mod matrixring;
pub mod verdict;
pub mod weights;

pub use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("no built-in model for F_{0}; supply an irreducible modulus")]
    NoFieldModel(u64),
    #[error("modulus is reducible over F_{0}")]
    Reducible(u64),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("operands come from different rings")]
    RingMismatch,
    #[error("brute-force search needs {needed} candidates, budget is {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("weight is degenerate: c_{0} = 0")]
    Degenerate(usize),
    #[error("transform is not integral: {0}")]
    NonIntegral(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

/// Default cap on the number of vectors a brute-force dual may visit.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

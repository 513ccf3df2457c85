//! Exact symbolic arithmetic in the higher-order hom-associative Weyl
//! algebras `A_n^k` over the rationals.
//!
//! The associative Weyl algebra `A_n` is generated by `x_1..x_n, y_1..y_n`
//! subject to `[x_i, y_j] = δ_ij` with all other generator pairs commuting.
//! For a vector `k` of rationals, the shift endomorphism `α_k` (sending
//! `y_ℓ ↦ y_ℓ + k_ℓ` and fixing the `x_ℓ`) twists the product into the
//! hom-associative star product `a * b := α_k(ab)`.
//!
//! All coefficients are arbitrary-precision rationals; every operation is
//! exact and pure.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod deform;
pub mod homstar;
pub mod morphisms;
pub mod structure;
pub mod twist;

pub use arith::{Coefficient, Degree, FreeWord, FreeSymbol, NormalMonomial, WeylPoly};
pub use deform::{ParamMap, ParamPoly};
pub use morphisms::GeneratorImages;
pub use twist::TwistVector;

use core::fmt;

/// Errors shared across the algebra operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeylError {
    /// Operands live in Weyl algebras of different dimension.
    DimensionMismatch { left: usize, right: usize },
    /// A generator index fell outside `1..=n`.
    IndexOutOfRange { index: usize, n: usize },
    /// The operation is undefined on the zero polynomial.
    ZeroInput,
    /// No isomorphism exists: the twist vectors have different numbers of
    /// nonzero entries.
    NotIsomorphic { nonzero_left: usize, nonzero_right: usize },
    /// A parameter vector or multi-index had the wrong length.
    LengthMismatch { expected: usize, found: usize },
}

impl fmt::Display for WeylError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            WeylError::IndexOutOfRange { index, n } => {
                write!(f, "generator index {index} out of range 1..={n}")
            }
            WeylError::ZeroInput => write!(f, "operation undefined on the zero polynomial"),
            WeylError::NotIsomorphic {
                nonzero_left,
                nonzero_right,
            } => write!(
                f,
                "no isomorphism: {nonzero_left} vs {nonzero_right} nonzero twist entries"
            ),
            WeylError::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, WeylError>;

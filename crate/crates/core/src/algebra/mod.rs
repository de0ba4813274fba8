//! Exact arithmetic: rationals, Laurent polynomials and matrices over them,
//! rank engines, and integer polynomials in `λ`.

mod intpoly;
mod laurent;
mod matrix;
mod modular;
mod rank;
mod rational;

use thiserror::Error;

pub use intpoly::{divide_by_one_plus_lambda, IntPolynomial};
pub(crate) use laurent::check_point;
pub use laurent::{Exponents, LaurentPoly};
pub use matrix::{LaurentMatrix, DENSE_LIMIT};
pub use modular::is_prime;
pub use rank::{
    minor_degree_bound, rank_at_point, rank_generic, validate_prime, RankOutcome, RankStrategy,
    DEFAULT_PRIME, DEFAULT_TRIALS, MAX_PRIME, MIN_PRIME,
};
pub use rational::{format_rational, parse_rational, ratio, rational, Echelon, Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("inconsistent number of variables: expected {expected}, found {found}")]
    VarCountMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("point has {found} coordinates, expected {expected}")]
    PointLength { expected: usize, found: usize },
    #[error("invalid point: coordinate {index} is zero, Laurent monomials are undefined there")]
    ZeroCoordinate { index: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("exp(-t<a,k>) leaves the floating-point range at t = {t}")]
    Range { t: f64 },
    #[error("{prime} is not a prime in (2^30, 2^32)")]
    InvalidPrime { prime: u64 },
    #[error("a coefficient denominator is divisible by the prime {prime}")]
    DenominatorDivisible { prime: u64 },
    #[error("internal error: {0}")]
    Internal(String),
}

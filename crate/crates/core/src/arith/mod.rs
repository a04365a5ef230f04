//! Number-theoretic layer: prime sieves, Kronecker characters,
//! fundamental-discriminant decomposition, class numbers, L-values, and
//! truncated Euler products.

mod disc;
mod kronecker;
mod lfunc;
mod primes;

pub use disc::{class_number, factorize, fundamental_decomposition, is_fundamental, DiscDecomp};
pub use kronecker::{kronecker, KroneckerChar};
pub use lfunc::{
    agood_compare, class_number_formula_l, classify_discriminant, euler_product, l_one,
    l_one_imprimitive, l_value, split_discriminant, unit_count, AgoodReport, DiscClass,
};
pub use primes::{for_each_prime, is_prime, prime_count, primes_up_to};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("{0} is not a negative fundamental discriminant")]
    NotFundamental(i64),
    #[error("{0} is not a discriminant (nonzero, congruent to 0 or 1 mod 4)")]
    NotDiscriminant(i64),
    #[error("invalid range: {0}")]
    InvalidRange(String),
}

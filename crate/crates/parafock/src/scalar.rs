use num_integer::Integer;
use num_traits::Signed;
use std::fmt::{Debug, Display};

/// Exact signed integer scalar for coefficient arithmetic.
///
/// Everything the crate computes lives on an integer lattice, so the only
/// requirements are ring operations with exact euclidean division
/// (`num_integer::Integer`), a sign, and conversion from small constants.
/// Implemented by `i64`, `i128` and `num_bigint::BigInt` out of the box;
/// the crate-root aliases fix `BigInt` as the default.
pub trait Scalar:
    Integer + Signed + Clone + From<i64> + Display + Debug + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + From<i64> + Display + Debug + Send + Sync + 'static
{
}

/// `n!` as a scalar. Exact for arbitrary `n` when `T` is a big integer.
pub fn factorial<T: Scalar>(n: usize) -> T {
    let mut acc = T::one();
    for k in 2..=n {
        acc = acc * T::from(k as i64);
    }
    acc
}

/// `(-1)^k` as a scalar.
pub fn sign_pow<T: Scalar>(k: usize) -> T {
    if k.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

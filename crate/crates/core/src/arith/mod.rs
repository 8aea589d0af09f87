//! Exact arithmetic in the base coefficient domains.

mod fp;
mod local;
mod number_field;
mod rational;

pub use fp::{FpElement, PrimeField};
pub use local::{residue_mod_p, vp, vp_integer, LocalIntegers, LocalRational};
pub(crate) use number_field::format_pi_series;
pub use number_field::{nf_invert, NumberField, NumberFieldElement};
pub use rational::{format_rational, Rationals};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("valuation of zero undefined")]
    ZeroValuation,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must fit in 32 bits)")]
    PrimeTooLarge(u64),
    #[error("{value} is not in Z_({p}): denominator divisible by {p}")]
    NotPLocal { value: String, p: u64 },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero has no inverse")]
    NotInvertible,
    #[error("defining polynomial must be monic of degree at least 1")]
    BadModulus,
    #[error("element has {got} coefficients, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("operands live over different primes ({0} vs {1})")]
    PrimeMismatch(u64, u64),
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

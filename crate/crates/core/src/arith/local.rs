use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{format_rational, ArithError, FpElement, PrimeField};
use crate::ring::Ring;

/// A rational number whose denominator is prime to `p`, i.e. an element of
/// the localization Z_(p). Always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalRational {
    value: BigRational,
    prime: u64,
}

/// Exact p-adic valuation of a nonzero integer.
pub fn vp_integer(n: &BigInt, p: u64) -> Result<u64, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroValuation);
    }
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Ok(v);
        }
        m = q;
        v += 1;
    }
}

/// Exact p-adic valuation of a p-local rational.
pub fn vp(q: &LocalRational) -> Result<u64, ArithError> {
    // the denominator is a p-unit, so only the numerator contributes
    vp_integer(q.value.numer(), q.prime)
}

/// Reduction Z_(p) -> F_p.
pub fn residue_mod_p(q: &LocalRational) -> FpElement {
    let field = PrimeField::new(q.prime).expect("LocalRational carries a valid prime");
    let num = field.from_bigint(q.value.numer());
    let den = field.from_bigint(q.value.denom());
    let den_inv = crate::ring::Field::inv(&field, &den).expect("denominator is a p-unit");
    field.mul(&num, &den_inv)
}

impl LocalRational {
    pub fn new(numer: BigInt, denom: BigInt, p: u64) -> Result<Self, ArithError> {
        if denom.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Self::from_rational(BigRational::new(numer, denom), p)
    }

    pub fn from_rational(value: BigRational, p: u64) -> Result<Self, ArithError> {
        if value.denom().is_multiple_of(&BigInt::from(p)) {
            return Err(ArithError::NotPLocal {
                value: format_rational(&value),
                p,
            });
        }
        Ok(LocalRational { value, prime: p })
    }

    pub fn from_integer(n: impl Into<BigInt>, p: u64) -> Self {
        LocalRational {
            value: BigRational::from_integer(n.into()),
            prime: p,
        }
    }

    pub fn zero(p: u64) -> Self {
        Self::from_integer(0, p)
    }

    pub fn one(p: u64) -> Self {
        Self::from_integer(1, p)
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn numer(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.value.denom()
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && !self.numer().is_multiple_of(&BigInt::from(self.prime))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, &self.value + &other.value)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, &self.value - &other.value)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.combine(other, &self.value * &other.value)
    }

    pub fn neg(&self) -> Self {
        LocalRational {
            value: -&self.value,
            prime: self.prime,
        }
    }

    /// `self / other` when the quotient stays in Z_(p).
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        Self::from_rational(&self.value / &other.value, self.prime).ok()
    }

    fn combine(&self, other: &Self, value: BigRational) -> Self {
        debug_assert_eq!(self.prime, other.prime);
        LocalRational {
            value,
            prime: self.prime,
        }
    }
}

/// The ring Z_(p) of rationals with denominators prime to p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalIntegers {
    p: u64,
}

impl LocalIntegers {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        PrimeField::new(p)?;
        Ok(LocalIntegers { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn residue_field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated at construction")
    }
}

impl Ring for LocalIntegers {
    type Element = LocalRational;

    fn zero(&self) -> LocalRational {
        LocalRational::zero(self.p)
    }

    fn one(&self) -> LocalRational {
        LocalRational::one(self.p)
    }

    fn from_bigint(&self, n: &BigInt) -> LocalRational {
        LocalRational::from_integer(n.clone(), self.p)
    }

    fn add(&self, a: &LocalRational, b: &LocalRational) -> LocalRational {
        a.add(b)
    }

    fn neg(&self, a: &LocalRational) -> LocalRational {
        a.neg()
    }

    fn sub(&self, a: &LocalRational, b: &LocalRational) -> LocalRational {
        a.sub(b)
    }

    fn mul(&self, a: &LocalRational, b: &LocalRational) -> LocalRational {
        a.mul(b)
    }

    fn is_zero(&self, a: &LocalRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &LocalRational) -> bool {
        a.value.is_one()
    }

    fn divide_exact(&self, a: &LocalRational, b: &LocalRational) -> Option<LocalRational> {
        a.checked_div(b)
    }

    fn format_element(&self, a: &LocalRational) -> String {
        format_rational(&a.value)
    }
}

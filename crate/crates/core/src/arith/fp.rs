use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{is_prime, ArithError};
use crate::ring::{Field, Ring};

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

/// A residue in `[0, p)` together with its prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpElement {
    residue: u64,
    prime: u64,
}

impl FpElement {
    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Residue in the symmetric range, handy for printing small negatives.
    pub fn signed(&self) -> i64 {
        if self.residue > self.prime / 2 {
            self.residue as i64 - self.prime as i64
        } else {
            self.residue as i64
        }
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p > u32::MAX as u64 {
            return Err(ArithError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn element(&self, n: i64) -> FpElement {
        FpElement {
            residue: n.rem_euclid(self.p as i64) as u64,
            prime: self.p,
        }
    }

    pub fn from_residue(&self, r: u64) -> FpElement {
        FpElement {
            residue: r % self.p,
            prime: self.p,
        }
    }

    /// All elements in increasing residue order.
    pub fn elements(&self) -> impl Iterator<Item = FpElement> + '_ {
        (0..self.p).map(move |r| self.from_residue(r))
    }
}

impl Ring for PrimeField {
    type Element = FpElement;

    fn zero(&self) -> FpElement {
        self.from_residue(0)
    }

    fn one(&self) -> FpElement {
        self.from_residue(1)
    }

    fn from_bigint(&self, n: &BigInt) -> FpElement {
        let r = n.mod_floor(&BigInt::from(self.p));
        self.from_residue(r.to_u64().expect("residue fits"))
    }

    fn add(&self, a: &FpElement, b: &FpElement) -> FpElement {
        debug_assert_eq!(a.prime, self.p);
        self.from_residue((a.residue + b.residue) % self.p)
    }

    fn neg(&self, a: &FpElement) -> FpElement {
        self.from_residue((self.p - a.residue) % self.p)
    }

    fn sub(&self, a: &FpElement, b: &FpElement) -> FpElement {
        self.from_residue((a.residue + self.p - b.residue) % self.p)
    }

    fn mul(&self, a: &FpElement, b: &FpElement) -> FpElement {
        let prod = (a.residue as u128 * b.residue as u128) % self.p as u128;
        self.from_residue(prod as u64)
    }

    fn is_zero(&self, a: &FpElement) -> bool {
        a.residue == 0
    }

    fn is_one(&self, a: &FpElement) -> bool {
        a.residue == 1
    }

    fn divide_exact(&self, a: &FpElement, b: &FpElement) -> Option<FpElement> {
        self.div(a, b)
    }

    fn format_element(&self, a: &FpElement) -> String {
        a.residue.to_string()
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &FpElement) -> Option<FpElement> {
        if a.residue == 0 {
            return None;
        }
        let ext = (a.residue as i64).extended_gcd(&(self.p as i64));
        debug_assert_eq!(ext.gcd, 1);
        Some(self.element(ext.x))
    }
}

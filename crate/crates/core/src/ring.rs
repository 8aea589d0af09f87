//! Coefficient-ring abstraction.
//!
//! Rings are runtime objects (a prime, an Eisenstein polynomial, ...) and
//! elements are plain values interpreted relative to the ring that made them.

use std::fmt::Debug;

use num_bigint::BigInt;

#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    type Element: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Element;
    fn one(&self) -> Self::Element;
    fn from_bigint(&self, n: &BigInt) -> Self::Element;

    fn from_i64(&self, n: i64) -> Self::Element {
        self.from_bigint(&BigInt::from(n))
    }

    fn add(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn neg(&self, a: &Self::Element) -> Self::Element;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    fn sub(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Element) -> bool;

    fn is_one(&self, a: &Self::Element) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Element, mut e: u64) -> Self::Element {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Returns `q` with `a = q * b` when such an element exists in the ring.
    fn divide_exact(&self, a: &Self::Element, b: &Self::Element) -> Option<Self::Element>;

    fn div_by_integer(&self, a: &Self::Element, n: &BigInt) -> Option<Self::Element> {
        self.divide_exact(a, &self.from_bigint(n))
    }

    /// The element written `pi` in expressions, if the ring has one.
    fn uniformizer(&self) -> Option<Self::Element> {
        None
    }

    /// Text form that the expression parser reads back to the same element.
    fn format_element(&self, a: &Self::Element) -> String;
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Element) -> Option<Self::Element>;

    fn div(&self, a: &Self::Element, b: &Self::Element) -> Option<Self::Element> {
        self.inv(b).map(|b_inv| self.mul(a, &b_inv))
    }
}

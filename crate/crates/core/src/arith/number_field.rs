use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{format_rational, ArithError};
use crate::ring::{Field, Ring};

/// The number field Q[y]/(E(y)) for a monic irreducible E.
///
/// The generator prints as `pi`: the only number fields built here are
/// fraction fields of Eisenstein-presented DVRs, where y is the uniformizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    // a_0..a_{e-1} of E = y^e + a_{e-1} y^{e-1} + ... + a_0
    modulus: Arc<Vec<BigRational>>,
}

/// Dense coefficients on the basis 1, y, ..., y^{e-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberFieldElement {
    coeffs: Vec<BigRational>,
}

impl NumberFieldElement {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl NumberField {
    pub fn new(modulus: Vec<BigRational>) -> Result<Self, ArithError> {
        if modulus.is_empty() {
            return Err(ArithError::BadModulus);
        }
        Ok(NumberField {
            modulus: Arc::new(modulus),
        })
    }

    pub fn degree(&self) -> usize {
        self.modulus.len()
    }

    pub fn element(&self, coeffs: Vec<BigRational>) -> Result<NumberFieldElement, ArithError> {
        if coeffs.len() != self.degree() {
            return Err(ArithError::LengthMismatch {
                expected: self.degree(),
                got: coeffs.len(),
            });
        }
        Ok(NumberFieldElement { coeffs })
    }

    pub fn generator(&self) -> NumberFieldElement {
        let mut c = vec![BigRational::zero(); self.degree()];
        if self.degree() == 1 {
            c[0] = -&self.modulus[0];
        } else {
            c[1] = BigRational::one();
        }
        NumberFieldElement { coeffs: c }
    }

    /// E as a dense ascending coefficient vector including the leading 1.
    fn modulus_poly(&self) -> Vec<BigRational> {
        let mut m = self.modulus.as_ref().clone();
        m.push(BigRational::one());
        m
    }

    fn reduce(&self, mut c: Vec<BigRational>) -> NumberFieldElement {
        let e = self.degree();
        for d in (e..c.len()).rev() {
            let lead = std::mem::take(&mut c[d]);
            if lead.is_zero() {
                continue;
            }
            for (i, a) in self.modulus.iter().enumerate() {
                c[d - e + i] -= &lead * a;
            }
        }
        c.resize(e, BigRational::zero());
        NumberFieldElement { coeffs: c }
    }
}

/// Inverse in Q[y]/(E) by the extended Euclidean algorithm on (a, E).
pub fn nf_invert(
    field: &NumberField,
    a: &NumberFieldElement,
) -> Result<NumberFieldElement, ArithError> {
    if a.is_zero() {
        return Err(ArithError::NotInvertible);
    }
    let mut r0 = field.modulus_poly();
    let mut r1 = trim(a.coeffs.clone());
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1 = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd; E irreducible makes it a nonzero constant
    if r0.len() != 1 {
        return Err(ArithError::NotInvertible);
    }
    let scale = r0[0].recip();
    let s: Vec<BigRational> = s0.into_iter().map(|c| c * &scale).collect();
    Ok(field.reduce(s))
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = &b[db];
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lead;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

/// Prints `c_0 + c_1*pi + ...` in a form the expression parser accepts.
pub(crate) fn format_pi_series(coeffs: &[BigRational]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c < &BigRational::zero();
        let mag = if negative { -c } else { c.clone() };
        let body = match (i, mag.is_one()) {
            (0, _) => format_rational(&mag),
            (1, true) => "pi".to_string(),
            (1, false) => format!("{}*pi", format_rational(&mag)),
            (_, true) => format!("pi^{i}"),
            (_, false) => format!("{}*pi^{i}", format_rational(&mag)),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Ring for NumberField {
    type Element = NumberFieldElement;

    fn zero(&self) -> NumberFieldElement {
        NumberFieldElement {
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    fn one(&self) -> NumberFieldElement {
        self.from_bigint(&BigInt::one())
    }

    fn from_bigint(&self, n: &BigInt) -> NumberFieldElement {
        let mut z = self.zero();
        z.coeffs[0] = BigRational::from_integer(n.clone());
        z
    }

    fn add(&self, a: &NumberFieldElement, b: &NumberFieldElement) -> NumberFieldElement {
        NumberFieldElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    fn neg(&self, a: &NumberFieldElement) -> NumberFieldElement {
        NumberFieldElement {
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    fn sub(&self, a: &NumberFieldElement, b: &NumberFieldElement) -> NumberFieldElement {
        NumberFieldElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    fn mul(&self, a: &NumberFieldElement, b: &NumberFieldElement) -> NumberFieldElement {
        let e = self.degree();
        let mut c = vec![BigRational::zero(); 2 * e - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        self.reduce(c)
    }

    fn is_zero(&self, a: &NumberFieldElement) -> bool {
        a.is_zero()
    }

    fn divide_exact(
        &self,
        a: &NumberFieldElement,
        b: &NumberFieldElement,
    ) -> Option<NumberFieldElement> {
        self.div(a, b)
    }

    fn format_element(&self, a: &NumberFieldElement) -> String {
        format_pi_series(&a.coeffs)
    }
}

impl Field for NumberField {
    fn inv(&self, a: &NumberFieldElement) -> Option<NumberFieldElement> {
        nf_invert(self, a).ok()
    }
}

//! Arithmetic in an Eisenstein-presented ramified DVR V = Z_(p)[pi]/(E(pi)).
//!
//! Elements are coefficient vectors `c_0 + c_1 pi + ... + c_{e-1} pi^{e-1}`
//! with `c_i` in Z_(p). Because E is Eisenstein, `v(pi) = 1` and `v(p) = e`,
//! which makes the pi-adic valuation and the expansion modulo `pi^2` exactly
//! computable from the coefficients.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::arith::{
    format_pi_series, format_rational, residue_mod_p, vp, ArithError, FpElement, LocalIntegers,
    LocalRational, NumberField, NumberFieldElement, PrimeField,
};
use crate::ring::{Field, Ring};

/// Largest supported ramification index.
pub const MAX_RAMIFICATION: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DvrError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(
        "ramification index e = {0} < 2: the ring is unramified; use the delta_p path on Z_(p)[x] instead"
    )]
    Unramified(usize),
    #[error("ramification index e = {0} exceeds the supported maximum of {MAX_RAMIFICATION}")]
    TooRamified(usize),
    #[error("Eisenstein condition violated: p = {p} does not divide a_{index} = {value}")]
    NotDivisible { p: u64, index: usize, value: String },
    #[error("Eisenstein condition violated: p^2 = {p2} divides a_0 = {value}")]
    ConstantTooDivisible { p2: u64, value: String },
    #[error("valuation of zero undefined")]
    ZeroValuation,
    #[error("element does not belong to this DVR (expected {expected} coefficients over p = {p})")]
    Mismatch { expected: usize, p: u64 },
}

#[derive(Debug, PartialEq, Eq)]
struct DvrData {
    p: u64,
    // a_0..a_{e-1}, E monic
    eisenstein: Vec<LocalRational>,
    fraction_field: NumberField,
}

/// V = Z_(p)[pi]/(E) for an Eisenstein polynomial E of degree e >= 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinDVR {
    inner: Arc<DvrData>,
}

/// `sum c_i pi^i`, exactly `e` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DVRElement {
    coeffs: Vec<LocalRational>,
}

impl DVRElement {
    pub fn coeffs(&self) -> &[LocalRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LocalRational::is_zero)
    }
}

impl EisensteinDVR {
    /// Builds V from the non-leading coefficients `a_0..a_{e-1}` of E.
    pub fn new(p: u64, eisenstein: Vec<LocalRational>) -> Result<Self, DvrError> {
        PrimeField::new(p)?;
        let e = eisenstein.len();
        if e < 2 {
            return Err(DvrError::Unramified(e));
        }
        if e > MAX_RAMIFICATION {
            return Err(DvrError::TooRamified(e));
        }
        for (index, a) in eisenstein.iter().enumerate() {
            if a.prime() != p {
                return Err(ArithError::PrimeMismatch(a.prime(), p).into());
            }
            if a.is_unit() {
                return Err(DvrError::NotDivisible {
                    p,
                    index,
                    value: format_rational(a.value()),
                });
            }
        }
        let a0 = &eisenstein[0];
        if a0.is_zero() || vp(a0)? >= 2 {
            return Err(DvrError::ConstantTooDivisible {
                p2: p * p,
                value: format_rational(a0.value()),
            });
        }
        let fraction_field =
            NumberField::new(eisenstein.iter().map(|a| a.value().clone()).collect())?;
        Ok(EisensteinDVR {
            inner: Arc::new(DvrData {
                p,
                eisenstein,
                fraction_field,
            }),
        })
    }

    pub fn from_integers(p: u64, eisenstein: &[i64]) -> Result<Self, DvrError> {
        let coeffs = eisenstein
            .iter()
            .map(|&a| LocalRational::from_integer(a, p))
            .collect();
        Self::new(p, coeffs)
    }

    pub fn prime(&self) -> u64 {
        self.inner.p
    }

    pub fn ramification_index(&self) -> usize {
        self.inner.eisenstein.len()
    }

    pub fn eisenstein_coeffs(&self) -> &[LocalRational] {
        &self.inner.eisenstein
    }

    pub fn residue_field(&self) -> PrimeField {
        PrimeField::new(self.inner.p).expect("validated at construction")
    }

    pub fn base_ring(&self) -> LocalIntegers {
        LocalIntegers::new(self.inner.p).expect("validated at construction")
    }

    /// K = Frac(V) = Q[y]/(E), with y the image of pi.
    pub fn fraction_field(&self) -> &NumberField {
        &self.inner.fraction_field
    }

    pub fn element(&self, coeffs: Vec<LocalRational>) -> Result<DVRElement, DvrError> {
        let a = DVRElement { coeffs };
        self.check(&a)?;
        Ok(a)
    }

    pub fn from_local(&self, c: LocalRational) -> DVRElement {
        let mut z = self.zero();
        z.coeffs[0] = c;
        z
    }

    /// `pi^k`, reduced.
    pub fn pi_power(&self, k: u32) -> DVRElement {
        self.pow(&self.pi(), k as u64)
    }

    pub fn pi(&self) -> DVRElement {
        let mut z = self.zero();
        z.coeffs[1] = LocalRational::one(self.inner.p);
        z
    }

    fn check(&self, a: &DVRElement) -> Result<(), DvrError> {
        let ok = a.coeffs.len() == self.ramification_index()
            && a.coeffs.iter().all(|c| c.prime() == self.inner.p);
        if ok {
            Ok(())
        } else {
            Err(DvrError::Mismatch {
                expected: self.ramification_index(),
                p: self.inner.p,
            })
        }
    }

    /// Product reduced modulo E to degree < e.
    pub fn dvr_mul(&self, a: &DVRElement, b: &DVRElement) -> Result<DVRElement, DvrError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    /// pi-adic valuation: `min(i + e * vp(c_i))` over nonzero `c_i`.
    ///
    /// The candidates are pairwise distinct modulo e, so no cancellation can
    /// raise the minimum.
    pub fn valuation(&self, a: &DVRElement) -> Result<u64, DvrError> {
        let e = self.ramification_index() as u64;
        let mut best = None;
        for (i, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let cand = i as u64 + e * vp(c)?;
                best = Some(best.map_or(cand, |b: u64| b.min(cand)));
            }
        }
        best.ok_or(DvrError::ZeroValuation)
    }

    pub fn is_unit(&self, a: &DVRElement) -> bool {
        a.coeffs[0].is_unit()
    }

    /// Image in the residue field k = V/(pi).
    pub fn residue(&self, a: &DVRElement) -> FpElement {
        residue_mod_p(&a.coeffs[0])
    }

    /// `(a_0, a_1)` in F_p with `a = [a_0] + [a_1] pi (mod pi^2)`, where `[.]`
    /// is the integer representative in `[0, p)`.
    pub fn pi2_expansion(&self, a: &DVRElement) -> (FpElement, FpElement) {
        (residue_mod_p(&a.coeffs[0]), residue_mod_p(&a.coeffs[1]))
    }

    pub fn to_fraction_field(&self, a: &DVRElement) -> NumberFieldElement {
        self.inner
            .fraction_field
            .element(a.coeffs.iter().map(|c| c.value().clone()).collect())
            .expect("lengths agree")
    }

    /// The element of V equal to `k`, if `k` is integral at p.
    pub fn from_fraction_field(&self, k: &NumberFieldElement) -> Option<DVRElement> {
        let coeffs: Option<Vec<_>> = k
            .coeffs()
            .iter()
            .map(|c| LocalRational::from_rational(c.clone(), self.inner.p).ok())
            .collect();
        coeffs.map(|coeffs| DVRElement { coeffs })
    }
}

impl fmt::Display for EisensteinDVR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.ramification_index();
        let mut coeffs: Vec<BigRational> = self
            .inner
            .eisenstein
            .iter()
            .map(|c| c.value().clone())
            .collect();
        coeffs.push(BigRational::from_integer(1.into()));
        let poly = format_pi_series(&coeffs).replace("pi", "y");
        write!(
            f,
            "Z_({p})[pi]/(E(pi)), E(y) = {poly}, e = {e}",
            p = self.inner.p
        )
    }
}

impl Ring for EisensteinDVR {
    type Element = DVRElement;

    fn zero(&self) -> DVRElement {
        DVRElement {
            coeffs: vec![LocalRational::zero(self.inner.p); self.ramification_index()],
        }
    }

    fn one(&self) -> DVRElement {
        self.from_local(LocalRational::one(self.inner.p))
    }

    fn from_bigint(&self, n: &BigInt) -> DVRElement {
        self.from_local(LocalRational::from_integer(n.clone(), self.inner.p))
    }

    fn add(&self, a: &DVRElement, b: &DVRElement) -> DVRElement {
        DVRElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x.add(y))
                .collect(),
        }
    }

    fn neg(&self, a: &DVRElement) -> DVRElement {
        DVRElement {
            coeffs: a.coeffs.iter().map(LocalRational::neg).collect(),
        }
    }

    fn sub(&self, a: &DVRElement, b: &DVRElement) -> DVRElement {
        DVRElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x.sub(y))
                .collect(),
        }
    }

    fn mul(&self, a: &DVRElement, b: &DVRElement) -> DVRElement {
        let e = self.ramification_index();
        let p = self.inner.p;
        let mut c = vec![LocalRational::zero(p); 2 * e - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] = c[i + j].add(&x.mul(y));
                }
            }
        }
        // pi^e = -(a_{e-1} pi^{e-1} + ... + a_0)
        for d in (e..c.len()).rev() {
            let lead = std::mem::replace(&mut c[d], LocalRational::zero(p));
            if lead.is_zero() {
                continue;
            }
            for (i, a) in self.inner.eisenstein.iter().enumerate() {
                c[d - e + i] = c[d - e + i].sub(&lead.mul(a));
            }
        }
        c.truncate(e);
        DVRElement { coeffs: c }
    }

    fn is_zero(&self, a: &DVRElement) -> bool {
        a.is_zero()
    }

    fn divide_exact(&self, a: &DVRElement, b: &DVRElement) -> Option<DVRElement> {
        let k = self.fraction_field();
        let q = k.div(&self.to_fraction_field(a), &self.to_fraction_field(b))?;
        self.from_fraction_field(&q)
    }

    fn uniformizer(&self) -> Option<DVRElement> {
        Some(self.pi())
    }

    fn format_element(&self, a: &DVRElement) -> String {
        let values: Vec<BigRational> = a.coeffs.iter().map(|c| c.value().clone()).collect();
        format_pi_series(&values)
    }
}

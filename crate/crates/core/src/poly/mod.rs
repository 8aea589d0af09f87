//! Sparse multivariate polynomials over a runtime coefficient ring.

mod monomial;
mod parse;

pub use monomial::{BadPermutation, Monomial, MonomialOrder, OrderKind};
pub use parse::{parse_expression, ParseError};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("`pi` is reserved for the uniformizer and cannot name a variable")]
    ReservedVariable,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Coefficient ring plus variable names; polynomials refer to variables by index.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<R: Ring> {
    coeffs: R,
    vars: Arc<[String]>,
}

impl<R: Ring> PolyRing<R> {
    pub fn new<S: Into<String>>(
        coeffs: R,
        vars: impl IntoIterator<Item = S>,
    ) -> Result<Self, PolyError> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !parse::is_identifier(v) {
                return Err(PolyError::InvalidVariable(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
            if v == "pi" && coeffs.uniformizer().is_some() {
                return Err(PolyError::ReservedVariable);
            }
        }
        Ok(PolyRing {
            coeffs,
            vars: vars.into(),
        })
    }

    pub fn coeff_ring(&self) -> &R {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables over another coefficient ring.
    pub fn with_coeffs<S: Ring>(&self, coeffs: S) -> PolyRing<S> {
        PolyRing {
            coeffs,
            vars: self.vars.clone(),
        }
    }

    pub fn zero(&self) -> Polynomial<R> {
        Polynomial {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> Polynomial<R> {
        self.constant(self.coeffs.one())
    }

    pub fn constant(&self, c: R::Element) -> Polynomial<R> {
        self.term(c, Monomial::one(self.nvars()))
    }

    pub fn from_i64(&self, n: i64) -> Polynomial<R> {
        self.constant(self.coeffs.from_i64(n))
    }

    pub fn term(&self, c: R::Element, m: Monomial) -> Polynomial<R> {
        debug_assert_eq!(m.nvars(), self.nvars());
        let mut terms = BTreeMap::new();
        if !self.coeffs.is_zero(&c) {
            terms.insert(m, c);
        }
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    pub fn var(&self, i: usize) -> Result<Polynomial<R>, PolyError> {
        if i >= self.nvars() {
            return Err(PolyError::VariableOutOfRange {
                index: i,
                nvars: self.nvars(),
            });
        }
        Ok(self.term(self.coeffs.one(), Monomial::var(self.nvars(), i)))
    }

    /// Sums the given terms, merging repeated monomials and dropping zeros.
    pub fn from_terms(
        &self,
        terms: impl IntoIterator<Item = (Monomial, R::Element)>,
    ) -> Polynomial<R> {
        let mut out: BTreeMap<Monomial, R::Element> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), self.nvars());
            accumulate(&self.coeffs, &mut out, m, c);
        }
        Polynomial {
            ring: self.clone(),
            terms: out,
        }
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial<R>, ParseError> {
        parse_expression(text, self)
    }

    /// This ring with more variables appended after the existing ones.
    pub fn extended<S: Into<String>>(
        &self,
        extra: impl IntoIterator<Item = S>,
    ) -> Result<PolyRing<R>, PolyError> {
        let vars = self
            .vars
            .iter()
            .cloned()
            .chain(extra.into_iter().map(Into::into));
        PolyRing::new(self.coeffs.clone(), vars.collect::<Vec<_>>())
    }

    /// A variable name not used by this ring, starting from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut k = 0;
        while self.var_index(&name).is_some() {
            k += 1;
            name = format!("{base}{k}");
        }
        name
    }
}

fn accumulate<R: Ring>(
    ring: &R,
    terms: &mut BTreeMap<Monomial, R::Element>,
    m: Monomial,
    c: R::Element,
) {
    if ring.is_zero(&c) {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = ring.add(o.get(), &c);
            if ring.is_zero(&s) {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// A polynomial in canonical sparse form: one entry per monomial, no zero
/// coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<R: Ring> {
    ring: PolyRing<R>,
    terms: BTreeMap<Monomial, R::Element>,
}

impl<R: Ring> Polynomial<R> {
    pub fn ring(&self) -> &PolyRing<R> {
        &self.ring
    }

    pub fn coeff_ring(&self) -> &R {
        &self.ring.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Element)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> R::Element {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.coeffs.zero())
    }

    pub fn constant_coeff(&self) -> R::Element {
        self.coefficient(&Monomial::one(self.nvars()))
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<R::Element> {
        match self.terms.len() {
            0 => Some(self.ring.coeffs.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant()
            .is_some_and(|c| self.ring.coeffs.is_one(&c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn same_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let mut out = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&self.ring.coeffs, &mut out, m.clone(), c.clone());
        }
        Ok(self.with_terms(out))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let ring = &self.ring.coeffs;
        let mut out = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(ring, &mut out, m.clone(), ring.neg(c));
        }
        Ok(self.with_terms(out))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let ring = &self.ring.coeffs;
        let mut out = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(ring, &mut out, ma.mul(mb), ring.mul(ca, cb));
            }
        }
        Ok(self.with_terms(out))
    }

    fn with_terms(&self, terms: BTreeMap<Monomial, R::Element>) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &R::Element) -> Self {
        let ring = &self.ring.coeffs;
        self.ring
            .from_terms(self.terms.iter().map(|(m, a)| (m.clone(), ring.mul(a, c))))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        self.with_terms(
            self.terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self, PolyError> {
        if i >= self.nvars() {
            return Err(PolyError::VariableOutOfRange {
                index: i,
                nvars: self.nvars(),
            });
        }
        let ring = &self.ring.coeffs;
        Ok(self.ring.from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponents()[i];
            (e > 0).then(|| {
                let mut dm = m.clone();
                dm.exps_mut()[i] -= 1;
                (dm, ring.mul(c, &ring.from_i64(e as i64)))
            })
        })))
    }

    /// Substitutes `x_i -> x_i^q` in every variable, coefficients unchanged.
    pub fn frobenius_pullback(&self, q: u32) -> Self {
        self.with_terms(
            self.terms
                .iter()
                .map(|(m, c)| {
                    let exps = m.exponents().iter().map(|e| e * q).collect();
                    (Monomial::new(exps), c.clone())
                })
                .collect(),
        )
    }

    pub fn evaluate(&self, point: &[R::Element]) -> Result<R::Element, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::PointLength {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let ring = &self.ring.coeffs;
        let mut powers: Vec<Vec<R::Element>> = vec![vec![ring.one()]; point.len()];
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = ring.mul(pw.last().unwrap(), &point[i]);
                    pw.push(next);
                }
                t = ring.mul(&t, &pw[e as usize]);
            }
            acc = ring.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Expands `f(a_1 + u_1, ..., a_n + u_n)` for integer shifts `a_i`, as a
    /// polynomial in fresh variables `u_1..u_n`.
    pub fn shift_substitute(&self, shifts: &[BigInt]) -> Result<Self, PolyError> {
        let n = self.nvars();
        if shifts.len() != n {
            return Err(PolyError::PointLength {
                expected: n,
                got: shifts.len(),
            });
        }
        let ring = &self.ring.coeffs;
        let u_ring = PolyRing::new(ring.clone(), (1..=n).map(|i| format!("u{i}")))?;
        let linear: Vec<Polynomial<R>> = (0..n)
            .map(|i| {
                let ui = u_ring.var(i).expect("in range");
                &ui + &u_ring.constant(ring.from_bigint(&shifts[i]))
            })
            .collect();
        let mut powers: Vec<Vec<Polynomial<R>>> = vec![vec![u_ring.one()]; n];
        let mut acc = u_ring.zero();
        for (m, c) in &self.terms {
            let mut t = u_ring.constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap() * &linear[i];
                    pw.push(next);
                }
                t = &t * &pw[e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Applies `f` to every coefficient, landing in `target` (same variables).
    pub fn map_coefficients<S: Ring>(
        &self,
        target: &PolyRing<S>,
        f: impl Fn(&R::Element) -> S::Element,
    ) -> Polynomial<S> {
        debug_assert_eq!(target.nvars(), self.nvars());
        target.from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Moves variable `i` to index `var_map[i]` of `target`.
    pub fn embed(&self, target: &PolyRing<R>, var_map: &[usize]) -> Polynomial<R> {
        debug_assert_eq!(var_map.len(), self.nvars());
        target.from_terms(self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0; target.nvars()];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[var_map[i]] += e;
            }
            (Monomial::new(exps), c.clone())
        }))
    }

    /// Embeds into a ring that extends this one by trailing variables.
    pub fn extend_to(&self, target: &PolyRing<R>) -> Polynomial<R> {
        let map: Vec<usize> = (0..self.nvars()).collect();
        self.embed(target, &map)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn divide_exact(&self, d: &Self) -> Option<Self> {
        let ring = &self.ring.coeffs;
        let (dm, dc) = d.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((rm, rc)) = rem.terms.iter().next_back() {
            let qm = dm.quotient_of(rm)?;
            let qc = ring.divide_exact(rc, dc)?;
            let step = d.mul_monomial(&qm).scale(&qc);
            quot.insert(qm, qc);
            rem = &rem - &step;
        }
        Some(self.with_terms(quot))
    }
}

impl<R: Ring> Add for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, rhs: Self) -> Polynomial<R> {
        self.checked_add(rhs).expect("ring mismatch in add")
    }
}

impl<R: Ring> Sub for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, rhs: Self) -> Polynomial<R> {
        self.checked_sub(rhs).expect("ring mismatch in sub")
    }
}

impl<R: Ring> Mul for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, rhs: Self) -> Polynomial<R> {
        self.checked_mul(rhs).expect("ring mismatch in mul")
    }
}

impl<R: Ring> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        let ring = &self.ring.coeffs;
        self.with_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), ring.neg(c)))
                .collect(),
        )
    }
}

fn needs_parens(s: &str) -> bool {
    s.char_indices()
        .any(|(i, c)| (c == '+' || c == '-') && i > 0)
}

fn write_monomial(out: &mut String, m: &Monomial, vars: &[String]) {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&vars[i]);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

fn format_terms<'a, R: Ring + 'a>(
    ring: &PolyRing<R>,
    terms: impl Iterator<Item = (&'a Monomial, &'a R::Element)>,
) -> String {
    let k = &ring.coeffs;
    let mut out = String::new();
    for (m, c) in terms {
        let mut term = String::new();
        if m.is_one() {
            term = k.format_element(c);
        } else if k.is_one(c) {
            write_monomial(&mut term, m, &ring.vars);
        } else if k.is_one(&k.neg(c)) {
            term.push('-');
            write_monomial(&mut term, m, &ring.vars);
        } else {
            let cs = k.format_element(c);
            if needs_parens(&cs) {
                term = format!("({cs})*");
            } else {
                term = cs + "*";
            }
            write_monomial(&mut term, m, &ring.vars);
        }
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<R: Ring> Polynomial<R> {
    /// Like `Display`, with terms in descending `order`.
    pub fn format_with_order(&self, order: &MonomialOrder) -> String {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| order.cmp(b.0, a.0));
        format_terms(&self.ring, terms.into_iter())
    }
}

impl<R: Ring> fmt::Display for Polynomial<R> {
    /// Descending grevlex, in the expression grammar accepted by the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.ring, self.terms()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{LocalIntegers, PrimeField};
    use crate::dvr::EisensteinDVR;

    fn fp(p: u64, vars: &[&str]) -> PolyRing<PrimeField> {
        PolyRing::new(PrimeField::new(p).unwrap(), vars.iter().copied()).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = fp(7, &["x", "y"]);
        let x = r.var(0).unwrap();
        let y = r.var(1).unwrap();
        assert_eq!(&(&x + &y) + &(&x - &y), x.scale(&r.coeff_ring().element(2)));
        assert_eq!(&(&x + &y) * &(&x - &y), &x.pow(2) - &y.pow(2));
        let r2 = fp(2, &["x", "y"]);
        let s = &r2.var(0).unwrap() + &r2.var(1).unwrap();
        assert_eq!(s.pow(2).to_string(), "x^2 + y^2");
    }

    #[test]
    fn ring_mismatch() {
        let a = fp(7, &["x"]).var(0).unwrap();
        let b = fp(5, &["x"]).var(0).unwrap();
        assert_eq!(a.checked_add(&b), Err(PolyError::RingMismatch));
        let c = fp(7, &["y"]).var(0).unwrap();
        assert_eq!(a.checked_mul(&c), Err(PolyError::RingMismatch));
    }

    #[test]
    fn derivative_examples() {
        let r = fp(7, &["x", "y"]);
        let f = r.parse("x^2*y").unwrap();
        assert_eq!(f.partial_derivative(0).unwrap(), r.parse("2*x*y").unwrap());
        assert_eq!(f.partial_derivative(1).unwrap(), r.parse("x^2").unwrap());
        assert!(matches!(
            f.partial_derivative(2),
            Err(PolyError::VariableOutOfRange { .. })
        ));
        let r2 = fp(2, &["x"]);
        assert!(r2
            .parse("x^2")
            .unwrap()
            .partial_derivative(0)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn frobenius_examples() {
        let r = PolyRing::new(LocalIntegers::new(2).unwrap(), ["x", "y"]).unwrap();
        assert_eq!(
            r.parse("x + y").unwrap().frobenius_pullback(2),
            r.parse("x^2 + y^2").unwrap()
        );
        assert_eq!(r.from_i64(7).frobenius_pullback(2), r.from_i64(7));
        assert_eq!(
            r.parse("x^2 - 2").unwrap().frobenius_pullback(2),
            r.parse("x^4 - 2").unwrap()
        );
    }

    #[test]
    fn evaluation_examples() {
        let v = EisensteinDVR::from_integers(2, &[-2, 0]).unwrap();
        let rv = PolyRing::new(v.clone(), ["x", "y"]).unwrap();
        let f = rv.parse("x^2 - pi").unwrap();
        let one_minus_pi = v.sub(&v.one(), &v.pi());
        assert_eq!(f.evaluate(&[v.one(), v.zero()]).unwrap(), one_minus_pi);
        let g = rv.parse("x*y - pi").unwrap();
        assert_eq!(g.evaluate(&[v.zero(), v.zero()]).unwrap(), v.neg(&v.pi()));
        assert!(matches!(
            g.evaluate(&[v.zero()]),
            Err(PolyError::PointLength { .. })
        ));

        let r = fp(5, &["x", "y"]);
        let k = r.coeff_ring();
        let s = r.parse("x + y").unwrap();
        assert!(k.is_zero(&s.evaluate(&[k.element(2), k.element(3)]).unwrap()));
    }

    #[test]
    fn shift_examples() {
        let v = EisensteinDVR::from_integers(3, &[-3, 0]).unwrap();
        let r = PolyRing::new(v.clone(), ["x"]).unwrap();
        let shifted = r
            .parse("x^2")
            .unwrap()
            .shift_substitute(&[1.into()])
            .unwrap();
        assert_eq!(shifted.to_string(), "u1^2 + 2*u1 + 1");
        let shifted = r
            .parse("x - pi")
            .unwrap()
            .shift_substitute(&[0.into()])
            .unwrap();
        assert_eq!(shifted.to_string(), "u1 - pi");
        let r2 = PolyRing::new(v, ["x", "y"]).unwrap();
        let shifted = r2
            .parse("x*y")
            .unwrap()
            .shift_substitute(&[1.into(), 1.into()])
            .unwrap();
        assert_eq!(shifted.to_string(), "u1*u2 + u1 + u2 + 1");
    }

    #[test]
    fn exact_division() {
        let r = fp(5, &["x", "y"]);
        let a = r.parse("x^2 - y^2").unwrap();
        let b = r.parse("x + y").unwrap();
        assert_eq!(a.divide_exact(&b), Some(r.parse("x - y").unwrap()));
        assert_eq!(b.divide_exact(&a), None);
        let z = LocalIntegers::new(3).unwrap();
        let rz = PolyRing::new(z, ["x"]).unwrap();
        let a = rz.parse("3*x^2 + 3*x").unwrap();
        assert_eq!(
            a.divide_exact(&rz.parse("3*x").unwrap()),
            Some(rz.parse("x + 1").unwrap())
        );
        assert_eq!(
            rz.parse("x").unwrap().divide_exact(&rz.parse("3").unwrap()),
            None
        );
    }

    #[test]
    fn printing() {
        let v = EisensteinDVR::from_integers(5, &[-5, 0]).unwrap();
        let r = PolyRing::new(v, ["x", "y"]).unwrap();
        let f = r.parse("(1 + pi)*x^2 - pi*y + 3/2").unwrap();
        assert_eq!(f.to_string(), "(1 + pi)*x^2 - pi*y + 3/2");
        assert_eq!(r.zero().to_string(), "0");
        assert_eq!(r.parse("-x").unwrap().to_string(), "-x");
    }

    #[test]
    fn reserved_and_duplicate_names() {
        let v = EisensteinDVR::from_integers(5, &[-5, 0]).unwrap();
        assert_eq!(
            PolyRing::new(v, ["pi"]).unwrap_err(),
            PolyError::ReservedVariable
        );
        assert!(PolyRing::new(PrimeField::new(5).unwrap(), ["pi"]).is_ok());
        assert_eq!(
            PolyRing::new(PrimeField::new(5).unwrap(), ["x", "x"]).unwrap_err(),
            PolyError::DuplicateVariable("x".into())
        );
        assert!(PolyRing::new(PrimeField::new(5).unwrap(), ["2x"]).is_err());
    }
}

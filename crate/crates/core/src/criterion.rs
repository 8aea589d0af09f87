//! Singular locus along `V(p)`, regularity at primes of the special fiber,
//! freeness of the reduced differential module, Kunz p-degree, and the
//! comparison with the unramified `delta_p` criterion.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{LocalIntegers, LocalRational, PrimeField, Rationals};
use crate::calculus::{reduce_mod_p, reduce_mod_pi, special_fiber_ring};
use crate::dvr::EisensteinDVR;
use crate::groebner::{radical_equal, GroebnerBasis, GroebnerError, IdealHandle};
use crate::jacobian::{hj_mixed_jacobian, minors, mixed_pi_jacobian, PolyMatrix};
use crate::poly::{Monomial, ParseError, PolyError, PolyRing, Polynomial};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error("declared height {height} exceeds n + 1 = {max}")]
    HeightOutOfRange { height: usize, max: usize },
    #[error("all components contain pi; supply height explicitly")]
    ImproperGeneric,
    #[error("ideal is the unit ideal over Q; supply height explicitly")]
    ImproperOverQ,
    #[error("not a prime of R/piR: generator {index} of the presentation is not in the ideal")]
    NotContaining { index: usize },
    #[error("not a prime of R/piR: the ideal is the unit ideal")]
    UnitIdeal,
    #[error("generator {index} is not in the presentation ring")]
    RingMismatch { index: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// `R = V[x_1..x_n] / (f_1..f_t)`.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    ring: PolyRing<EisensteinDVR>,
    generators: Vec<Polynomial<EisensteinDVR>>,
    declared_height: Option<usize>,
}

/// How the height used for the minors was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeightSource {
    Declared,
    /// Gröbner basis over the fraction field of the base.
    Generic,
}

impl HeightSource {
    pub fn as_str(self) -> &'static str {
        match self {
            HeightSource::Declared => "declared",
            HeightSource::Generic => "generic",
        }
    }
}

impl RingPresentation {
    pub fn new(
        ring: &PolyRing<EisensteinDVR>,
        generators: Vec<Polynomial<EisensteinDVR>>,
        declared_height: Option<usize>,
    ) -> Result<Self, CriterionError> {
        if let Some(index) = generators.iter().position(|g| g.ring() != ring) {
            return Err(CriterionError::RingMismatch { index });
        }
        if let Some(h) = declared_height {
            if h > ring.nvars() + 1 {
                return Err(CriterionError::HeightOutOfRange {
                    height: h,
                    max: ring.nvars() + 1,
                });
            }
        }
        Ok(RingPresentation {
            ring: ring.clone(),
            generators,
            declared_height,
        })
    }

    /// Parses generator expressions over `V[vars]`.
    pub fn parse<S: AsRef<str>>(
        dvr: EisensteinDVR,
        variables: &[S],
        generators: &[S],
        declared_height: Option<usize>,
    ) -> Result<Self, CriterionError> {
        let ring = PolyRing::new(dvr, variables.iter().map(|v| v.as_ref().to_string()))?;
        let gens = generators
            .iter()
            .map(|g| ring.parse(g.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&ring, gens, declared_height)
    }

    pub fn dvr(&self) -> &EisensteinDVR {
        self.ring.coeff_ring()
    }

    pub fn ring(&self) -> &PolyRing<EisensteinDVR> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn generators(&self) -> &[Polynomial<EisensteinDVR>] {
        &self.generators
    }

    pub fn declared_height(&self) -> Option<usize> {
        self.declared_height
    }

    pub fn with_height(&self, h: Option<usize>) -> Result<Self, CriterionError> {
        Self::new(&self.ring, self.generators.clone(), h)
    }

    /// `F_p[x_1..x_n]`.
    pub fn fiber_ring(&self) -> PolyRing<PrimeField> {
        special_fiber_ring(&self.ring)
    }

    /// The images of the generators mod pi.
    pub fn fiber_generators(&self) -> Vec<Polynomial<PrimeField>> {
        self.generators.iter().map(reduce_mod_pi).collect()
    }

    /// `I mod pi` as an ideal of `F_p[x]`.
    pub fn fiber_ideal(&self) -> IdealHandle<PrimeField> {
        IdealHandle::new(&self.fiber_ring(), self.fiber_generators()).expect("same ring")
    }

    pub fn mixed_jacobian(&self) -> PolyMatrix<PrimeField> {
        mixed_pi_jacobian(&self.ring, &self.generators)
    }

    /// Declared height if present, otherwise [`default_height`].
    pub fn height(&self) -> Result<(usize, HeightSource), CriterionError> {
        match self.declared_height {
            Some(h) => Ok((h, HeightSource::Declared)),
            None => default_height(self).map(|h| (h, HeightSource::Generic)),
        }
    }
}

/// A locus in the special fiber, as the ideal `I mod p + minors`.
#[derive(Clone, Debug)]
pub struct LocusReport {
    pub ideal: IdealHandle<PrimeField>,
    pub used_height: usize,
    pub is_empty: bool,
    pub height_source: HeightSource,
}

impl LocusReport {
    fn build(
        base: Vec<Polynomial<PrimeField>>,
        minor_gens: Vec<Polynomial<PrimeField>>,
        ring: &PolyRing<PrimeField>,
        used_height: usize,
        height_source: HeightSource,
    ) -> Self {
        let ideal = IdealHandle::new(ring, base.into_iter().chain(minor_gens)).expect("same ring");
        let is_empty = ideal.is_unit();
        LocusReport {
            ideal,
            used_height,
            is_empty,
            height_source,
        }
    }

    /// Reduced Gröbner basis of the locus ideal.
    pub fn basis(&self) -> &GroebnerBasis<PrimeField> {
        self.ideal.groebner()
    }
}

/// `n - dim(I K[x])` with `K` the fraction field of the base.
pub fn default_height(pres: &RingPresentation) -> Result<usize, CriterionError> {
    let dvr = pres.dvr();
    let k = dvr.fraction_field().clone();
    let kring = pres.ring.with_coeffs(k);
    let gens: Vec<_> = pres
        .generators
        .iter()
        .map(|f| f.map_coefficients(&kring, |c| dvr.to_fraction_field(c)))
        .collect();
    let dim = IdealHandle::new(&kring, gens)?
        .dimension()
        .ok_or(CriterionError::ImproperGeneric)?;
    Ok(pres.nvars() - dim)
}

/// `Sing R ∩ V(p)` as `V(I mod pi + I_h(J^pi))`.
pub fn singular_locus_at_p(pres: &RingPresentation) -> Result<LocusReport, CriterionError> {
    let (h, source) = pres.height()?;
    let j = pres.mixed_jacobian();
    Ok(LocusReport::build(
        pres.fiber_generators(),
        minors(&j, h),
        &pres.fiber_ring(),
        h,
        source,
    ))
}

fn checked_prime(
    pres: &RingPresentation,
    gens: &[Polynomial<PrimeField>],
) -> Result<IdealHandle<PrimeField>, CriterionError> {
    let q = IdealHandle::new(&pres.fiber_ring(), gens.iter().cloned())?;
    if q.is_unit() {
        return Err(CriterionError::UnitIdeal);
    }
    if let Some(index) = pres.fiber_generators().iter().position(|g| !q.contains(g)) {
        return Err(CriterionError::NotContaining { index });
    }
    Ok(q)
}

/// Whether `R` is regular at the prime of `R` over `q` in the special fiber:
/// some `h x h` minor of `J^pi` lies outside `q`.
pub fn is_regular_at(
    pres: &RingPresentation,
    q: &[Polynomial<PrimeField>],
) -> Result<bool, CriterionError> {
    let q = checked_prime(pres, q)?;
    let (h, _) = pres.height()?;
    Ok(minors(&pres.mixed_jacobian(), h)
        .iter()
        .any(|m| !q.contains(m)))
}

/// Rank data of the reduced differential module at a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OmegaRank {
    pub free: bool,
    pub rank: i64,
    pub dim_r: i64,
    pub b: i64,
}

pub fn omega_free_rank_check(
    pres: &RingPresentation,
    p: &[Polynomial<PrimeField>],
) -> Result<OmegaRank, CriterionError> {
    let q = checked_prime(pres, p)?;
    let (h, _) = pres.height()?;
    let height = q.height().ok_or(CriterionError::UnitIdeal)? as i64;
    let b = pres.nvars() as i64 - height;
    let dim_r = height + 1 - h as i64;
    Ok(OmegaRank {
        free: is_regular_at(pres, p)?,
        rank: dim_r + b,
        dim_r,
        b,
    })
}

/// `log_p [k(q) : k(q)^p] = n - height(q)` for a prime `q` of `F_p[x]`.
pub fn kunz_pdegree(q: &IdealHandle<PrimeField>) -> Result<usize, CriterionError> {
    q.height()
        .map(|ht| q.ring().nvars() - ht)
        .ok_or(CriterionError::UnitIdeal)
}

/// `n - dim(I Q[x])`.
pub fn height_over_q(
    ring: &PolyRing<LocalIntegers>,
    gens: &[Polynomial<LocalIntegers>],
) -> Result<usize, CriterionError> {
    let qring = ring.with_coeffs(Rationals);
    let qgens: Vec<_> = gens
        .iter()
        .map(|f| f.map_coefficients(&qring, |c| c.value().clone()))
        .collect();
    let dim = IdealHandle::new(&qring, qgens)?
        .dimension()
        .ok_or(CriterionError::ImproperOverQ)?;
    Ok(ring.nvars() - dim)
}

/// `V(I mod p + I_h(HJ))` for a presentation over `Z_(p)`.
pub fn hj_singular_locus(
    ring: &PolyRing<LocalIntegers>,
    gens: &[Polynomial<LocalIntegers>],
    height: Option<usize>,
) -> Result<LocusReport, CriterionError> {
    if let Some(index) = gens.iter().position(|g| g.ring() != ring) {
        return Err(CriterionError::RingMismatch { index });
    }
    let (h, source) = match height {
        Some(h) => (h, HeightSource::Declared),
        None => (height_over_q(ring, gens)?, HeightSource::Generic),
    };
    let j = hj_mixed_jacobian(ring, gens);
    let base = gens.iter().map(reduce_mod_p).collect();
    Ok(LocusReport::build(base, minors(&j, h), j.ring(), h, source))
}

/// The presentation over `Z_(p)[pi, x]` with `pi` a free variable:
/// `(E(pi), f_1*, ..., f_t*)`.
pub fn lift_presentation(
    pres: &RingPresentation,
) -> (PolyRing<LocalIntegers>, Vec<Polynomial<LocalIntegers>>) {
    let dvr = pres.dvr();
    let p = dvr.prime();
    let n = pres.nvars();
    let base = dvr.base_ring();
    let vars = std::iter::once("pi".to_string()).chain(pres.ring.var_names().iter().cloned());
    let ring = PolyRing::new(base, vars.collect::<Vec<_>>()).expect("pi is free over Z_(p)");

    let shift = |m: &Monomial, k: u32| {
        let mut exps = vec![k];
        exps.extend_from_slice(m.exponents());
        Monomial::new(exps)
    };
    let mut lifted = Vec::with_capacity(pres.generators.len() + 1);
    let e = dvr.ramification_index();
    let mut eis: Vec<(Monomial, LocalRational)> = dvr
        .eisenstein_coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| (shift(&Monomial::one(n), i as u32), c.clone()))
        .collect();
    eis.push((shift(&Monomial::one(n), e as u32), LocalRational::one(p)));
    lifted.push(ring.from_terms(eis));
    for f in &pres.generators {
        let terms = f.terms().flat_map(|(m, c)| {
            c.coeffs()
                .iter()
                .enumerate()
                .map(move |(k, ck)| (shift(m, k as u32), ck.clone()))
        });
        lifted.push(ring.from_terms(terms.collect::<Vec<_>>()));
    }
    (ring, lifted)
}

/// Both loci compared on `F_p[pi, x]`.
#[derive(Clone, Debug)]
pub struct CrossValidation {
    pub agree: bool,
    pub pi_locus: LocusReport,
    pub hj_locus: LocusReport,
}

/// Compares the pi-criterion locus with the `delta_p` locus of the lifted
/// presentation, as radicals in `F_p[pi, x]` modulo `(pi) + I*`.
pub fn cross_validate(pres: &RingPresentation) -> Result<CrossValidation, CriterionError> {
    let pi_locus = singular_locus_at_p(pres)?;
    let (lring, lgens) = lift_presentation(pres);
    let hj_locus = hj_singular_locus(&lring, &lgens, Some(pi_locus.used_height + 1))?;

    let fring = hj_locus.ideal.ring().clone();
    let embed: Vec<usize> = (1..=pres.nvars()).collect();
    let mut common: Vec<Polynomial<PrimeField>> = lgens.iter().map(reduce_mod_p).collect();
    common.push(fring.var(0)?);

    let lifted_pi = IdealHandle::new(
        &fring,
        pi_locus
            .ideal
            .generators()
            .iter()
            .map(|g| g.embed(&fring, &embed))
            .chain(common.iter().cloned()),
    )?;
    let hj = hj_locus.ideal.extend_by(common)?;
    Ok(CrossValidation {
        agree: radical_equal(&hj, &lifted_pi),
        pi_locus,
        hj_locus,
    })
}

/// The integer `p` as a constant of `Z_(p)[x]`.
pub fn prime_constant(ring: &PolyRing<LocalIntegers>) -> Polynomial<LocalIntegers> {
    let p = ring.coeff_ring().prime();
    ring.constant(ring.coeff_ring().from_bigint(&BigInt::from(p)))
}

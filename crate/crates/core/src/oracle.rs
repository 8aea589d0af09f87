//! Brute-force regularity at `F_p`-rational points of the special fiber.
//!
//! At `alpha` the maximal ideal is `m = (pi, x_1 - a_1, ..., x_n - a_n)` with
//! integer lifts `a_i` in `[0, p)`. Expanding each generator in `u_i = x_i - a_i`
//! gives its image in `m/m^2` directly: the `pi`-coefficient of the constant
//! term and the residues of the linear `u`-coefficients. `p` lies in `m^2`
//! because the base is ramified.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{FpElement, PrimeField};
use crate::criterion::{CriterionError, RingPresentation};
use crate::exec::Execution;
use crate::poly::Monomial;
use crate::ring::{Field, Ring};

/// Largest number of points a scan will enumerate.
pub const SCAN_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("point not on the special fiber of V(I): generator {index} does not vanish")]
    NotOnFiber { index: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("point coordinates must lie in F_{p}")]
    WrongField { p: u64 },
    #[error("scan of {p}^{n} points exceeds the limit of {SCAN_LIMIT}")]
    TooManyPoints { p: u64, n: usize },
    #[error(transparent)]
    Criterion(#[from] CriterionError),
}

/// A point of `F_p^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coords: Vec<FpElement>,
}

impl RationalPoint {
    pub fn new(coords: Vec<FpElement>) -> Self {
        RationalPoint { coords }
    }

    pub fn from_residues(field: &PrimeField, residues: &[u64]) -> Self {
        RationalPoint::new(residues.iter().map(|&r| field.from_residue(r)).collect())
    }

    pub fn coords(&self) -> &[FpElement] {
        &self.coords
    }

    /// Integer lifts in `[0, p)`.
    pub fn lifts(&self) -> Vec<BigInt> {
        self.coords
            .iter()
            .map(|c| BigInt::from(c.residue()))
            .collect()
    }

    /// Generators `x_i - a_i` of the maximal ideal in `F_p[x]`.
    pub fn maximal_ideal_generators(
        &self,
        ring: &crate::poly::PolyRing<PrimeField>,
    ) -> Vec<crate::poly::Polynomial<PrimeField>> {
        self.coords
            .iter()
            .enumerate()
            .map(|(i, a)| &ring.var(i).expect("coordinate index") - &ring.constant(*a))
            .collect()
    }
}

impl std::fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c: Vec<String> = self
            .coords
            .iter()
            .map(|c| c.residue().to_string())
            .collect();
        write!(f, "({})", c.join(", "))
    }
}

fn check_point(pres: &RingPresentation, alpha: &RationalPoint) -> Result<(), OracleError> {
    let p = pres.dvr().prime();
    if alpha.coords.len() != pres.nvars() {
        return Err(OracleError::PointLength {
            expected: pres.nvars(),
            got: alpha.coords.len(),
        });
    }
    if alpha.coords.iter().any(|c| c.prime() != p) {
        return Err(OracleError::WrongField { p });
    }
    Ok(())
}

/// `t x (n+1)` matrix of the map `J/mJ -> m/m^2` in the basis
/// `(pi, u_1, ..., u_n)`.
pub fn cotangent_matrix_at_point(
    pres: &RingPresentation,
    alpha: &RationalPoint,
) -> Result<Vec<Vec<FpElement>>, OracleError> {
    check_point(pres, alpha)?;
    let dvr = pres.dvr();
    let n = pres.nvars();
    let lifts = alpha.lifts();
    pres.generators()
        .iter()
        .enumerate()
        .map(|(index, f)| {
            let g = f.shift_substitute(&lifts).expect("point length checked");
            let c = g.constant_coeff();
            let c = c.coeffs();
            if c[0].is_unit() {
                return Err(OracleError::NotOnFiber { index });
            }
            let mut row = vec![crate::arith::residue_mod_p(&c[1])];
            row.extend((0..n).map(|i| dvr.residue(&g.coefficient(&Monomial::var(n, i)))));
            Ok(row)
        })
        .collect()
}

/// Rank over `F_p` by Gaussian elimination.
pub fn fp_rank(field: &PrimeField, matrix: &[Vec<FpElement>]) -> usize {
    let mut m: Vec<Vec<FpElement>> = matrix.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !field.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(&m[rank][col]).expect("nonzero pivot");
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest {
            if field.is_zero(&row[col]) {
                continue;
            }
            let factor = field.mul(&row[col], &inv);
            for c in col..cols {
                let t = field.mul(&factor, &pivot_row[c]);
                row[c] = field.sub(&row[c], &t);
            }
        }
        rank += 1;
    }
    rank
}

fn regular_with_height(
    pres: &RingPresentation,
    alpha: &RationalPoint,
    h: usize,
) -> Result<bool, OracleError> {
    let m = cotangent_matrix_at_point(pres, alpha)?;
    Ok(fp_rank(&pres.dvr().residue_field(), &m) == h)
}

/// Whether the cotangent map at `alpha` has rank exactly `h`.
pub fn oracle_is_regular_at_point(
    pres: &RingPresentation,
    alpha: &RationalPoint,
) -> Result<bool, OracleError> {
    let (h, _) = pres.height()?;
    regular_with_height(pres, alpha, h)
}

/// One scanned point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub point: RationalPoint,
    pub on_fiber: bool,
    /// Oracle verdict, for on-fiber points.
    pub regular: Option<bool>,
}

/// All of `F_p^n` in lexicographic order (first coordinate slowest).
pub fn rational_points(field: &PrimeField, n: usize) -> Result<Vec<RationalPoint>, OracleError> {
    let p = field.prime();
    let total = (0..n).try_fold(1u64, |acc, _| {
        acc.checked_mul(p).filter(|&t| t <= SCAN_LIMIT)
    });
    let Some(total) = total else {
        return Err(OracleError::TooManyPoints { p, n });
    };
    Ok((0..total)
        .map(|mut k| {
            let mut digits = vec![0u64; n];
            for d in digits.iter_mut().rev() {
                *d = k % p;
                k /= p;
            }
            RationalPoint::from_residues(field, &digits)
        })
        .collect())
}

pub fn scan_rational_points(pres: &RingPresentation) -> Result<Vec<ScanEntry>, OracleError> {
    scan_with(pres, Execution::default())
}

pub fn scan_with(pres: &RingPresentation, exec: Execution) -> Result<Vec<ScanEntry>, OracleError> {
    let field = pres.dvr().residue_field();
    let points = rational_points(&field, pres.nvars())?;
    let (h, _) = pres.height()?;
    let fiber = pres.fiber_generators();
    exec.map(&points, |alpha| {
        let on_fiber = fiber
            .iter()
            .all(|g| field.is_zero(&g.evaluate(alpha.coords()).expect("point length")));
        let regular = if on_fiber {
            Some(regular_with_height(pres, alpha, h)?)
        } else {
            None
        };
        Ok(ScanEntry {
            point: alpha.clone(),
            on_fiber,
            regular,
        })
    })
    .into_iter()
    .collect()
}

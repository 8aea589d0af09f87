//! JSON presentation documents.
//!
//! ```json
//! {"p": 5, "eisenstein": [-5, 0], "variables": ["x"], "generators": ["x^2 - pi"], "height": 1}
//! ```
//!
//! `eisenstein` lists the non-leading coefficients of the monic Eisenstein
//! polynomial in ascending order; entries are integers or strings `"a/b"`.

use num_rational::BigRational;
use serde::Deserialize;

use super::CliError;
use crate::arith::{LocalIntegers, LocalRational, PrimeField};
use crate::criterion::{CriterionError, RingPresentation};
use crate::dvr::EisensteinDVR;
use crate::poly::{PolyRing, Polynomial};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Integer(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDocument {
    pub p: u64,
    pub eisenstein: Vec<Coefficient>,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    #[serde(default)]
    pub height: Option<usize>,
    /// Generators of a prime of `F_p[x]`, for `regular-at` and `omega-check`.
    #[serde(default)]
    pub prime_ideal: Option<Vec<String>>,
}

impl PresentationDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("schema error: {e}")))
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn eisenstein_coeffs(&self) -> Result<Vec<LocalRational>, CliError> {
        self.eisenstein
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let q = match c {
                    Coefficient::Integer(n) => BigRational::from_integer((*n).into()),
                    Coefficient::Text(s) => s.trim().parse::<BigRational>().map_err(|_| {
                        CliError::Input(format!("eisenstein[{i}]: `{s}` is not a rational number"))
                    })?,
                };
                LocalRational::from_rational(q, self.p)
                    .map_err(|e| CliError::Math(format!("eisenstein[{i}]: {e}")))
            })
            .collect()
    }

    pub fn dvr(&self) -> Result<EisensteinDVR, CliError> {
        let coeffs = self.eisenstein_coeffs()?;
        EisensteinDVR::new(self.p, coeffs).map_err(|e| CliError::Math(e.to_string()))
    }

    pub fn ring(&self) -> Result<PolyRing<EisensteinDVR>, CliError> {
        PolyRing::new(self.dvr()?, self.variables.clone())
            .map_err(|e| CliError::Input(format!("variables: {e}")))
    }

    /// `height_override` wins over the document's `height`.
    pub fn presentation(
        &self,
        height_override: Option<usize>,
    ) -> Result<RingPresentation, CliError> {
        let ring = self.ring()?;
        let gens = parse_all(&ring, &self.generators, "generator")?;
        RingPresentation::new(&ring, gens, height_override.or(self.height)).map_err(|e| match e {
            CriterionError::HeightOutOfRange { .. } => CliError::Input(e.to_string()),
            e => CliError::Math(e.to_string()),
        })
    }

    /// `Z_(p)[vars]`.
    pub fn local_ring(&self) -> Result<PolyRing<LocalIntegers>, CliError> {
        let z = LocalIntegers::new(self.p).map_err(|e| CliError::Math(e.to_string()))?;
        PolyRing::new(z, self.variables.clone())
            .map_err(|e| CliError::Input(format!("variables: {e}")))
    }

    /// `F_p[vars]`.
    pub fn fiber_ring(&self) -> Result<PolyRing<PrimeField>, CliError> {
        let k = PrimeField::new(self.p).map_err(|e| CliError::Math(e.to_string()))?;
        PolyRing::new(k, self.variables.clone())
            .map_err(|e| CliError::Input(format!("variables: {e}")))
    }
}

pub fn parse_all<R: Ring>(
    ring: &PolyRing<R>,
    exprs: &[String],
    what: &str,
) -> Result<Vec<Polynomial<R>>, CliError> {
    exprs
        .iter()
        .enumerate()
        .map(|(i, s)| {
            ring.parse(s)
                .map_err(|e| CliError::Input(format!("{what} {} `{s}`: {e}", i + 1)))
        })
        .collect()
}

/// Splits a comma-separated list, dropping empty entries.
pub fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

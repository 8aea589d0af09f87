#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::Rng;

use singloc::arith::{LocalIntegers, LocalRational, PrimeField};
use singloc::cli::PresentationDocument;
use singloc::criterion::RingPresentation;
use singloc::dvr::EisensteinDVR;
use singloc::poly::{Monomial, PolyRing, Polynomial};

pub struct CorpusEntry {
    pub name: String,
    pub doc: PresentationDocument,
    pub pres: RingPresentation,
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn corpus() -> Vec<CorpusEntry> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let doc = PresentationDocument::load(&path).unwrap();
            let pres = doc.presentation(None).unwrap();
            CorpusEntry {
                name: path.file_stem().unwrap().to_string_lossy().into_owned(),
                doc,
                pres,
            }
        })
        .collect()
}

/// `E(y) = y^e - p`.
pub fn pure_dvr(p: u64, e: usize) -> EisensteinDVR {
    let mut coeffs = vec![0i64; e];
    coeffs[0] = -(p as i64);
    EisensteinDVR::from_integers(p, &coeffs).unwrap()
}

/// A p-local rational with small numerator and a denominator prime to p.
pub fn local_rational(rng: &mut StdRng, p: u64) -> LocalRational {
    let num = rng.random_range(-20i64..=20);
    let den = loop {
        let d = rng.random_range(1i64..=6);
        if !(d as u64).is_multiple_of(p) {
            break d;
        }
    };
    LocalRational::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)), p).unwrap()
}

pub fn random_monomial(rng: &mut StdRng, n: usize, max_deg: u32) -> Monomial {
    let mut exps = vec![0u32; n];
    let total = rng.random_range(0..=max_deg);
    for _ in 0..total {
        exps[rng.random_range(0..n)] += 1;
    }
    Monomial::new(exps)
}

pub fn random_dvr_poly(
    rng: &mut StdRng,
    ring: &PolyRing<EisensteinDVR>,
    terms: usize,
    max_deg: u32,
) -> Polynomial<EisensteinDVR> {
    let v = ring.coeff_ring();
    let p = v.prime();
    let e = v.ramification_index();
    let ts: Vec<_> = (0..terms)
        .map(|_| {
            let c = v
                .element((0..e).map(|_| local_rational(rng, p)).collect())
                .unwrap();
            (random_monomial(rng, ring.nvars(), max_deg), c)
        })
        .collect();
    ring.from_terms(ts)
}

pub fn random_local_poly(
    rng: &mut StdRng,
    ring: &PolyRing<LocalIntegers>,
    terms: usize,
    max_deg: u32,
) -> Polynomial<LocalIntegers> {
    let p = ring.coeff_ring().prime();
    let ts: Vec<_> = (0..terms)
        .map(|_| {
            (
                random_monomial(rng, ring.nvars(), max_deg),
                local_rational(rng, p),
            )
        })
        .collect();
    ring.from_terms(ts)
}

pub fn random_fp_poly(
    rng: &mut StdRng,
    ring: &PolyRing<PrimeField>,
    terms: usize,
    max_deg: u32,
) -> Polynomial<PrimeField> {
    let k = ring.coeff_ring();
    let p = k.prime();
    let ts: Vec<_> = (0..terms)
        .map(|_| {
            (
                random_monomial(rng, ring.nvars(), max_deg),
                k.from_residue(rng.random_range(0..p)),
            )
        })
        .collect();
    ring.from_terms(ts)
}

pub fn var_names(n: usize) -> Vec<String> {
    ["x", "y", "z", "w"][..n]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

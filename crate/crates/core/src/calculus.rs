//! The differential operators feeding the Jacobian matrices: the Z-derivation
//! `d/dpi : V[x] -> F_p[x]`, the p-derivation `delta_p` on `Z_(p)[x]`, and the
//! ordinary partials reduced mod pi.

use num_bigint::BigInt;

use crate::arith::{residue_mod_p, LocalIntegers, PrimeField};
use crate::dvr::EisensteinDVR;
use crate::poly::{PolyRing, Polynomial};
use crate::ring::Ring;

/// `F_p[x]` with the same variables as `f`.
pub fn special_fiber_ring(ring: &PolyRing<EisensteinDVR>) -> PolyRing<PrimeField> {
    ring.with_coeffs(ring.coeff_ring().residue_field())
}

/// Image of `f` in `F_p[x] = V[x]/(pi)`.
pub fn reduce_mod_pi(f: &Polynomial<EisensteinDVR>) -> Polynomial<PrimeField> {
    let dvr = f.coeff_ring();
    f.map_coefficients(&special_fiber_ring(f.ring()), |c| dvr.residue(c))
}

/// Image of `f` in `F_p[x] = Z_(p)[x]/(p)`.
pub fn reduce_mod_p(f: &Polynomial<LocalIntegers>) -> Polynomial<PrimeField> {
    let target = f.ring().with_coeffs(f.coeff_ring().residue_field());
    f.map_coefficients(&target, residue_mod_p)
}

/// The derivation `d/dpi`.
///
/// Each coefficient `c = [c_0] + [c_1] pi (mod pi^2)` contributes `c_1` on its
/// monomial. The result depends only on `f mod pi^2`, kills `p` and `pi^2`,
/// and sends `pi` to 1.
pub fn d_dpi(f: &Polynomial<EisensteinDVR>) -> Polynomial<PrimeField> {
    let dvr = f.coeff_ring();
    f.map_coefficients(&special_fiber_ring(f.ring()), |c| dvr.pi2_expansion(c).1)
}

/// `(df/dx_1 mod pi, ..., df/dx_n mod pi)`.
pub fn partials_mod_pi(f: &Polynomial<EisensteinDVR>) -> Vec<Polynomial<PrimeField>> {
    (0..f.nvars())
        .map(|i| reduce_mod_pi(&f.partial_derivative(i).expect("index in range")))
        .collect()
}

/// The p-derivation `delta_p(f) = (f(x^p) - f(x)^p) / p`.
pub fn delta_p(f: &Polynomial<LocalIntegers>) -> Polynomial<LocalIntegers> {
    let ring = f.coeff_ring();
    let p = ring.prime();
    let numerator = &f.frobenius_pullback(p as u32) - &f.pow(p);
    let p_elem = ring.from_bigint(&BigInt::from(p));
    let terms: Vec<_> = numerator
        .terms()
        .map(|(m, c)| {
            assert!(
                !c.is_unit(),
                "delta_p numerator not divisible by p at {m:?}: arithmetic invariant broken"
            );
            (m.clone(), c.checked_div(&p_elem).expect("p divides c"))
        })
        .collect();
    f.ring().from_terms(terms)
}

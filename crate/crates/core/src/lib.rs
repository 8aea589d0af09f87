//! Singular loci along V(p) of finitely generated algebras over ramified
//! discrete valuation rings of mixed characteristic.
//!
//! For `V = Z_(p)[pi]/(E)` with E Eisenstein and `R = V[x_1..x_n]/(f_1..f_t)`
//! of pure height h, the points of `Spec R` over p where R is singular are
//! cut out in `F_p[x]` by the h-minors of the mixed Jacobian matrix whose
//! first row is the derivation `d/dpi` and whose other rows are the usual
//! partials reduced mod pi. See [`criterion::singular_locus_at_p`].
//!
//! Two independent checks ship alongside: a brute-force cotangent-rank
//! oracle at rational points ([`oracle`]) and the unramified p-derivation
//! criterion applied to a lifted presentation over `Z_(p)`
//! ([`criterion::cross_validate`]).

pub mod arith;
pub mod calculus;
pub mod cli;
pub mod criterion;
pub mod dvr;
pub mod exec;
pub mod groebner;
pub mod jacobian;
pub mod oracle;
pub mod poly;
pub mod ring;

pub use exec::Execution;

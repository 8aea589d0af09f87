use std::sync::OnceLock;

use super::{buchberger, GroebnerBasis, GroebnerError};
use crate::exec::Execution;
use crate::poly::{MonomialOrder, PolyRing, Polynomial};
use crate::ring::Field;

/// An ideal given by generators, with a lazily computed reduced basis.
#[derive(Clone, Debug)]
pub struct IdealHandle<F: Field> {
    ring: PolyRing<F>,
    generators: Vec<Polynomial<F>>,
    order: MonomialOrder,
    basis: OnceLock<GroebnerBasis<F>>,
}

impl<F: Field> IdealHandle<F> {
    /// Grevlex ideal. Zero generators are dropped.
    pub fn new(
        ring: &PolyRing<F>,
        generators: impl IntoIterator<Item = Polynomial<F>>,
    ) -> Result<Self, GroebnerError> {
        Self::with_order(ring, generators, MonomialOrder::grevlex(ring.nvars()))
    }

    pub fn with_order(
        ring: &PolyRing<F>,
        generators: impl IntoIterator<Item = Polynomial<F>>,
        order: MonomialOrder,
    ) -> Result<Self, GroebnerError> {
        if order.nvars() != ring.nvars() {
            return Err(GroebnerError::OrderMismatch {
                order: order.nvars(),
                ring: ring.nvars(),
            });
        }
        let mut gens = Vec::new();
        for g in generators {
            if g.ring() != ring {
                return Err(GroebnerError::RingMismatch);
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(IdealHandle {
            ring: ring.clone(),
            generators: gens,
            order,
            basis: OnceLock::new(),
        })
    }

    pub fn zero(ring: &PolyRing<F>) -> Self {
        Self::new(ring, []).expect("no generators")
    }

    pub fn unit(ring: &PolyRing<F>) -> Self {
        Self::new(ring, [ring.one()]).expect("same ring")
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn groebner(&self) -> &GroebnerBasis<F> {
        self.basis
            .get_or_init(|| buchberger(&self.ring, &self.generators, &self.order))
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        ideal_member(f, self)
    }

    pub fn contains_radical(&self, f: &Polynomial<F>) -> bool {
        radical_member(f, self)
    }

    pub fn dimension(&self) -> Option<usize> {
        ideal_dimension(self)
    }

    pub fn height(&self) -> Option<usize> {
        ideal_height(self)
    }

    /// `I + J`, keeping this ideal's order.
    pub fn sum(&self, other: &IdealHandle<F>) -> Result<Self, GroebnerError> {
        Self::with_order(
            &self.ring,
            self.generators
                .iter()
                .chain(other.generators.iter())
                .cloned(),
            self.order.clone(),
        )
    }

    /// `I + (extra)`.
    pub fn extend_by(
        &self,
        extra: impl IntoIterator<Item = Polynomial<F>>,
    ) -> Result<Self, GroebnerError> {
        Self::with_order(
            &self.ring,
            self.generators.iter().cloned().chain(extra),
            self.order.clone(),
        )
    }
}

impl<F: Field> std::fmt::Display for IdealHandle<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "(0)");
        }
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "({})", gens.join(", "))
    }
}

pub fn ideal_member<F: Field>(f: &Polynomial<F>, ideal: &IdealHandle<F>) -> bool {
    ideal.groebner().contains(f)
}

/// `f` lies in the radical of `I` iff `I + (1 - z f)` is the unit ideal.
pub fn radical_member<F: Field>(f: &Polynomial<F>, ideal: &IdealHandle<F>) -> bool {
    if ideal_member(f, ideal) {
        return true;
    }
    let ring = &ideal.ring;
    let z = ring.fresh_name("z");
    let ext = ring
        .extended([z.as_str()])
        .expect("fresh variable name is valid");
    let zvar = ext.var(ring.nvars()).expect("new variable");
    let mut gens: Vec<Polynomial<F>> = ideal
        .groebner()
        .generators()
        .iter()
        .map(|g| g.extend_to(&ext))
        .collect();
    gens.push(&ext.one() - &(&zvar * &f.extend_to(&ext)));
    buchberger(&ext, &gens, &MonomialOrder::grevlex(ext.nvars())).is_unit()
}

/// Krull dimension of `k[x]/I`; `None` when `I` is the unit ideal.
pub fn ideal_dimension<F: Field>(ideal: &IdealHandle<F>) -> Option<usize> {
    ideal.groebner().dimension()
}

/// `n - dim`; `None` when `I` is the unit ideal.
pub fn ideal_height<F: Field>(ideal: &IdealHandle<F>) -> Option<usize> {
    ideal_dimension(ideal).map(|d| ideal.ring.nvars() - d)
}

/// Whether `sqrt(A) = sqrt(B)`.
pub fn radical_equal<F: Field>(a: &IdealHandle<F>, b: &IdealHandle<F>) -> bool {
    radical_equal_with(a, b, Execution::default())
}

pub fn radical_equal_with<F: Field>(
    a: &IdealHandle<F>,
    b: &IdealHandle<F>,
    exec: Execution,
) -> bool {
    let checks: Vec<(&Polynomial<F>, &IdealHandle<F>)> = a
        .generators
        .iter()
        .map(|g| (g, b))
        .chain(b.generators.iter().map(|g| (g, a)))
        .collect();
    // compute both bases up front so workers share them
    a.groebner();
    b.groebner();
    exec.map(&checks, |(g, i)| radical_member(g, i))
        .into_iter()
        .all(|ok| ok)
}

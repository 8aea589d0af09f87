//! Buchberger's algorithm over a coefficient field, with ideal and radical
//! membership, Krull dimension and height.
//!
//! Pairs are selected by the normal strategy (smallest lcm degree first) and
//! pruned with the coprime-leading-monomial and chain criteria. The output is
//! the reduced basis, monic and sorted by descending leading monomial, so
//! equal ideals give identical bases.

mod ideal;

pub use ideal::{
    ideal_dimension, ideal_height, ideal_member, radical_equal, radical_equal_with, radical_member,
    IdealHandle,
};

use std::cmp::Ordering;
use std::collections::HashSet;

use thiserror::Error;

use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::ring::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("generators live in different rings")]
    RingMismatch,
    #[error("monomial order has {order} variables, ring has {ring}")]
    OrderMismatch { order: usize, ring: usize },
}

type Term<F> = (Monomial, <F as crate::ring::Ring>::Element);
/// Terms sorted by descending monomial under the active order.
type Sparse<F> = Vec<Term<F>>;

/// A reduced Groebner basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    ring: PolyRing<F>,
    order: MonomialOrder,
    elements: Vec<Sparse<F>>,
}

fn to_sparse<F: Field>(f: &Polynomial<F>, order: &MonomialOrder) -> Sparse<F> {
    let mut terms: Sparse<F> = f.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    terms
}

fn from_sparse<F: Field>(ring: &PolyRing<F>, s: &[Term<F>]) -> Polynomial<F> {
    ring.from_terms(s.iter().cloned())
}

/// `a - c * m * g`, both inputs sorted descending.
fn sub_scaled<F: Field>(
    k: &F,
    order: &MonomialOrder,
    a: &[Term<F>],
    c: &F::Element,
    m: &Monomial,
    g: &[Term<F>],
) -> Sparse<F> {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter().map(|(gm, gc)| (gm.mul(m), k.neg(&k.mul(c, gc))));
    let mut pending = gi.next();
    while let Some((pm, pc)) = pending.take() {
        if i == a.len() {
            out.push((pm, pc));
            out.extend(gi.by_ref());
            break;
        }
        match order.cmp(&a[i].0, &pm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
                pending = Some((pm, pc));
            }
            Ordering::Less => {
                out.push((pm, pc));
                pending = gi.next();
            }
            Ordering::Equal => {
                let s = k.add(&a[i].1, &pc);
                if !k.is_zero(&s) {
                    out.push((pm, s));
                }
                i += 1;
                pending = gi.next();
            }
        }
    }
    out.extend_from_slice(&a[i.min(a.len())..]);
    out
}

/// Full reduction of `f` by `basis` (every term, not just the leading one).
fn reduce<F: Field>(
    k: &F,
    order: &MonomialOrder,
    mut p: Sparse<F>,
    basis: &[Sparse<F>],
) -> Sparse<F> {
    let mut rem = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let (lm, lc) = &p[start];
        let divisor = basis.iter().find(|g| g[0].0.divides(lm));
        match divisor {
            Some(g) => {
                let q = g[0].0.quotient_of(lm).expect("divides");
                let c = k.div(lc, &g[0].1).expect("leading coefficient nonzero");
                // leading terms cancel exactly; skip them
                p = sub_scaled(k, order, &p[start + 1..], &c, &q, &g[1..]);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    rem
}

fn make_monic<F: Field>(k: &F, p: Sparse<F>) -> Sparse<F> {
    let inv = k.inv(&p[0].1).expect("nonzero leading coefficient");
    p.into_iter().map(|(m, c)| (m, k.mul(&c, &inv))).collect()
}

fn s_polynomial<F: Field>(k: &F, order: &MonomialOrder, f: &[Term<F>], g: &[Term<F>]) -> Sparse<F> {
    let lcm = f[0].0.lcm(&g[0].0);
    let mf = f[0].0.quotient_of(&lcm).expect("lcm");
    let mg = g[0].0.quotient_of(&lcm).expect("lcm");
    let cf = k.inv(&f[0].1).expect("nonzero");
    let cg = k.inv(&g[0].1).expect("nonzero");
    let scaled_f: Sparse<F> = f[1..]
        .iter()
        .map(|(m, c)| (m.mul(&mf), k.mul(c, &cf)))
        .collect();
    sub_scaled(k, order, &scaled_f, &cg, &mg, &g[1..])
}

fn is_constant<F: Field>(p: &[Term<F>]) -> bool {
    p[0].0.is_one()
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// The reduced Groebner basis of `(gens)` for `order`.
///
/// Panics if a generator does not belong to `ring`; [`IdealHandle::new`]
/// validates that up front.
pub fn buchberger<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Polynomial<F>],
    order: &MonomialOrder,
) -> GroebnerBasis<F> {
    assert_eq!(order.nvars(), ring.nvars(), "order does not fit ring");
    let k = ring.coeff_ring();
    let unit = || GroebnerBasis {
        ring: ring.clone(),
        order: order.clone(),
        elements: vec![vec![(Monomial::one(ring.nvars()), k.one())]],
    };

    let mut g: Vec<Sparse<F>> = Vec::new();
    for f in gens {
        assert!(f.ring() == ring, "generator from a different ring");
        if f.is_zero() {
            continue;
        }
        let s = make_monic(k, to_sparse(f, order));
        if is_constant::<F>(&s) {
            return unit();
        }
        g.push(s);
    }

    let mut pairs: Vec<Pair> = Vec::new();
    let mut live: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push(Pair {
                i,
                j,
                lcm: g[i][0].0.lcm(&g[j][0].0),
            });
            live.insert((i, j));
        }
    }

    while !pairs.is_empty() {
        let pick = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.lcm
                    .degree()
                    .cmp(&pb.lcm.degree())
                    .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(pick);
        live.remove(&(pair.i, pair.j));
        let (lmi, lmj) = (&g[pair.i][0].0, &g[pair.j][0].0);
        if lmi.is_coprime(lmj) {
            continue;
        }
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..g.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && g[k][0].0.divides(&pair.lcm)
                && !live.contains(&key(pair.i, k))
                && !live.contains(&key(pair.j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(k, order, &g[pair.i], &g[pair.j]);
        let r = reduce(k, order, s, &g);
        if r.is_empty() {
            continue;
        }
        let r = make_monic(k, r);
        if is_constant::<F>(&r) {
            return unit();
        }
        let new = g.len();
        for (i, gi) in g.iter().enumerate() {
            pairs.push(Pair {
                i,
                j: new,
                lcm: gi[0].0.lcm(&r[0].0),
            });
            live.insert((i, new));
        }
        g.push(r);
    }

    GroebnerBasis {
        ring: ring.clone(),
        order: order.clone(),
        elements: interreduce(k, order, g),
    }
}

/// Minimal basis, then tail-reduce each element against the others.
fn interreduce<F: Field>(k: &F, order: &MonomialOrder, g: Vec<Sparse<F>>) -> Vec<Sparse<F>> {
    let n = g.len();
    let kept: Vec<Sparse<F>> = (0..n)
        .filter(|&i| {
            !(0..n).any(|j| {
                j != i && g[j][0].0.divides(&g[i][0].0) && (g[j][0].0 != g[i][0].0 || j < i)
            })
        })
        .map(|i| g[i].clone())
        .collect();
    let mut reduced: Vec<Sparse<F>> = (0..kept.len())
        .map(|i| {
            let others: Vec<Sparse<F>> = kept
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, s)| s.clone())
                .collect();
            let head = kept[i][0].clone();
            let tail = reduce(k, order, kept[i][1..].to_vec(), &others);
            let mut s = vec![head];
            s.extend(tail);
            make_monic(k, s)
        })
        .collect();
    reduced.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    reduced
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generators(&self) -> Vec<Polynomial<F>> {
        self.elements
            .iter()
            .map(|s| from_sparse(&self.ring, s))
            .collect()
    }

    /// Elements printed with terms in this basis's order.
    pub fn formatted(&self) -> Vec<String> {
        self.generators()
            .iter()
            .map(|g| g.format_with_order(&self.order))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|s| s[0].0.clone()).collect()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && is_constant::<F>(&self.elements[0])
    }

    /// The remainder of `f` on division by this basis.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let s = reduce(
            self.ring.coeff_ring(),
            &self.order,
            to_sparse(f, &self.order),
            &self.elements,
        );
        from_sparse(&self.ring, &s)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Checks monic, reduced, and that every S-polynomial reduces to zero.
    pub fn verify(&self) -> bool {
        let k = self.ring.coeff_ring();
        let monic = self.elements.iter().all(|s| k.is_one(&s[0].1));
        let reduced = self.elements.iter().enumerate().all(|(i, s)| {
            s.iter().all(|(m, _)| {
                self.elements
                    .iter()
                    .enumerate()
                    .all(|(j, g)| j == i || !g[0].0.divides(m))
            })
        });
        let complete = (0..self.elements.len()).all(|j| {
            (0..j).all(|i| {
                let s = s_polynomial(k, &self.order, &self.elements[i], &self.elements[j]);
                reduce(k, &self.order, s, &self.elements).is_empty()
            })
        });
        monic && reduced && complete
    }

    /// Krull dimension of the quotient: the largest set of variables
    /// containing the support of no leading monomial. `None` for the unit
    /// ideal.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        let masks: Vec<u64> = self
            .elements
            .iter()
            .map(|s| s[0].0.support_mask())
            .collect();
        let n = self.ring.nvars();
        assert!(n <= 64, "dimension supports at most 64 variables");
        let mut best = 0;
        independent_search(&masks, n, 0, 0, 0, &mut best);
        Some(best)
    }
}

fn independent_search(
    masks: &[u64],
    n: usize,
    var: usize,
    chosen: u64,
    size: usize,
    best: &mut usize,
) {
    if size + (n - var) <= *best {
        return;
    }
    if var == n {
        *best = size;
        return;
    }
    let with = chosen | (1 << var);
    if masks.iter().all(|&m| m & !with != 0) {
        independent_search(masks, n, var + 1, with, size + 1, best);
    }
    independent_search(masks, n, var + 1, chosen, size, best);
}

impl<F: Field> std::fmt::Display for GroebnerBasis<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens = self.formatted();
        if gens.is_empty() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", gens.join(", "))
        }
    }
}

/// Remainder of `f` under division by the reduced basis.
pub fn normal_form<F: Field>(f: &Polynomial<F>, basis: &GroebnerBasis<F>) -> Polynomial<F> {
    basis.normal_form(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;
    use crate::poly::OrderKind;
    use crate::ring::Ring;

    fn ring(p: u64, vars: &[&str]) -> PolyRing<PrimeField> {
        PolyRing::new(PrimeField::new(p).unwrap(), vars.iter().copied()).unwrap()
    }

    fn gb(
        r: &PolyRing<PrimeField>,
        gens: &[&str],
        order: MonomialOrder,
    ) -> GroebnerBasis<PrimeField> {
        let gens: Vec<_> = gens.iter().map(|g| r.parse(g).unwrap()).collect();
        buchberger(r, &gens, &order)
    }

    #[test]
    fn principal_linear() {
        let r = ring(5, &["x"]);
        assert_eq!(gb(&r, &["x"], MonomialOrder::grevlex(1)).to_string(), "(x)");
    }

    #[test]
    fn linear_system() {
        let r = ring(5, &["x", "y"]);
        let b = gb(&r, &["x + y", "x - y"], MonomialOrder::lex(2));
        assert_eq!(b.to_string(), "(x, y)");
    }

    #[test]
    fn verified_output() {
        let r = ring(7, &["x", "y"]);
        let b = gb(&r, &["x^2 + y^2", "x*y"], MonomialOrder::grevlex(2));
        assert!(b.verify());
        // (x^2 + y^2, xy) contains y^3 = y(x^2+y^2) - x(xy)
        assert!(b.contains(&r.parse("y^3").unwrap()));
        assert!(!b.contains(&r.parse("y^2").unwrap()));
    }

    #[test]
    fn empty_and_unit() {
        let r = ring(3, &["x", "y"]);
        let b = gb(&r, &[], MonomialOrder::grevlex(2));
        assert!(b.is_empty());
        assert_eq!(b.to_string(), "(0)");
        let f = r.parse("x*y + 1").unwrap();
        assert_eq!(b.normal_form(&f), f);
        assert_eq!(b.dimension(), Some(2));
        let u = gb(&r, &["x", "x + 1"], MonomialOrder::grevlex(2));
        assert!(u.is_unit());
        assert_eq!(u.dimension(), None);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(5, &["x", "y"]);
        let b = gb(&r, &["x", "y"], MonomialOrder::grevlex(2));
        assert!(b.normal_form(&r.parse("y").unwrap()).is_zero());
        let b = gb(&r, &["x^2 + 1"], MonomialOrder::grevlex(2));
        assert_eq!(b.normal_form(&r.parse("x^2").unwrap()), r.from_i64(-1));
    }

    #[test]
    fn dimension_examples() {
        let r = ring(3, &["x", "y"]);
        assert_eq!(
            gb(&r, &["x*y"], MonomialOrder::grevlex(2)).dimension(),
            Some(1)
        );
        assert_eq!(
            gb(&r, &["x", "y"], MonomialOrder::grevlex(2)).dimension(),
            Some(0)
        );
        let r3 = ring(2, &["x", "y", "z"]);
        assert_eq!(
            gb(&r3, &["x*y", "x*z"], MonomialOrder::grevlex(3)).dimension(),
            Some(2)
        );
        assert_eq!(
            gb(&r3, &["x*y*z"], MonomialOrder::grevlex(3)).dimension(),
            Some(2)
        );
    }

    #[test]
    fn lex_elimination() {
        // twisted cubic: lex basis eliminates x
        let r = ring(101, &["x", "y", "z"]);
        let b = gb(&r, &["y - x^2", "z - x^3"], MonomialOrder::lex(3));
        assert!(b.verify());
        assert!(b.contains(&r.parse("y^3 - z^2").unwrap()));
        let perm = MonomialOrder::new(OrderKind::GrevLex, vec![2, 1, 0]).unwrap();
        let b2 = gb(&r, &["y - x^2", "z - x^3"], perm);
        assert!(b2.verify());
        assert!(b2.contains(&r.parse("x*z - y^2").unwrap()));
    }

    #[test]
    fn sub_scaled_merges() {
        let r = ring(7, &["x", "y"]);
        let o = MonomialOrder::grevlex(2);
        let k = r.coeff_ring();
        let a = to_sparse(&r.parse("x^2 + y").unwrap(), &o);
        let g = to_sparse(&r.parse("x + 1").unwrap(), &o);
        let out = sub_scaled(k, &o, &a, &k.one(), &Monomial::var(2, 0), &g);
        assert_eq!(from_sparse(&r, &out), r.parse("y - x").unwrap());
    }
}

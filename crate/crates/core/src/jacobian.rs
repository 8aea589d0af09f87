//! Jacobian-type matrices and their determinantal ideals.
//!
//! Rows are indexed by derivations, columns by generators. Minors are
//! enumerated lexicographically in (row set, column set).

use std::collections::HashMap;

use crate::arith::{LocalIntegers, PrimeField};
use crate::calculus::{d_dpi, delta_p, partials_mod_pi, reduce_mod_p, special_fiber_ring};
use crate::dvr::EisensteinDVR;
use crate::exec::Execution;
use crate::groebner::IdealHandle;
use crate::poly::{PolyError, PolyRing, Polynomial};
use crate::ring::{Field, Ring};

/// Largest minor size computed by memoized cofactor expansion.
pub const COFACTOR_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    Shape {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("matrix entries live in different rings")]
    RingMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A rectangular matrix of polynomials with labelled rows and columns.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<R: Ring> {
    ring: PolyRing<R>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<R>>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl<R: Ring> PolyMatrix<R> {
    /// Row-major entries.
    pub fn new(
        ring: &PolyRing<R>,
        rows: usize,
        cols: usize,
        entries: Vec<Polynomial<R>>,
    ) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Shape {
                rows,
                cols,
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if entries.iter().any(|e| e.ring() != ring) {
            return Err(MatrixError::RingMismatch);
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
            row_labels: (1..=rows).map(|i| format!("r{i}")).collect(),
            col_labels: (1..=cols).map(|j| format!("f{j}")).collect(),
        })
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    fn from_columns(
        ring: &PolyRing<R>,
        row_labels: Vec<String>,
        columns: Vec<Vec<Polynomial<R>>>,
    ) -> Self {
        let rows = row_labels.len();
        let cols = columns.len();
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for col in &columns {
                entries.push(col[i].clone());
            }
        }
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
            row_labels,
            col_labels: (1..=cols).map(|j| format!("f{j}")).collect(),
        }
    }

    pub fn ring(&self) -> &PolyRing<R> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<R> {
        &self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial<R>> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// The matrix with rows reordered: row `i` of the result is row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rows);
        let mut entries = Vec::with_capacity(self.entries.len());
        for &i in perm {
            entries.extend_from_slice(&self.entries[i * self.cols..(i + 1) * self.cols]);
        }
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
            row_labels: perm.iter().map(|&i| self.row_labels[i].clone()).collect(),
            col_labels: self.col_labels.clone(),
        }
    }

    /// Entry-wise evaluation, row-major.
    pub fn evaluate(&self, point: &[R::Element]) -> Result<Vec<Vec<R::Element>>, PolyError> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).evaluate(point))
                    .collect()
            })
            .collect()
    }
}

impl<R: Ring> std::fmt::Display for PolyMatrix<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}: [{}]", self.row_labels[i], row.join(", "))?;
        }
        Ok(())
    }
}

/// Entry `(i, j)` is `df_j/dx_i`.
pub fn classical_jacobian<R: Ring>(ring: &PolyRing<R>, fs: &[Polynomial<R>]) -> PolyMatrix<R> {
    let labels = ring.var_names().iter().map(|v| format!("d/d{v}")).collect();
    let columns = fs
        .iter()
        .map(|f| {
            (0..ring.nvars())
                .map(|i| f.partial_derivative(i).expect("index in range"))
                .collect()
        })
        .collect();
    PolyMatrix::from_columns(ring, labels, columns)
}

fn mixed_labels(vars: &[String], first: &str) -> Vec<String> {
    std::iter::once(first.to_string())
        .chain(vars.iter().map(|v| format!("d/d{v}")))
        .collect()
}

/// The mixed pi-Jacobian over `F_p[x]`: row 0 is `d/dpi`, row `i` is
/// `d/dx_i mod pi`.
pub fn mixed_pi_jacobian(
    ring: &PolyRing<EisensteinDVR>,
    fs: &[Polynomial<EisensteinDVR>],
) -> PolyMatrix<PrimeField> {
    let target = special_fiber_ring(ring);
    let columns = fs
        .iter()
        .map(|f| {
            let mut col = vec![d_dpi(f)];
            col.extend(partials_mod_pi(f));
            col
        })
        .collect();
    PolyMatrix::from_columns(&target, mixed_labels(ring.var_names(), "d/dpi"), columns)
}

/// The unramified mixed matrix over `F_p[x]`: row 0 is `delta_p mod p`, row
/// `i` is `(df/dx_i)^p mod p`.
pub fn hj_mixed_jacobian(
    ring: &PolyRing<LocalIntegers>,
    fs: &[Polynomial<LocalIntegers>],
) -> PolyMatrix<PrimeField> {
    let p = ring.coeff_ring().prime();
    let target = ring.with_coeffs(ring.coeff_ring().residue_field());
    let columns =
        fs.iter()
            .map(|f| {
                let mut col = vec![reduce_mod_p(&delta_p(f))];
                col.extend((0..ring.nvars()).map(|i| {
                    reduce_mod_p(&f.partial_derivative(i).expect("index in range")).pow(p)
                }));
                col
            })
            .collect();
    let labels = std::iter::once("delta_p".to_string())
        .chain(ring.var_names().iter().map(|v| format!("(d/d{v})^p")))
        .collect();
    PolyMatrix::from_columns(&target, labels, columns)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] != i + n - k) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// How minors are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeterminantMethod {
    /// Cofactor expansion up to [`COFACTOR_LIMIT`], Bareiss above.
    Auto,
    Cofactor,
    Bareiss,
}

/// The `h x h` minors in lexicographic (row set, column set) order,
/// zeros included. `h = 0` gives `[1]`.
pub fn minors<R: Ring>(m: &PolyMatrix<R>, h: usize) -> Vec<Polynomial<R>> {
    minors_with(m, h, Execution::default(), DeterminantMethod::Auto)
}

pub fn minors_with<R: Ring>(
    m: &PolyMatrix<R>,
    h: usize,
    exec: Execution,
    method: DeterminantMethod,
) -> Vec<Polynomial<R>> {
    if h == 0 {
        return vec![m.ring.one()];
    }
    if h > m.rows.min(m.cols) {
        return Vec::new();
    }
    let use_cofactor = match method {
        DeterminantMethod::Auto => h <= COFACTOR_LIMIT,
        DeterminantMethod::Cofactor => true,
        DeterminantMethod::Bareiss => false,
    };
    if use_cofactor && m.rows <= 64 && m.cols <= 64 {
        cofactor_minors(m, h, exec)
    } else {
        let pairs: Vec<(Vec<usize>, Vec<usize>)> = combinations(m.rows, h)
            .into_iter()
            .flat_map(|r| {
                combinations(m.cols, h)
                    .into_iter()
                    .map(move |c| (r.clone(), c))
            })
            .collect();
        exec.map(&pairs, |(r, c)| bareiss(m, r, c))
    }
}

fn mask(set: &[usize]) -> u64 {
    set.iter().fold(0, |acc, &i| acc | (1 << i))
}

/// Layered cofactor expansion along the first row, memoized on
/// (row mask, column mask).
fn cofactor_minors<R: Ring>(m: &PolyMatrix<R>, h: usize, exec: Execution) -> Vec<Polynomial<R>> {
    let mut prev: HashMap<(u64, u64), Polynomial<R>> = HashMap::new();
    for s in 1..=h {
        // row sets that occur as suffixes of some h-subset
        let row_sets: Vec<Vec<usize>> = combinations(m.rows, s)
            .into_iter()
            .filter(|r| r[0] >= h - s)
            .collect();
        let col_sets = combinations(m.cols, s);
        let keys: Vec<(&Vec<usize>, &Vec<usize>)> = row_sets
            .iter()
            .flat_map(|r| col_sets.iter().map(move |c| (r, c)))
            .collect();
        let layer = exec.map(&keys, |&(r, c)| {
            if s == 1 {
                return m.get(r[0], c[0]).clone();
            }
            let rest = mask(&r[1..]);
            let cmask = mask(c);
            let mut acc = m.ring.zero();
            for (k, &col) in c.iter().enumerate() {
                let a = m.get(r[0], col);
                if a.is_zero() {
                    continue;
                }
                let sub = &prev[&(rest, cmask & !(1 << col))];
                if sub.is_zero() {
                    continue;
                }
                let term = a * sub;
                acc = if k % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        });
        if s == h {
            // keys are already in lexicographic (row set, column set) order
            return layer;
        }
        prev = keys
            .iter()
            .map(|(r, c)| (mask(r), mask(c)))
            .zip(layer)
            .collect();
    }
    unreachable!("h >= 1")
}

/// Fraction-free Gaussian elimination on the submatrix.
fn bareiss<R: Ring>(m: &PolyMatrix<R>, rows: &[usize], cols: &[usize]) -> Polynomial<R> {
    let h = rows.len();
    let mut a: Vec<Vec<Polynomial<R>>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect())
        .collect();
    let mut negate = false;
    let mut prev = m.ring.one();
    for k in 0..h.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..h).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return m.ring.zero(),
            }
        }
        for i in k + 1..h {
            for j in k + 1..h {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.divide_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[h - 1][h - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// The ideal of `h x h` minors (zero minors dropped).
pub fn minors_ideal<F: Field>(m: &PolyMatrix<F>, h: usize) -> IdealHandle<F> {
    IdealHandle::new(&m.ring, minors(m, h)).expect("minors share the matrix ring")
}

/// Outcome of the two Fitting-ideal tests on a presentation matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FittingCheck {
    /// `F_r = (1)` modulo the base ideal.
    pub top_trivial: bool,
    /// `F_{r-1} = 0` modulo the base ideal.
    pub below_zero: bool,
}

/// Fitting ideals of the module presented by `m` (one generator per row),
/// computed in `k[x]/base`. `F_r = I_{g-r}` with `g` the number of rows, and
/// `I_s = (1)` for `s <= 0`.
pub fn fitting_ideal_check<F: Field>(
    m: &PolyMatrix<F>,
    r: usize,
    base: &IdealHandle<F>,
) -> FittingCheck {
    let minors_of = |size: i64| -> Vec<Polynomial<F>> {
        if size <= 0 {
            vec![m.ring.one()]
        } else {
            minors(m, size as usize)
        }
    };
    let g = m.rows as i64;
    let top = base
        .extend_by(minors_of(g - r as i64))
        .expect("same ring")
        .is_unit();
    let below = minors_of(g - r as i64 + 1).iter().all(|f| base.contains(f));
    FittingCheck {
        top_trivial: top,
        below_zero: below,
    }
}

//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything downstream (quotient ranks, lattice equalities, membership
//! certificates) goes through the column echelon routine in this module.
//!
//! Conventions for the column Hermite normal form `H = M·U`:
//!
//! * pivots are searched from the bottom row upwards, so the pivot of a
//!   column is its *last* nonzero entry and every row below it is zero;
//! * pivot entries are positive, and every other entry in a pivot row lies
//!   in `[0, pivot)`;
//! * pivot columns are ordered by ascending pivot row and are followed by the
//!   zero columns.
//!
//! With generators listed in a fixed order, the pivot rows of a relation
//! lattice are therefore the *latest* generators that can be eliminated, and
//! the non-pivot rows (the earliest ones) survive as quotient representatives.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Int = BigInt;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows<T: Into<Int> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Builds a matrix from column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Int>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Int) {
        self.data[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Int]) -> Result<Vec<Int>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Int::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Int> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut a: Vec<Vec<Int>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Row lists of `i64` for debug dumps; fails if an entry does not fit.
    pub fn to_json(&self) -> Result<serde_json::Value> {
        let rows: Option<Vec<Vec<i64>>> =
            (0..self.rows).map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect()).collect();
        let rows = rows.ok_or_else(|| Error::Overflow("matrix entry exceeds i64".into()))?;
        Ok(serde_json::to_value(rows).expect("integer rows serialize"))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

fn identity_columns(k: usize) -> Vec<Vec<Int>> {
    (0..k)
        .map(|j| {
            let mut c = vec![Int::zero(); k];
            c[j] = Int::one();
            c
        })
        .collect()
}

/// Mutable reference to `v[a]` together with a shared one to `v[b]`, `a != b`.
fn pair_mut<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &lo[b])
    }
}

/// `target[..len] += factor * source[..len]`
fn axpy(target: &mut [Int], source: &[Int], factor: &Int, len: usize) {
    for (t, s) in target[..len].iter_mut().zip(&source[..len]) {
        if !s.is_zero() {
            *t += factor * s;
        }
    }
}

/// Result of the column echelon routine, in the module's HNF convention.
pub(crate) struct ColumnEchelon {
    /// Pivot columns (ascending pivot row) followed by zero columns.
    pub columns: Vec<Vec<Int>>,
    /// Columns of the unimodular transform, permuted alongside `columns`.
    pub transform: Option<Vec<Vec<Int>>>,
    pub pivot_rows: Vec<usize>,
}

impl ColumnEchelon {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

pub(crate) fn column_echelon(rows: usize, mut cols: Vec<Vec<Int>>, track: bool) -> ColumnEchelon {
    let k = cols.len();
    let mut u = track.then(|| identity_columns(k));
    let mut free: Vec<usize> = (0..k).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();

    for r in (0..rows).rev() {
        let mut cand: Vec<usize> = free.iter().copied().filter(|&c| !cols[c][r].is_zero()).collect();
        if cand.is_empty() {
            continue;
        }
        while cand.len() > 1 {
            let p = *cand
                .iter()
                .min_by(|&&x, &&y| cols[x][r].magnitude().cmp(cols[y][r].magnitude()))
                .expect("nonempty");
            let mut next = vec![p];
            for &c in &cand {
                if c == p {
                    continue;
                }
                let q = -(&cols[c][r] / &cols[p][r]);
                let (tc, sc) = pair_mut(&mut cols, c, p);
                axpy(tc, sc, &q, r + 1);
                if let Some(u) = u.as_mut() {
                    let (tu, su) = pair_mut(u, c, p);
                    axpy(tu, su, &q, k);
                }
                if !cols[c][r].is_zero() {
                    next.push(c);
                }
            }
            cand = next;
        }
        let p = cand[0];
        if cols[p][r].is_negative() {
            cols[p].iter_mut().for_each(|x| *x = -&*x);
            if let Some(u) = u.as_mut() {
                u[p].iter_mut().for_each(|x| *x = -&*x);
            }
        }
        free.retain(|&c| c != p);
        for &(_, c) in &pivots {
            let q = -cols[c][r].div_floor(&cols[p][r]);
            if q.is_zero() {
                continue;
            }
            let (tc, sc) = pair_mut(&mut cols, c, p);
            axpy(tc, sc, &q, r + 1);
            if let Some(u) = u.as_mut() {
                let (tu, su) = pair_mut(u, c, p);
                axpy(tu, su, &q, k);
            }
        }
        pivots.push((r, p));
    }

    pivots.sort_unstable();
    let order: Vec<usize> = pivots.iter().map(|&(_, c)| c).chain(free.iter().copied()).collect();
    let pivot_rows = pivots.iter().map(|&(r, _)| r).collect();
    let mut taken: Vec<Option<Vec<Int>>> = cols.into_iter().map(Some).collect();
    let columns = order.iter().map(|&c| taken[c].take().expect("permutation")).collect();
    let transform = u.map(|u| {
        let mut taken: Vec<Option<Vec<Int>>> = u.into_iter().map(Some).collect();
        order.iter().map(|&c| taken[c].take().expect("permutation")).collect()
    });
    ColumnEchelon { columns, transform, pivot_rows }
}

/// Column Hermite normal form `h = m·u` with `u` unimodular.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// `(row, column)` positions of the pivots of `h`.
    pub pivots: Vec<(usize, usize)>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Largest transform for which the self-check also computes `det(U)`.
const DET_CHECK_LIMIT: usize = 24;

pub fn hnf(m: &IntMatrix) -> Hnf {
    let ech = column_echelon(m.rows(), m.columns(), true);
    let h = IntMatrix::from_columns(m.rows(), &ech.columns).expect("echelon keeps column length");
    let u = IntMatrix::from_columns(m.cols(), &ech.transform.expect("tracked"))
        .expect("transform is square");
    let pivots = ech.pivot_rows.iter().enumerate().map(|(j, &r)| (r, j)).collect();
    let out = Hnf { h, u, pivots };
    if cfg!(debug_assertions) {
        assert_eq!(m.mul(&out.u).expect("dimensions"), out.h, "H = M·U self-check");
        if out.u.rows() <= DET_CHECK_LIMIT {
            let det = out.u.determinant().expect("square");
            assert!(det.abs().is_one(), "HNF transform is not unimodular: det = {det}");
        }
    }
    out
}

/// Smith normal form `left · m · right = d` with `m = left_inv · d · right_inv`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero diagonal entries, each dividing the next.
    pub factors: Vec<Int>,
    pub d: IntMatrix,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
}

struct Transforms {
    left: Vec<Vec<Int>>,
    left_inv: Vec<Vec<Int>>,
    right: Vec<Vec<Int>>,
    right_inv: Vec<Vec<Int>>,
}

// Row-major square matrices; the helpers apply one elementary operation and
// keep the matching inverse in sync.
impl Transforms {
    fn new(m: usize, k: usize) -> Self {
        Transforms {
            left: identity_columns(m),
            left_inv: identity_columns(m),
            right: identity_columns(k),
            right_inv: identity_columns(k),
        }
    }

    /// row_i += c·row_j applied to the matrix.
    fn row_add(&mut self, i: usize, j: usize, c: &Int) {
        let (ti, sj) = pair_mut(&mut self.left, i, j);
        let len = ti.len();
        axpy(ti, sj, c, len);
        let neg = -c;
        for row in self.left_inv.iter_mut() {
            let v = &row[i] * &neg;
            row[j] += v;
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.left.swap(i, j);
        for row in self.left_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn row_negate(&mut self, i: usize) {
        self.left[i].iter_mut().for_each(|x| *x = -&*x);
        for row in self.left_inv.iter_mut() {
            row[i] = -&row[i];
        }
    }

    /// col_j += c·col_i applied to the matrix.
    fn col_add(&mut self, j: usize, i: usize, c: &Int) {
        for row in self.right.iter_mut() {
            let v = &row[i] * c;
            row[j] += v;
        }
        let neg = -c;
        let (ti, sj) = pair_mut(&mut self.right_inv, i, j);
        let len = ti.len();
        axpy(ti, sj, &neg, len);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        for row in self.right.iter_mut() {
            row.swap(i, j);
        }
        self.right_inv.swap(i, j);
    }
}

fn diagonalize(mut a: Vec<Vec<Int>>, cols: usize, mut tr: Option<&mut Transforms>) -> Vec<Vec<Int>> {
    let rows = a.len();
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block, stopping early on a unit
            let mut best: Option<(usize, usize)> = None;
            'search: for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.magnitude() < a[bi][bj].magnitude()) {
                        best = Some((i, j));
                        if x.magnitude().is_one() {
                            break 'search;
                        }
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return a;
            };
            if bi != t {
                a.swap(bi, t);
                if let Some(tr) = tr.as_deref_mut() {
                    tr.row_swap(bi, t);
                }
            }
            if bj != t {
                a.iter_mut().for_each(|row| row.swap(bj, t));
                if let Some(tr) = tr.as_deref_mut() {
                    tr.col_swap(bj, t);
                }
            }
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = -(&a[i][t] / &a[t][t]);
                let (ti, st) = pair_mut(&mut a, i, t);
                axpy(ti, st, &q, cols);
                if let Some(tr) = tr.as_deref_mut() {
                    tr.row_add(i, t, &q);
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = -(&a[t][j] / &a[t][t]);
                for row in a.iter_mut() {
                    if !row[t].is_zero() {
                        let v = &row[t] * &q;
                        row[j] += v;
                    }
                }
                if let Some(tr) = tr.as_deref_mut() {
                    tr.col_add(j, t, &q);
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| a[i][t + 1..].iter().any(|x| !x.is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = Int::one();
                    let (tt, si) = pair_mut(&mut a, t, i);
                    axpy(tt, si, &one, cols);
                    if let Some(tr) = tr.as_deref_mut() {
                        tr.row_add(t, i, &one);
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            a[t].iter_mut().for_each(|x| *x = -&*x);
            if let Some(tr) = tr.as_deref_mut() {
                tr.row_negate(t);
            }
        }
    }
    a
}

fn diagonal_factors(a: &[Vec<Int>]) -> Vec<Int> {
    a.iter()
        .enumerate()
        .filter_map(|(i, row)| row.get(i).filter(|x| !x.is_zero()).cloned())
        .collect()
}

fn rows_of(m: &IntMatrix) -> Vec<Vec<Int>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

pub fn snf(m: &IntMatrix) -> SmithForm {
    let mut tr = Transforms::new(m.rows(), m.cols());
    let a = diagonalize(rows_of(m), m.cols(), Some(&mut tr));
    let factors = diagonal_factors(&a);
    let square = |rows: Vec<Vec<Int>>| {
        let n = rows.len();
        IntMatrix::from_rows(&rows).unwrap_or_else(|_| IntMatrix::zeros(n, n))
    };
    let d = IntMatrix::from_rows(&a).unwrap_or_else(|_| IntMatrix::zeros(m.rows(), m.cols()));
    let out = SmithForm {
        factors,
        d,
        left: square(tr.left),
        left_inv: square(tr.left_inv),
        right: square(tr.right),
        right_inv: square(tr.right_inv),
    };
    if cfg!(debug_assertions) {
        let rebuilt = out
            .left_inv
            .mul(&out.d)
            .and_then(|x| x.mul(&out.right_inv))
            .expect("dimensions");
        assert_eq!(&rebuilt, m, "M = P·D·Q self-check");
        let reduced = out.left.mul(m).and_then(|x| x.mul(&out.right)).expect("dimensions");
        assert_eq!(reduced, out.d, "U·M·V = D self-check");
        for w in out.factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "divisibility chain broken");
        }
    }
    out
}

/// Nonzero invariant factors of `m`, without transforms.
///
/// The matrix is first brought to column echelon form, which leaves the
/// invariant factors unchanged and makes the diagonalisation cheap when the
/// pivots are units.
pub fn invariant_factors(m: &IntMatrix) -> Vec<Int> {
    invariant_factors_of_columns(m.rows(), m.columns())
}

pub(crate) fn invariant_factors_of_columns(rows: usize, columns: Vec<Vec<Int>>) -> Vec<Int> {
    let ech = column_echelon(rows, columns, false);
    let rank = ech.rank();
    if ech.columns[..rank].iter().zip(&ech.pivot_rows).all(|(c, &r)| c[r].is_one()) {
        // unit pivots on a staircase: the pivot minor is unitriangular
        return vec![Int::one(); rank];
    }
    let a: Vec<Vec<Int>> = (0..rows).map(|i| ech.columns[..rank].iter().map(|c| c[i].clone()).collect()).collect();
    let a = diagonalize(a, rank, None);
    diagonal_factors(&a)
}

pub fn rank(m: &IntMatrix) -> usize {
    column_echelon(m.rows(), m.columns(), false).rank()
}

/// A sublattice of `Z^ambient`, kept in column HNF together with the
/// expression of each basis vector in the original generators.
#[derive(Clone, Debug)]
pub struct Lattice {
    ambient: usize,
    generators: Vec<Vec<Int>>,
    basis: Vec<Vec<Int>>,
    pivot_rows: Vec<usize>,
    /// `express[j]` gives coefficients over `generators` reproducing `basis[j]`;
    /// absent for lattices built without certificates.
    express: Option<Vec<Vec<Int>>>,
}

impl Lattice {
    pub fn from_generators(ambient: usize, generators: Vec<Vec<Int>>) -> Result<Self> {
        Self::build(ambient, generators, true)
    }

    /// Same lattice, but [`member`](Self::member) is unavailable; skips the
    /// transform bookkeeping, which dominates for wide generator sets.
    pub fn from_generators_uncertified(ambient: usize, generators: Vec<Vec<Int>>) -> Result<Self> {
        Self::build(ambient, generators, false)
    }

    fn build(ambient: usize, generators: Vec<Vec<Int>>, certified: bool) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient) {
            return Err(Error::Dimension(format!(
                "generator of length {} in ambient dimension {ambient}",
                g.len()
            )));
        }
        let ech = column_echelon(ambient, generators.clone(), certified);
        let rank = ech.rank();
        let mut columns = ech.columns;
        columns.truncate(rank);
        let express = ech.transform.map(|mut t| {
            t.truncate(rank);
            t
        });
        Ok(Lattice { ambient, generators, basis: columns, pivot_rows: ech.pivot_rows, express })
    }

    pub fn from_matrix(m: &IntMatrix) -> Self {
        Self::from_generators(m.rows(), m.columns()).expect("columns have matrix height")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    /// HNF basis vectors.
    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivot_rows
    }

    /// HNF basis as a matrix (columns).
    pub fn hnf_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.ambient, &self.basis).expect("basis columns have ambient length")
    }

    /// Coordinates of `v` in the HNF basis, if `v` lies in the lattice.
    fn solve_basis(&self, v: &[Int]) -> Result<Option<Vec<Int>>> {
        if v.len() != self.ambient {
            return Err(Error::Dimension(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient
            )));
        }
        let mut w = v.to_vec();
        let mut y = vec![Int::zero(); self.rank()];
        for j in (0..self.rank()).rev() {
            let r = self.pivot_rows[j];
            if w[r + 1..].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
            if w[r].is_zero() {
                continue;
            }
            let (q, rem) = w[r].div_rem(&self.basis[j][r]);
            if !rem.is_zero() {
                return Ok(None);
            }
            axpy(&mut w, &self.basis[j], &-&q, r + 1);
            y[j] = q;
        }
        Ok(w.iter().all(Zero::is_zero).then_some(y))
    }

    pub fn contains(&self, v: &[Int]) -> Result<bool> {
        Ok(self.solve_basis(v)?.is_some())
    }

    /// Integer coefficients over the original generators reproducing `v`.
    pub fn member(&self, v: &[Int]) -> Result<Option<Vec<Int>>> {
        let express = self
            .express
            .as_ref()
            .ok_or_else(|| Error::Internal("lattice was built without certificates".into()))?;
        let Some(y) = self.solve_basis(v)? else {
            return Ok(None);
        };
        let mut x = vec![Int::zero(); self.generators.len()];
        for (yj, ex) in y.iter().zip(express) {
            if !yj.is_zero() {
                let len = x.len();
                axpy(&mut x, ex, yj, len);
            }
        }
        if cfg!(debug_assertions) {
            assert_eq!(combine(&self.generators, &x, self.ambient), v, "membership certificate self-check");
        }
        Ok(Some(x))
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension("lattices in different ambient spaces".into()));
        }
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by mutual membership of HNF bases.
    pub fn same_as(&self, other: &Lattice) -> Result<bool> {
        Ok(self.is_sublattice_of(other)? && other.is_sublattice_of(self)?)
    }
}

/// `Σ coeffs[j] · generators[j]`
pub fn combine(generators: &[Vec<Int>], coeffs: &[Int], ambient: usize) -> Vec<Int> {
    let mut out = vec![Int::zero(); ambient];
    for (g, c) in generators.iter().zip(coeffs) {
        if !c.is_zero() {
            axpy(&mut out, g, c, ambient);
        }
    }
    out
}

/// Lattice of integer vectors `x` with `m·x = 0`.
pub fn kernel_lattice(m: &IntMatrix) -> Lattice {
    let h = hnf(m);
    let gens: Vec<Vec<Int>> = (h.rank()..m.cols()).map(|j| h.u.column(j)).collect();
    Lattice::from_generators(m.cols(), gens).expect("transform columns have matrix width")
}

/// Lattice spanned by the columns of `m`.
pub fn image_lattice(m: &IntMatrix) -> Lattice {
    Lattice::from_matrix(m)
}

/// `i64` view of an integer, for the JSON boundary.
pub fn to_i64(x: &Int) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(format!("{x} does not fit in i64")))
}

#[derive(Serialize)]
struct MatrixDump {
    rows: usize,
    cols: usize,
    entries: serde_json::Value,
}

/// Debug dump of a matrix as JSON, used behind the CLI's `--dump-matrices` flag.
pub fn dump_matrix(m: &IntMatrix) -> Result<String> {
    let dump = MatrixDump { rows: m.rows(), cols: m.cols(), entries: m.to_json()? };
    Ok(serde_json::to_string(&dump).expect("dump serializes"))
}

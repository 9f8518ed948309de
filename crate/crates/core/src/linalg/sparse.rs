//! Row-compressed sparse matrices over a [`Field`] with exact elimination.

use std::collections::BTreeMap;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Sparse matrix storing only nonzero entries, row by row with strictly
/// increasing column indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    n_rows: usize,
    n_cols: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: SparseMatrix,
    pub pivots: Vec<usize>,
}

impl SparseMatrix {
    pub fn zeros(field: Field, n_rows: usize, n_cols: usize) -> Self {
        SparseMatrix { field, n_rows, n_cols, rows: vec![Vec::new(); n_rows] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, field.one())]).collect();
        SparseMatrix { field, n_rows: n, n_cols: n, rows }
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are
    /// summed and zeros dropped.
    pub fn from_triplets<I>(field: Field, n_rows: usize, n_cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); n_rows];
        for (r, c, v) in entries {
            assert!(r < n_rows && c < n_cols, "entry ({r},{c}) outside {n_rows}x{n_cols}");
            debug_assert_eq!(v.field(), field);
            match acc[r].get_mut(&c) {
                Some(x) => *x += &v,
                None => {
                    acc[r].insert(c, v);
                }
            }
        }
        let rows = acc.into_iter().map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        SparseMatrix { field, n_rows, n_cols, rows }
    }

    pub fn from_dense(field: Field, dense: &[Vec<Scalar>]) -> Self {
        let n_cols = dense.first().map_or(0, Vec::len);
        let rows = dense
            .iter()
            .map(|row| {
                assert_eq!(row.len(), n_cols, "ragged dense matrix");
                row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect()
            })
            .collect();
        SparseMatrix { field, n_rows: dense.len(), n_cols, rows }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, n_rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let entries = cols.iter().enumerate().flat_map(|(c, col)| {
            assert_eq!(col.len(), n_rows);
            col.iter().enumerate().map(move |(r, v)| (r, c, v.clone()))
        });
        Self::from_triplets(field, n_rows, cols.len(), entries)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.rows[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => self.rows[r][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.n_cols]; self.n_rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.n_rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.n_cols];
        for (r, c, v) in self.entries() {
            rows[c].push((r, v.clone()));
        }
        SparseMatrix { field: self.field, n_rows: self.n_cols, n_cols: self.n_rows, rows }
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.n_cols != rhs.n_rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product".into(),
                left: self.n_cols,
                right: rhs.n_rows,
            });
        }
        self.check_field(rhs)?;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &rhs.rows[*k] {
                        let t = a * b;
                        match acc.get_mut(c) {
                            Some(x) => *x += &t,
                            None => {
                                acc.insert(*c, t);
                            }
                        }
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseMatrix { field: self.field, n_rows: self.n_rows, n_cols: rhs.n_cols, rows })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.n_cols);
        self.rows
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (c, a) in row {
                    if !v[*c].is_zero() {
                        acc += &(a * &v[*c]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        self.combine(rhs, true)
    }

    fn combine(&self, rhs: &SparseMatrix, subtract: bool) -> Result<SparseMatrix> {
        if (self.n_rows, self.n_cols) != (rhs.n_rows, rhs.n_cols) {
            return Err(Error::DimensionMismatch {
                context: format!("matrix sum {}x{} vs {}x{}", self.n_rows, self.n_cols, rhs.n_rows, rhs.n_cols),
                left: self.n_rows * self.n_cols,
                right: rhs.n_rows * rhs.n_cols,
            });
        }
        self.check_field(rhs)?;
        let rows = self.rows.iter().zip(&rhs.rows).map(|(a, b)| merge_rows(a, b, subtract)).collect();
        Ok(SparseMatrix { field: self.field, n_rows: self.n_rows, n_cols: self.n_cols, rows })
    }

    pub fn scale(&self, s: &Scalar) -> SparseMatrix {
        if s.is_zero() {
            return Self::zeros(self.field, self.n_rows, self.n_cols);
        }
        let rows = self.rows.iter().map(|row| row.iter().map(|(c, v)| (*c, v * s)).collect()).collect();
        SparseMatrix { field: self.field, n_rows: self.n_rows, n_cols: self.n_cols, rows }
    }

    pub fn neg(&self) -> SparseMatrix {
        self.scale(&-self.field.one())
    }

    /// Kronecker product with the left factor as major index:
    /// `(a ⊗ b)[i·rb + k, j·cb + l] = a[i,j]·b[k,l]`.
    pub fn kronecker(&self, b: &SparseMatrix) -> SparseMatrix {
        let (rb, cb) = (b.n_rows, b.n_cols);
        let mut rows = Vec::with_capacity(self.n_rows * rb);
        for arow in &self.rows {
            for brow in &b.rows {
                let mut row = Vec::with_capacity(arow.len() * brow.len());
                for (j, x) in arow {
                    for (l, y) in brow {
                        row.push((j * cb + l, x * y));
                    }
                }
                rows.push(row);
            }
        }
        SparseMatrix { field: self.field, n_rows: self.n_rows * rb, n_cols: self.n_cols * cb, rows }
    }

    /// Rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> SparseMatrix {
        let rows = self.rows[r0..r1]
            .iter()
            .map(|row| row.iter().filter(|(c, _)| (c0..c1).contains(c)).map(|(c, v)| (c - c0, v.clone())).collect())
            .collect();
        SparseMatrix { field: self.field, n_rows: r1 - r0, n_cols: c1 - c0, rows }
    }

    /// Copies `block` into position `(r0, c0)` of a zero-padded matrix of the
    /// given shape, adding to existing entries.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &SparseMatrix) {
        assert!(r0 + block.n_rows <= self.n_rows && c0 + block.n_cols <= self.n_cols);
        for (r, row) in block.rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let shifted: Vec<(usize, Scalar)> = row.iter().map(|(c, v)| (c + c0, v.clone())).collect();
            let target = &mut self.rows[r0 + r];
            *target = merge_rows(target, &shifted, false);
        }
    }

    /// Gauss-Jordan elimination on the sparse rows.
    pub fn rref(&self) -> Rref {
        let mut rows: Vec<Vec<(usize, Scalar)>> = self.rows.iter().filter(|r| !r.is_empty()).cloned().collect();
        let mut pivots = Vec::new();
        let mut done = 0;
        while done < rows.len() {
            // smallest leading column first, sparsest row on ties
            let (best, col) = rows[done..]
                .iter()
                .enumerate()
                .map(|(k, r)| (k + done, r[0].0, r.len()))
                .min_by_key(|&(_, c, len)| (c, len))
                .map(|(k, c, _)| (k, c))
                .expect("unprocessed rows are nonempty");
            rows.swap(done, best);
            let inv = rows[done][0].1.inv().expect("leading entry is nonzero");
            for (_, v) in rows[done].iter_mut() {
                *v = &*v * &inv;
            }
            let pivot_row = rows[done].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k == done {
                    continue;
                }
                if let Ok(pos) = row.binary_search_by_key(&col, |(j, _)| *j) {
                    let factor = row[pos].1.clone();
                    *row = axpy_row(row, &pivot_row, &factor);
                }
            }
            pivots.push(col);
            done += 1;
            rows.retain(|r| !r.is_empty());
        }
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by_key(|&k| rows[k][0].0);
        let mut out_rows: Vec<Vec<(usize, Scalar)>> = order.iter().map(|&k| std::mem::take(&mut rows[k])).collect();
        pivots.sort_unstable();
        out_rows.resize(self.n_rows, Vec::new());
        Rref {
            matrix: SparseMatrix { field: self.field, n_rows: self.n_rows, n_cols: self.n_cols, rows: out_rows },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots } = self.rref();
        let is_pivot = {
            let mut v = vec![false; self.n_cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        (0..self.n_cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![self.field.zero(); self.n_cols];
                v[f] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    let x = matrix.get(r, f);
                    if !x.is_zero() {
                        v[p] = -x;
                    }
                }
                v
            })
            .collect()
    }

    /// One solution of `self · x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.n_rows);
        let n = self.n_cols;
        let mut aug = self.clone();
        aug.n_cols += 1;
        for (r, x) in b.iter().enumerate() {
            if !x.is_zero() {
                aug.rows[r].push((n, x.clone()));
            }
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut x = vec![self.field.zero(); n];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, n);
        }
        Some(x)
    }

    /// Two-sided inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<SparseMatrix> {
        if self.n_rows != self.n_cols {
            return None;
        }
        let n = self.n_rows;
        let mut aug = self.clone();
        aug.n_cols = 2 * n;
        for (r, row) in aug.rows.iter_mut().enumerate() {
            row.push((n + r, self.field.one()));
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(matrix.submatrix(0, n, n, 2 * n))
    }

    /// Position of the first entry where `self` and `other` differ, ordered
    /// by column and then row.
    pub fn first_difference(&self, other: &SparseMatrix) -> Option<(usize, usize)> {
        let diff = self.sub(other).ok()?;
        diff.entries().map(|(r, c, _)| (c, r)).min().map(|(c, r)| (r, c))
    }

    fn check_field(&self, other: &SparseMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }
}

fn merge_rows(a: &[(usize, Scalar)], b: &[(usize, Scalar)], subtract: bool) -> Vec<(usize, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = if subtract { -&b[j].1 } else { b[j].1.clone() };
            out.push((b[j].0, v));
            j += 1;
        } else {
            let v = if subtract { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `row - factor · pivot`.
fn axpy_row(row: &[(usize, Scalar)], pivot: &[(usize, Scalar)], factor: &Scalar) -> Vec<(usize, Scalar)> {
    let scaled: Vec<(usize, Scalar)> = pivot.iter().map(|(c, v)| (*c, v * factor)).collect();
    merge_rows(row, &scaled, true)
}

//! Exact integer matrices: a dense `BigInt` matrix for Smith normal form
//! with transforms, and a sparse column store for boundary matrices.
//!
//! Sparse matrices export as triplet text:
//!
//! ```text
//! triplet <rows> <cols> <nnz>
//! <row> <col> <value>        # nnz lines, 0-based, sorted by (row, col)
//! ```

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{HomologyError, ParseError};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self, HomologyError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(HomologyError::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|r| r.iter().map(|&v| v.into())).collect();
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub(crate) fn entry_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, HomologyError> {
        if self.cols != other.rows {
            return Err(HomologyError::Dimension(format!("{}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.entry_mut(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Entries of the main diagonal.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += factor * row[source]`
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if !s.is_zero() {
                let delta = factor * s;
                self.data[target * self.cols + j] += delta;
            }
        }
    }

    /// `col[target] += factor * col[source]`
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + source];
            if !s.is_zero() {
                let delta = factor * s;
                self.data[i * self.cols + target] += delta;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -v;
        }
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_zero() {
                    m.columns[j].push((i, self.get(i, j).clone()));
                }
            }
        }
        m
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Sparse integer matrix stored by columns; each column is sorted by row
/// and holds no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Builds column `j` from `(row, value)` pairs, summing duplicates.
    pub fn set_column(&mut self, j: usize, mut entries: Vec<(usize, BigInt)>) {
        entries.sort_by_key(|(i, _)| *i);
        let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            debug_assert!(i < self.rows);
            match merged.last_mut() {
                Some((last, acc)) if *last == i => *acc += v,
                _ => merged.push((i, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        self.columns[j] = merged;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, BigInt)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.columns[j].iter().find(|(r, _)| *r == i).map(|(_, v)| v.clone()).unwrap_or_default()
    }

    pub fn triplets(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out: Vec<(usize, usize, BigInt)> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v.clone())))
            .collect();
        out.sort_by_key(|(i, j, _)| (*i, *j));
        out
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, BigInt)]) -> Result<Self, HomologyError> {
        let mut per_col: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); cols];
        for (i, j, v) in triplets {
            if *i >= rows || *j >= cols {
                return Err(HomologyError::Dimension(format!("entry ({i}, {j}) outside {rows}x{cols}")));
            }
            per_col[*j].push((*i, v.clone()));
        }
        let mut m = SparseMatrix::zeros(rows, cols);
        for (j, entries) in per_col.into_iter().enumerate() {
            m.set_column(j, entries);
        }
        Ok(m)
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, HomologyError> {
        if self.cols != other.rows {
            return Err(HomologyError::Dimension(format!("{}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (j, col) in other.columns.iter().enumerate() {
            let mut acc: Vec<(usize, BigInt)> = Vec::new();
            for (k, b) in col {
                for (i, a) in &self.columns[*k] {
                    acc.push((*i, a * b));
                }
            }
            out.set_column(j, acc);
        }
        Ok(out)
    }

    /// Rows reordered so that new row `i` is old row `row_order[i]`, and
    /// likewise for columns.
    pub fn permuted(&self, row_order: &[usize], col_order: &[usize]) -> SparseMatrix {
        let mut row_pos = vec![0; self.rows];
        for (new, &old) in row_order.iter().enumerate() {
            row_pos[old] = new;
        }
        let mut out = SparseMatrix::zeros(self.rows, self.cols);
        for (new_j, &old_j) in col_order.iter().enumerate() {
            out.set_column(new_j, self.columns[old_j].iter().map(|(i, v)| (row_pos[*i], v.clone())).collect());
        }
        out
    }

    pub fn write_triplets(&self) -> String {
        let trips = self.triplets();
        let mut out = format!("triplet {} {} {}\n", self.rows, self.cols, trips.len());
        for (i, j, v) in trips {
            let _ = writeln!(out, "{i} {j} {v}");
        }
        out
    }

    pub fn parse_triplets(input: &str) -> Result<SparseMatrix, ParseError> {
        let mut lines = input.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (n, header) = lines.next().ok_or_else(|| ParseError::new(1, "empty input"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let dims: Vec<usize> = match toks.as_slice() {
            ["triplet", r, c, z] => [r, c, z]
                .iter()
                .map(|t| t.parse::<usize>().map_err(|_| ParseError::new(n + 1, format!("bad number `{t}`"))))
                .collect::<Result<_, _>>()?,
            _ => return Err(ParseError::new(n + 1, "expected `triplet <rows> <cols> <nnz>`")),
        };
        let mut trips = Vec::with_capacity(dims[2]);
        for (n, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [i, j, v] = toks.as_slice() else {
                return Err(ParseError::new(n + 1, "expected `<row> <col> <value>`"));
            };
            let i = i.parse::<usize>().map_err(|_| ParseError::new(n + 1, "bad row index"))?;
            let j = j.parse::<usize>().map_err(|_| ParseError::new(n + 1, "bad column index"))?;
            let v = v.parse::<BigInt>().map_err(|_| ParseError::new(n + 1, "bad value"))?;
            trips.push((i, j, v));
        }
        if trips.len() != dims[2] {
            return Err(ParseError::new(n + 1, format!("header promises {} entries, found {}", dims[2], trips.len())));
        }
        SparseMatrix::from_triplets(dims[0], dims[1], &trips).map_err(|e| ParseError::new(n + 1, e.to_string()))
    }
}

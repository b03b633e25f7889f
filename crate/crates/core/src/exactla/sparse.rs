//! Sparse vectors and row-compressed sparse matrices over [`Rat`].

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rat;

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseVec {
    entries: Vec<(usize, Rat)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, Rat)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, Rat)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w += &v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    /// Builds a vector from entries that are already sorted and nonzero.
    pub(crate) fn from_sorted(entries: Vec<(usize, Rat)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Rat::ONE)] }
    }

    pub fn from_dense(values: &[Rat]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rat> {
        let mut out = vec![Rat::ZERO; len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Rat)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Rat)> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<(usize, &Rat)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> Rat {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rat::ZERO,
        }
    }

    pub fn scale(&self, c: &Rat) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Rat, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, c * &b[j].1));
                j += 1;
            } else {
                let v = &a[i].1 + &(c * &b[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Rat::ONE, other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&-Rat::ONE, other)
    }

    pub fn dot(&self, other: &SparseVec) -> Rat {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut acc = Rat::ZERO;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += &a[i].1 * &b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Re-indexes entries by `offset + index`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect(),
        }
    }
}

/// Dense scatter buffer used to accumulate sparse linear combinations.
pub(crate) struct Accumulator {
    values: Vec<Rat>,
    touched: Vec<usize>,
    flags: Vec<bool>,
}

impl Accumulator {
    pub(crate) fn new(len: usize) -> Self {
        Accumulator { values: vec![Rat::ZERO; len], touched: Vec::new(), flags: vec![false; len] }
    }

    pub(crate) fn add(&mut self, i: usize, v: &Rat) {
        if !self.flags[i] {
            self.flags[i] = true;
            self.touched.push(i);
            self.values[i] = v.clone();
        } else {
            self.values[i] += v;
        }
    }

    pub(crate) fn add_scaled(&mut self, c: &Rat, v: &SparseVec) {
        for (i, x) in v.entries() {
            self.add(*i, &(c * x));
        }
    }

    pub(crate) fn drain(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.flags[i] = false;
            let v = std::mem::take(&mut self.values[i]);
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        self.touched.clear();
        SparseVec::from_sorted(out)
    }
}

/// Row-compressed sparse matrix. Rows are [`SparseVec`]s; no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseMat {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMat { nrows, ncols, rows: vec![SparseVec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rat::ONE)
    }

    pub fn scalar(n: usize, c: &Rat) -> Self {
        let rows = (0..n)
            .map(|i| if c.is_zero() { SparseVec::new() } else { SparseVec::from_sorted(vec![(i, c.clone())]) })
            .collect();
        SparseMat { nrows: n, ncols: n, rows }
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        assert!(rows.iter().all(|r| r.max_index().is_none_or(|m| m < ncols)), "column index out of range");
        SparseMat { nrows: rows.len(), ncols, rows }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, cols: &[SparseVec]) -> Self {
        SparseMat::from_rows(nrows, cols.to_vec()).transpose()
    }

    pub fn from_triplets(nrows: usize, ncols: usize, triplets: impl IntoIterator<Item = (usize, usize, Rat)>) -> Self {
        let mut buckets: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); nrows];
        for (r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "entry ({r},{c}) out of range");
            buckets[r].push((c, v));
        }
        SparseMat { nrows, ncols, rows: buckets.into_iter().map(SparseVec::from_pairs).collect() }
    }

    pub fn from_dense(rows: &[Vec<Rat>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged dense matrix");
        SparseMat { nrows: rows.len(), ncols, rows: rows.iter().map(|r| SparseVec::from_dense(r)).collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| Rat::from_int(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        self.rows.iter().map(|r| r.to_dense(self.ncols)).collect()
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.rows[r].get(c)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(SparseVec::is_zero)
    }

    pub fn is_scalar(&self, c: &Rat) -> bool {
        self.is_square() && *self == SparseMat::scalar(self.nrows, c)
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar(&Rat::ONE)
    }

    /// Iterates over stored `(row, col, value)` entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.entries().iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> SparseMat {
        let mut buckets: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); self.ncols];
        for (r, c, v) in self.entries() {
            buckets[c].push((r, v.clone()));
        }
        SparseMat {
            nrows: self.ncols,
            ncols: self.nrows,
            rows: buckets.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    pub fn column(&self, c: usize) -> SparseVec {
        let entries = self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let v = row.get(c);
                (!v.is_zero()).then_some((r, v))
            })
            .collect();
        SparseVec::from_sorted(entries)
    }

    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in matrix product");
        let mut acc = Accumulator::new(other.ncols);
        let rows = self
            .rows
            .iter()
            .map(|row| {
                for (k, a) in row.entries() {
                    acc.add_scaled(a, &other.rows[*k]);
                }
                acc.drain()
            })
            .collect();
        SparseMat { nrows: self.nrows, ncols: other.ncols, rows }
    }

    /// Matrix-vector product `self · v` with `v` a column vector.
    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        assert!(v.max_index().is_none_or(|m| m < self.ncols), "vector too long");
        let entries = self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let x = row.dot(v);
                (!x.is_zero()).then_some((r, x))
            })
            .collect();
        SparseVec::from_sorted(entries)
    }

    /// Row-vector product `v · self`.
    pub fn vec_mul(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.ncols);
        for (k, a) in v.entries() {
            acc.add_scaled(a, &self.rows[*k]);
        }
        acc.drain()
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        self.axpy(&Rat::ONE, other)
    }

    pub fn sub(&self, other: &SparseMat) -> SparseMat {
        self.axpy(&-Rat::ONE, other)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Rat, other: &SparseMat) -> SparseMat {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "dimension mismatch in sum");
        SparseMat {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.axpy(c, b)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> SparseMat {
        SparseMat { nrows: self.nrows, ncols: self.ncols, rows: self.rows.iter().map(|r| r.scale(c)).collect() }
    }

    pub fn neg(&self) -> SparseMat {
        self.scale(&-Rat::ONE)
    }

    /// `[self, other]` side by side.
    pub fn hstack(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.nrows, other.nrows);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut e = a.entries().to_vec();
                e.extend(b.shifted(self.ncols).into_entries());
                SparseVec::from_sorted(e)
            })
            .collect();
        SparseMat { nrows: self.nrows, ncols: self.ncols + other.ncols, rows }
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        SparseMat { nrows: self.nrows + other.nrows, ncols: self.ncols, rows }
    }

    /// Submatrix with the given row and column index lists.
    pub fn select(&self, row_idx: &[usize], col_idx: &[usize]) -> SparseMat {
        let mut map = vec![usize::MAX; self.ncols];
        for (new, &old) in col_idx.iter().enumerate() {
            map[old] = new;
        }
        let rows = row_idx
            .iter()
            .map(|&r| {
                SparseVec::from_pairs(
                    self.rows[r]
                        .entries()
                        .iter()
                        .filter(|(c, _)| map[*c] != usize::MAX)
                        .map(|(c, v)| (map[*c], v.clone()))
                        .collect(),
                )
            })
            .collect();
        SparseMat { nrows: row_idx.len(), ncols: col_idx.len(), rows }
    }

    pub fn pow(&self, k: u32) -> SparseMat {
        assert!(self.is_square());
        let mut out = SparseMat::identity(self.nrows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

impl fmt::Debug for SparseMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMat {}x{} [", self.nrows, self.ncols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> SparseMat {
        SparseMat::from_i64(rows)
    }

    #[test]
    fn product_and_transpose() {
        let a = m(&[vec![1, 2, 0], vec![0, 0, 3]]);
        let b = m(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(a.mul(&b), m(&[vec![1, 2], vec![3, 3]]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().get(2, 1), Rat::from_int(3));
    }

    #[test]
    fn cancellation_drops_entries() {
        let a = m(&[vec![1, -1]]);
        let b = m(&[vec![1], vec![1]]);
        let p = a.mul(&b);
        assert!(p.is_zero());
        assert_eq!(p.nnz(), 0);
        let v = SparseVec::from_pairs(vec![(3, Rat::ONE), (1, Rat::ONE), (3, -Rat::ONE)]);
        assert_eq!(v.entries(), &[(1, Rat::ONE)]);
    }

    #[test]
    fn stacking_and_selection() {
        let a = m(&[vec![1, 2], vec![3, 4]]);
        let i = SparseMat::identity(2);
        let h = a.hstack(&i);
        assert_eq!(h.ncols(), 4);
        assert_eq!(h.select(&[0, 1], &[2, 3]), i);
        assert_eq!(a.vstack(&i).select(&[2, 3], &[0, 1]), i);
        assert_eq!(a.mul_vec(&SparseVec::unit(1)), a.column(1));
        assert_eq!(a.vec_mul(&SparseVec::unit(0)), a.row(0).clone());
    }
}

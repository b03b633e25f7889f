//! Echelon forms, kernels and subspaces.

use serde::{Deserialize, Serialize};

use super::{Rat, SparseMat, SparseVec};
use crate::{Error, Result};

/// Reduced row-echelon form of a list of rows.
#[derive(Clone, Debug)]
pub(crate) struct Rref {
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseVec>,
}

/// Row-reduces `rows` (each of length `ncols`).
///
/// Columns are eliminated left to right. Among the rows that lead in the
/// current column, the pivot is the one with the fewest stored entries,
/// ties going to the lowest row index.
pub(crate) fn rref(rows: Vec<SparseVec>, ncols: usize) -> Rref {
    let mut slots: Vec<Option<SparseVec>> = Vec::with_capacity(rows.len());
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (k, r) in rows.into_iter().enumerate() {
        if let Some((c, _)) = r.leading() {
            assert!(r.max_index().unwrap() < ncols, "row longer than ncols");
            buckets[c].push(k);
        }
        slots.push(Some(r));
    }

    let mut pivots = Vec::new();
    let mut out: Vec<SparseVec> = Vec::new();
    for c in 0..ncols {
        let cand = std::mem::take(&mut buckets[c]);
        if cand.is_empty() {
            continue;
        }
        let p = *cand
            .iter()
            .min_by_key(|&&k| (slots[k].as_ref().unwrap().nnz(), k))
            .unwrap();
        let prow = slots[p].take().unwrap();
        let lead = prow.leading().unwrap().1.recip();
        let prow = prow.scale(&lead);
        for &k in &cand {
            if k == p {
                continue;
            }
            let r = slots[k].take().unwrap();
            let f = -r.leading().unwrap().1.clone();
            let nr = r.axpy(&f, &prow);
            if let Some((c2, _)) = nr.leading() {
                buckets[c2].push(k);
                slots[k] = Some(nr);
            }
        }
        pivots.push(c);
        out.push(prow);
    }

    // Back substitution: clear every pivot column above its pivot.
    for i in (0..out.len()).rev() {
        let c = pivots[i];
        let (head, tail) = out.split_at_mut(i);
        let prow = &tail[0];
        for row in head.iter_mut() {
            let f = row.get(c);
            if !f.is_zero() {
                *row = row.axpy(&-f, prow);
            }
        }
    }
    Rref { pivots, rows: out }
}

/// A linear subspace of `Q^n`, stored as the reduced row-echelon basis.
///
/// The echelon basis is unique, so two subspaces are equal exactly when their
/// representations are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::coordinate(ambient_dim, &(0..ambient_dim).collect::<Vec<_>>())
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        assert!(idx.last().is_none_or(|&m| m < ambient_dim), "coordinate index out of range");
        Subspace { ambient_dim, basis: idx.iter().map(|&i| SparseVec::unit(i)).collect(), pivots: idx }
    }

    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let r = rref(vectors.into_iter().collect(), ambient_dim);
        Subspace { ambient_dim, basis: r.rows, pivots: r.pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The basis as the rows of a `dim × ambient_dim` matrix.
    pub fn basis_matrix(&self) -> SparseMat {
        SparseMat::from_rows(self.ambient_dim, self.basis.clone())
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Rat>> {
        let coords: Vec<Rat> = self.pivots.iter().map(|&p| v.get(p)).collect();
        let mut residual = v.clone();
        for (c, b) in coords.iter().zip(&self.basis) {
            residual = residual.axpy(&-c, b);
        }
        residual.is_zero().then_some(coords)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|b| other.contains(b))
    }

    /// The vector with the given coordinates in the echelon basis.
    pub fn combine(&self, coords: &[Rat]) -> SparseVec {
        assert_eq!(coords.len(), self.dim());
        coords.iter().zip(&self.basis).fold(SparseVec::new(), |acc, (c, b)| acc.axpy(c, b))
    }

    /// `{ y : y · x = 0 for all x in self }`.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis_matrix())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(Subspace::span(self.ambient_dim, self.basis.iter().chain(&other.basis).cloned()))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(self.ambient_dim, other.ambient_dim));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let constraints = self.annihilator().basis_matrix().vstack(&other.annihilator().basis_matrix());
        Ok(kernel(&constraints))
    }
}

/// Null space `{ x : m x = 0 }` of `m`.
pub fn kernel(m: &SparseMat) -> Subspace {
    let n = m.ncols();
    let r = rref(m.rows().to_vec(), n);
    let mut is_pivot = vec![false; n];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    // Column f of the echelon rows, gathered once per free column.
    let mut by_col: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); n];
    for (k, row) in r.rows.iter().enumerate() {
        for (c, v) in row.entries() {
            if !is_pivot[*c] {
                by_col[*c].push((k, v.clone()));
            }
        }
    }
    let vectors: Vec<SparseVec> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut pairs: Vec<(usize, Rat)> = by_col[f].iter().map(|(k, v)| (r.pivots[*k], -v)).collect();
            pairs.push((f, Rat::ONE));
            SparseVec::from_pairs(pairs)
        })
        .collect();
    Subspace::span(n, vectors)
}

pub fn rank(m: &SparseMat) -> usize {
    rref(m.rows().to_vec(), m.ncols()).pivots.len()
}

/// `exp(m) = Σ m^j / j!` for a nilpotent square matrix.
pub fn exp_nilpotent(m: &SparseMat) -> Result<SparseMat> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.nrows(), m.ncols()));
    }
    let n = m.nrows();
    let mut total = SparseMat::identity(n);
    let mut term = SparseMat::identity(n);
    for j in 1..=n.max(1) {
        term = term.mul(m).scale(&Rat::new(1, j as i64));
        if term.is_zero() {
            return Ok(total);
        }
        total = total.add(&term);
    }
    Err(Error::NotNilpotent(n))
}

/// Matrix of `m` on the invariant subspace `s`, in the echelon basis of `s`.
///
/// Column `k` holds the coordinates of `m · b_k`.
pub fn restrict_operator(m: &SparseMat, s: &Subspace) -> Result<SparseMat> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.nrows(), m.ncols()));
    }
    if m.ncols() != s.ambient_dim() {
        return Err(Error::DimensionMismatch(m.ncols(), s.ambient_dim()));
    }
    let images: Vec<SparseVec> = s.basis().iter().map(|b| m.mul_vec(b)).collect();
    restrict_images(&images, s)
}

/// Like [`restrict_operator`], given the images of the basis vectors of `s`.
pub fn restrict_images(images: &[SparseVec], s: &Subspace) -> Result<SparseMat> {
    let mut cols = Vec::with_capacity(images.len());
    for (k, y) in images.iter().enumerate() {
        let c = s.coordinates(y).ok_or(Error::NotInvariant { index: k })?;
        cols.push(SparseVec::from_dense(&c));
    }
    Ok(SparseMat::from_columns(s.dim(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> SparseMat {
        SparseMat::from_i64(rows)
    }

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| Rat::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = kernel(&SparseMat::identity(2));
        assert_eq!(k.dim(), 0);
        assert_eq!(k.ambient_dim(), 2);
    }

    #[test]
    fn kernel_of_difference_row() {
        let k = kernel(&m(&[vec![1, -1]]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0], v(&[1, 1]));
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        assert_eq!(kernel(&SparseMat::zeros(3, 4)), Subspace::full(4));
    }

    #[test]
    fn intersect_basic_cases() {
        let a = Subspace::span(3, vec![v(&[1, 2, 3]), v(&[0, 1, 1])]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        let x = Subspace::coordinate(4, &[0, 1]);
        let y = Subspace::coordinate(4, &[2, 3]);
        assert!(x.intersect(&y).unwrap().is_zero());
        assert!(matches!(x.intersect(&Subspace::full(3)), Err(Error::DimensionMismatch(4, 3))));
    }

    #[test]
    fn exp_of_zero_and_jordan_block() {
        assert!(exp_nilpotent(&SparseMat::zeros(3, 3)).unwrap().is_identity());
        let n = m(&[vec![0, 1], vec![0, 0]]);
        assert_eq!(exp_nilpotent(&n).unwrap(), m(&[vec![1, 1], vec![0, 1]]));
        assert!(matches!(exp_nilpotent(&m(&[vec![0, 1], vec![1, 0]])), Err(Error::NotNilpotent(_))));
        assert!(matches!(exp_nilpotent(&m(&[vec![0, 1]])), Err(Error::NotSquare(1, 2))));
    }

    #[test]
    fn restrict_examples() {
        let s = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        assert!(restrict_operator(&SparseMat::identity(3), &s).unwrap().is_identity());
        let two = SparseMat::scalar(3, &Rat::from_int(2));
        assert!(restrict_operator(&two, &s).unwrap().is_scalar(&Rat::from_int(2)));

        let block = m(&[vec![1, 2, 0, 0], vec![3, 4, 0, 0], vec![0, 0, 5, 6], vec![0, 0, 7, 8]]);
        let first = Subspace::coordinate(4, &[0, 1]);
        assert_eq!(restrict_operator(&block, &first).unwrap(), m(&[vec![1, 2], vec![3, 4]]));

        let shear = m(&[vec![1, 0], vec![1, 1]]);
        let line = Subspace::coordinate(2, &[0]);
        assert!(matches!(restrict_operator(&shear, &line), Err(Error::NotInvariant { index: 0 })));
    }
}

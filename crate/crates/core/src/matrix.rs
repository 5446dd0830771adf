use std::sync::Arc;

use crate::algebra::{Monoid, Scalar};
use crate::error::{check_bounds, GraphError, Result};

/// One compressed orientation: CSR when the major dimension is rows, CSC
/// when it is columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Compressed<T> {
    /// `offsets[k]..offsets[k + 1]` spans major slice `k`; length is
    /// `major + 1`.
    pub offsets: Vec<usize>,
    /// Minor indices, strictly increasing within each slice.
    pub indices: Vec<usize>,
    pub values: Vec<T>,
}

impl<T: Scalar> Compressed<T> {
    fn empty(major: usize) -> Self {
        Self {
            offsets: vec![0; major + 1],
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn major_len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    /// Number of stored entries in slice `k`.
    #[inline]
    pub fn slice_len(&self, k: usize) -> usize {
        self.offsets[k + 1] - self.offsets[k]
    }

    #[inline]
    pub fn slice(&self, k: usize) -> (&[usize], &[T]) {
        let (lo, hi) = (self.offsets[k], self.offsets[k + 1]);
        (&self.indices[lo..hi], &self.values[lo..hi])
    }

    /// Builds from `(major, minor, value)` triples sorted by `(major, minor)`
    /// without duplicates.
    fn from_sorted_triples(major: usize, triples: impl Iterator<Item = (usize, usize, T)>) -> Self {
        let mut out = Self::empty(major);
        let mut counts = vec![0usize; major];
        for (r, c, v) in triples {
            counts[r] += 1;
            out.indices.push(c);
            out.values.push(v);
        }
        for (k, &c) in counts.iter().enumerate() {
            out.offsets[k + 1] = out.offsets[k] + c;
        }
        out
    }

    /// The other orientation, by counting sort. `minor` is the length of the
    /// minor dimension.
    pub fn transpose(&self, minor: usize) -> Self {
        let nnz = self.nnz();
        let mut offsets = vec![0usize; minor + 1];
        for &c in &self.indices {
            offsets[c + 1] += 1;
        }
        for k in 0..minor {
            offsets[k + 1] += offsets[k];
        }
        let mut next = offsets.clone();
        let mut indices = vec![0usize; nnz];
        let mut values = vec![T::ZERO; nnz];
        for r in 0..self.major_len() {
            let (cols, vals) = self.slice(r);
            for (&c, &v) in cols.iter().zip(vals) {
                let dst = next[c];
                indices[dst] = r;
                values[dst] = v;
                next[c] += 1;
            }
        }
        Self {
            offsets,
            indices,
            values,
        }
    }

    fn check_invariants(&self, minor: usize) -> bool {
        self.offsets[0] == 0
            && self.offsets.windows(2).all(|w| w[0] <= w[1])
            && *self.offsets.last().unwrap() == self.indices.len()
            && self.indices.len() == self.values.len()
            && (0..self.major_len()).all(|k| {
                let (idx, _) = self.slice(k);
                idx.windows(2).all(|w| w[0] < w[1]) && idx.iter().all(|&c| c < minor)
            })
    }
}

/// Which orientations a matrix keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Orientations {
    #[default]
    Both,
    /// Saves memory at the cost of push traversal (no column access).
    CsrOnly,
}

/// An `nrows × ncols` sparse matrix with CSR storage and, by default, CSC
/// storage of the same entry set.
///
/// The compressed arrays are shared behind `Arc`, so cloning and transposing
/// (when both orientations are present) are O(1). Mutation rebuilds.
#[derive(Clone, Debug)]
pub struct SparseMatrix<T> {
    nrows: usize,
    ncols: usize,
    csr: Arc<Compressed<T>>,
    csc: Option<Arc<Compressed<T>>>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            csr: Arc::new(Compressed::empty(nrows)),
            csc: Some(Arc::new(Compressed::empty(ncols))),
        }
    }

    /// Builds from `(row, col, value)` tuples, combining duplicates with
    /// `dedup` in input order. Both orientations are built.
    pub fn build(tuples: &[(usize, usize, T)], nrows: usize, ncols: usize, dedup: &Monoid<T>) -> Result<Self> {
        Self::build_with(tuples, nrows, ncols, dedup, Orientations::Both)
    }

    pub fn build_with(
        tuples: &[(usize, usize, T)],
        nrows: usize,
        ncols: usize,
        dedup: &Monoid<T>,
        orientations: Orientations,
    ) -> Result<Self> {
        for &(r, c, _) in tuples {
            check_bounds(r, nrows)?;
            check_bounds(c, ncols)?;
        }
        let mut sorted = tuples.to_vec();
        // stable, so duplicates combine in input order
        sorted.sort_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, T)> = Vec::with_capacity(sorted.len());
        for (r, c, v) in sorted {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = dedup.apply(last.2, v),
                _ => merged.push((r, c, v)),
            }
        }
        let csr = Compressed::from_sorted_triples(nrows, merged.into_iter());
        Ok(Self::from_csr(nrows, ncols, csr, orientations))
    }

    /// Wraps CSR arrays that already satisfy the sorted, duplicate-free
    /// invariants.
    pub fn from_csr(nrows: usize, ncols: usize, csr: Compressed<T>, orientations: Orientations) -> Self {
        debug_assert_eq!(csr.major_len(), nrows);
        debug_assert!(csr.check_invariants(ncols));
        let csc = match orientations {
            Orientations::Both => Some(Arc::new(csr.transpose(ncols))),
            Orientations::CsrOnly => None,
        };
        Self {
            nrows,
            ncols,
            csr: Arc::new(csr),
            csc,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nvals(&self) -> usize {
        self.csr.nnz()
    }

    /// Average stored entries per row, `nnz / nrows`.
    pub fn avg_degree(&self) -> f64 {
        if self.nrows == 0 {
            0.0
        } else {
            self.nvals() as f64 / self.nrows as f64
        }
    }

    pub fn csr(&self) -> &Compressed<T> {
        &self.csr
    }

    pub fn csc(&self) -> Option<&Compressed<T>> {
        self.csc.as_deref()
    }

    pub fn has_csc(&self) -> bool {
        self.csc.is_some()
    }

    /// Builds the CSC orientation if it is missing.
    pub fn with_csc(mut self) -> Self {
        if self.csc.is_none() {
            self.csc = Some(Arc::new(self.csr.transpose(self.ncols)));
        }
        self
    }

    pub fn without_csc(mut self) -> Self {
        self.csc = None;
        self
    }

    /// Row slices of `A` (`transposed = false`) or of `Aᵀ` (`true`).
    pub(crate) fn rows_of(&self, transposed: bool) -> Option<&Compressed<T>> {
        if transposed {
            self.csc()
        } else {
            Some(&self.csr)
        }
    }

    /// Column slices of `A` or of `Aᵀ`.
    pub(crate) fn cols_of(&self, transposed: bool) -> Option<&Compressed<T>> {
        if transposed {
            Some(&self.csr)
        } else {
            self.csc()
        }
    }

    /// `(nrows, ncols)` of `A` or `Aᵀ`.
    pub(crate) fn shape_of(&self, transposed: bool) -> (usize, usize) {
        if transposed {
            (self.ncols, self.nrows)
        } else {
            (self.nrows, self.ncols)
        }
    }

    pub fn row(&self, i: usize) -> (&[usize], &[T]) {
        self.csr.slice(i)
    }

    pub fn column(&self, j: usize) -> Result<(&[usize], &[T])> {
        self.csc().map(|c| c.slice(j)).ok_or(GraphError::MissingCsc)
    }

    pub fn extract_element(&self, i: usize, j: usize) -> Result<Option<T>> {
        check_bounds(i, self.nrows)?;
        check_bounds(j, self.ncols)?;
        let (cols, vals) = self.row(i);
        Ok(cols.binary_search(&j).ok().map(|p| vals[p]))
    }

    /// Entries in ascending `(row, col)` order.
    pub fn extract_tuples(&self) -> Vec<(usize, usize, T)> {
        let mut out = Vec::with_capacity(self.nvals());
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            out.extend(cols.iter().zip(vals).map(|(&c, &v)| (r, c, v)));
        }
        out
    }

    /// Entries of the CSC orientation sorted by `(row, col)`.
    pub fn extract_tuples_csc(&self) -> Result<Vec<(usize, usize, T)>> {
        let csc = self.csc().ok_or(GraphError::MissingCsc)?;
        let mut out = Vec::with_capacity(csc.nnz());
        for c in 0..self.ncols {
            let (rows, vals) = csc.slice(c);
            out.extend(rows.iter().zip(vals).map(|(&r, &v)| (r, c, v)));
        }
        out.sort_by_key(|&(r, c, _)| (r, c));
        Ok(out)
    }

    /// Writes one entry, rebuilding the compressed arrays.
    pub fn set_element(&mut self, i: usize, j: usize, value: T) -> Result<()> {
        check_bounds(i, self.nrows)?;
        check_bounds(j, self.ncols)?;
        let mut tuples = self.extract_tuples();
        match tuples.binary_search_by_key(&(i, j), |&(r, c, _)| (r, c)) {
            Ok(p) => tuples[p].2 = value,
            Err(p) => tuples.insert(p, (i, j, value)),
        }
        let csr = Compressed::from_sorted_triples(self.nrows, tuples.into_iter());
        let orientations = if self.has_csc() {
            Orientations::Both
        } else {
            Orientations::CsrOnly
        };
        *self = Self::from_csr(self.nrows, self.ncols, csr, orientations);
        Ok(())
    }

    pub fn dup(&self) -> Self {
        self.clone()
    }

    pub fn clear(&mut self) {
        let has_csc = self.has_csc();
        *self = Self::new(self.nrows, self.ncols);
        if !has_csc {
            self.csc = None;
        }
    }

    /// `Aᵀ`. O(1) when both orientations are stored.
    pub fn transpose(&self) -> Self {
        match &self.csc {
            Some(csc) => Self {
                nrows: self.ncols,
                ncols: self.nrows,
                csr: Arc::clone(csc),
                csc: Some(Arc::clone(&self.csr)),
            },
            None => {
                let csc = self.csr.transpose(self.ncols);
                Self {
                    nrows: self.ncols,
                    ncols: self.nrows,
                    csr: Arc::new(csc),
                    csc: Some(Arc::clone(&self.csr)),
                }
            }
        }
    }

    /// Keeps entries for which `keep(row, col, value)` holds.
    pub fn select(&self, keep: impl Fn(usize, usize, T) -> bool) -> Self {
        let triples = self.extract_tuples().into_iter().filter(|&(r, c, v)| keep(r, c, v));
        let csr = Compressed::from_sorted_triples(self.nrows, triples);
        let orientations = if self.has_csc() {
            Orientations::Both
        } else {
            Orientations::CsrOnly
        };
        Self::from_csr(self.nrows, self.ncols, csr, orientations)
    }

    /// Replaces every stored value with `f(row, col, value)`.
    pub fn map_values(&self, f: impl Fn(usize, usize, T) -> T) -> Self {
        let triples = self.extract_tuples().into_iter().map(|(r, c, v)| (r, c, f(r, c, v)));
        let csr = Compressed::from_sorted_triples(self.nrows, triples);
        let orientations = if self.has_csc() {
            Orientations::Both
        } else {
            Orientations::CsrOnly
        };
        Self::from_csr(self.nrows, self.ncols, csr, orientations)
    }

    /// `P A Pᵀ` where `new_id[v]` is the position vertex `v` moves to.
    pub fn permute_symmetric(&self, new_id: &[usize]) -> Result<Self> {
        if self.nrows != self.ncols || new_id.len() != self.nrows {
            return Err(GraphError::DimensionMismatch(
                "symmetric permutation needs a square matrix and a full permutation".into(),
            ));
        }
        let tuples: Vec<_> = self
            .extract_tuples()
            .into_iter()
            .map(|(r, c, v)| (new_id[r], new_id[c], v))
            .collect();
        Self::build(&tuples, self.nrows, self.ncols, &Monoid::plus())
    }

    /// `A == Aᵀ` entrywise, values included.
    pub fn is_symmetric(&self) -> bool {
        if self.nrows != self.ncols {
            return false;
        }
        let t = self.transpose();
        self.csr.as_ref() == t.csr.as_ref()
    }

    pub fn has_diagonal_entries(&self) -> bool {
        (0..self.nrows.min(self.ncols)).any(|i| self.row(i).0.binary_search(&i).is_ok())
    }
}

impl<T: Scalar> PartialEq for SparseMatrix<T> {
    fn eq(&self, other: &Self) -> bool {
        self.nrows == other.nrows && self.ncols == other.ncols && self.csr == other.csr
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path3() -> SparseMatrix<i64> {
        let t = [(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1)];
        SparseMatrix::build(&t, 3, 3, &Monoid::plus()).unwrap()
    }

    #[test]
    fn build_path_graph() {
        let a = path3();
        assert_eq!((a.nrows(), a.ncols(), a.nvals()), (3, 3, 4));
        assert_eq!(a.row(1).0, &[0, 2]);
        assert_eq!(a.column(1).unwrap().0, &[0, 2]);
        assert!(a.is_symmetric());
    }

    #[test]
    fn duplicates_combine() {
        let a = SparseMatrix::build(&[(0, 0, 2i64), (0, 0, 3)], 1, 1, &Monoid::plus()).unwrap();
        assert_eq!(a.nvals(), 1);
        assert_eq!(a.extract_element(0, 0).unwrap(), Some(5));
    }

    #[test]
    fn empty_and_bounds() {
        let a = SparseMatrix::<i64>::build(&[], 2, 2, &Monoid::plus()).unwrap();
        assert_eq!(a.nvals(), 0);
        assert!(matches!(
            SparseMatrix::build(&[(2, 0, 1i64)], 2, 2, &Monoid::plus()),
            Err(GraphError::IndexOutOfBounds { index: 2, bound: 2 })
        ));
    }

    #[test]
    fn csr_only_has_no_columns() {
        let a = SparseMatrix::build_with(&[(0, 1, 1i64)], 2, 2, &Monoid::plus(), Orientations::CsrOnly).unwrap();
        assert!(matches!(a.column(0), Err(GraphError::MissingCsc)));
        assert!(a.with_csc().column(1).is_ok());
    }

    #[test]
    fn accessors() {
        let mut a = path3();
        let b = a.dup();
        a.set_element(0, 2, 9).unwrap();
        assert_eq!(a.extract_element(0, 2).unwrap(), Some(9));
        assert_eq!(b.extract_element(0, 2).unwrap(), None);
        assert_eq!(a.extract_tuples_csc().unwrap(), a.extract_tuples());
        a.clear();
        assert_eq!(a.nvals(), 0);
    }

    #[test]
    fn transpose_swaps_orientations() {
        let a = SparseMatrix::build(&[(0, 1, 3i64), (0, 2, 4)], 2, 3, &Monoid::plus()).unwrap();
        let t = a.transpose();
        assert_eq!((t.nrows(), t.ncols()), (3, 2));
        assert_eq!(t.extract_tuples(), vec![(1, 0, 3), (2, 0, 4)]);
        assert_eq!(t.transpose(), a);
    }

    proptest! {
        #[test]
        fn tuples_round_trip(raw in proptest::collection::vec((0usize..30, 0usize..20, 1i64..5), 0..400)) {
            let a = SparseMatrix::build(&raw, 30, 20, &Monoid::plus()).unwrap();
            let mut expect = std::collections::BTreeMap::new();
            for &(r, c, v) in &raw {
                *expect.entry((r, c)).or_insert(0) += v;
            }
            let expect: Vec<_> = expect.into_iter().map(|((r, c), v)| (r, c, v)).collect();
            prop_assert_eq!(a.extract_tuples(), expect);
            prop_assert_eq!(a.extract_tuples_csc().unwrap(), a.extract_tuples());
            prop_assert!(a.csr().check_invariants(20));
            prop_assert!(a.csc().unwrap().check_invariants(30));
        }
    }
}

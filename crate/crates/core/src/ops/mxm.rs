use rayon::prelude::*;

use super::partition::{split_rows, PARALLEL_MIN_NNZ};
use crate::algebra::{Scalar, Semiring};
use crate::descriptor::{Descriptor, Tally};
use crate::error::{GraphError, Result};
use crate::matrix::{Compressed, Orientations, SparseMatrix};

/// Row lengths, column indices, values and counters of one block of output rows.
type RowBlock<T> = (Vec<usize>, Vec<usize>, Vec<T>, Tally);

/// `C = A B .* M`, evaluated mask-first: for each position `(i, j)` the mask
/// allows, `C(i, j)` is the dot product of row `A(i, :)` with column
/// `B(:, j)`. The dot product walks the shorter of the two sorted lists and
/// binary-searches each element in the longer one.
///
/// Without complement, `C` never stores more entries than the mask. A dot
/// product with no shared index is stored (as the identity) only when the
/// identity differs from the domain zero.
///
/// `desc.transpose_inp0` / `transpose_inp1` read `Aᵀ` / `Bᵀ`; with
/// `transpose_inp1` the columns of `Bᵀ` come from the CSR rows of `B`.
pub fn mxm_masked<T: Scalar>(
    mask: &SparseMatrix<T>,
    semiring: &Semiring<T>,
    a: &SparseMatrix<T>,
    b: &SparseMatrix<T>,
    desc: &Descriptor,
) -> Result<SparseMatrix<T>> {
    let (m, k) = a.shape_of(desc.transpose_inp0);
    let (k2, n) = b.shape_of(desc.transpose_inp1);
    if k != k2 {
        return Err(GraphError::DimensionMismatch(format!(
            "inner dimensions differ: {k} vs {k2}"
        )));
    }
    if (mask.nrows(), mask.ncols()) != (m, n) {
        return Err(GraphError::DimensionMismatch(format!(
            "mask is {}x{} but product is {m}x{n}",
            mask.nrows(),
            mask.ncols()
        )));
    }
    let a_rows = a.rows_of(desc.transpose_inp0).ok_or(GraphError::MissingCsc)?;
    let b_cols = b.cols_of(desc.transpose_inp1).ok_or(GraphError::MissingCsc)?;
    let mask_rows = mask.csr();
    let complement = desc.complemented();
    let keep_empty = semiring.identity() != T::ZERO;

    let workers = if mask_rows.nnz() < PARALLEL_MIN_NNZ && !complement {
        1
    } else {
        desc.workers
    };
    let ranges = split_rows(&mask_rows.offsets, workers, desc.partition);
    let parts: Vec<RowBlock<T>> = ranges
        .into_par_iter()
        .map(|range| {
            let mut lens = Vec::with_capacity(range.len());
            let mut cols = Vec::new();
            let mut vals = Vec::new();
            let mut tally = Tally::default();
            for i in range {
                let before = cols.len();
                let (arow_idx, arow_val) = a_rows.slice(i);
                let (mcols, mvals) = mask_rows.slice(i);
                let mut emit = |j: usize, tally: &mut Tally| {
                    let (bcol_idx, bcol_val) = b_cols.slice(j);
                    if let Some(v) = dot(semiring, arow_idx, arow_val, bcol_idx, bcol_val, tally) {
                        cols.push(j);
                        vals.push(v);
                    } else if keep_empty {
                        cols.push(j);
                        vals.push(semiring.identity());
                    }
                };
                if complement {
                    let mut p = 0;
                    for j in 0..n {
                        while p < mcols.len() && mcols[p] < j {
                            p += 1;
                        }
                        let blocked = p < mcols.len() && mcols[p] == j && mvals[p].is_nonzero();
                        if !blocked {
                            emit(j, &mut tally);
                        }
                    }
                } else {
                    for (&j, &mv) in mcols.iter().zip(mvals) {
                        if mv.is_nonzero() {
                            emit(j, &mut tally);
                        }
                    }
                }
                lens.push(cols.len() - before);
            }
            (lens, cols, vals, tally)
        })
        .collect();

    let mut offsets = Vec::with_capacity(m + 1);
    offsets.push(0);
    let mut indices = Vec::new();
    let mut values = Vec::new();
    let mut tally = Tally::default();
    for (lens, cols, vals, t) in parts {
        for l in lens {
            offsets.push(offsets.last().unwrap() + l);
        }
        indices.extend(cols);
        values.extend(vals);
        tally += t;
    }
    desc.counters.merge(&tally);
    let csr = Compressed {
        offsets,
        indices,
        values,
    };
    Ok(SparseMatrix::from_csr(m, n, csr, Orientations::Both))
}

/// `⊕_k a(k) ⊗ b(k)` over indices present in both lists; `None` when they
/// share no index. Terms are folded in ascending `k`.
fn dot<T: Scalar>(
    semiring: &Semiring<T>,
    a_idx: &[usize],
    a_val: &[T],
    b_idx: &[usize],
    b_val: &[T],
    tally: &mut Tally,
) -> Option<T> {
    let a_shorter = a_idx.len() <= b_idx.len();
    let (short_idx, long_idx) = if a_shorter { (a_idx, b_idx) } else { (b_idx, a_idx) };
    let mut acc = semiring.identity();
    let mut any = false;
    let mut lo = 0;
    for (s, &k) in short_idx.iter().enumerate() {
        tally.entries_read += 1;
        if lo >= long_idx.len() {
            break;
        }
        match long_idx[lo..].binary_search(&k) {
            Ok(off) => {
                let l = lo + off;
                let (x, y) = if a_shorter {
                    (a_val[s], b_val[l])
                } else {
                    (a_val[l], b_val[s])
                };
                acc = semiring.plus(acc, semiring.times(x, y));
                tally.multiplies += 1;
                tally.adds += 1;
                any = true;
                lo = l + 1;
            }
            Err(off) => lo += off,
        }
    }
    any.then_some(acc)
}

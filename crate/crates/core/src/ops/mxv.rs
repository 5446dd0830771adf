//! Matrix-vector products: row-wise pull (SpMV), column-wise push (SpMSpV)
//! and the dispatcher that picks between them.
//!
//! Both kernels fold the contributions of an output row in ascending order of
//! the input index, starting from the semiring identity, so their results are
//! bit-identical whenever both are applicable.

use rayon::prelude::*;

use super::direction::{decide_direction, Direction, DirectionDecision};
use super::mask::MaskView;
use super::partition::{split_even, split_rows, PARALLEL_MIN_NNZ};
use crate::algebra::{Scalar, Semiring};
use crate::descriptor::{Descriptor, DirectionPolicy, Tally};
use crate::error::{GraphError, Result};
use crate::matrix::{Compressed, SparseMatrix};
use crate::vector::{Storage, Vector};

/// Push switches from sort-based combination to a dense accumulator once
/// `flops > DENSE_ACCUMULATOR_RATIO · nrows`.
pub const DENSE_ACCUMULATOR_RATIO: usize = 1;

/// Operand order for ⊗: `mxv` evaluates `A(i,j) ⊗ u(j)`, `vxm` evaluates
/// `u(i) ⊗ A(i,j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Operands {
    MatrixFirst,
    VectorFirst,
}

#[inline(always)]
fn times<T: Scalar>(s: &Semiring<T>, order: Operands, a: T, x: T) -> T {
    match order {
        Operands::MatrixFirst => s.times(a, x),
        Operands::VectorFirst => s.times(x, a),
    }
}

/// The matrix a product actually multiplies by, after transposition flags.
struct Effective<'a, T> {
    matrix: &'a SparseMatrix<T>,
    transposed: bool,
    order: Operands,
}

impl<'a, T: Scalar> Effective<'a, T> {
    fn shape(&self) -> (usize, usize) {
        self.matrix.shape_of(self.transposed)
    }

    fn rows(&self) -> Option<&'a Compressed<T>> {
        self.matrix.rows_of(self.transposed)
    }

    fn cols(&self) -> Option<&'a Compressed<T>> {
        self.matrix.cols_of(self.transposed)
    }
}

fn check_shapes<T: Scalar>(eff: &Effective<'_, T>, u: &Vector<T>) -> Result<(usize, usize)> {
    let (m, n) = eff.shape();
    if u.size() != n {
        return Err(GraphError::DimensionMismatch(format!(
            "matrix is {m}x{n} but input vector has size {}",
            u.size()
        )));
    }
    Ok((m, n))
}

/// `w = A u .* mask` over `semiring`, choosing push or pull per the
/// descriptor's direction policy. `desc.transpose_inp0` multiplies by `Aᵀ`.
pub fn mxv<T: Scalar>(
    mask: Option<&Vector<T>>,
    semiring: &Semiring<T>,
    a: &SparseMatrix<T>,
    u: &Vector<T>,
    desc: &Descriptor,
) -> Result<Vector<T>> {
    let eff = Effective {
        matrix: a,
        transposed: desc.transpose_inp0,
        order: Operands::MatrixFirst,
    };
    dispatch(mask, semiring, &eff, u, desc)
}

/// `w = u A .* mask`, i.e. `Aᵀ u` with `u` on the left of ⊗. Reads the
/// opposite orientation of `A` instead of materializing the transpose.
/// `desc.transpose_inp1` multiplies by `Aᵀ` instead.
pub fn vxm<T: Scalar>(
    mask: Option<&Vector<T>>,
    semiring: &Semiring<T>,
    u: &Vector<T>,
    a: &SparseMatrix<T>,
    desc: &Descriptor,
) -> Result<Vector<T>> {
    let eff = Effective {
        matrix: a,
        transposed: !desc.transpose_inp1,
        order: Operands::VectorFirst,
    };
    dispatch(mask, semiring, &eff, u, desc)
}

fn dispatch<T: Scalar>(
    mask: Option<&Vector<T>>,
    semiring: &Semiring<T>,
    eff: &Effective<'_, T>,
    u: &Vector<T>,
    desc: &Descriptor,
) -> Result<Vector<T>> {
    let (m, _) = check_shapes(eff, u)?;
    let view = MaskView::new(mask, desc.complemented(), m)?;
    let mut decision = decide_direction(u, eff.matrix, semiring, desc);
    if desc.direction == DirectionPolicy::Auto {
        // fall back when the orientation the rule wants was not built
        match decision.chosen {
            Direction::Push if eff.cols().is_none() => decision.chosen = Direction::Pull,
            Direction::Pull if eff.rows().is_none() => decision.chosen = Direction::Push,
            _ => {}
        }
    }
    desc.counters.record(decision);
    run(decision, &view, semiring, eff, u, desc)
}

fn run<T: Scalar>(
    decision: DirectionDecision,
    view: &MaskView<'_, T>,
    semiring: &Semiring<T>,
    eff: &Effective<'_, T>,
    u: &Vector<T>,
    desc: &Descriptor,
) -> Result<Vector<T>> {
    let zero = semiring.identity();
    match decision.chosen {
        Direction::Pull => {
            let converted;
            let dense = match u.dense_values() {
                Some(values) => values,
                None => {
                    converted = u.to_vec(zero);
                    &converted
                }
            };
            pull(view, semiring, eff, dense, desc)
        }
        Direction::Push => match u.storage() {
            Storage::Sparse { indices, values } => push(view, semiring, eff, indices, values, desc),
            Storage::Dense(_) => {
                let (indices, values) = u.extract_tuples_with(zero);
                push(view, semiring, eff, &indices, &values, desc)
            }
        },
    }
}

/// Row-wise SpMV. `u` must be dense. With a mask, only allowed rows are
/// visited, so `matrix_entries_read` grows by exactly the stored entries of
/// those rows (less under early exit). The result is dense, holding the
/// semiring identity at rows without contributions.
pub fn spmv_pull<T: Scalar>(
    mask: Option<&Vector<T>>,
    semiring: &Semiring<T>,
    a: &SparseMatrix<T>,
    u: &Vector<T>,
    desc: &Descriptor,
) -> Result<Vector<T>> {
    let eff = Effective {
        matrix: a,
        transposed: desc.transpose_inp0,
        order: Operands::MatrixFirst,
    };
    let (m, _) = check_shapes(&eff, u)?;
    let dense = u
        .dense_values()
        .ok_or(GraphError::Contract("spmv_pull needs a dense input vector"))?;
    let view = MaskView::new(mask, desc.complemented(), m)?;
    pull(&view, semiring, &eff, dense, desc)
}

/// Column-wise SpMSpV by gather, sort by row, segmented ⊕-reduce; the mask is
/// applied after combination. `u` must be sparse and `A` must have CSC
/// storage. `semiring_multiplies` grows by exactly
/// `Σ_{j ∈ u} nnz(A(:, j))`. The result is sparse and holds no identity
/// values.
pub fn spmspv_push<T: Scalar>(
    mask: Option<&Vector<T>>,
    semiring: &Semiring<T>,
    a: &SparseMatrix<T>,
    u: &Vector<T>,
    desc: &Descriptor,
) -> Result<Vector<T>> {
    let eff = Effective {
        matrix: a,
        transposed: desc.transpose_inp0,
        order: Operands::MatrixFirst,
    };
    let (m, _) = check_shapes(&eff, u)?;
    let Storage::Sparse { indices, values } = u.storage() else {
        return Err(GraphError::Contract("spmspv_push needs a sparse input vector"));
    };
    let view = MaskView::new(mask, desc.complemented(), m)?;
    push(&view, semiring, &eff, indices, values, desc)
}

#[inline]
fn reduce_row<T: Scalar>(
    semiring: &Semiring<T>,
    order: Operands,
    cols: &[usize],
    vals: &[T],
    u: &[T],
    early_exit: Option<T>,
    tally: &mut Tally,
) -> T {
    let zero = semiring.identity();
    let mut acc = zero;
    for (&j, &a) in cols.iter().zip(vals) {
        tally.entries_read += 1;
        let x = u[j];
        if x == zero {
            continue;
        }
        acc = semiring.plus(acc, times(semiring, order, a, x));
        tally.multiplies += 1;
        tally.adds += 1;
        if early_exit == Some(acc) {
            break;
        }
    }
    acc
}

fn pull<T: Scalar>(
    view: &MaskView<'_, T>,
    semiring: &Semiring<T>,
    eff: &Effective<'_, T>,
    u: &[T],
    desc: &Descriptor,
) -> Result<Vector<T>> {
    let rows = eff.rows().ok_or(GraphError::MissingCsc)?;
    let (m, _) = eff.shape();
    let zero = semiring.identity();
    let early_exit = if desc.early_exit { semiring.add.terminal } else { None };
    let order = eff.order;
    let mut out = vec![zero; m];
    let workers = if rows.nnz() < PARALLEL_MIN_NNZ { 1 } else { desc.workers };

    let tally = if let Some(allowed) = view.explicit_positions() {
        // mask-first over an explicit row list
        let chunks = split_even(allowed.len(), workers);
        let results: Vec<(Vec<T>, Tally)> = chunks
            .into_par_iter()
            .map(|range| {
                let mut tally = Tally::default();
                let vals = allowed[range]
                    .iter()
                    .map(|&i| {
                        let (c, v) = rows.slice(i);
                        reduce_row(semiring, order, c, v, u, early_exit, &mut tally)
                    })
                    .collect();
                (vals, tally)
            })
            .collect();
        let mut total = Tally::default();
        let mut positions = allowed.iter();
        for (vals, tally) in results {
            total += tally;
            for (&i, v) in positions.by_ref().zip(vals) {
                out[i] = v;
            }
        }
        total
    } else {
        let ranges = split_rows(&rows.offsets, workers, desc.partition);
        let mut slices = Vec::with_capacity(ranges.len());
        let mut rest: &mut [T] = &mut out;
        for r in &ranges {
            let (head, tail) = rest.split_at_mut(r.len());
            slices.push((r.clone(), head));
            rest = tail;
        }
        slices
            .into_par_iter()
            .map(|(range, chunk)| {
                let mut tally = Tally::default();
                for (slot, i) in chunk.iter_mut().zip(range) {
                    if view.allows(i) {
                        let (c, v) = rows.slice(i);
                        *slot = reduce_row(semiring, order, c, v, u, early_exit, &mut tally);
                    }
                }
                tally
            })
            .reduce(Tally::default, |mut a, b| {
                a += b;
                a
            })
    };
    desc.counters.merge(&tally);
    Ok(Vector::from_dense(out))
}

fn push<T: Scalar>(
    view: &MaskView<'_, T>,
    semiring: &Semiring<T>,
    eff: &Effective<'_, T>,
    u_indices: &[usize],
    u_values: &[T],
    desc: &Descriptor,
) -> Result<Vector<T>> {
    let cols = eff.cols().ok_or(GraphError::MissingCsc)?;
    let (m, _) = eff.shape();
    let zero = semiring.identity();
    let order = eff.order;
    let flops: usize = u_indices.iter().map(|&j| cols.slice_len(j)).sum();

    let (indices, values) = if flops > DENSE_ACCUMULATOR_RATIO * m {
        dense_accumulate(semiring, order, cols, m, u_indices, u_values)
    } else {
        sort_reduce(semiring, order, cols, u_indices, u_values, desc.workers, flops)
    };

    let mut tally = Tally {
        entries_read: flops as u64,
        multiplies: 0,
        adds: 0,
    };
    for (&j, &x) in u_indices.iter().zip(u_values) {
        if x != zero {
            let n = cols.slice_len(j) as u64;
            tally.multiplies += n;
            tally.adds += n;
        }
    }
    desc.counters.merge(&tally);

    let (indices, values): (Vec<usize>, Vec<T>) = indices
        .into_iter()
        .zip(values)
        .filter(|&(i, v)| v != zero && view.allows(i))
        .unzip();
    Ok(Vector::from_sorted_parts(m, indices, values))
}

fn sort_reduce<T: Scalar>(
    semiring: &Semiring<T>,
    order: Operands,
    cols: &Compressed<T>,
    u_indices: &[usize],
    u_values: &[T],
    workers: usize,
    flops: usize,
) -> (Vec<usize>, Vec<T>) {
    let zero = semiring.identity();
    let gather = |range: std::ops::Range<usize>| {
        let mut out = Vec::new();
        for k in range {
            let (j, x) = (u_indices[k], u_values[k]);
            if x == zero {
                continue;
            }
            let (rows, vals) = cols.slice(j);
            out.extend(rows.iter().zip(vals).map(|(&i, &a)| (i, times(semiring, order, a, x))));
        }
        out
    };
    let mut pairs: Vec<(usize, T)> = if flops < PARALLEL_MIN_NNZ || workers <= 1 {
        gather(0..u_indices.len())
    } else {
        split_even(u_indices.len(), workers)
            .into_par_iter()
            .map(gather)
            .flatten_iter()
            .collect()
    };
    // stable: equal rows keep frontier order
    if pairs.len() < PARALLEL_MIN_NNZ {
        pairs.sort_by_key(|&(i, _)| i);
    } else {
        pairs.par_sort_by_key(|&(i, _)| i);
    }
    let mut indices = Vec::new();
    let mut values = Vec::new();
    for (i, c) in pairs {
        if indices.last() == Some(&i) {
            let last = values.last_mut().unwrap();
            *last = semiring.plus(*last, c);
        } else {
            indices.push(i);
            values.push(semiring.plus(zero, c));
        }
    }
    (indices, values)
}

fn dense_accumulate<T: Scalar>(
    semiring: &Semiring<T>,
    order: Operands,
    cols: &Compressed<T>,
    m: usize,
    u_indices: &[usize],
    u_values: &[T],
) -> (Vec<usize>, Vec<T>) {
    let zero = semiring.identity();
    let mut acc = vec![zero; m];
    let mut touched = vec![false; m];
    for (&j, &x) in u_indices.iter().zip(u_values) {
        if x == zero {
            continue;
        }
        let (rows, vals) = cols.slice(j);
        for (&i, &a) in rows.iter().zip(vals) {
            acc[i] = semiring.plus(acc[i], times(semiring, order, a, x));
            touched[i] = true;
        }
    }
    touched
        .iter()
        .zip(acc)
        .enumerate()
        .filter(|(_, (&t, _))| t)
        .map(|(i, (_, v))| (i, v))
        .unzip()
}

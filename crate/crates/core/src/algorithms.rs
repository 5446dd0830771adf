//! Graph algorithms written against the operations in [`crate::ops`].
//!
//! Each takes the descriptor mutably: algorithms flip the mask mode and the
//! transposition flags around individual calls and restore them afterwards,
//! and all kernels report into the same counters.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::algebra::{Monoid, Scalar, Semiring};
use crate::descriptor::{CounterSnapshot, Descriptor, Field};
use crate::error::{check_bounds, GraphError, Result};
use crate::matrix::SparseMatrix;
use crate::ops::{
    apply, assign, assign_scatter, ewise_add, ewise_add_scalar, ewise_mult, extract_gather, mxm_masked, mxv, reduce,
    reduce_matrix, vxm, DirectionDecision, IndexSet,
};
use crate::vector::Vector;

pub const DEFAULT_ALPHA: f64 = 0.85;
pub const DEFAULT_EPS: f64 = 1e-7;

/// One iteration of a traversal: the frontier it expanded, the direction
/// decision of its matrix-vector product and the work that product did.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub frontier_nvals: u64,
    pub decision: DirectionDecision,
    pub counters: CounterSnapshot,
}

fn toggled<R>(desc: &mut Descriptor, field: Field, f: impl FnOnce(&Descriptor) -> R) -> R {
    desc.toggle(field);
    let out = f(desc);
    desc.toggle(field);
    out
}

/// Runs one matrix-vector product and builds its trace row.
fn traced<T: Scalar>(
    desc: &mut Descriptor,
    iteration: usize,
    frontier_nvals: usize,
    f: impl FnOnce(&mut Descriptor) -> Result<Vector<T>>,
) -> Result<(Vector<T>, IterationRecord)> {
    let before = desc.counters.snapshot();
    let out = f(desc)?;
    let decision = *desc
        .counters
        .decisions()
        .last()
        .ok_or(GraphError::Contract("product recorded no direction decision"))?;
    let rec = IterationRecord {
        iteration,
        frontier_nvals: frontier_nvals as u64,
        decision,
        counters: desc.counters.snapshot() - before,
    };
    Ok((out, rec))
}

fn require_square<T: Scalar>(a: &SparseMatrix<T>) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(GraphError::DimensionMismatch(format!(
            "graph matrix must be square, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(a.nrows())
}

#[derive(Clone, Debug)]
pub struct BfsResult<T> {
    /// Level per vertex: the source is 1, unreachable vertices are 0.
    pub levels: Vector<T>,
    pub iterations: usize,
    pub trace: Vec<IterationRecord>,
}

/// Breadth-first search from `source`.
///
/// Per level: write level `d` into `v` at the frontier, expand the frontier
/// with `vxm` over `LogicalOrAnd` masked by the complement of `v`, count the
/// new frontier, and stop when it is empty.
pub fn bfs<T: Scalar>(a: &SparseMatrix<T>, source: usize, desc: &mut Descriptor) -> Result<BfsResult<T>> {
    let n = require_square(a)?;
    check_bounds(source, n)?;
    let semiring = Semiring::logical_or_and();
    let plus = Monoid::plus();

    let mut v = Vector::fill(n, T::ZERO);
    let mut f = Vector::build(&[source], &[T::ONE], n)?;
    let mut level = T::ONE;
    let mut trace = Vec::new();
    let mut iteration = 0;
    loop {
        iteration += 1;
        assign(&mut v, Some(&f), level, &IndexSet::All, desc)?;
        let nnz_f = f.nvals_with(T::ZERO);
        let (next, rec) = traced(desc, iteration, nnz_f, |d| {
            toggled(d, Field::Mask, |d| vxm(Some(&v), &semiring, &f, a, d))
        })?;
        trace.push(rec);
        f = next;
        let c = reduce(&plus, &f);
        level = level.add(T::ONE);
        if c == T::ZERO {
            break;
        }
    }
    Ok(BfsResult {
        levels: v,
        iterations: iteration,
        trace,
    })
}

#[derive(Clone, Debug)]
pub struct SsspResult<T> {
    /// Dense distances; unreachable vertices hold +∞.
    pub distances: Vector<T>,
    pub iterations: usize,
    pub trace: Vec<IterationRecord>,
}

/// Bellman-Ford shortest paths from `source` over `MinPlus`. Edge weights
/// must be positive.
///
/// Each round multiplies only the vertices whose distance improved in the
/// previous round. The loop ends when a round improves nothing, or after
/// `min(max_niter, n)` rounds.
pub fn sssp<T: Scalar>(a: &SparseMatrix<T>, source: usize, desc: &mut Descriptor) -> Result<SsspResult<T>> {
    sssp_observed(a, source, desc, |_, _| {})
}

/// [`sssp`], calling `observer(round, distances)` after every round.
pub fn sssp_observed<T: Scalar>(
    a: &SparseMatrix<T>,
    source: usize,
    desc: &mut Descriptor,
    mut observer: impl FnMut(usize, &Vector<T>),
) -> Result<SsspResult<T>> {
    let n = require_square(a)?;
    check_bounds(source, n)?;
    if let Some(&w) = a
        .csr()
        .values
        .iter()
        .find(|&&w| w.partial_cmp(&T::ZERO) != Some(Ordering::Greater))
    {
        return Err(GraphError::InvalidInput(format!("edge weight {w} is not positive")));
    }
    let inf = T::INFINITY;
    let min_plus = Semiring::min_plus();
    let plus_less = Semiring::plus_less();
    let plus = Monoid::plus();

    let mut v = Vector::fill(n, inf);
    v.set_element(source, T::ZERO)?;
    let zero = Vector::fill(n, inf);
    let mut frontier = Vector::build(&[source], &[T::ZERO], n)?;
    let mut succ = T::ONE;
    let mut trace = Vec::new();
    let cap = desc.max_niter.min(n).max(1);
    let mut iteration = 0;
    while iteration < cap {
        iteration += 1;
        let succ_last = succ;
        let nnz_f = frontier.nvals_with(inf);
        let (w, rec) = traced(desc, iteration, nnz_f, |d| vxm(None, &min_plus, &frontier, a, d))?;
        trace.push(rec);
        let v_new = ewise_add(None, &min_plus, &v, &w, desc)?;
        // 1 where the candidate beats the stored distance
        let improved = ewise_mult(None, &plus_less, &w.to_dense(inf), &v, desc)?;
        frontier = apply(Some(&improved), |x| x, &v_new, desc)?;
        succ = reduce(&plus, &ewise_mult(None, &plus_less, &v_new, &zero, desc)?);
        v = v_new;
        observer(iteration, &v);
        if succ == succ_last && frontier.nvals_with(inf) == 0 {
            break;
        }
    }
    Ok(SsspResult {
        distances: v,
        iterations: iteration,
        trace,
    })
}

#[derive(Clone, Debug)]
pub struct PrResult {
    pub ranks: Vector<f64>,
    pub iterations: usize,
    /// L2 norm of the last rank update.
    pub error: f64,
}

/// Damped PageRank by power iteration, using `desc.max_niter` as the
/// iteration cap.
///
/// The traversal matrix is scaled once so entry `(i, j)` holds
/// `alpha / outdeg(i)`; each step is `p = p_prev Â + (1 − alpha)/n`. Rows of
/// vertices without out-edges stay empty, so their rank is not
/// redistributed.
pub fn pagerank(a: &SparseMatrix<f64>, alpha: f64, eps: f64, desc: &mut Descriptor) -> Result<PrResult> {
    let n = require_square(a)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(GraphError::InvalidInput(format!("alpha {alpha} must lie in (0, 1)")));
    }
    if eps.partial_cmp(&0.0) != Some(Ordering::Greater) {
        return Err(GraphError::InvalidInput(format!("eps {eps} must be positive")));
    }
    if n == 0 {
        return Ok(PrResult {
            ranks: Vector::fill(0, 0.0),
            iterations: 0,
            error: 0.0,
        });
    }
    let csr = a.csr();
    let scaled = a.map_values(|i, _, _| alpha / csr.slice_len(i) as f64);
    let plus_times = Semiring::plus_multiplies();
    let plus_minus = Semiring::plus_minus();
    let times_times = Semiring::multiplies_multiplies();
    let plus = Monoid::plus();
    let teleport = (1.0 - alpha) / n as f64;

    let mut p = Vector::fill(n, 1.0 / n as f64);
    let mut error = 1.0;
    let mut iterations = 0;
    while error > eps && iterations < desc.max_niter {
        iterations += 1;
        let p_prev = p;
        let p_swap = vxm(None, &plus_times, &p_prev, &scaled, desc)?;
        p = ewise_add_scalar(None, &plus_times, &p_swap, teleport, desc)?;
        let r = ewise_mult(None, &plus_minus, &p, &p_prev, desc)?;
        let r_sq = ewise_add(None, &times_times, &r, &r, desc)?;
        error = reduce(&plus, &r_sq).sqrt();
    }
    Ok(PrResult {
        ranks: p,
        iterations,
        error,
    })
}

#[derive(Clone, Debug)]
pub struct CcResult<T> {
    /// Component label per vertex: the smallest vertex id in its component.
    pub labels: Vector<T>,
    pub iterations: usize,
}

/// Connected components of a symmetric graph by FastSV with sparsification.
pub fn connected_components<T: Scalar>(a: &SparseMatrix<T>, desc: &mut Descriptor) -> Result<CcResult<T>> {
    fastsv(a, true, desc)
}

/// FastSV min-label hooking with grandparent shortcutting.
///
/// Per iteration: take the minimum grandparent over each vertex's
/// neighbors, hook each parent onto the smallest such value
/// (`assign_scatter`), fold both candidates into `parent` with `min`,
/// recompute grandparents, and stop when no grandparent changed. With
/// `sparsify`, unchanged grandparents are set to +∞ before the next
/// neighbor product so only changed ones are propagated.
pub fn fastsv<T: Scalar>(a: &SparseMatrix<T>, sparsify: bool, desc: &mut Descriptor) -> Result<CcResult<T>> {
    let n = require_square(a)?;
    let pattern = a.map_values(|_, _, _| T::ONE);
    if !pattern.is_symmetric() {
        return Err(GraphError::InvalidInput(
            "connected components need a symmetric matrix".into(),
        ));
    }
    let min_second = Semiring::minimum_select_second();
    let min_plus = Semiring::min_plus();
    let min_ne = Semiring::minimum_not_equal_to();
    let plus = Monoid::plus();

    let mut parent = Vector::fill_ascending(n);
    let mut min_neighbor_parent = parent.clone();
    let mut grandparent = parent.clone();
    let mut grandparent_temp = parent.clone();
    let mut iterations = 0;
    while iterations < desc.max_niter {
        iterations += 1;
        let parent_temp = parent.clone();
        let min_neighbor_parent_temp = mxv(None, &min_second, a, &grandparent, desc)?;
        min_neighbor_parent = ewise_add(None, &min_second, &min_neighbor_parent, &min_neighbor_parent_temp, desc)?;
        assign_scatter(&mut parent, None, &min_neighbor_parent, &parent_temp, desc)?;
        parent = ewise_add(None, &min_plus, &parent, &min_neighbor_parent, desc)?;
        parent = ewise_add(None, &min_plus, &parent, &parent_temp, desc)?;
        grandparent = extract_gather(None, &parent, &parent, desc)?;
        let diff = ewise_mult(None, &min_ne, &grandparent_temp, &grandparent, desc)?;
        let succ = reduce(&plus, &diff);
        if succ == T::ZERO {
            break;
        }
        grandparent_temp = grandparent.clone();
        if sparsify {
            toggled(desc, Field::Mask, |d| {
                assign(&mut grandparent, Some(&diff), T::INFINITY, &IndexSet::All, d)
            })?;
        }
    }
    Ok(CcResult {
        labels: parent,
        iterations,
    })
}

#[derive(Clone, Debug)]
pub struct TcResult<T> {
    pub ntris: u64,
    /// `L Lᵀ .* L` over the degree-sorted lower triangle `L`.
    pub product: SparseMatrix<T>,
}

/// Triangle count of a symmetric graph without self-loops.
///
/// Vertices are relabeled by ascending degree (ties by id), `L` is the
/// strictly lower triangle of the relabeled pattern, and the count is the
/// sum of `L Lᵀ .* L`, which sees each triangle once.
pub fn triangle_count<T: Scalar>(a: &SparseMatrix<T>, desc: &mut Descriptor) -> Result<TcResult<T>> {
    let n = require_square(a)?;
    let pattern = a.map_values(|_, _, _| T::ONE);
    if !pattern.is_symmetric() {
        return Err(GraphError::InvalidInput(
            "triangle counting needs a symmetric matrix".into(),
        ));
    }
    if pattern.has_diagonal_entries() {
        return Err(GraphError::InvalidInput(
            "triangle counting needs a zero diagonal".into(),
        ));
    }
    let csr = pattern.csr();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (csr.slice_len(v), v));
    let mut new_id = vec![0; n];
    for (rank, &v) in order.iter().enumerate() {
        new_id[v] = rank;
    }
    let lower = pattern.permute_symmetric(&new_id)?.select(|i, j, _| i > j);
    let product = toggled(desc, Field::Inp1, |d| {
        mxm_masked(&lower, &Semiring::plus_multiplies(), &lower, &lower, d)
    })?;
    let total = reduce_matrix(&Monoid::plus(), &product);
    let ntris = total
        .to_index()
        .ok_or_else(|| GraphError::InvalidInput(format!("triangle sum {total} is not a count")))?
        as u64;
    Ok(TcResult { ntris, product })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{edges_to_matrix, preprocess, EdgeList};

    fn undirected(n: usize, edges: &[(usize, usize)]) -> SparseMatrix<i64> {
        edges_to_matrix(&preprocess(&EdgeList::new(n, edges.to_vec()), true)).unwrap()
    }

    fn complete(n: usize) -> SparseMatrix<i64> {
        let e: Vec<_> = (0..n).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
        undirected(n, &e)
    }

    #[test]
    fn bfs_path_and_single_vertex() {
        let a = undirected(3, &[(0, 1), (1, 2)]);
        let r = bfs(&a, 0, &mut Descriptor::new()).unwrap();
        assert_eq!(r.levels.dense_values().unwrap(), &[1, 2, 3]);
        let one = SparseMatrix::<i64>::new(1, 1);
        let r = bfs(&one, 0, &mut Descriptor::new()).unwrap();
        assert_eq!(r.levels.dense_values().unwrap(), &[1]);
        assert_eq!(r.iterations, 1);
        assert_eq!(r.trace.len(), 1);
        assert!(bfs(&a, 3, &mut Descriptor::new()).is_err());
    }

    #[test]
    fn bfs_restores_descriptor() {
        let a = undirected(3, &[(0, 1), (1, 2)]);
        let mut d = Descriptor::new();
        bfs(&a, 0, &mut d).unwrap();
        assert!(!d.complemented());
    }

    #[test]
    fn sssp_small_cases() {
        let tuples = [(0, 1, 5.0), (0, 2, 2.0), (2, 1, 2.0)];
        let a = SparseMatrix::build(&tuples, 3, 3, &Monoid::minimum()).unwrap();
        let r = sssp(&a, 0, &mut Descriptor::new()).unwrap();
        assert_eq!(r.distances.dense_values().unwrap(), &[0.0, 4.0, 2.0]);

        let lonely = SparseMatrix::build(&[(1, 2, 1.0)], 3, 3, &Monoid::minimum()).unwrap();
        let r = sssp(&lonely, 0, &mut Descriptor::new()).unwrap();
        assert_eq!(
            r.distances.dense_values().unwrap(),
            &[0.0, f64::INFINITY, f64::INFINITY]
        );

        let bad = SparseMatrix::build(&[(0, 1, -1.0)], 2, 2, &Monoid::minimum()).unwrap();
        assert!(matches!(
            sssp(&bad, 0, &mut Descriptor::new()),
            Err(GraphError::InvalidInput(_))
        ));
    }

    #[test]
    fn pagerank_symmetric_graphs() {
        let two = SparseMatrix::build(&[(0, 1, 1.0), (1, 0, 1.0)], 2, 2, &Monoid::plus()).unwrap();
        let r = pagerank(&two, 0.85, 1e-7, &mut Descriptor::new()).unwrap();
        for &x in r.ranks.dense_values().unwrap() {
            assert!((x - 0.5).abs() < 1e-12);
        }
        let cyc = SparseMatrix::build(&[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)], 3, 3, &Monoid::plus()).unwrap();
        let r = pagerank(&cyc, 0.85, 1e-7, &mut Descriptor::new()).unwrap();
        for &x in r.ranks.dense_values().unwrap() {
            assert!((x - 1.0 / 3.0).abs() < 1e-12);
        }
        assert!(pagerank(&cyc, 1.0, 1e-7, &mut Descriptor::new()).is_err());
        assert!(pagerank(&cyc, 0.5, 0.0, &mut Descriptor::new()).is_err());
    }

    #[test]
    fn cc_labels() {
        let a = undirected(4, &[(0, 1), (2, 3)]);
        let r = connected_components(&a, &mut Descriptor::new()).unwrap();
        assert_eq!(r.labels.dense_values().unwrap(), &[0, 0, 2, 2]);
        let p = undirected(5, &[(3, 4), (4, 2), (2, 1), (1, 0)]);
        let r = connected_components(&p, &mut Descriptor::new()).unwrap();
        assert_eq!(r.labels.dense_values().unwrap(), &[0; 5]);
        assert!(r.iterations <= 5);
        let asym = SparseMatrix::build(&[(0, 1, 1i64)], 2, 2, &Monoid::plus()).unwrap();
        assert!(connected_components(&asym, &mut Descriptor::new()).is_err());
    }

    #[test]
    fn tc_small_cases() {
        assert_eq!(triangle_count(&complete(3), &mut Descriptor::new()).unwrap().ntris, 1);
        assert_eq!(triangle_count(&complete(4), &mut Descriptor::new()).unwrap().ntris, 4);
        let path = undirected(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(triangle_count(&path, &mut Descriptor::new()).unwrap().ntris, 0);
        let looped = SparseMatrix::build(&[(0, 0, 1i64)], 1, 1, &Monoid::plus()).unwrap();
        assert!(triangle_count(&looped, &mut Descriptor::new()).is_err());
    }
}

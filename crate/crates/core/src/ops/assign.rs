//! Writes into a vector by position: constant assignment, scatter by an
//! index vector, and gather by an index vector.
//!
//! These are plain (non-semiring) operations, so every slot of a dense
//! operand counts as present.

use std::ops::Range;

use super::mask::MaskView;
use crate::algebra::Scalar;
use crate::descriptor::Descriptor;
use crate::error::{check_bounds, GraphError, Result};
use crate::vector::{Storage, Vector};

/// Positions an [`assign`] covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexSet {
    All,
    Range(Range<usize>),
    List(Vec<usize>),
}

fn value_to_position<T: Scalar>(v: T, bound: usize) -> Result<usize> {
    let p = v.to_index().ok_or_else(|| GraphError::InvalidPosition(v.to_string()))?;
    check_bounds(p, bound)?;
    Ok(p)
}

/// Writes `(position, value)` pairs, sorted by position without duplicates,
/// into `w` in place.
fn write_sorted<T: Scalar>(w: &mut Vector<T>, writes: Vec<(usize, T)>) {
    if writes.is_empty() {
        return;
    }
    match w.storage_mut() {
        Storage::Dense(values) => {
            for (p, x) in writes {
                values[p] = x;
            }
        }
        Storage::Sparse { indices, values } => {
            let mut ni = Vec::with_capacity(indices.len() + writes.len());
            let mut nv = Vec::with_capacity(indices.len() + writes.len());
            let mut old = indices.iter().copied().zip(values.iter().copied()).peekable();
            for (p, x) in writes {
                while let Some(&(i, v)) = old.peek() {
                    if i >= p {
                        break;
                    }
                    ni.push(i);
                    nv.push(v);
                    old.next();
                }
                if old.peek().is_some_and(|&(i, _)| i == p) {
                    old.next();
                }
                ni.push(p);
                nv.push(x);
            }
            for (i, v) in old {
                ni.push(i);
                nv.push(v);
            }
            *indices = ni;
            *values = nv;
        }
    }
}

/// `w(i) = scalar` for every `i` in `positions` the mask allows.
pub fn assign<T: Scalar>(
    w: &mut Vector<T>,
    mask: Option<&Vector<T>>,
    scalar: T,
    positions: &IndexSet,
    desc: &Descriptor,
) -> Result<()> {
    let n = w.size();
    let view = MaskView::new(mask, desc.complemented(), n)?;
    let targets: Vec<usize> = match positions {
        IndexSet::All => match view.explicit_positions() {
            Some(list) => list,
            None => (0..n).filter(|&i| view.allows(i)).collect(),
        },
        IndexSet::Range(r) => {
            if r.end > n {
                return Err(GraphError::IndexOutOfBounds {
                    index: r.end - 1,
                    bound: n,
                });
            }
            r.clone().filter(|&i| view.allows(i)).collect()
        }
        IndexSet::List(list) => {
            let mut list = list.clone();
            for &i in &list {
                check_bounds(i, n)?;
            }
            list.sort_unstable();
            list.dedup();
            list.retain(|&i| view.allows(i));
            list
        }
    };
    write_sorted(w, targets.into_iter().map(|i| (i, scalar)).collect());
    Ok(())
}

/// `w(indices(k)) = values(k)` for every `k` stored in both `indices` and
/// `values`. The values of `indices` are read as positions into `w`; writes
/// that land on the same position are combined with minimum. The mask is
/// checked at the target position.
pub fn assign_scatter<T: Scalar>(
    w: &mut Vector<T>,
    mask: Option<&Vector<T>>,
    values: &Vector<T>,
    indices: &Vector<T>,
    desc: &Descriptor,
) -> Result<()> {
    if values.size() != indices.size() {
        return Err(GraphError::DimensionMismatch(format!(
            "values has size {} but indices has size {}",
            values.size(),
            indices.size()
        )));
    }
    let n = w.size();
    let view = MaskView::new(mask, desc.complemented(), n)?;
    let mut writes = Vec::with_capacity(indices.nvals_with(T::INFINITY));
    for (k, pos) in indices.iter_all() {
        let Some(x) = stored(values, k) else { continue };
        let p = value_to_position(pos, n)?;
        if view.allows(p) {
            writes.push((p, x));
        }
    }
    // stable sort keeps k order among collisions; min makes it irrelevant
    writes.sort_by_key(|&(p, _)| p);
    let mut merged: Vec<(usize, T)> = Vec::with_capacity(writes.len());
    for (p, x) in writes {
        match merged.last_mut() {
            Some(last) if last.0 == p => {
                if x < last.1 {
                    last.1 = x;
                }
            }
            _ => merged.push((p, x)),
        }
    }
    write_sorted(w, merged);
    Ok(())
}

/// `w(k) = u(indices(k))` for every stored `k` of `indices`. The result has
/// the size and format of `indices`; dense slots that receive nothing hold
/// the domain zero.
pub fn extract_gather<T: Scalar>(
    mask: Option<&Vector<T>>,
    u: &Vector<T>,
    indices: &Vector<T>,
    desc: &Descriptor,
) -> Result<Vector<T>> {
    let n = indices.size();
    let view = MaskView::new(mask, desc.complemented(), n)?;
    match indices.storage() {
        Storage::Dense(pos) => {
            let mut out = vec![T::ZERO; n];
            for (k, &p) in pos.iter().enumerate() {
                let p = value_to_position(p, u.size())?;
                if view.allows(k) {
                    if let Some(x) = stored(u, p) {
                        out[k] = x;
                    }
                }
            }
            Ok(Vector::from_dense(out))
        }
        Storage::Sparse {
            indices: ks,
            values: pos,
        } => {
            let mut oi = Vec::with_capacity(ks.len());
            let mut ov = Vec::with_capacity(ks.len());
            for (&k, &p) in ks.iter().zip(pos) {
                let p = value_to_position(p, u.size())?;
                if view.allows(k) {
                    if let Some(x) = stored(u, p) {
                        oi.push(k);
                        ov.push(x);
                    }
                }
            }
            Ok(Vector::from_sorted_parts(n, oi, ov))
        }
    }
}

/// Plain-semantics read: dense slots are always present.
#[inline]
fn stored<T: Scalar>(v: &Vector<T>, i: usize) -> Option<T> {
    match v.storage() {
        Storage::Dense(values) => Some(values[i]),
        Storage::Sparse { indices, values } => indices.binary_search(&i).ok().map(|p| values[p]),
    }
}

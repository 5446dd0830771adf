//! Elementwise union (`eWiseAdd`) and intersection (`eWiseMult`) of vectors.
//!
//! Presence follows the operator: a dense slot equal to `op.zero()` (the
//! semiring or monoid identity) is absent. If either operand is dense the
//! result is dense and absent slots hold `op.zero()`; otherwise it is sparse.

use super::mask::MaskView;
use crate::algebra::{ElementwiseOp, Scalar};
use crate::descriptor::Descriptor;
use crate::error::{GraphError, Result};
use crate::vector::{Storage, Vector};

fn check_same_size<T: Scalar>(u: &Vector<T>, v: &Vector<T>) -> Result<()> {
    if u.size() != v.size() {
        return Err(GraphError::DimensionMismatch(format!(
            "vector sizes {} and {} differ",
            u.size(),
            v.size()
        )));
    }
    Ok(())
}

/// Union of supports; entries present in both are combined with the union
/// operator (⊕ for a semiring).
pub fn ewise_add<T: Scalar, Op: ElementwiseOp<T>>(
    mask: Option<&Vector<T>>,
    op: &Op,
    u: &Vector<T>,
    v: &Vector<T>,
    desc: &Descriptor,
) -> Result<Vector<T>> {
    check_same_size(u, v)?;
    let view = MaskView::new(mask, desc.complemented(), u.size())?;
    let f = op.union_op();
    let zero = op.zero();
    match (u.storage(), v.storage()) {
        (
            Storage::Sparse {
                indices: ui,
                values: uv,
            },
            Storage::Sparse {
                indices: vi,
                values: vv,
            },
        ) => {
            let mut indices = Vec::with_capacity(ui.len() + vi.len());
            let mut values = Vec::with_capacity(ui.len() + vi.len());
            let (mut p, mut q) = (0, 0);
            while p < ui.len() || q < vi.len() {
                let (i, x) = if q == vi.len() || (p < ui.len() && ui[p] < vi[q]) {
                    p += 1;
                    (ui[p - 1], uv[p - 1])
                } else if p == ui.len() || vi[q] < ui[p] {
                    q += 1;
                    (vi[q - 1], vv[q - 1])
                } else {
                    p += 1;
                    q += 1;
                    (ui[p - 1], f.apply(uv[p - 1], vv[q - 1]))
                };
                if view.allows(i) {
                    indices.push(i);
                    values.push(x);
                }
            }
            Ok(Vector::from_sorted_parts(u.size(), indices, values))
        }
        _ => {
            let a = u.to_vec(zero);
            let b = v.to_vec(zero);
            let out = a
                .iter()
                .zip(&b)
                .enumerate()
                .map(|(i, (&x, &y))| {
                    if !view.allows(i) {
                        zero
                    } else if x == zero {
                        y
                    } else if y == zero {
                        x
                    } else {
                        f.apply(x, y)
                    }
                })
                .collect();
            Ok(Vector::from_dense(out))
        }
    }
}

/// Broadcast variant: `scalar` is present at every position, so the result
/// is dense with `u(i) ⊕ scalar` where `u` is present and `scalar`
/// elsewhere.
pub fn ewise_add_scalar<T: Scalar, Op: ElementwiseOp<T>>(
    mask: Option<&Vector<T>>,
    op: &Op,
    u: &Vector<T>,
    scalar: T,
    desc: &Descriptor,
) -> Result<Vector<T>> {
    let view = MaskView::new(mask, desc.complemented(), u.size())?;
    let f = op.union_op();
    let zero = op.zero();
    let out = u
        .to_vec(zero)
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            if !view.allows(i) {
                zero
            } else if x == zero {
                scalar
            } else {
                f.apply(x, scalar)
            }
        })
        .collect();
    Ok(Vector::from_dense(out))
}

/// Intersection of supports, combined with the intersect operator (⊗ for a
/// semiring).
pub fn ewise_mult<T: Scalar, Op: ElementwiseOp<T>>(
    mask: Option<&Vector<T>>,
    op: &Op,
    u: &Vector<T>,
    v: &Vector<T>,
    desc: &Descriptor,
) -> Result<Vector<T>> {
    check_same_size(u, v)?;
    let view = MaskView::new(mask, desc.complemented(), u.size())?;
    let f = op.intersect_op();
    let zero = op.zero();
    match (u.storage(), v.storage()) {
        (Storage::Dense(a), Storage::Dense(b)) => {
            let out = a
                .iter()
                .zip(b)
                .enumerate()
                .map(|(i, (&x, &y))| {
                    if x != zero && y != zero && view.allows(i) {
                        f.apply(x, y)
                    } else {
                        zero
                    }
                })
                .collect();
            Ok(Vector::from_dense(out))
        }
        (
            Storage::Sparse {
                indices: ui,
                values: uv,
            },
            Storage::Sparse {
                indices: vi,
                values: vv,
            },
        ) => {
            let mut indices = Vec::new();
            let mut values = Vec::new();
            let (mut p, mut q) = (0, 0);
            while p < ui.len() && q < vi.len() {
                match ui[p].cmp(&vi[q]) {
                    std::cmp::Ordering::Less => p += 1,
                    std::cmp::Ordering::Greater => q += 1,
                    std::cmp::Ordering::Equal => {
                        if view.allows(ui[p]) {
                            indices.push(ui[p]);
                            values.push(f.apply(uv[p], vv[q]));
                        }
                        p += 1;
                        q += 1;
                    }
                }
            }
            Ok(Vector::from_sorted_parts(u.size(), indices, values))
        }
        (Storage::Sparse { indices, values }, Storage::Dense(dense)) => {
            let (i, x) = indices
                .iter()
                .zip(values)
                .filter(|&(&i, _)| dense[i] != zero && view.allows(i))
                .map(|(&i, &x)| (i, f.apply(x, dense[i])))
                .unzip();
            Ok(Vector::from_sorted_parts(u.size(), i, x))
        }
        (Storage::Dense(dense), Storage::Sparse { indices, values }) => {
            let (i, x) = indices
                .iter()
                .zip(values)
                .filter(|&(&i, _)| dense[i] != zero && view.allows(i))
                .map(|(&i, &y)| (i, f.apply(dense[i], y)))
                .unzip();
            Ok(Vector::from_sorted_parts(u.size(), i, x))
        }
    }
}

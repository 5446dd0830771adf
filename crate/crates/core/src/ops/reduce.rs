//! Unary apply, reductions and transpose.

use super::mask::MaskView;
use crate::algebra::{Monoid, Scalar};
use crate::descriptor::Descriptor;
use crate::error::Result;
use crate::matrix::SparseMatrix;
use crate::vector::{Storage, Vector};

/// `w(i) = f(u(i))` for every stored entry of `u`. Unmasked, the result
/// keeps the format of `u`. With a mask, the result is sparse and holds only
/// the allowed entries.
pub fn apply<T: Scalar>(
    mask: Option<&Vector<T>>,
    f: impl Fn(T) -> T,
    u: &Vector<T>,
    desc: &Descriptor,
) -> Result<Vector<T>> {
    let view = MaskView::new(mask, desc.complemented(), u.size())?;
    if view.is_all() {
        return Ok(match u.storage() {
            Storage::Dense(values) => Vector::from_dense(values.iter().map(|&x| f(x)).collect()),
            Storage::Sparse { indices, values } => {
                Vector::from_sorted_parts(u.size(), indices.clone(), values.iter().map(|&x| f(x)).collect())
            }
        });
    }
    let (indices, values) = u
        .iter_all()
        .filter(|&(i, _)| view.allows(i))
        .map(|(i, x)| (i, f(x)))
        .unzip();
    Ok(Vector::from_sorted_parts(u.size(), indices, values))
}

/// Folds every stored entry of `u` in ascending index order. An empty
/// vector reduces to the identity.
pub fn reduce<T: Scalar>(monoid: &Monoid<T>, u: &Vector<T>) -> T {
    monoid.fold(u.iter_all().map(|(_, x)| x))
}

/// Folds every stored entry of `a` in row-major order.
pub fn reduce_matrix<T: Scalar>(monoid: &Monoid<T>, a: &SparseMatrix<T>) -> T {
    monoid.fold(a.csr().values.iter().copied())
}

/// `w(i) = ⊕_j A(i, j)`; dense, with the identity at empty rows.
pub fn reduce_rows<T: Scalar>(monoid: &Monoid<T>, a: &SparseMatrix<T>) -> Vector<T> {
    let csr = a.csr();
    Vector::from_dense(
        (0..a.nrows())
            .map(|i| monoid.fold(csr.slice(i).1.iter().copied()))
            .collect(),
    )
}

/// `Aᵀ`; swaps the two orientations without copying.
pub fn transpose<T: Scalar>(a: &SparseMatrix<T>) -> SparseMatrix<T> {
    a.transpose()
}

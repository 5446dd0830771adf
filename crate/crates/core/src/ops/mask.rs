use crate::algebra::Scalar;
use crate::error::{GraphError, Result};
use crate::vector::{Storage, Vector};

/// Borrowed view answering "may position `i` be written?".
///
/// A position is allowed when the mask holds a value different from the
/// domain zero there; structural complement inverts that. Stored zeros are
/// therefore "not written" in normal mode.
#[derive(Clone, Copy)]
pub(crate) enum MaskView<'a, T> {
    All,
    Sparse {
        indices: &'a [usize],
        values: &'a [T],
        complement: bool,
    },
    Dense {
        values: &'a [T],
        complement: bool,
    },
}

impl<'a, T: Scalar> MaskView<'a, T> {
    pub fn new(mask: Option<&'a Vector<T>>, complement: bool, expected_size: usize) -> Result<Self> {
        let Some(mask) = mask else {
            return Ok(MaskView::All);
        };
        if mask.size() != expected_size {
            return Err(GraphError::DimensionMismatch(format!(
                "mask has size {} but output has size {}",
                mask.size(),
                expected_size
            )));
        }
        Ok(match mask.storage() {
            Storage::Sparse { indices, values } => MaskView::Sparse {
                indices,
                values,
                complement,
            },
            Storage::Dense(values) => MaskView::Dense { values, complement },
        })
    }

    #[inline]
    pub fn allows(&self, i: usize) -> bool {
        match *self {
            MaskView::All => true,
            MaskView::Sparse {
                indices,
                values,
                complement,
            } => {
                let hit = indices.binary_search(&i).is_ok_and(|p| values[p].is_nonzero());
                hit != complement
            }
            MaskView::Dense { values, complement } => values[i].is_nonzero() != complement,
        }
    }

    pub fn is_all(&self) -> bool {
        matches!(self, MaskView::All)
    }

    /// The allowed positions in ascending order when they can be listed
    /// without scanning the whole index space (sparse, not complemented).
    pub fn explicit_positions(&self) -> Option<Vec<usize>> {
        match *self {
            MaskView::Sparse {
                indices,
                values,
                complement: false,
            } => Some(
                indices
                    .iter()
                    .zip(values)
                    .filter(|(_, v)| v.is_nonzero())
                    .map(|(&i, _)| i)
                    .collect(),
            ),
            _ => None,
        }
    }
}

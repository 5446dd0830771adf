use crate::algebra::Scalar;
use crate::error::{check_bounds, GraphError, Result};

/// Storage layout of a [`Vector`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Sparse,
    Dense,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Storage<T> {
    /// Strictly increasing indices with their values.
    Sparse { indices: Vec<usize>, values: Vec<T> },
    /// One slot per position.
    Dense(Vec<T>),
}

/// A vertex set: either a sparse list of `(index, value)` pairs or a dense
/// array.
///
/// A dense vector has no stored/absent distinction of its own. Consumers
/// decide which slots count as present: semiring and monoid operations treat
/// slots equal to the operator's identity as absent, plain operations (apply,
/// assign, extract) treat every slot as present, and the accessors below use
/// the domain zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<T> {
    size: usize,
    storage: Storage<T>,
}

impl<T: Scalar> Vector<T> {
    /// An empty sparse vector of length `size`.
    pub fn new(size: usize) -> Self {
        Self {
            size,
            storage: Storage::Sparse {
                indices: Vec::new(),
                values: Vec::new(),
            },
        }
    }

    /// Builds a sparse vector from unsorted `(index, value)` lists.
    pub fn build(indices: &[usize], values: &[T], size: usize) -> Result<Self> {
        if indices.len() != values.len() {
            return Err(GraphError::DimensionMismatch(format!(
                "{} indices but {} values",
                indices.len(),
                values.len()
            )));
        }
        let mut pairs: Vec<(usize, T)> = indices.iter().copied().zip(values.iter().copied()).collect();
        for &(i, _) in &pairs {
            check_bounds(i, size)?;
        }
        pairs.sort_by_key(|&(i, _)| i);
        if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(GraphError::DuplicateIndex(w[0].0));
        }
        let (indices, values) = pairs.into_iter().unzip();
        Ok(Self {
            size,
            storage: Storage::Sparse { indices, values },
        })
    }

    /// Wraps already-sorted, duplicate-free parts. Panics in debug builds if
    /// the invariant does not hold.
    pub(crate) fn from_sorted_parts(size: usize, indices: Vec<usize>, values: Vec<T>) -> Self {
        debug_assert_eq!(indices.len(), values.len());
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(indices.last().is_none_or(|&i| i < size));
        Self {
            size,
            storage: Storage::Sparse { indices, values },
        }
    }

    pub fn from_dense(values: Vec<T>) -> Self {
        Self {
            size: values.len(),
            storage: Storage::Dense(values),
        }
    }

    /// A dense vector with every slot set to `value`.
    pub fn fill(size: usize, value: T) -> Self {
        Self::from_dense(vec![value; size])
    }

    /// A dense vector holding `0, 1, .., size - 1`.
    pub fn fill_ascending(size: usize) -> Self {
        Self::from_dense((0..size).map(T::from_usize).collect())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn format(&self) -> Format {
        match self.storage {
            Storage::Sparse { .. } => Format::Sparse,
            Storage::Dense(_) => Format::Dense,
        }
    }

    pub fn is_dense(&self) -> bool {
        self.format() == Format::Dense
    }

    pub fn storage(&self) -> &Storage<T> {
        &self.storage
    }

    /// Stored entries; for dense storage, slots different from the domain
    /// zero.
    pub fn nvals(&self) -> usize {
        self.nvals_with(T::ZERO)
    }

    /// Stored entries; for dense storage, slots different from `zero`.
    pub fn nvals_with(&self, zero: T) -> usize {
        match &self.storage {
            Storage::Sparse { indices, .. } => indices.len(),
            Storage::Dense(values) => values.iter().filter(|&&v| v != zero).count(),
        }
    }

    /// Writes one element. Sparse storage inserts in sorted position.
    pub fn set_element(&mut self, index: usize, value: T) -> Result<()> {
        check_bounds(index, self.size)?;
        match &mut self.storage {
            Storage::Sparse { indices, values } => match indices.binary_search(&index) {
                Ok(pos) => values[pos] = value,
                Err(pos) => {
                    indices.insert(pos, index);
                    values.insert(pos, value);
                }
            },
            Storage::Dense(values) => values[index] = value,
        }
        Ok(())
    }

    /// Reads one element. `Ok(None)` means no value is stored (for dense
    /// storage: the slot holds the domain zero).
    pub fn extract_element(&self, index: usize) -> Result<Option<T>> {
        check_bounds(index, self.size)?;
        Ok(self.get(index, T::ZERO))
    }

    /// Value at `index` if present, where a dense slot equal to `zero` is
    /// absent.
    #[inline]
    pub fn get(&self, index: usize, zero: T) -> Option<T> {
        match &self.storage {
            Storage::Sparse { indices, values } => indices.binary_search(&index).ok().map(|p| values[p]),
            Storage::Dense(values) => Some(values[index]).filter(|&v| v != zero),
        }
    }

    /// Entries in ascending index order.
    pub fn extract_tuples(&self) -> (Vec<usize>, Vec<T>) {
        self.extract_tuples_with(T::ZERO)
    }

    pub fn extract_tuples_with(&self, zero: T) -> (Vec<usize>, Vec<T>) {
        match &self.storage {
            Storage::Sparse { indices, values } => (indices.clone(), values.clone()),
            Storage::Dense(_) => self.iter_present(zero).unzip(),
        }
    }

    /// Iterates `(index, value)` over present entries in ascending order.
    pub fn iter_present(&self, zero: T) -> Box<dyn Iterator<Item = (usize, T)> + '_> {
        match &self.storage {
            Storage::Sparse { indices, values } => Box::new(indices.iter().copied().zip(values.iter().copied())),
            Storage::Dense(values) => Box::new(values.iter().copied().enumerate().filter(move |&(_, v)| v != zero)),
        }
    }

    /// Iterates every stored entry; dense slots are all yielded.
    pub fn iter_all(&self) -> Box<dyn Iterator<Item = (usize, T)> + '_> {
        match &self.storage {
            Storage::Sparse { indices, values } => Box::new(indices.iter().copied().zip(values.iter().copied())),
            Storage::Dense(values) => Box::new(values.iter().copied().enumerate()),
        }
    }

    pub fn dup(&self) -> Self {
        self.clone()
    }

    /// Empties the vector (sparse, no entries).
    pub fn clear(&mut self) {
        self.storage = Storage::Sparse {
            indices: Vec::new(),
            values: Vec::new(),
        };
    }

    pub fn swap(&mut self, other: &mut Self) {
        std::mem::swap(self, other);
    }

    /// Converts to `target`. Sparse to dense writes `zero` at unstored slots;
    /// dense to sparse keeps slots different from `zero`.
    pub fn convert(&self, target: Format, zero: T) -> Self {
        match (target, &self.storage) {
            (Format::Dense, Storage::Sparse { indices, values }) => {
                let mut dense = vec![zero; self.size];
                for (&i, &v) in indices.iter().zip(values) {
                    dense[i] = v;
                }
                Self::from_dense(dense)
            }
            (Format::Sparse, Storage::Dense(_)) => {
                let (indices, values) = self.iter_present(zero).unzip();
                Self::from_sorted_parts(self.size, indices, values)
            }
            _ => self.clone(),
        }
    }

    pub fn to_dense(&self, zero: T) -> Self {
        self.convert(Format::Dense, zero)
    }

    pub fn to_sparse(&self, zero: T) -> Self {
        self.convert(Format::Sparse, zero)
    }

    /// Sparse form without any entry equal to `zero`.
    pub fn canonical(&self, zero: T) -> Self {
        let (indices, values) = self.iter_present(zero).filter(|&(_, v)| v != zero).unzip();
        Self::from_sorted_parts(self.size, indices, values)
    }

    /// Dense slots, if the vector is dense.
    pub fn dense_values(&self) -> Option<&[T]> {
        match &self.storage {
            Storage::Dense(values) => Some(values),
            Storage::Sparse { .. } => None,
        }
    }

    /// All slots as a dense array with `zero` at unstored positions.
    pub fn to_vec(&self, zero: T) -> Vec<T> {
        match &self.storage {
            Storage::Dense(values) => values.clone(),
            Storage::Sparse { indices, values } => {
                let mut dense = vec![zero; self.size];
                for (&i, &v) in indices.iter().zip(values) {
                    dense[i] = v;
                }
                dense
            }
        }
    }

    pub(crate) fn storage_mut(&mut self) -> &mut Storage<T> {
        &mut self.storage
    }
}

//! Work partitioning for the row-parallel kernels.

use crate::descriptor::Partition;
use std::ops::Range;

/// Below this many stored entries a kernel runs on a single partition.
pub const PARALLEL_MIN_NNZ: usize = 16 * 1024;

/// Splits rows `0..nrows` into at most `workers` contiguous ranges.
///
/// Row split gives each range the same number of rows. Nonzero split gives
/// each range about `nnz / workers` stored entries: worker `k` starts at the
/// first row whose offset reaches `k · nnz / workers`, found by binary search
/// over `offsets`. Boundaries fall on rows, so a row is always reduced by one
/// worker and fold order does not depend on the worker count.
pub fn split_rows(offsets: &[usize], workers: usize, partition: Partition) -> Vec<Range<usize>> {
    let nrows = offsets.len() - 1;
    let nnz = offsets[nrows];
    let workers = workers.max(1);
    if workers == 1 || nrows == 0 {
        return std::iter::once(0..nrows).collect();
    }
    let mut starts: Vec<usize> = match partition {
        Partition::RowSplit => (0..workers).map(|k| k * nrows / workers).collect(),
        Partition::NonzeroSplit => (0..workers)
            .map(|k| {
                let target = (k as u128 * nnz as u128 / workers as u128) as usize;
                offsets[..nrows].partition_point(|&o| o < target)
            })
            .collect(),
    };
    starts[0] = 0;
    starts.push(nrows);
    starts.windows(2).filter(|w| w[0] < w[1]).map(|w| w[0]..w[1]).collect()
}

/// Splits `0..len` into at most `parts` equal contiguous ranges.
pub fn split_even(len: usize, parts: usize) -> Vec<Range<usize>> {
    let parts = parts.max(1).min(len.max(1));
    (0..parts)
        .map(|k| (k * len / parts)..((k + 1) * len / parts))
        .filter(|r| !r.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn covers(ranges: &[Range<usize>], n: usize) -> bool {
        let mut next = 0;
        for r in ranges {
            if r.start != next {
                return false;
            }
            next = r.end;
        }
        next == n
    }

    #[test]
    fn nonzero_split_balances_entries() {
        // row lengths 10, 0, 0, 1, 1, 1, 1, 10
        let lens = [10usize, 0, 0, 1, 1, 1, 1, 10];
        let mut offsets = vec![0];
        for l in lens {
            offsets.push(offsets.last().unwrap() + l);
        }
        let parts = split_rows(&offsets, 3, Partition::NonzeroSplit);
        assert!(covers(&parts, 8));
        // offsets 0 10 10 10 11 12 13 14 24; targets 0, 8, 16 start at the
        // first row whose offset reaches them: rows 0, 1 and none
        assert_eq!(parts, vec![0..1, 1..8]);
        let rows = split_rows(&offsets, 2, Partition::RowSplit);
        assert_eq!(rows, vec![0..4, 4..8]);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(split_rows(&[0], 4, Partition::NonzeroSplit), vec![0..0]);
        let parts = split_rows(&[0, 0, 0, 0], 8, Partition::NonzeroSplit);
        assert!(covers(&parts, 3));
        assert!(split_even(0, 4).is_empty());
        assert_eq!(split_even(5, 2), vec![0..2, 2..5]);
    }

    proptest::proptest! {
        #[test]
        fn ranges_tile_rows(lens in proptest::collection::vec(0usize..20, 1..100), workers in 1usize..9, by_rows: bool) {
            let mut offsets = vec![0];
            for l in &lens {
                offsets.push(offsets.last().unwrap() + l);
            }
            let p = if by_rows { Partition::RowSplit } else { Partition::NonzeroSplit };
            let parts = split_rows(&offsets, workers, p);
            proptest::prop_assert!(covers(&parts, lens.len()));
            proptest::prop_assert!(parts.len() <= workers);
        }
    }
}

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::ops::DirectionDecision;

/// Which mask positions an operation may write.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum MaskMode {
    /// Write where the mask is nonzero.
    #[default]
    Normal,
    /// Write where the mask is zero or unstored.
    StructuralComplement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DirectionPolicy {
    #[default]
    Auto,
    ForcePush,
    ForcePull,
}

/// How a pull kernel divides rows among workers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Partition {
    /// Equal row counts per worker.
    RowSplit,
    /// Equal stored-entry counts per worker, boundaries rounded to rows.
    #[default]
    NonzeroSplit,
}

/// Descriptor fields that [`Descriptor::toggle`] flips.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Mask,
    Inp0,
    Inp1,
}

pub const DEFAULT_SWITCH_RATIO: f64 = 0.1;
pub const DEFAULT_MAX_NITER: usize = 10_000;

/// Per-call modifiers plus the instrumentation counters kernels report into.
#[derive(Debug)]
pub struct Descriptor {
    pub mask_mode: MaskMode,
    pub transpose_inp0: bool,
    pub transpose_inp1: bool,
    pub direction: DirectionPolicy,
    /// Fraction of `nnz(A)` above which the estimated frontier edge count
    /// selects pull.
    pub switch_ratio: f64,
    pub max_niter: usize,
    /// Stop a pull row reduction once the accumulator reaches the monoid's
    /// terminal value. Results are unchanged; `matrix_entries_read` may then
    /// fall below the full row count.
    pub early_exit: bool,
    pub partition: Partition,
    /// Number of work partitions a kernel splits into.
    pub workers: usize,
    pub counters: InstrumentationCounters,
}

impl Default for Descriptor {
    fn default() -> Self {
        Self {
            mask_mode: MaskMode::Normal,
            transpose_inp0: false,
            transpose_inp1: false,
            direction: DirectionPolicy::Auto,
            switch_ratio: DEFAULT_SWITCH_RATIO,
            max_niter: DEFAULT_MAX_NITER,
            early_exit: false,
            partition: Partition::NonzeroSplit,
            workers: rayon::current_num_threads(),
            counters: InstrumentationCounters::default(),
        }
    }
}

impl Clone for Descriptor {
    fn clone(&self) -> Self {
        Self {
            mask_mode: self.mask_mode,
            transpose_inp0: self.transpose_inp0,
            transpose_inp1: self.transpose_inp1,
            direction: self.direction,
            switch_ratio: self.switch_ratio,
            max_niter: self.max_niter,
            early_exit: self.early_exit,
            partition: self.partition,
            workers: self.workers,
            counters: self.counters.clone(),
        }
    }
}

impl Descriptor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_direction(mut self, policy: DirectionPolicy) -> Self {
        self.direction = policy;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_partition(mut self, partition: Partition) -> Self {
        self.partition = partition;
        self
    }

    pub fn with_early_exit(mut self, on: bool) -> Self {
        self.early_exit = on;
        self
    }

    pub fn with_switch_ratio(mut self, ratio: f64) -> Self {
        self.switch_ratio = ratio;
        self
    }

    pub fn with_max_niter(mut self, n: usize) -> Self {
        self.max_niter = n;
        self
    }

    pub fn toggle(&mut self, field: Field) {
        match field {
            Field::Mask => {
                self.mask_mode = match self.mask_mode {
                    MaskMode::Normal => MaskMode::StructuralComplement,
                    MaskMode::StructuralComplement => MaskMode::Normal,
                }
            }
            Field::Inp0 => self.transpose_inp0 = !self.transpose_inp0,
            Field::Inp1 => self.transpose_inp1 = !self.transpose_inp1,
        }
    }

    pub fn complemented(&self) -> bool {
        self.mask_mode == MaskMode::StructuralComplement
    }
}

/// Point-in-time copy of the counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterSnapshot {
    pub matrix_entries_read: u64,
    pub semiring_multiplies: u64,
    pub semiring_adds: u64,
}

impl std::ops::Sub for CounterSnapshot {
    type Output = CounterSnapshot;

    fn sub(self, rhs: Self) -> Self {
        CounterSnapshot {
            matrix_entries_read: self.matrix_entries_read - rhs.matrix_entries_read,
            semiring_multiplies: self.semiring_multiplies - rhs.semiring_multiplies,
            semiring_adds: self.semiring_adds - rhs.semiring_adds,
        }
    }
}

/// Cumulative work counters. Kernels tally per worker and merge once at the
/// end of the operation; values only grow until [`reset`](Self::reset).
///
/// `semiring_adds` counts one ⊕ per contribution folded into an accumulator
/// that starts at the identity.
#[derive(Debug, Default)]
pub struct InstrumentationCounters {
    matrix_entries_read: AtomicU64,
    semiring_multiplies: AtomicU64,
    semiring_adds: AtomicU64,
    decisions: Mutex<Vec<DirectionDecision>>,
}

impl Clone for InstrumentationCounters {
    fn clone(&self) -> Self {
        let s = self.snapshot();
        Self {
            matrix_entries_read: AtomicU64::new(s.matrix_entries_read),
            semiring_multiplies: AtomicU64::new(s.semiring_multiplies),
            semiring_adds: AtomicU64::new(s.semiring_adds),
            decisions: Mutex::new(self.decisions()),
        }
    }
}

impl InstrumentationCounters {
    pub fn snapshot(&self) -> CounterSnapshot {
        CounterSnapshot {
            matrix_entries_read: self.matrix_entries_read.load(Ordering::Relaxed),
            semiring_multiplies: self.semiring_multiplies.load(Ordering::Relaxed),
            semiring_adds: self.semiring_adds.load(Ordering::Relaxed),
        }
    }

    pub fn reset(&self) {
        self.matrix_entries_read.store(0, Ordering::Relaxed);
        self.semiring_multiplies.store(0, Ordering::Relaxed);
        self.semiring_adds.store(0, Ordering::Relaxed);
        self.decisions.lock().expect("counter lock poisoned").clear();
    }

    pub fn matrix_entries_read(&self) -> u64 {
        self.snapshot().matrix_entries_read
    }

    pub fn semiring_multiplies(&self) -> u64 {
        self.snapshot().semiring_multiplies
    }

    pub fn semiring_adds(&self) -> u64 {
        self.snapshot().semiring_adds
    }

    /// Direction decisions taken by `mxv`/`vxm` since the last reset, in call
    /// order.
    pub fn decisions(&self) -> Vec<DirectionDecision> {
        self.decisions.lock().expect("counter lock poisoned").clone()
    }

    pub(crate) fn merge(&self, tally: &Tally) {
        self.matrix_entries_read
            .fetch_add(tally.entries_read, Ordering::Relaxed);
        self.semiring_multiplies.fetch_add(tally.multiplies, Ordering::Relaxed);
        self.semiring_adds.fetch_add(tally.adds, Ordering::Relaxed);
    }

    pub(crate) fn record(&self, decision: DirectionDecision) {
        self.decisions.lock().expect("counter lock poisoned").push(decision);
    }
}

/// Worker-local counter tally.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Tally {
    pub entries_read: u64,
    pub multiplies: u64,
    pub adds: u64,
}

impl std::ops::AddAssign for Tally {
    fn add_assign(&mut self, rhs: Self) {
        self.entries_read += rhs.entries_read;
        self.multiplies += rhs.multiplies;
        self.adds += rhs.adds;
    }
}

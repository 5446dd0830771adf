//! Sparse linear algebra over semirings for graph analytics.
//!
//! Graphs are adjacency matrices stored as CSR and (optionally) CSC;
//! frontiers are vectors that switch between sparse and dense storage.
//! Matrix-vector products pick push (SpMSpV) or pull (SpMV) per call from
//! the frontier size, and masks restrict which outputs are written.

pub mod algebra;
pub mod algorithms;
pub mod descriptor;
pub mod error;
pub mod harness;
pub mod io;
pub mod matrix;
pub mod ops;
pub mod rng;
pub mod vector;
pub mod verify;

pub use algebra::{builtin_monoid, builtin_semiring, BinaryOp, Monoid, Scalar, Semiring};
pub use descriptor::{
    CounterSnapshot, Descriptor, DirectionPolicy, Field, InstrumentationCounters, MaskMode, Partition,
};
pub use error::{GraphError, Result};
pub use matrix::{Compressed, Orientations, SparseMatrix};
pub use ops::{Direction, DirectionDecision};
pub use vector::{Format, Storage, Vector};

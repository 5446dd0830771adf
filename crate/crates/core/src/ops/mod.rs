//! Operations over vectors and matrices.

pub mod assign;
pub mod direction;
pub mod ewise;
mod mask;
pub mod mxm;
pub mod mxv;
pub mod partition;
pub mod reduce;

pub use assign::{assign, assign_scatter, extract_gather, IndexSet};
pub use direction::{decide_direction, Direction, DirectionDecision};
pub use ewise::{ewise_add, ewise_add_scalar, ewise_mult};
pub use mxm::mxm_masked;
pub use mxv::{mxv, spmspv_push, spmv_pull, vxm, DENSE_ACCUMULATOR_RATIO};
pub use partition::{split_rows, PARALLEL_MIN_NNZ};
pub use reduce::{apply, reduce, reduce_matrix, reduce_rows, transpose};

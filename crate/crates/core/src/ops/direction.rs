use serde::{Deserialize, Serialize};

use crate::algebra::{Scalar, Semiring};
use crate::descriptor::{Descriptor, DirectionPolicy};
use crate::matrix::SparseMatrix;
use crate::vector::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// Sparse-vector multiply over the frontier's columns.
    Push,
    /// Dense-vector multiply over rows.
    Pull,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Direction::Push => "Push",
            Direction::Pull => "Pull",
        })
    }
}

/// Outcome of the push/pull rule for one matrix-vector product.
///
/// The frontier's edge count is estimated as `d · nnz(u)` with
/// `d = nnz(A) / nrows(A)`, assuming every frontier vertex has about the
/// average number of neighbors. Under [`DirectionPolicy::Auto`], pull is
/// chosen iff the estimate exceeds `nnz(A) · switch_ratio`; a tie stays with
/// push.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionDecision {
    pub chosen: Direction,
    pub policy: DirectionPolicy,
    /// `nnz(u)`.
    pub frontier_nvals: u64,
    /// `round(d · nnz(u))`.
    pub estimated_frontier_edges: u64,
    /// `nnz(A)`.
    pub total_edges: u64,
    /// `floor(nnz(A) · switch_ratio)`. Since the estimate is an integer,
    /// comparing against the floor is the same as comparing against the exact
    /// product.
    pub threshold_edges: u64,
}

impl DirectionDecision {
    pub fn evaluate(
        frontier_nvals: usize,
        total_edges: usize,
        nrows: usize,
        policy: DirectionPolicy,
        switch_ratio: f64,
    ) -> Self {
        let estimated = estimate_frontier_edges(frontier_nvals, total_edges, nrows);
        let threshold = (total_edges as f64 * switch_ratio).floor().max(0.0) as u64;
        let chosen = match policy {
            DirectionPolicy::ForcePush => Direction::Push,
            DirectionPolicy::ForcePull => Direction::Pull,
            // an empty graph has nothing to pull
            DirectionPolicy::Auto if total_edges == 0 => Direction::Push,
            DirectionPolicy::Auto if estimated > threshold => Direction::Pull,
            DirectionPolicy::Auto => Direction::Push,
        };
        Self {
            chosen,
            policy,
            frontier_nvals: frontier_nvals as u64,
            estimated_frontier_edges: estimated,
            total_edges: total_edges as u64,
            threshold_edges: threshold,
        }
    }

    /// Whether `chosen` follows from the logged numbers.
    pub fn rule_holds(&self) -> bool {
        let expect = match self.policy {
            DirectionPolicy::ForcePush => Direction::Push,
            DirectionPolicy::ForcePull => Direction::Pull,
            DirectionPolicy::Auto => {
                if self.total_edges > 0 && self.estimated_frontier_edges > self.threshold_edges {
                    Direction::Pull
                } else {
                    Direction::Push
                }
            }
        };
        expect == self.chosen
    }
}

/// `round(nnz(A) / nrows · nnz(u))`, computed exactly in integers (halves
/// round up).
fn estimate_frontier_edges(frontier_nvals: usize, total_edges: usize, nrows: usize) -> u64 {
    if nrows == 0 {
        return 0;
    }
    let num = total_edges as u128 * frontier_nvals as u128;
    let den = nrows as u128;
    ((2 * num + den) / (2 * den)) as u64
}

/// Applies the push/pull rule to `u` as an input of `A` over `semiring`.
/// Dense slots equal to the semiring identity do not count toward `nnz(u)`.
pub fn decide_direction<T: Scalar>(
    u: &Vector<T>,
    a: &SparseMatrix<T>,
    semiring: &Semiring<T>,
    desc: &Descriptor,
) -> DirectionDecision {
    DirectionDecision::evaluate(
        u.nvals_with(semiring.identity()),
        a.nvals(),
        a.nrows(),
        desc.direction,
        desc.switch_ratio,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn auto(nnz_u: usize, nnz_a: usize, m: usize) -> DirectionDecision {
        DirectionDecision::evaluate(nnz_u, nnz_a, m, DirectionPolicy::Auto, 0.1)
    }

    #[test]
    fn below_threshold_pushes() {
        let d = auto(5, 1000, 100);
        assert_eq!(d.estimated_frontier_edges, 50);
        assert_eq!(d.threshold_edges, 100);
        assert_eq!(d.chosen, Direction::Push);
    }

    #[test]
    fn above_threshold_pulls() {
        let d = auto(11, 1000, 100);
        assert_eq!(d.estimated_frontier_edges, 110);
        assert_eq!(d.chosen, Direction::Pull);
    }

    #[test]
    fn tie_stays_push() {
        let d = auto(10, 1000, 100);
        assert_eq!(d.estimated_frontier_edges, 100);
        assert_eq!(d.chosen, Direction::Push);
    }

    #[test]
    fn empty_cases() {
        assert_eq!(auto(0, 1000, 100).chosen, Direction::Push);
        assert_eq!(auto(3, 0, 10).chosen, Direction::Push);
        assert_eq!(auto(3, 0, 0).estimated_frontier_edges, 0);
    }

    #[test]
    fn forced_policies_bypass() {
        let d = DirectionDecision::evaluate(1000, 1000, 100, DirectionPolicy::ForcePush, 0.1);
        assert_eq!(d.chosen, Direction::Push);
        assert!(d.rule_holds());
        let d = DirectionDecision::evaluate(0, 1000, 100, DirectionPolicy::ForcePull, 0.1);
        assert_eq!(d.chosen, Direction::Pull);
    }

    #[test]
    fn rounding_is_half_up() {
        // d = 2.5, nnz(u) = 1 -> 2.5 -> 3
        assert_eq!(auto(1, 5, 2).estimated_frontier_edges, 3);
        assert_eq!(auto(1, 7, 3).estimated_frontier_edges, 2);
    }

    proptest::proptest! {
        #[test]
        fn monotone_in_frontier(nnz_a in 0usize..5000, m in 1usize..500, k in 0usize..500, ratio in 0.0f64..1.0) {
            let lo = DirectionDecision::evaluate(k, nnz_a, m, DirectionPolicy::Auto, ratio);
            let hi = DirectionDecision::evaluate(k + 1, nnz_a, m, DirectionPolicy::Auto, ratio);
            proptest::prop_assert!(lo.rule_holds() && hi.rule_holds());
            if lo.chosen == Direction::Pull {
                proptest::prop_assert_eq!(hi.chosen, Direction::Pull);
            }
        }
    }
}

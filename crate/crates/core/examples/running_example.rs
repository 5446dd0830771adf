// One BFS step on an 8-vertex graph with 20 stored entries, done three
// ways, with the work counters after each.
//
// The frontier is {0, 2, 3}; vertices {0, 1, 2, 3, 5} are already visited.
// The next frontier is {4, 7}.

use graphalg::ops::{spmspv_push, spmv_pull};
use graphalg::{Descriptor, Field, Monoid, Semiring, SparseMatrix, Vector};

/// `A(i, j) = 1` means a contribution from `j` reaches `i`.
pub fn graph() -> SparseMatrix<i64> {
    #[rustfmt::skip]
    let entries = [
        (2, 0), (4, 0), (4, 2), (5, 2), (7, 2), (2, 3), (5, 3), (7, 3),
        (4, 1), (4, 6), (6, 1), (6, 5), (6, 7), (7, 6), (0, 1), (1, 4),
        (1, 7), (2, 6), (3, 5), (5, 4),
    ];
    let tuples: Vec<_> = entries.iter().map(|&(i, j)| (i, j, 1)).collect();
    SparseMatrix::build(&tuples, 8, 8, &Monoid::plus()).expect("valid entries")
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let a = graph();
    let or_and = Semiring::logical_or_and();
    let frontier = Vector::build(&[0, 2, 3], &[1i64; 3], 8)?;
    let visited = Vector::build(&[0, 1, 2, 3, 5], &[1i64; 5], 8)?;
    println!("nnz(A) = {}", a.nvals());

    let desc = Descriptor::new();
    let w = spmv_pull(None, &or_and, &a, &frontier.to_dense(0), &desc)?;
    println!(
        "pull, no mask:   {:>2} entries read, output {:?}",
        desc.counters.matrix_entries_read(),
        w.extract_tuples().0
    );

    let desc = Descriptor::new();
    let w = spmspv_push(None, &or_and, &a, &frontier, &desc)?;
    println!(
        "push, no mask:   {:>2} multiplies,   output {:?}",
        desc.counters.semiring_multiplies(),
        w.extract_tuples().0
    );

    let mut desc = Descriptor::new();
    desc.toggle(Field::Mask);
    let w = spmv_pull(Some(&visited), &or_and, &a, &frontier.to_dense(0), &desc)?;
    println!(
        "pull, ¬visited:  {:>2} entries read, output {:?}",
        desc.counters.matrix_entries_read(),
        w.extract_tuples().0
    );

    assert_eq!(w.extract_tuples().0, vec![4, 7]);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}

// FastSV components, with and without grandparent sparsification.

use graphalg::algorithms::fastsv;
use graphalg::io::{edges_to_matrix, preprocess, EdgeList};
use graphalg::Descriptor;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    // two paths and an isolated vertex
    let edges = EdgeList::new(9, vec![(7, 5), (5, 3), (3, 1), (2, 4), (4, 6), (6, 8)]);
    let a = edges_to_matrix::<i64>(&preprocess(&edges, true))?;

    let sparse = fastsv(&a, true, &mut Descriptor::new())?;
    let dense = fastsv(&a, false, &mut Descriptor::new())?;
    println!("labels     {:?}", sparse.labels.to_vec(i64::MAX));
    println!(
        "iterations {} (sparsified), {} (plain)",
        sparse.iterations, dense.iterations
    );
    assert_eq!(sparse.labels, dense.labels);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}

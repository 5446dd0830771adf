// PageRank on a small directed graph without dangling vertices.

use graphalg::algorithms::pagerank;
use graphalg::{Descriptor, Monoid, SparseMatrix};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    // a 5-cycle plus chords into vertex 0
    let mut e: Vec<(usize, usize, f64)> = (0..5).map(|i| (i, (i + 1) % 5, 1.0)).collect();
    e.extend([(2, 0, 1.0), (3, 0, 1.0)]);
    let a = SparseMatrix::build(&e, 5, 5, &Monoid::plus())?;

    let r = pagerank(&a, 0.85, 1e-10, &mut Descriptor::new())?;
    let ranks = r.ranks.to_vec(0.0);
    for (v, p) in ranks.iter().enumerate() {
        println!("vertex {v}: {p:.6}");
    }
    println!(
        "{} iterations, last update {:.2e}, total {:.9}",
        r.iterations,
        r.error,
        ranks.iter().sum::<f64>()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}

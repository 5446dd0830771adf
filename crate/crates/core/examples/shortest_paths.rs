// Bellman-Ford with frontier sparsification on a weighted R-MAT graph.

use graphalg::algorithms::sssp_observed;
use graphalg::io::{assign_weights, edges_to_matrix, generate_rmat, preprocess, RmatParams};
use graphalg::Descriptor;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let edges = preprocess(&generate_rmat(&RmatParams::new(10, 8, 2))?, true);
    let edges = assign_weights(&edges, 1, 64, 2)?;
    let a = edges_to_matrix::<f64>(&edges)?;

    let mut desc = Descriptor::new();
    let r = sssp_observed(&a, 0, &mut desc, |round, v| {
        let reached = v.nvals_with(f64::INFINITY);
        println!("round {round:>2}: {reached} vertices reached");
    })?;
    for t in &r.trace {
        println!(
            "round {:>2}: {:>4} improved vertices carried, {}",
            t.iteration, t.frontier_nvals, t.decision.chosen
        );
    }
    let d = r.distances.to_vec(f64::INFINITY);
    let far = d.iter().copied().filter(|x| x.is_finite()).fold(0.0, f64::max);
    println!("eccentricity of vertex 0: {far}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}

// BFS on a scale-free R-MAT graph with the per-level push/pull trace.
//
// ```text
// cargo run --release --example bfs_direction -- 14
// ```

use graphalg::algorithms::bfs;
use graphalg::io::{edges_to_matrix, generate_rmat, preprocess, RmatParams};
use graphalg::{Descriptor, DirectionPolicy};

pub fn run_at(scale: u32) -> Result<(), Box<dyn std::error::Error>> {
    let edges = preprocess(&generate_rmat(&RmatParams::new(scale, 16, 1))?, true);
    let a = edges_to_matrix::<i64>(&edges)?;
    println!(
        "R-MAT scale {scale}: {} vertices, {} stored entries",
        a.nrows(),
        a.nvals()
    );

    let mut desc = Descriptor::new().with_early_exit(true);
    let auto = bfs(&a, 0, &mut desc)?;
    println!("iter  frontier  est. edges  threshold  direction");
    for r in &auto.trace {
        let d = r.decision;
        println!(
            "{:>4}  {:>8}  {:>10}  {:>9}  {}",
            r.iteration, d.frontier_nvals, d.estimated_frontier_edges, d.threshold_edges, d.chosen
        );
    }

    for policy in [DirectionPolicy::ForcePush, DirectionPolicy::ForcePull] {
        let forced = bfs(&a, 0, &mut Descriptor::new().with_direction(policy))?;
        assert_eq!(forced.levels, auto.levels);
    }
    let reached = auto.levels.nvals();
    println!(
        "reached {reached} vertices in {} levels; forced push and pull agree",
        auto.iterations - 1
    );
    Ok(())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    run_at(10)
}

#[allow(dead_code)]
fn main() {
    let scale = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    run_at(scale).unwrap();
}

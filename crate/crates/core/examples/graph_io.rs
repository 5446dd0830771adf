// Generate an R-MAT graph, clean it up, weight it, and round-trip it
// through a MatrixMarket file.

use graphalg::io::{
    assign_weights, edges_to_matrix, generate_rmat, preprocess, read_matrix_market, save_matrix_market, RmatParams,
};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let params = RmatParams::new(8, 16, 7);
    let raw = generate_rmat(&params)?;
    let clean = preprocess(&raw, true);
    println!(
        "{} samples -> {} directed edges after removing self-loops and duplicates",
        raw.len(),
        clean.len()
    );
    let weighted = assign_weights(&clean, 1, 64, params.seed)?;

    let path = std::env::temp_dir().join(format!("graphalg-example-{}.mtx", std::process::id()));
    save_matrix_market(&path, &weighted)?;
    let back = read_matrix_market(&path)?;
    std::fs::remove_file(&path)?;
    assert_eq!(back, weighted);

    let a = edges_to_matrix::<f64>(&back)?;
    let degrees: Vec<usize> = (0..a.nrows()).map(|i| a.row(i).0.len()).collect();
    let max = degrees.iter().max().copied().unwrap_or(0);
    println!("max degree {max}, mean degree {:.1}", a.avg_degree());
    println!("symmetric: {}", a.is_symmetric());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}

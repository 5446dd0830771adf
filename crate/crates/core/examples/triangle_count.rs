// Triangle counting via the masked product `L Lᵀ .* L`.

use graphalg::algorithms::triangle_count;
use graphalg::io::{edges_to_matrix, generate_rmat, preprocess, EdgeList, RmatParams};
use graphalg::Descriptor;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let k4 = EdgeList::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let a = edges_to_matrix::<i64>(&preprocess(&k4, true))?;
    let r = triangle_count(&a, &mut Descriptor::new())?;
    println!("K4: {} triangles, product holds {} entries", r.ntris, r.product.nvals());

    let g = preprocess(&generate_rmat(&RmatParams::new(11, 16, 4))?, true);
    let a = edges_to_matrix::<i64>(&g)?;
    let r = triangle_count(&a, &mut Descriptor::new())?;
    println!(
        "R-MAT scale 11: {} triangles; masked product stores {} of {} mask entries",
        r.ntris,
        r.product.nvals(),
        a.nvals() / 2
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}

// Built-in semirings and monoids, and a semiring assembled by hand.
//
// ```text
// cargo run --example semirings
// ```

use graphalg::ops::{mxv, reduce};
use graphalg::{builtin_monoid, builtin_semiring, BinaryOp, Descriptor, Monoid, Semiring, SparseMatrix, Vector};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    // 0 -> 1 (weight 4), 0 -> 2 (weight 1), 2 -> 1 (weight 2), stored as A(dst, src)
    let a = SparseMatrix::build(&[(1, 0, 4.0), (2, 0, 1.0), (1, 2, 2.0)], 3, 3, &Monoid::minimum())?;
    let desc = Descriptor::new();

    for name in ["PlusMultiplies", "MinPlus", "MaxPlus", "LogicalOrAnd"] {
        let s = builtin_semiring::<f64>(name)?;
        let u = Vector::build(&[0, 2], &[1.0, 1.0], 3)?;
        let w = mxv(None, &s, &a, &u, &desc)?;
        println!(
            "{name:>15}: identity {:>5}  A·u = {:?}",
            s.identity(),
            w.to_vec(s.identity())
        );
    }

    let path_lengths = Vector::build(&[0, 3, 5], &[1i64, 2, 3], 6)?;
    for name in ["Plus", "Minimum", "Maximum"] {
        let m = builtin_monoid::<i64>(name)?;
        println!("{name:>8}-reduce = {}", reduce(&m, &path_lengths));
    }
    assert_eq!(reduce(&Monoid::plus(), &path_lengths), 6);

    // user-defined: max-min (bottleneck paths)
    let max_min = Semiring::new("MaxMin", Monoid::maximum(), BinaryOp::min());
    let u = Vector::build(&[0], &[f64::INFINITY], 3)?;
    let w = mxv(None, &max_min, &a, &u, &desc)?;
    println!("         MaxMin: A·u = {:?}", w.extract_tuples_with(f64::NEG_INFINITY));

    assert!(builtin_semiring::<f64>("NoSuchSemiring").is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}

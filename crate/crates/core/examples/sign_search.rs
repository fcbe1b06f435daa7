//! Exhaustive search for ±1 functions of λ that reproduce n·r.

use std::f64::consts::FRAC_1_SQRT_2;

use fieldlhv::qubit;

fn main() -> fieldlhv::Result<()> {
    let c = 1.0 / 3f64.sqrt();
    let dirs = [
        [1.0, 0.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0],
        [c, c, c],
    ];
    for n in dirs {
        match qubit::sign_function_search(n)? {
            Some(g) => println!("{n:?}: {:?}", g.0),
            None => println!("{n:?}: none of the 256 sign functions works"),
        }
    }
    Ok(())
}

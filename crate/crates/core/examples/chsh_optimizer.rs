//! Maximizes the Bell expression over phases, then over real signs only.

use std::f64::consts::PI;

use fieldlhv::chsh;
use fieldlhv::Phase;

fn main() -> fieldlhv::Result<()> {
    for grid in [4, 8, 16] {
        let (model, value) = chsh::maximize_bell(grid, 50, 7)?;
        let t = model.thetas();
        println!(
            "grid {grid:>2}: {value:.12} at θ₂ = {:.6}, θ₄ = {:.6}",
            t[1].radians(),
            t[3].radians()
        );
    }
    let real = [Phase::new(0.0), Phase::new(PI)];
    let (_, value) = chsh::maximize_bell_on(&real, 50, 7)?;
    println!("real-valued maximum: {value:.12}");
    Ok(())
}

//! Matrix-level checks: GHZ eigenrelations, qubit expectations, and the
//! quantum CHSH value.

use std::f64::consts::FRAC_1_SQRT_2;

use fieldlhv::oracle;
use fieldlhv::qubit::{Axis, BlochVector};

fn main() -> fieldlhv::Result<()> {
    let psi = oracle::ghz_state();
    for (k, op) in oracle::ghz_operators().iter().enumerate() {
        println!("O{} residual at +1: {:e}", k + 1, oracle::eigen_residual(op, &psi, 1.0)?);
    }
    let xxx = oracle::pauli_string([Axis::X; 3]);
    println!("XXX residual at −1: {:e}", oracle::eigen_residual(&xxx, &psi, -1.0)?);

    let r = BlochVector::new(0.6, 0.0, 0.8)?;
    println!("Tr(ρ σ_z) = {:.6}", oracle::axis_expectation(&r, Axis::Z));

    let h = FRAC_1_SQRT_2;
    let value = oracle::chsh_quantum_value([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [h, h, 0.0], [h, -h, 0.0])?;
    println!("CHSH at optimal settings: {value:.12}");
    Ok(())
}

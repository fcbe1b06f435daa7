//! Signed eight-point distributions for a few Bloch vectors.

use fieldlhv::qubit::{self, Axis, BlochVector, Lambda};

fn main() -> fieldlhv::Result<()> {
    let c = 1.0 / 3f64.sqrt();
    for r in [
        BlochVector::new(0.0, 0.0, 1.0)?,
        BlochVector::new(0.6, 0.0, 0.8)?,
        BlochVector::new(c, c, c)?,
        BlochVector::new(0.0, 0.0, 0.0)?,
    ] {
        let d = qubit::state_distribution(&r);
        let weights: Vec<String> = Lambda::all().map(|l| format!("{:+.4}", d.get(l))).collect();
        println!("r = {:?}", r.components());
        println!("  p = [{}]", weights.join(", "));
        let e: Vec<String> = Axis::ALL
            .iter()
            .map(|&a| format!("⟨{a}⟩ = {:+.4}", qubit::axis_expectation(&d, a)))
            .collect();
        println!("  {}", e.join("  "));
        println!(
            "  retroaction {}, min weight {:+.10}",
            qubit::retroaction_check(&d),
            d.min_weight()
        );
    }
    Ok(())
}

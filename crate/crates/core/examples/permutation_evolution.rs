//! Evolving a distribution by permutations of the hidden variable.

use fieldlhv::qubit::{self, BlochVector, EvolutionMode, Permutation, PermutationMix};

fn main() -> fieldlhv::Result<()> {
    let r = BlochVector::new(0.3, -0.4, 0.5)?;
    let d = qubit::state_distribution(&r);
    println!("p        = {:?}", d.weights());

    let flip = Permutation::x_flip();
    let flipped = qubit::evolve_permutation(&d, &flip, EvolutionMode::Strict)?;
    println!("{flip} -> {:?}", flipped.weights());
    println!(
        "equals the state at (−r_x, r_y, r_z): {}",
        flipped == qubit::state_distribution(&BlochVector::new(-0.3, -0.4, 0.5)?)
    );

    let cycle: Permutation = "(1 2 3)".parse()?;
    match qubit::evolve_permutation(&d, &cycle, EvolutionMode::Strict) {
        Ok(_) => println!("{cycle} accepted"),
        Err(e) => println!("{cycle} rejected: {e}"),
    }
    let loose = qubit::evolve_permutation(&d, &cycle, EvolutionMode::Permissive)?;
    println!("permissive {cycle}: retroaction {}", qubit::retroaction_check(&loose));

    let swap: Permutation = "(1 8)(4 5)".parse()?;
    let mix = PermutationMix::new(vec![(flip, 0.25), (swap, 0.5), (Permutation::identity(), 0.25)])?;
    let mixed = qubit::evolve_mixture(&d, &mix)?;
    println!("mixture  = {:?}", mixed.weights());
    println!("retroaction after mixture: {}", qubit::retroaction_check(&mixed));
    Ok(())
}

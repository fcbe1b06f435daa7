//! Quaternionic GHZ assignments: condition sets, their intersection, and the
//! x-product, next to the classical ±1 contradiction.

use fieldlhv::ghz::{self, GhzCondition};

fn main() {
    println!("assignments: {}", ghz::enumerate_assignments().len());
    for cond in GhzCondition::ALL {
        println!("{cond}: {} satisfying", ghz::condition_set(cond).len());
    }
    let inter = ghz::ghz_intersection();
    let listed = ghz::listed_intersection_families();
    println!("intersection: {}", inter.len());
    println!("families with matching x and y signs: {}", listed.len());
    for a in inter.iter().take(4) {
        println!("  {a}  ->  x-product {}", ghz::xxx_product(a));
    }
    let products: std::collections::BTreeSet<String> =
        inter.iter().map(|a| ghz::xxx_product(a).to_string()).collect();
    println!("distinct x-products: {products:?}");

    let proof = ghz::classical_parity_check();
    println!(
        "classical: {} of {} sign assignments satisfy all three, product {:?}",
        proof.satisfying, proof.assignments_checked, proof.constant_product
    );
}

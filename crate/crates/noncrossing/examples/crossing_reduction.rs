//! Rewriting cumulants towards alternating partitions: one product-formula
//! step removes a connected neighbour, and iterating terminates in a
//! combination whose re-expansion matches the original exactly.
//!
//! Run with `cargo run --example crossing_reduction`.

use noncrossing::cumulants::{
    alternating_reduction, cumulant_combo, reduce_to_alternating, FormalCombo, Lattice,
};
use noncrossing::partitions::Partition;
use noncrossing::rat::rat_to_string;

fn main() -> noncrossing::Result<()> {
    // One step at the pair (1, 2) of the full partition of order 3:
    // K_{123}(X1,X2,X3) = K_{12}(X1X2, X3) - K_{13|2} - K_{1|23}.
    let pi = Partition::full(3);
    let step = alternating_reduction(&pi, 1)?;
    println!("K[{pi}] rewrites through position 1:");
    println!("  merged ground set: K[{}] on (X1X2, X3)", step.merged);
    for rho in &step.corrections {
        println!("  correction: -K[{rho}]");
    }

    // Full reduction of a partition with two connected neighbours.
    let pi: Partition = "1,2,3|4".parse()?;
    println!("\nfully reduced K[{pi}]:");
    let reduced = reduce_to_alternating(&pi)?;
    for (coeff, term) in &reduced {
        println!(
            "  {} * K[{}] with grouped sizes {:?}",
            rat_to_string(coeff),
            term.partition,
            term.sizes
        );
        assert!(term.partition.shape().alternating);
    }

    // Re-expanding every term into plain φ symbols gives back the original
    // cumulant expansion.
    let mut total = FormalCombo::zero();
    for (coeff, term) in &reduced {
        total = total.add(&term.expand()?.scale(coeff));
    }
    assert_eq!(total, cumulant_combo(&pi, Lattice::Set)?);
    println!("re-expansion equals the direct Möbius expansion of K[{pi}]");
    Ok(())
}

//! The product formula for cumulants of grouped variables: both sides as
//! formal combinations over fine φ symbols, equal coefficient by
//! coefficient.
//!
//! Run with `cargo run --example product_formula`.

use noncrossing::cumulants::{product_formula_sides, Lattice};
use noncrossing::partitions::Partition;
use noncrossing::rat::rat_to_string;

fn main() -> noncrossing::Result<()> {
    // K_2(X1 X2, X3) expands over partitions of three letters whose join
    // with the interval partition 1,2|3 is full.
    let pi = Partition::full(2);
    let sizes = [2usize, 1];
    let grouped = pi.induced_grouping(&sizes)?;
    let nu = Partition::singletons(2).induced_grouping(&sizes)?;
    println!("π = {pi}, sizes = {sizes:?}: grouped π̃ = {grouped}, interval partition ν = {nu}");
    let admitted: Vec<String> = Lattice::Set
        .elements(3)?
        .into_iter()
        .filter(|sigma| sigma.join(&nu).unwrap() == grouped)
        .map(|sigma| sigma.to_string())
        .collect();
    println!("σ with σ ∨ ν = π̃: {}", admitted.join(", "));

    let (lhs, rhs) = product_formula_sides(&pi, &sizes)?;
    assert_eq!(lhs, rhs);
    println!("\nboth sides expand to:");
    for (symbol, coeff) in lhs.terms() {
        println!("  {} {symbol}", rat_to_string(coeff));
    }

    // Exhaustive check over every outer partition of up to three products.
    let mut instances = 0usize;
    for m in 1..=3usize {
        for pi in Lattice::Set.elements(m)? {
            for sizes in cartesian_sizes(m) {
                let (lhs, rhs) = product_formula_sides(&pi, &sizes)?;
                assert_eq!(lhs, rhs, "π = {pi}, sizes = {sizes:?}");
                instances += 1;
            }
        }
    }
    println!("\n{instances} grouped-cumulant identities verified exactly");
    Ok(())
}

fn cartesian_sizes(m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                [1usize, 2].into_iter().map(move |s| {
                    let mut next = prefix.clone();
                    next.push(s);
                    next
                })
            })
            .collect();
    }
    out
}

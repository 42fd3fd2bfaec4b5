//! Partitions of {1..n}: enumeration, the refinement order, and block data.
//!
//! Run with `cargo run --example lattice_tour`.

use noncrossing::incidence::{bell, catalan};
use noncrossing::partitions::{partitions, Family, Partition};

fn main() -> noncrossing::Result<()> {
    // Enumeration is lexicographic in restricted-growth strings and starts
    // at the one-block partition.
    println!("partitions of {{1..4}}:");
    for pi in partitions(4, Family::All)? {
        let tag = if pi.is_noncrossing() { "  " } else { "× " };
        println!("  {tag}{pi}");
    }
    println!("(× marks the single crossing partition of order 4)\n");

    // Counts match the Bell and Catalan recurrences.
    for n in 1..=8 {
        let all = partitions(n, Family::All)?.count();
        let nc = partitions(n, Family::Noncrossing)?.count();
        assert_eq!(all, usize::try_from(bell(n)).unwrap());
        assert_eq!(nc, usize::try_from(catalan(n)).unwrap());
        println!("n = {n}: {all:>5} partitions, {nc:>5} noncrossing");
    }
    println!();

    // Meet, join and the refinement order.
    let a: Partition = "1,2|3".parse()?;
    let b: Partition = "1|2,3".parse()?;
    println!("meet({a}, {b}) = {}", a.meet(&b)?);
    println!("join({a}, {b}) = {}", a.join(&b)?);
    println!("{a} <= {b}? {}", a.leq(&b)?);

    // Block-size profiles: k_p counts the blocks of size p.
    let pi: Partition = "1,2|3,4|5".parse()?;
    let profile = pi.block_size_profile();
    println!(
        "\nprofile of {pi}: k_1 = {}, k_2 = {}",
        profile[1], profile[2]
    );

    // Structural predicates: connected neighbours and singletons.
    let shape = pi.shape();
    println!(
        "connected neighbours = {}, alternating = {}, singletons = {:?}",
        shape.connected_neighbours, shape.alternating, shape.singletons
    );
    Ok(())
}

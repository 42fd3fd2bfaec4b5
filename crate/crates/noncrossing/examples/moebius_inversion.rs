//! Möbius functions of both partition lattices: the factorized evaluation
//! and its agreement with the defining recursion.
//!
//! Run with `cargo run --example moebius_inversion`.

use noncrossing::incidence::{mobius_nc, mobius_recursive, mobius_set};
use noncrossing::partitions::{partitions, Family, Partition};
use noncrossing::rat::rat_to_string;

fn main() -> noncrossing::Result<()> {
    // On full intervals the values are signed Catalan numbers (noncrossing)
    // and signed factorials (all partitions).
    println!("mu(0̂_n, 1̂_n):   NC        Π");
    for n in 1..=6 {
        let bottom = Partition::singletons(n);
        let top = Partition::full(n);
        println!(
            "  n = {n}:      {:>6}   {:>6}",
            rat_to_string(&mobius_nc(&bottom, &top)?),
            rat_to_string(&mobius_set(&bottom, &top)?),
        );
    }

    // Mixed intervals factor through block restrictions and the Kreweras
    // complement; the generic recursion gives the same numbers.
    let sigma: Partition = "1|2,3|4|5".parse()?;
    let pi: Partition = "1,2,3|4,5".parse()?;
    let fast = mobius_nc(&sigma, &pi)?;
    let slow = mobius_recursive(&sigma, &pi, Family::Noncrossing)?;
    println!(
        "\nmu_NC([{sigma}, {pi}]) = {} (recursion: {})",
        rat_to_string(&fast),
        rat_to_string(&slow)
    );
    assert_eq!(fast, slow);

    // Column sums of the Möbius function vanish below the top element.
    let n = 4;
    let elements: Vec<Partition> = partitions(n, Family::Noncrossing)?.collect();
    let top = Partition::full(n);
    let mut acc = noncrossing::rat::rat(0);
    for tau in &elements {
        acc += mobius_nc(tau, &top)?;
    }
    println!(
        "sum of mu(τ, 1̂_4) over NC_4 = {} (zero by inversion)",
        rat_to_string(&acc)
    );
    Ok(())
}

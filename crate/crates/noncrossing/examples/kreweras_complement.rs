//! The Kreweras complement: construction, its defining maximality, and the
//! order-reversal it induces on the noncrossing lattice.
//!
//! Run with `cargo run --example kreweras_complement`.

use noncrossing::partitions::{partitions, Family, Partition};
use noncrossing::verify::kreweras_by_max_interweave;

fn main() -> noncrossing::Result<()> {
    println!("complements in NC_4:");
    for pi in partitions(4, Family::Noncrossing)? {
        let k = pi.kreweras()?;
        println!(
            "  K({pi}) = {k}    |π| + |K(π)| = {}",
            pi.num_blocks() + k.num_blocks()
        );
    }

    // K(π) is the largest σ whose interweave with π stays noncrossing.
    let pi: Partition = "1,2|3".parse()?;
    let k = pi.kreweras()?;
    println!("\nπ = {pi}: K(π) = {k}");
    println!("interweave(π, K(π)) = {}", pi.interweave(&k)?);
    assert!(pi.interweave(&k)?.is_noncrossing());
    assert_eq!(kreweras_by_max_interweave(&pi)?, k);

    // Anything strictly above the complement interweaves to a crossing.
    let too_big: Partition = "1,2,3".parse()?;
    let crossed = pi.interweave(&too_big)?;
    println!(
        "interweave(π, {too_big}) = {crossed} (crossing: {})",
        !crossed.is_noncrossing()
    );

    // Complementation reverses the refinement order.
    let coarse: Partition = "1,2,3|4".parse()?;
    let fine: Partition = "1,2|3|4".parse()?;
    assert!(fine.leq(&coarse)?);
    assert!(coarse.kreweras()?.leq(&fine.kreweras()?)?);
    println!(
        "\norder reversal: {fine} <= {coarse} while K({coarse}) = {} <= K({fine}) = {}",
        coarse.kreweras()?,
        fine.kreweras()?
    );
    Ok(())
}

//! Exact symmetrization distributions over index functions and the total
//! variation bound controlling their distance.
//!
//! Run with `cargo run --example definetti_symmetrization`.

use noncrossing::bounds::{definetti_tv, elementary_bound, symmetrization_distributions};
use noncrossing::partitions::Partition;
use noncrossing::rat::{rat_to_f64, rat_to_string};

fn main() -> noncrossing::Result<()> {
    // Two singleton blocks inside distinct coarse blocks: the full
    // symmetrization is uniform on injective pairs, the blockwise one on all
    // pairs.
    let pi: Partition = "1|2".parse()?;
    let rho: Partition = "1|2".parse()?;
    let (d1, d2) = symmetrization_distributions(&pi, &rho, 4)?;
    println!(
        "N = 4: injective support {} tuples (weight 1/12 each), blockwise {} tuples (weight 1/16 each)",
        d1.weights.len(),
        d2.weights.len()
    );
    let report = definetti_tv(&pi, &rho, 4)?;
    println!(
        "total variation = {}, bound (2r-1)p²/(N-p+1) = {}\n",
        rat_to_string(&report.tv),
        rat_to_string(&report.bound)
    );

    // The distance decays like 1/N while the bound certifies every instance.
    println!("   N        tv        bound");
    for big_n in [2usize, 4, 10, 30, 100, 1000] {
        let report = definetti_tv(&pi, &rho, big_n)?;
        assert!(report.holds);
        println!(
            "{:>5}   {:>9.6}   {:>9.4}",
            big_n,
            rat_to_f64(&report.tv),
            rat_to_f64(&report.bound)
        );
    }

    // A coarser noncrossing partition above makes the two symmetrizations
    // coincide on its single block.
    let rho: Partition = "1,2".parse()?;
    let report = definetti_tv(&pi, &rho, 10)?;
    println!(
        "\nwith rho = 1,2 the distributions coincide: tv = {}",
        rat_to_string(&report.tv)
    );

    // The elementary product bound that drives the estimate.
    let b = elementary_bound(2, 2, 5)?;
    println!(
        "elementary bound at j=2, p=2, N=5: 1 - (3/5)(1/2) = {} <= {}",
        rat_to_string(&b.lhs),
        rat_to_string(&b.rhs)
    );
    Ok(())
}

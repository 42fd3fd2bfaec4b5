//! From the implicit equation of φ_b̃ to its dominant singularity: the
//! resultant, the quartic factor, certified root enclosures, and the growth
//! constants they control.
//!
//! Run with `cargo run --example singularity_constants`.

use noncrossing::bounds::{
    btilde_resultant, growth_constants, khinchin_constant, negativity_check, quartic_factor,
};
use noncrossing::rat::{rat_to_f64, ratio};

fn main() -> noncrossing::Result<()> {
    // The resultant of g and ∂g/∂x collects the candidate singularities;
    // its essential factor is an explicit quartic.
    for param in 1..=3usize {
        let res = btilde_resultant(param)?;
        let quartic = quartic_factor(param)?;
        assert!(quartic.divides(&res));
        println!("N = {param}: quartic factor {quartic}");
    }

    // At N = 1 the smallest positive root is the constant behind the
    // tracial estimate.
    let constants = growth_constants(1, &ratio(1, 1_000_000_000_000))?;
    println!(
        "\nz0(1) in [{:.9}, {:.9}]",
        rat_to_f64(&constants.z0.lo),
        rat_to_f64(&constants.z0.hi)
    );
    println!("3π/(4 z0) = {:.5}", constants.pisier.unwrap());
    println!(
        "b-growth at N = 1: {:.1} (radicand factors as (1-7z)(1+z))",
        constants.b_growth
    );

    // For N >= 2 the quartic stays negative on [0, (√N-1)/(2N)], so the
    // growth 1/z0(N) is bounded by 2√N/(1 - 1/√N).
    println!("\n   N      1/z0(N)   2√N/(1-1/√N)   certified");
    for param in [2usize, 4, 10, 50, 200] {
        let c = growth_constants(param, &ratio(1, 1_000_000_000))?;
        let report = negativity_check(param, 16)?;
        println!(
            "{:>4}   {:>9.5}   {:>12.5}   {}",
            param,
            1.0 / c.z0.to_f64(),
            khinchin_constant(param)?,
            report.certified
        );
    }
    Ok(())
}

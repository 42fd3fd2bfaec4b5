//! Conditioned cumulants as formal Möbius algebra: the total cumulant
//! expands into "cumulants of cumulants" over either lattice, verified
//! coefficient by coefficient on free indeterminates u[ρ,τ] = φ_ρ∘ψ_τ.
//!
//! Run with `cargo run --example brillinger_formula`.

use noncrossing::cumulants::{brillinger_check, BrillingerContext, Lattice, Symbol};
use noncrossing::partitions::Partition;
use noncrossing::rat::rat_to_string;

fn main() -> noncrossing::Result<()> {
    // Order 2 by hand: C^φ = u[1̂,1̂] - u[0̂,0̂] and the two nested cumulants
    // E2(1̂,1̂) = u[1̂,1̂] - u[1̂,0̂], E2(1̂,0̂) = u[1̂,0̂] - u[0̂,0̂] telescope.
    let ctx = BrillingerContext::new(2, Lattice::Noncrossing)?;
    let top = Partition::full(2);
    let bottom = Partition::singletons(2);
    let show = |label: &str, combo: &noncrossing::cumulants::FormalCombo| {
        let terms: Vec<String> = combo
            .terms()
            .map(|(s, c)| format!("{} {s}", rat_to_string(c)))
            .collect();
        println!("{label} = {}", terms.join("  +  "));
    };
    show("C^phi(2)        ", &ctx.cphi()?);
    show("C∘C at pi = 1̂   ", &ctx.e2(&top, &top)?);
    show("C∘C at pi = 0̂   ", &ctx.e2(&top, &bottom)?);
    let total = ctx.e2(&top, &top)?.add(&ctx.e2(&top, &bottom)?);
    assert_eq!(total, ctx.cphi()?);
    println!("sum of the two equals C^phi(2)\n");

    // E1(σ,σ) carries u[σ,σ] with coefficient one.
    let e1 = ctx.e1(&top, &top)?;
    assert_eq!(
        e1.coeff(&Symbol::U(top.clone(), top.clone())),
        noncrossing::rat::rat(1)
    );

    // Higher orders, both lattices, including the telescoping and
    // interchange identities.
    for (lattice, max_n) in [(Lattice::Noncrossing, 5), (Lattice::Set, 4)] {
        for n in 1..=max_n {
            let report = brillinger_check(n, lattice)?;
            assert!(report.passed());
            println!(
                "order {n} over {:>3}: difference has {} nonzero terms, telescoping {}, interchange {}",
                lattice.label(),
                report.nonzero_terms.len(),
                report.telescoping_ok,
                report.intermediate_ok
            );
        }
    }
    Ok(())
}

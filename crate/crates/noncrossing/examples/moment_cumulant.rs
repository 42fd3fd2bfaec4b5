//! Moment–cumulant transforms over both lattices: free versus classical
//! cumulants of the standard examples, and an exact table round trip.
//!
//! Run with `cargo run --example moment_cumulant`.

use std::collections::BTreeMap;

use noncrossing::cumulants::{cumulants_to_moments, moments_to_cumulants, Assignment, Lattice};
use noncrossing::partitions::Partition;
use noncrossing::rat::{rat, rat_to_string, ratio};

fn main() -> noncrossing::Result<()> {
    // Moments 0, 1, 0, 2 are the semicircle prefix: its fourth free cumulant
    // vanishes. Moments 0, 1, 0, 3 are Gaussian: the fourth classical
    // cumulant vanishes.
    let semicircle = Assignment::Sequence(vec![rat(0), rat(1), rat(0), rat(2)]);
    let gaussian = Assignment::Sequence(vec![rat(0), rat(1), rat(0), rat(3)]);
    for k in 1..=4 {
        let free = moments_to_cumulants(&semicircle, &Partition::full(k), Lattice::Noncrossing)?;
        let classical = moments_to_cumulants(&gaussian, &Partition::full(k), Lattice::Set)?;
        println!(
            "order {k}: free cumulant (semicircle) = {}, classical cumulant (Gaussian) = {}",
            rat_to_string(&free),
            rat_to_string(&classical)
        );
    }

    // The other direction counts pair partitions when only the second
    // cumulant is present: 2 noncrossing ones versus 3 in total at order 4.
    let unit_variance = Assignment::Sequence(vec![rat(0), rat(1), rat(0), rat(0)]);
    println!(
        "\nm_4 from K_2 = 1: noncrossing {} vs classical {}",
        rat_to_string(&cumulants_to_moments(
            &unit_variance,
            &Partition::full(4),
            Lattice::Noncrossing
        )?),
        rat_to_string(&cumulants_to_moments(
            &unit_variance,
            &Partition::full(4),
            Lattice::Set
        )?),
    );

    // Table mode: assign arbitrary rational moments to every partition of
    // order 3 and invert exactly.
    let lattice = Lattice::Set;
    let elements = lattice.elements(3)?;
    let moments: BTreeMap<Partition, _> = elements
        .iter()
        .enumerate()
        .map(|(i, pi)| (pi.clone(), ratio(2 * i as i64 - 3, 1 + i as i64)))
        .collect();
    let table = Assignment::Table(moments.clone());
    let cumulants: BTreeMap<Partition, _> = elements
        .iter()
        .map(|pi| Ok((pi.clone(), moments_to_cumulants(&table, pi, lattice)?)))
        .collect::<noncrossing::Result<_>>()?;
    println!("\ntable transform over Π_3:");
    for (pi, value) in &cumulants {
        println!(
            "  φ({pi}) = {:>5}   K({pi}) = {}",
            rat_to_string(&moments[pi]),
            rat_to_string(value)
        );
    }
    let back = Assignment::Table(cumulants);
    for pi in &elements {
        assert_eq!(cumulants_to_moments(&back, pi, lattice)?, moments[pi]);
    }
    println!("round trip through the cumulant table is the exact identity");
    Ok(())
}

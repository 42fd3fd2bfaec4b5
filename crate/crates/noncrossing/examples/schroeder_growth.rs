//! The four growth sequences of the noncrossing lattice, each computed by
//! lattice summation and by its generating function, with exact agreement.
//!
//! Run with `cargo run --example schroeder_growth`.

use noncrossing::bounds::{sequence_by_enumeration, sequence_by_series, SequenceKind};
use noncrossing::rat::rat_to_string;

fn main() -> noncrossing::Result<()> {
    let n = 8;
    for (kind, param, formula) in [
        (SequenceKind::A, 0, "(1 - z - sqrt(1-6z+z^2))/2"),
        (SequenceKind::ATilde, 0, "y(1-y)(1-y-z) = z^2"),
        (SequenceKind::B, 2, "closed form at N = 2"),
        (SequenceKind::BTilde, 2, "implicit quartic at N = 2"),
    ] {
        let enumerated = sequence_by_enumeration(kind, n, param)?;
        let series = sequence_by_series(kind, n, param)?;
        assert_eq!(enumerated, series);
        let rendered: Vec<String> = series.iter().map(rat_to_string).collect();
        println!("{:<7} [{formula}]", kind.label());
        println!("        {}", rendered.join(", "));
    }

    // The a-sequence is the large Schröder numbers; the first values are
    // 1, 2, 6, 22, 90, 394.
    let a = sequence_by_enumeration(SequenceKind::A, 6, 0)?;
    let rendered: Vec<String> = a.iter().map(rat_to_string).collect();
    println!("\nlarge Schröder numbers: {}", rendered.join(", "));
    Ok(())
}

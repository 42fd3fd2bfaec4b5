//! The exact series toolbox on its own: composition, compositional
//! inverses, square roots, implicit solutions, resultants and certified
//! root enclosures.
//!
//! Run with `cargo run --example series_engine`.

use noncrossing::rat::{rat, rat_to_string, ratio};
use noncrossing::series::{
    implicit_solve, isolate_positive_roots, resultant, Poly, Poly2, PowerSeries,
};

fn render(series: &PowerSeries) -> String {
    series
        .coeffs()
        .iter()
        .map(rat_to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn main() -> noncrossing::Result<()> {
    // Composition and inversion: z/(1-z) inverts to z/(1+z).
    let order = 8;
    let mut coeffs = vec![rat(1); order + 1];
    coeffs[0] = rat(0);
    let geometric = PowerSeries::from_coeffs(coeffs);
    let inverse = geometric.compositional_inverse()?;
    println!("inverse of z/(1-z): {}", render(&inverse));
    assert_eq!(geometric.compose(&inverse)?, PowerSeries::identity(order));

    // The square root branch with constant term one.
    let mut radicand = PowerSeries::zero(order);
    radicand = radicand.add_constant(&rat(1));
    let radicand = radicand.add(&PowerSeries::identity(order).scale(&rat(4)));
    println!("sqrt(1 + 4z):       {}", render(&radicand.sqrt()?));

    // An implicit algebraic equation solved as a power series.
    let y = Poly2::term(rat(1), 1, 0);
    let one = Poly2::term(rat(1), 0, 0);
    let z = Poly2::term(rat(1), 0, 1);
    let g = y
        .mul(&one.sub(&y))
        .mul(&one.sub(&y).sub(&z))
        .sub(&Poly2::term(rat(1), 0, 2));
    let solution = implicit_solve(&g, order)?;
    println!("y(1-y)(1-y-z)=z²:   {}", render(&solution));

    // Resultants detect common roots in the eliminated variable.
    let p = y.sub(&z); // y - z
    let q = y.mul(&y).sub(&Poly2::term(rat(1), 0, 0)); // y² - 1
    let res = resultant(&p, &q)?;
    println!("Res_y(y - z, y² - 1) = {res}");

    // Certified enclosures of positive roots, exact at rational points.
    let quartic = Poly::from_coeffs(vec![rat(-5), rat(6), rat(57), rat(22), rat(3)]);
    for root in isolate_positive_roots(&quartic, &ratio(1, 1_000_000))? {
        println!(
            "positive root of {quartic}: [{}, {}] ≈ {:.6}",
            rat_to_string(&root.lo),
            rat_to_string(&root.hi),
            root.to_f64()
        );
    }
    Ok(())
}

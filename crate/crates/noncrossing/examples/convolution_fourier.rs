//! Multiplicative functions, the lattice convolution, and its Fourier
//! transform that turns the convolution into a series product.
//!
//! Run with `cargo run --example convolution_fourier`.

use noncrossing::incidence::{convolve_nc, MultiplicativeFunction};
use noncrossing::rat::{rat_to_string, ratio};
use noncrossing::series::{characteristic_series, convolve_via_fourier, fourier};

fn main() -> noncrossing::Result<()> {
    let order = 8;

    // zeta ⊠ mobius = delta: the defining inversion of the incidence algebra.
    let zeta = MultiplicativeFunction::zeta(order);
    let mobius = MultiplicativeFunction::mobius(order);
    let product = convolve_nc(&zeta, &mobius, order)?;
    assert_eq!(product, MultiplicativeFunction::delta(order));
    println!("zeta ⊠ mobius = delta up to order {order}");

    // |mobius| ⊠ zeta opens the large Schröder numbers.
    let schroeder = convolve_nc(&MultiplicativeFunction::abs_mobius(order), &zeta, order)?;
    let values: Vec<String> = schroeder
        .characteristic()
        .iter()
        .map(rat_to_string)
        .collect();
    println!("|mobius| ⊠ zeta = {}", values.join(", "));

    // The transforms of the two factors multiply to the transform of the
    // convolution: F_{f⊠g} = F_f F_g.
    let f = MultiplicativeFunction::from_characteristic(
        [1, 2, -1, 3, 0, 1, -2, 5, 1]
            .into_iter()
            .map(|v| ratio(v, 1))
            .collect(),
    );
    let g = MultiplicativeFunction::from_characteristic(
        [1, -1, 1, -1, 2, 0, 3, -2, 1]
            .into_iter()
            .map(|v| ratio(v, 1))
            .collect(),
    );
    let lattice_route = convolve_nc(&f, &g, order)?;
    let lhs = fourier(&lattice_route, order - 1)?;
    let rhs = fourier(&f, order - 1)?.mul(&fourier(&g, order - 1)?);
    assert_eq!(lhs, rhs);
    println!("F_(f⊠g) = F_f · F_g verified to order {}", order - 1);

    // The convolution can be recovered entirely through the transforms.
    let via_fourier = convolve_via_fourier(&f, &g, order - 1)?;
    assert_eq!(
        characteristic_series(&lattice_route, order - 1)?,
        via_fourier
    );
    let coeffs: Vec<String> = via_fourier.coeffs()[1..]
        .iter()
        .map(rat_to_string)
        .collect();
    println!("(f ⊠ g)_n via transforms: {}", coeffs.join(", "));
    Ok(())
}

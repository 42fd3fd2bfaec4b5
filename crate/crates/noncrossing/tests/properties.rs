//! Property tests over randomized inputs: lattice laws, series round trips,
//! and algebraic laws of the convolution.

use proptest::prelude::*;

use noncrossing::cumulants::{cumulants_to_moments, moments_to_cumulants, Assignment, Lattice};
use noncrossing::incidence::{convolve_nc, MultiplicativeFunction};
use noncrossing::partitions::{IndexFunction, Partition};
use noncrossing::rat::{ratio, Rat};
use noncrossing::series::PowerSeries;
use num_traits::{One, Zero};

fn partition_strategy(n: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=n, n)
        .prop_map(|values| IndexFunction::new(values).unwrap().kernel())
}

fn rational_strategy() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=9).prop_map(|(p, q)| ratio(p, q))
}

fn series_strategy(order: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(rational_strategy(), order + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_text_and_json_round_trip(pi in partition_strategy(7)) {
        let text: Partition = pi.to_string().parse().unwrap();
        prop_assert_eq!(&text, &pi);
        let json = Partition::from_json(&pi.to_json()).unwrap();
        prop_assert_eq!(&json, &pi);
    }

    #[test]
    fn meet_and_join_bracket_both_operands(
        a in partition_strategy(7),
        b in partition_strategy(7),
    ) {
        let meet = a.meet(&b).unwrap();
        let join = a.join(&b).unwrap();
        prop_assert!(meet.leq(&a).unwrap());
        prop_assert!(meet.leq(&b).unwrap());
        prop_assert!(a.leq(&join).unwrap());
        prop_assert!(b.leq(&join).unwrap());
        prop_assert_eq!(a.leq(&b).unwrap(), meet == a);
        prop_assert_eq!(a.leq(&b).unwrap(), join == b);
    }

    #[test]
    fn kreweras_block_count_complement(pi in partition_strategy(6)) {
        // |π| + |K(π)| = n + 1 holds for every noncrossing partition; the
        // strategy produces arbitrary partitions, so filter.
        if pi.is_noncrossing() {
            let k = pi.kreweras().unwrap();
            prop_assert_eq!(pi.num_blocks() + k.num_blocks(), pi.n() + 1);
            // K is an anti-automorphism, so applying it twice preserves the
            // block count.
            let kk = k.kreweras().unwrap();
            prop_assert_eq!(kk.num_blocks(), pi.num_blocks());
        }
    }

    #[test]
    fn compositional_inverse_round_trip(mut coeffs in series_strategy(9)) {
        coeffs[0] = Rat::zero();
        if coeffs[1].is_zero() {
            coeffs[1] = Rat::one();
        }
        let f = PowerSeries::from_coeffs(coeffs);
        let inverse = f.compositional_inverse().unwrap();
        prop_assert_eq!(f.compose(&inverse).unwrap(), PowerSeries::identity(f.order()));
        prop_assert_eq!(inverse.compose(&f).unwrap(), PowerSeries::identity(f.order()));
    }

    #[test]
    fn sqrt_squares_back(mut coeffs in series_strategy(9)) {
        coeffs[0] = Rat::one();
        let f = PowerSeries::from_coeffs(coeffs);
        let s = f.sqrt().unwrap();
        prop_assert_eq!(s.mul(&s), f);
    }

    #[test]
    fn convolution_is_commutative_and_associative(
        f in prop::collection::vec(rational_strategy(), 7),
        g in prop::collection::vec(rational_strategy(), 7),
        h in prop::collection::vec(rational_strategy(), 7),
    ) {
        let order = 7;
        let f = MultiplicativeFunction::from_characteristic(f);
        let g = MultiplicativeFunction::from_characteristic(g);
        let h = MultiplicativeFunction::from_characteristic(h);
        let fg = convolve_nc(&f, &g, order).unwrap();
        let gf = convolve_nc(&g, &f, order).unwrap();
        prop_assert_eq!(&fg, &gf);
        let fg_h = convolve_nc(&fg, &h, order).unwrap();
        let gh = convolve_nc(&g, &h, order).unwrap();
        let f_gh = convolve_nc(&f, &gh, order).unwrap();
        prop_assert_eq!(fg_h, f_gh);
    }

    #[test]
    fn sequence_mode_round_trip(values in prop::collection::vec(rational_strategy(), 6)) {
        for lattice in [Lattice::Set, Lattice::Noncrossing] {
            let moments = Assignment::Sequence(values.clone());
            let mut cumulants = Vec::new();
            for k in 1..=values.len() {
                cumulants.push(
                    moments_to_cumulants(&moments, &Partition::full(k), lattice).unwrap(),
                );
            }
            let back = Assignment::Sequence(cumulants);
            for k in 1..=values.len() {
                prop_assert_eq!(
                    cumulants_to_moments(&back, &Partition::full(k), lattice).unwrap(),
                    values[k - 1].clone()
                );
            }
        }
    }
}

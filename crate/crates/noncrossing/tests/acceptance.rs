//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.
//!
//! Every comparison here is exact (rational) unless a float tolerance is
//! spelled out next to the literal.

use std::time::Instant;

use num_traits::Zero;

use noncrossing::bounds::{
    b_radicand, btilde_ratio, btilde_resultant, definetti_tv, elementary_bound, growth_consistency,
    growth_constants, negativity_check, quartic_factor, sequence_by_enumeration,
    sequence_by_series, SequenceKind,
};
use noncrossing::cumulants::{brillinger_check, Lattice};
use noncrossing::partitions::{partitions_with_ceiling, Family, Partition};
use noncrossing::rat::{rat, ratio};
use noncrossing::series::Poly;
use noncrossing::verify::{convolution_checks, run_suite, SuiteParams};

fn criterion(id: usize, ok: bool, summary: &str) {
    println!(
        "[criterion {id:02}] {} — {summary}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {id} failed: {summary}");
}

#[test]
fn criterion_01_schroeder_sequence() {
    let start = Instant::now();
    let enumerated = sequence_by_enumeration(SequenceKind::A, 10, 0).unwrap();
    let series = sequence_by_series(SequenceKind::A, 10, 0).unwrap();
    let prefix_ok = enumerated[..4] == [rat(1), rat(2), rat(6), rat(22)];
    let routes_ok = enumerated == series;
    let fast = start.elapsed().as_secs_f64() < 10.0;
    criterion(
        1,
        prefix_ok && routes_ok && fast,
        "a_n = 1,2,6,22,... and enumeration = closed-form series for n <= 10 within 10 s",
    );
}

#[test]
fn criterion_02_convolution_and_fourier() {
    let failures = convolution_checks(8, 20, 2024).unwrap();
    criterion(
        2,
        failures.is_empty(),
        "zeta ⊠ mobius = delta (n <= 8) and F_{f⊠g} = F_f F_g to order 8 on 20 seeded pairs",
    );
}

#[test]
fn criterion_03_atilde_routes() {
    let enumerated = sequence_by_enumeration(SequenceKind::ATilde, 10, 0).unwrap();
    let series = sequence_by_series(SequenceKind::ATilde, 10, 0).unwrap();
    let prefix_ok = enumerated[..4] == [rat(0), rat(1), rat(1), rat(3)];
    criterion(
        3,
        prefix_ok && enumerated == series,
        "atilde from y(1-y)(1-y-z) = z^2 equals the lattice sum for n <= 10, exactly",
    );
}

#[test]
fn criterion_04_b_routes_and_growth() {
    let mut ok = true;
    for param in [1usize, 2, 3, 5] {
        let enumerated = sequence_by_enumeration(SequenceKind::B, 8, param).unwrap();
        let series = sequence_by_series(SequenceKind::B, 8, param).unwrap();
        ok &= enumerated == series;
        let n = param as i64;
        ok &= enumerated[3] == rat(22 * n + 8 * n * n);
    }
    // The radicand at N = 1 factors as (1 - 7z)(1 + z), so the growth is 7.
    let constants = growth_constants(1, &ratio(1, 1_000_000_000)).unwrap();
    ok &= b_radicand(1).eval(&ratio(1, 7)).is_zero();
    ok &= constants.b_growth_root.contains(&ratio(1, 7));
    criterion(
        4,
        ok,
        "b_n(N) enumeration = closed form (n <= 8, N in {1,2,3,5}), b4 = 22N + 8N^2, growth(1) = 7",
    );
}

#[test]
fn criterion_05_btilde_routes() {
    let mut ok = true;
    for param in [1usize, 2, 3] {
        let enumerated = sequence_by_enumeration(SequenceKind::BTilde, 8, param).unwrap();
        let series = sequence_by_series(SequenceKind::BTilde, 8, param).unwrap();
        ok &= enumerated == series;
    }
    criterion(
        5,
        ok,
        "btilde_n(N) enumeration = implicit-equation series (n <= 8, N in {1,2,3}), exactly",
    );
}

#[test]
fn criterion_06_resultant_pipeline() {
    let start = Instant::now();
    let res = btilde_resultant(1).unwrap();
    let quartic = quartic_factor(1).unwrap();
    let quartic_ok = quartic.divides(&res);
    // The remaining factor is z^2 (z + 1) up to a rational scalar.
    let cofactor = res.div_exact(&quartic).unwrap();
    let shape = Poly::from_coeffs(vec![rat(0), rat(0), rat(1), rat(1)]);
    let scale = cofactor.leading().unwrap() / shape.leading().unwrap();
    let cofactor_ok = !scale.is_zero() && cofactor == shape.scale(&scale);
    let constants = growth_constants(1, &ratio(1, 1_000_000_000)).unwrap();
    let z0_ok = (constants.z0.to_f64() - 0.238999).abs() < 5e-6;
    let pisier_ok = (constants.pisier.unwrap() - 9.85859).abs() < 1e-4;
    let fast = start.elapsed().as_secs_f64() < 5.0;
    criterion(
        6,
        quartic_ok && cofactor_ok && z0_ok && pisier_ok && fast,
        "N=1 resultant reproduces 3z^4+22z^3+57z^2+6z-5 up to scalar; z0 = 0.238999 (5e-6); 3π/(4 z0) = 9.85859 (1e-4); within 5 s",
    );
}

#[test]
fn criterion_07_quartic_divides_and_negativity() {
    let mut division_ok = true;
    for param in 1..=10usize {
        division_ok &= quartic_factor(param)
            .unwrap()
            .divides(&btilde_resultant(param).unwrap());
    }
    let mut negativity_ok = true;
    for param in 2..=200usize {
        negativity_ok &= negativity_check(param, 16).unwrap().certified;
    }
    criterion(
        7,
        division_ok && negativity_ok,
        "quartic divides Res_x(g, ∂x g) for N = 1..10; no root in [0, (√N-1)/(2N)] for N = 2..200",
    );
}

#[test]
fn criterion_08_brillinger() {
    let start = Instant::now();
    let mut ok = true;
    for n in 1..=5 {
        ok &= brillinger_check(n, Lattice::Noncrossing).unwrap().passed();
    }
    for n in 1..=4 {
        ok &= brillinger_check(n, Lattice::Set).unwrap().passed();
    }
    // Extended scope.
    ok &= brillinger_check(6, Lattice::Noncrossing).unwrap().passed();
    let fast = start.elapsed().as_secs_f64() < 120.0;
    criterion(
        8,
        ok && fast,
        "conditioned-cumulant identity zero for NC n <= 6 and set n <= 4, with telescoping and interchange, within 2 min",
    );
}

#[test]
fn criterion_09_product_formula() {
    let report = run_suite("product-formula", &SuiteParams::default()).unwrap();
    criterion(
        9,
        report.passed,
        "product formula lhs = rhs for all pi in Π_m, m <= 3, block sizes <= 2, exactly",
    );
}

#[test]
fn criterion_10_kreweras() {
    let report = run_suite(
        "kreweras",
        &SuiteParams {
            n: Some(8),
            ..Default::default()
        },
    )
    .unwrap();
    criterion(
        10,
        report.passed,
        "constructive Kreweras = interweave oracle (n <= 8); |π|+|K(π)| = n+1; order reversal and interval counts (n <= 7)",
    );
}

#[test]
fn criterion_11_singleton_lemma() {
    let report = run_suite(
        "singleton",
        &SuiteParams {
            n: Some(9),
            ..Default::default()
        },
    )
    .unwrap();
    criterion(
        11,
        report.passed,
        "noncrossing partitions below alternating ones have singletons (n <= 9); cumulant sums vanish on alternating kernels (n <= 8)",
    );
}

#[test]
fn criterion_12_definetti_bound() {
    let mut holds_ok = true;
    let mut decay_ok = true;
    for n in 1..=5usize {
        let pis: Vec<Partition> = partitions_with_ceiling(n, Family::All, usize::MAX)
            .unwrap()
            .collect();
        let rhos: Vec<Partition> = partitions_with_ceiling(n, Family::Noncrossing, usize::MAX)
            .unwrap()
            .collect();
        for pi in &pis {
            let p = pi.num_blocks();
            for rho in &rhos {
                if !pi.leq(rho).unwrap() {
                    continue;
                }
                for big_n in p..=30 {
                    holds_ok &= definetti_tv(pi, rho, big_n).unwrap().holds;
                }
                if p <= 10 {
                    let early = definetti_tv(pi, rho, 10).unwrap();
                    let late = definetti_tv(pi, rho, 100).unwrap();
                    // Strict decay whenever the distance is nonzero; the
                    // distributions coincide identically when ρ has a single
                    // block, and then both sides are zero.
                    decay_ok &= if early.tv.is_zero() {
                        late.tv.is_zero()
                    } else {
                        late.tv < early.tv
                    };
                }
            }
        }
    }
    criterion(
        12,
        holds_ok && decay_ok,
        "tv <= (2r-1)p^2/(N-p+1) for all pi in Π_n (n <= 5), noncrossing rho >= pi, p <= N <= 30; tv decays from N=10 to N=100",
    );
}

#[test]
fn criterion_13_elementary_bound_grid() {
    let mut ok = true;
    for big_n in 1..=40usize {
        for j in 1..=big_n {
            for p in 1..=big_n {
                ok &= elementary_bound(j, p, big_n).unwrap().holds;
            }
        }
    }
    criterion(
        13,
        ok,
        "1 - Π(1 - j/(N-i)) <= pj/(N-p+1) over the full grid 1 <= j, p <= N <= 40, exactly",
    );
}

#[test]
fn criterion_14_round_trips() {
    let report = run_suite(
        "roundtrip",
        &SuiteParams {
            n: Some(8),
            seed: Some(2024),
            ..Default::default()
        },
    )
    .unwrap();
    criterion(
        14,
        report.passed,
        "moment↔cumulant round trips exact on seeded data (n <= 8, both lattices); semicircle K4 = 0 and Gaussian κ4 = 0",
    );
}

#[test]
fn criterion_15_growth_consistency() {
    let mut ok = true;
    for param in 2..=200usize {
        ok &= growth_consistency(param).unwrap();
    }
    for param in [1usize, 2, 4] {
        let ratio_n = btilde_ratio(param, 24).unwrap();
        let constants = growth_constants(param, &ratio(1, 1_000_000_000_000)).unwrap();
        let lo = &ratio_n * &constants.z0.lo;
        let hi = &ratio_n * &constants.z0.hi;
        ok &= lo >= ratio(9, 10) && hi <= ratio(11, 10);
    }
    criterion(
        15,
        ok,
        "1/z0(N) <= 2√N/(1-1/√N) for N = 2..200; btilde ratio within 10% of 1/z0 at n = 24 for N in {1,2,4}",
    );
}

//! Growth sequences of the noncrossing lattice, their generating functions,
//! singularity constants, and exact symmetrization bounds.
//!
//! Four sequences are computed by two independent routes each — direct
//! lattice summation and series extraction — and must agree exactly:
//!
//! * `a_n = Σ_{σ∈NC_n} |μ(σ, 1̂_n)|`, the large Schröder numbers,
//!   with `φ_a = (1 - z - sqrt(1 - 6z + z²))/2`;
//! * `ã_n`, the same sum over singleton-free partitions, whose series
//!   satisfies `y(1-y)(1-y-z) = z²`;
//! * `b_n(N) = Σ_{NC_n, no singletons} N^{|π|} a_π`, with a closed form;
//! * `b̃_n(N) = Σ_{NC_n} N^{|π|} ã_π`, from an implicit quartic equation.
//!
//! The dominant singularity of `φ_b̃` is located through a resultant whose
//! relevant factor is an explicit quartic `r(z)`; its smallest positive root
//! `z0(N)` is certified (via Sturm counts at rational points) to stay above
//! `(√N - 1)/(2N)`, which pins the growth `1/z0(N)` below `2√N/(1-1/√N)`.
//!
//! The symmetrization part compares the uniform injective-index distribution
//! against its blockwise variant in exact total variation and checks the
//! `(2r-1)p²/(N-p+1)` bound instance by instance.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::incidence::MultiplicativeFunction;
use crate::partitions::{partitions_with_ceiling, Family, Partition};
use crate::rat::{falling, rat, ratio, Rat};
use crate::series::{
    count_roots_in, implicit_solve, isolate_positive_roots, sturm_sequence, zeta_convolve, Poly,
    Poly2, PowerSeries, RootInterval,
};
use crate::{Error, Result};

/// Which growth sequence is requested.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SequenceKind {
    /// Large Schröder numbers `a_n`.
    A,
    /// Singleton-free sums `ã_n`.
    ATilde,
    /// `b_n(N)` over singleton-free partitions with `N^{|π|}` weights.
    B,
    /// `b̃_n(N)` over all noncrossing partitions.
    BTilde,
}

impl SequenceKind {
    pub fn label(self) -> &'static str {
        match self {
            SequenceKind::A => "a",
            SequenceKind::ATilde => "atilde",
            SequenceKind::B => "b",
            SequenceKind::BTilde => "btilde",
        }
    }

    /// Does the sequence depend on the copy parameter `N`?
    pub fn uses_parameter(self) -> bool {
        matches!(self, SequenceKind::B | SequenceKind::BTilde)
    }
}

impl std::str::FromStr for SequenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(SequenceKind::A),
            "atilde" => Ok(SequenceKind::ATilde),
            "b" => Ok(SequenceKind::B),
            "btilde" => Ok(SequenceKind::BTilde),
            other => Err(Error::Parse(format!("unknown sequence kind {other:?}"))),
        }
    }
}

const ENUMERATION_CEILING: usize = 10;
const SERIES_CEILING: usize = 64;

fn noncrossing(n: usize) -> Result<impl Iterator<Item = Partition>> {
    partitions_with_ceiling(n, Family::Noncrossing, usize::MAX)
}

/// `|μ(σ, 1̂_n)|` through the Kreweras complement of `σ`.
fn abs_mobius_to_top(sigma: &Partition, abs_mobius: &MultiplicativeFunction) -> Result<Rat> {
    abs_mobius.eval(&sigma.kreweras()?)
}

/// Values `1..=n` of the chosen sequence by direct lattice summation.
pub fn sequence_by_enumeration(kind: SequenceKind, n: usize, param: usize) -> Result<Vec<Rat>> {
    if n == 0 || n > ENUMERATION_CEILING {
        return Err(Error::SizeLimit {
            what: "sequence enumeration",
            n,
            max: ENUMERATION_CEILING,
        });
    }
    if kind.uses_parameter() && param == 0 {
        return Err(Error::domain("parameter N must be positive"));
    }
    let abs_mobius = MultiplicativeFunction::abs_mobius(n);
    let singleton_free = |pi: &Partition| pi.block_sizes().iter().all(|&s| s >= 2);
    match kind {
        SequenceKind::A | SequenceKind::ATilde => {
            let restrict = kind == SequenceKind::ATilde;
            let mut values = Vec::with_capacity(n);
            for m in 1..=n {
                let mut acc = Rat::zero();
                for sigma in noncrossing(m)? {
                    if restrict && !singleton_free(&sigma) {
                        continue;
                    }
                    acc += abs_mobius_to_top(&sigma, &abs_mobius)?;
                }
                values.push(acc);
            }
            Ok(values)
        }
        SequenceKind::B | SequenceKind::BTilde => {
            let inner = match kind {
                SequenceKind::B => sequence_by_enumeration(SequenceKind::A, n, 0)?,
                _ => sequence_by_enumeration(SequenceKind::ATilde, n, 0)?,
            };
            let weights = MultiplicativeFunction::from_characteristic(inner);
            let big_n = rat(param as i64);
            let mut values = Vec::with_capacity(n);
            for m in 1..=n {
                let mut acc = Rat::zero();
                for pi in noncrossing(m)? {
                    // For b the sum is restricted to singleton-free
                    // partitions; for b̃ the factor ã_1 = 0 removes them
                    // anyway, so the restriction is harmless there.
                    if kind == SequenceKind::B && !singleton_free(&pi) {
                        continue;
                    }
                    let mut term = weights.eval(&pi)?;
                    if term.is_zero() {
                        continue;
                    }
                    for _ in 0..pi.num_blocks() {
                        term *= &big_n;
                    }
                    acc += term;
                }
                values.push(acc);
            }
            Ok(values)
        }
    }
}

/// `φ_a = (1 - z - sqrt(1 - 6z + z²))/2`, the Schröder generating function.
pub fn phi_a(order: usize) -> Result<PowerSeries> {
    let mut radicand = PowerSeries::zero(order);
    radicand = radicand.add_constant(&rat(1));
    if order >= 1 {
        radicand = radicand.add(&PowerSeries::identity(order).scale(&rat(-6)));
    }
    if order >= 2 {
        radicand = radicand.add(&PowerSeries::identity(order).shift_up(1));
    }
    let one_minus_z = PowerSeries::identity(order).neg().add_constant(&rat(1));
    Ok(one_minus_z.sub(&radicand.sqrt()?).scale(&ratio(1, 2)))
}

/// `φ_å = φ_a - z` (no singleton contribution at order one).
pub fn phi_a_bub(order: usize) -> Result<PowerSeries> {
    Ok(phi_a(order)?.sub(&PowerSeries::identity(order)))
}

/// Closed form `φ_b = 2(N+1)/(N + 2 + 3Nz + N sqrt(1 - 6z + (1-8N)z²)) - 1`.
pub fn phi_b_closed_form(param: usize, order: usize) -> Result<PowerSeries> {
    if param == 0 {
        return Err(Error::domain("parameter N must be positive"));
    }
    let big_n = rat(param as i64);
    let radicand = b_radicand(param).eval_series(&PowerSeries::identity(order));
    let denom = PowerSeries::identity(order)
        .scale(&(rat(3) * &big_n))
        .add_constant(&(&big_n + rat(2)))
        .add(&radicand.sqrt()?.scale(&big_n));
    let numer = PowerSeries::zero(order).add_constant(&((&big_n + rat(1)) * rat(2)));
    Ok(numer.div(&denom)?.add_constant(&rat(-1)))
}

/// The radicand `1 - 6z + (1 - 8N) z²` of the closed form of `φ_b`.
pub fn b_radicand(param: usize) -> Poly {
    Poly::from_coeffs(vec![rat(1), rat(-6), rat(1 - 8 * param as i64)])
}

/// `φ_ã` from the algebraic equation `y(1-y)(1-y-z) = z²`.
pub fn phi_atilde(order: usize) -> Result<PowerSeries> {
    let y = Poly2::term(rat(1), 1, 0);
    let one = Poly2::term(rat(1), 0, 0);
    let z = Poly2::term(rat(1), 0, 1);
    let z2 = Poly2::term(rat(1), 0, 2);
    let g = y.mul(&one.sub(&y)).mul(&one.sub(&y).sub(&z)).sub(&z2);
    implicit_solve(&g, order)
}

/// The implicit equation for `φ_b̃`:
/// `g(x,z) = (x/N)(1 - x/N)(1 - x/N - z(1+x)) - z²(1+x)²`.
pub fn btilde_equation(param: usize) -> Result<Poly2> {
    if param == 0 {
        return Err(Error::domain("parameter N must be positive"));
    }
    let inv_n = ratio(1, param as i64);
    let x = Poly2::term(rat(1), 1, 0);
    let one = Poly2::term(rat(1), 0, 0);
    let z = Poly2::term(rat(1), 0, 1);
    let x_over_n = Poly2::term(inv_n, 1, 0);
    let one_plus_x = one.add(&x);
    let last = one.sub(&x_over_n).sub(&z.mul(&one_plus_x));
    let z2 = Poly2::term(rat(1), 0, 2);
    Ok(x_over_n
        .mul(&one.sub(&x_over_n))
        .mul(&last)
        .sub(&z2.mul(&one_plus_x).mul(&one_plus_x)))
}

/// `φ_b̃` solved from [`btilde_equation`].
pub fn phi_btilde(param: usize, order: usize) -> Result<PowerSeries> {
    implicit_solve(&btilde_equation(param)?, order)
}

/// Values `1..=n` of the chosen sequence from the series engine.
pub fn sequence_by_series(kind: SequenceKind, n: usize, param: usize) -> Result<Vec<Rat>> {
    if n == 0 || n > SERIES_CEILING {
        return Err(Error::SizeLimit {
            what: "sequence series extraction",
            n,
            max: SERIES_CEILING,
        });
    }
    let series = match kind {
        SequenceKind::A => phi_a(n)?,
        SequenceKind::ATilde => phi_atilde(n)?,
        SequenceKind::B => phi_b_closed_form(param, n)?,
        SequenceKind::BTilde => phi_btilde(param, n)?,
    };
    Ok(series.coeffs()[1..=n].to_vec())
}

/// `φ_b` recomputed through the zeta relation `N φ_å(z(1+φ_b)) = φ_b`.
pub fn phi_b_via_zeta_relation(param: usize, order: usize) -> Result<PowerSeries> {
    let scaled = phi_a_bub(order)?.scale(&rat(param as i64));
    zeta_convolve(&scaled)
}

// ---------------------------------------------------------------------------
// The quartic factor and its constants
// ---------------------------------------------------------------------------

/// The quartic
/// `r(z) = -5 + (8-2N) z + (32+26N-N²) z² + (-4+16N+10N²) z³ + (4N³-N²) z⁴`
/// carrying the dominant singularity of `φ_b̃`.
pub fn quartic_factor(param: usize) -> Result<Poly> {
    if param == 0 {
        return Err(Error::domain("parameter N must be positive"));
    }
    let n = param as i64;
    Ok(Poly::from_coeffs(vec![
        rat(-5),
        rat(8 - 2 * n),
        rat(32 + 26 * n - n * n),
        rat(-4 + 16 * n + 10 * n * n),
        rat(4 * n * n * n - n * n),
    ]))
}

/// `Res_x(g, ∂g/∂x)` for the `b̃` equation at the given `N`.
pub fn btilde_resultant(param: usize) -> Result<Poly> {
    let g = btilde_equation(param)?;
    crate::series::resultant(&g, &g.partial_x())
}

/// Rational enclosure `[lo, hi]` of `√x` with `hi - lo <= width`.
pub fn sqrt_bounds(x: &Rat, width: &Rat) -> Result<RootInterval> {
    if x.is_negative() {
        return Err(Error::domain("square root of a negative rational"));
    }
    if x.is_zero() {
        return Ok(RootInterval {
            lo: Rat::zero(),
            hi: Rat::zero(),
        });
    }
    let p = Poly::from_coeffs(vec![-x.clone(), Rat::zero(), Rat::one()]);
    let roots = isolate_positive_roots(&p, width)?;
    roots
        .into_iter()
        .next()
        .ok_or_else(|| Error::Solver("square root isolation failed".into()))
}

/// Constants attached to the parameter `N`.
#[derive(Clone, Debug)]
pub struct GrowthConstants {
    pub param: usize,
    /// Smallest positive root of the quartic factor.
    pub z0: RootInterval,
    /// `2√N/(1 - 1/√N)`; undefined at `N = 1`.
    pub khinchin: Option<f64>,
    /// Smallest positive root of the radicand `1 - 6z + (1-8N)z²`.
    pub b_growth_root: RootInterval,
    /// Exponential growth rate of `b_n(N)`: the reciprocal of that root.
    pub b_growth: f64,
    /// `3π/(4 z0)`, reported at `N = 1` only.
    pub pisier: Option<f64>,
}

/// `2√N/(1 - 1/√N)` as a float; errors at `N = 1` (division by zero).
pub fn khinchin_constant(param: usize) -> Result<f64> {
    if param < 2 {
        return Err(Error::domain(
            "the Khinchin-type constant needs N >= 2 (division by zero at N = 1)",
        ));
    }
    let sqrt_n = (param as f64).sqrt();
    Ok(2.0 * sqrt_n / (1.0 - 1.0 / sqrt_n))
}

/// Computes `z0`, the growth constants and (for `N = 1`) the tracial
/// constant, with the root enclosure refined to `precision`.
pub fn growth_constants(param: usize, precision: &Rat) -> Result<GrowthConstants> {
    let quartic = quartic_factor(param)?;
    let roots = isolate_positive_roots(&quartic, precision)?;
    let z0 = roots
        .into_iter()
        .next()
        .ok_or_else(|| Error::Solver("quartic factor has no positive root".into()))?;
    let radicand_roots = isolate_positive_roots(&b_radicand(param), precision)?;
    let b_growth_root = radicand_roots
        .into_iter()
        .next()
        .ok_or_else(|| Error::Solver("radicand has no positive root".into()))?;
    let b_growth = 1.0 / b_growth_root.to_f64();
    let pisier = if param == 1 {
        Some(3.0 * std::f64::consts::PI / (4.0 * z0.to_f64()))
    } else {
        None
    };
    Ok(GrowthConstants {
        param,
        z0,
        khinchin: khinchin_constant(param).ok(),
        b_growth_root,
        b_growth,
        pisier,
    })
}

/// Outcome of the no-root certification on `[0, (√N - 1)/(2N)]`.
#[derive(Clone, Debug)]
pub struct NegativityReport {
    pub param: usize,
    /// Rational upper bound used for the interval endpoint.
    pub bound: Rat,
    /// Sturm count of quartic roots in `(0, bound]`.
    pub roots_in_interval: usize,
    /// Exact signs on the sampled grid were all negative.
    pub negative_on_grid: bool,
    pub certified: bool,
}

/// Certifies that the quartic has no root in `[0, (√N - 1)/(2N)]` for
/// `N >= 2`, by a Sturm count against a rational over-approximation of the
/// endpoint, plus an exact-sign sweep over `grid` sample points.
pub fn negativity_check(param: usize, grid: usize) -> Result<NegativityReport> {
    if param < 2 {
        return Err(Error::domain("negativity certification needs N >= 2"));
    }
    let quartic = quartic_factor(param)?;
    // (√N - 1)/(2N) <= (s_hi - 1)/(2N) for any rational s_hi >= √N.
    let sqrt_n = sqrt_bounds(&rat(param as i64), &ratio(1, 1_000_000_000))?;
    let bound = (&sqrt_n.hi - Rat::one()) / rat(2 * param as i64);
    let reduced = quartic.square_free()?;
    let seq = sturm_sequence(&reduced);
    let roots_in_interval = count_roots_in(&seq, &Rat::zero(), &bound);
    let mut negative_on_grid = quartic.eval(&Rat::zero()).is_negative();
    let samples = grid.max(1);
    for i in 1..=samples {
        let point = &bound * ratio(i as i64, samples as i64);
        if !quartic.eval(&point).is_negative() {
            negative_on_grid = false;
            break;
        }
    }
    Ok(NegativityReport {
        param,
        bound,
        roots_in_interval,
        negative_on_grid,
        certified: roots_in_interval == 0 && negative_on_grid,
    })
}

/// Exact check that `1/z0(N) <= 2√N/(1 - 1/√N)`, i.e. `z0(N) >= (√N-1)/(2N)`:
/// the quartic has a positive root, and none lies in the certified interval.
pub fn growth_consistency(param: usize) -> Result<bool> {
    let report = negativity_check(param, 16)?;
    let quartic = quartic_factor(param)?;
    let has_positive_root = !isolate_positive_roots(&quartic, &ratio(1, 1024))?.is_empty();
    Ok(report.certified && has_positive_root)
}

// ---------------------------------------------------------------------------
// The elementary product bound
// ---------------------------------------------------------------------------

/// The two sides of `1 - Π_{i=0}^{p-1}(1 - j/(N-i)) <= pj/(N-p+1)`.
#[derive(Clone, Debug)]
pub struct ElementaryBound {
    pub lhs: Rat,
    pub rhs: Rat,
    pub holds: bool,
}

pub fn elementary_bound(j: usize, p: usize, big_n: usize) -> Result<ElementaryBound> {
    if j == 0 || p == 0 || j > big_n || p > big_n {
        return Err(Error::domain(
            "elementary bound needs 1 <= j <= N and 1 <= p <= N",
        ));
    }
    let jr = rat(j as i64);
    let mut product = Rat::one();
    for i in 0..p {
        product *= Rat::one() - &jr / rat((big_n - i) as i64);
    }
    let lhs = Rat::one() - product;
    let rhs = rat((p * j) as i64) / rat((big_n - p + 1) as i64);
    let holds = lhs <= rhs;
    Ok(ElementaryBound { lhs, rhs, holds })
}

// ---------------------------------------------------------------------------
// Symmetrization distributions and the de Finetti bound
// ---------------------------------------------------------------------------

/// An exact probability distribution over index tuples `h : [p] → [N]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexDistribution {
    pub p: usize,
    pub range_size: usize,
    /// Weight per tuple (1-based values); absent tuples have weight zero.
    pub weights: BTreeMap<Vec<usize>, Rat>,
}

impl IndexDistribution {
    pub fn total_mass(&self) -> Rat {
        let mut acc = Rat::zero();
        for w in self.weights.values() {
            acc += w;
        }
        acc
    }
}

const DISTRIBUTION_CEILING: usize = 1 << 20;

fn checked_preconditions(pi: &Partition, rho: &Partition, big_n: usize) -> Result<Partition> {
    if !rho.is_noncrossing() {
        return Err(Error::domain("the coarser partition must be noncrossing"));
    }
    if !pi.leq(rho)? {
        return Err(Error::domain("requires pi <= rho"));
    }
    let p = pi.num_blocks();
    if big_n < p {
        return Err(Error::domain(format!(
            "range N = {big_n} smaller than the number of blocks p = {p}"
        )));
    }
    rho.quotient(pi)
}

/// Materializes the two symmetrization distributions over `h : [p] → [N]`:
/// the uniform injective one, and the blockwise variant supported on
/// `{h : ker h ∧ ρ̃ = 0̂_p}` with weights `Π_k (N - p_k)!/N!`.
///
/// Intended for small instances (the support has up to `N^p` tuples); the
/// total-variation comparison in [`definetti_tv`] avoids materialization.
pub fn symmetrization_distributions(
    pi: &Partition,
    rho: &Partition,
    big_n: usize,
) -> Result<(IndexDistribution, IndexDistribution)> {
    let quotient = checked_preconditions(pi, rho, big_n)?;
    let p = pi.num_blocks();
    if big_n.pow(p as u32) > DISTRIBUTION_CEILING {
        return Err(Error::SizeLimit {
            what: "index distribution materialization",
            n: big_n.pow(p as u32),
            max: DISTRIBUTION_CEILING,
        });
    }
    let injective_weight = Rat::new(falling(big_n, p), BigInt::one()).recip();
    let block_sizes = quotient.block_sizes();
    let mut blockwise_weight = Rat::one();
    for &pk in &block_sizes {
        blockwise_weight *= Rat::new(falling(big_n, pk), BigInt::one()).recip();
    }

    let mut d1 = BTreeMap::new();
    let mut d2 = BTreeMap::new();
    let mut tuple = vec![1usize; p];
    loop {
        let injective = {
            let mut seen = vec![false; big_n + 1];
            tuple
                .iter()
                .all(|&v| !std::mem::replace(&mut seen[v], true))
        };
        if injective {
            d1.insert(tuple.clone(), injective_weight.clone());
        }
        let blockwise_injective = (0..quotient.num_blocks()).all(|b| {
            let mut seen = vec![false; big_n + 1];
            (0..p)
                .filter(|&i| quotient.block_index(i + 1) == b)
                .all(|i| !std::mem::replace(&mut seen[tuple[i]], true))
        });
        if blockwise_injective {
            d2.insert(tuple.clone(), blockwise_weight.clone());
        }
        if !next_tuple(&mut tuple, big_n) {
            break;
        }
    }
    Ok((
        IndexDistribution {
            p,
            range_size: big_n,
            weights: d1,
        },
        IndexDistribution {
            p,
            range_size: big_n,
            weights: d2,
        },
    ))
}

/// Odometer step over `[1, N]^p`; false once the last tuple has been seen.
fn next_tuple(tuple: &mut [usize], big_n: usize) -> bool {
    for pos in (0..tuple.len()).rev() {
        if tuple[pos] < big_n {
            tuple[pos] += 1;
            for t in &mut tuple[pos + 1..] {
                *t = 1;
            }
            return true;
        }
        tuple[pos] = 1;
    }
    false
}

/// Result of one exact total-variation comparison.
#[derive(Clone, Debug)]
pub struct DeFinettiReport {
    /// `Σ_h |d1(h) - d2(h)|`, exactly.
    pub tv: Rat,
    /// `(2r - 1) p² / (N - p + 1)` with `r = |ρ|`.
    pub bound: Rat,
    pub holds: bool,
}

/// Exact total variation between the two symmetrization distributions and
/// the bound instance. Both supports share the injective tuples, so the sum
/// collapses to `2 (1 - (N)_p / Π_k (N)_{p_k})`, which is what is computed;
/// the materialized distributions serve as the test oracle for this formula.
pub fn definetti_tv(pi: &Partition, rho: &Partition, big_n: usize) -> Result<DeFinettiReport> {
    let quotient = checked_preconditions(pi, rho, big_n)?;
    let p = pi.num_blocks();
    let r = rho.num_blocks();
    let injective_count = falling(big_n, p);
    let mut blockwise_count = BigInt::one();
    for pk in quotient.block_sizes() {
        blockwise_count *= falling(big_n, pk);
    }
    let tv = (Rat::one() - Rat::new(injective_count, blockwise_count)) * rat(2);
    let bound = rat((2 * r - 1) as i64) * rat((p * p) as i64) / rat((big_n - p + 1) as i64);
    let holds = tv <= bound;
    Ok(DeFinettiReport { tv, bound, holds })
}

/// Ratio `b̃_{n+1}/b̃_n` at index `n` from the series route, as a rational.
pub fn btilde_ratio(param: usize, n: usize) -> Result<Rat> {
    let series = phi_btilde(param, n + 1)?;
    let num = series.coeffs()[n + 1].clone();
    let den = series.coeffs()[n].clone();
    if den.is_zero() {
        return Err(Error::domain("ratio undefined: zero coefficient"));
    }
    Ok(num / den)
}

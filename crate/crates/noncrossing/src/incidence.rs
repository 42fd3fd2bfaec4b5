//! Möbius and zeta functions on the partition lattices, multiplicative
//! functions on noncrossing intervals and their convolution.
//!
//! A multiplicative function on noncrossing intervals is determined by its
//! characteristic sequence `f_n = f([0̂_n, 1̂_n])`; on an arbitrary interval
//! it is the product of its values over the canonical factorization into
//! full intervals. Convolution in the reduced incidence algebra is computed
//! as the lattice sum `(f ⊠ g)_n = Σ_{π ∈ NC_n} f_π g_{K(π)}`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::partitions::{partitions, Family, Partition};
use crate::rat::{parse_rat, rat_to_string, Rat};
use crate::{Error, Result};

/// `n`-th Catalan number via the additive recurrence
/// `C_{n+1} = Σ C_i C_{n-i}` (no binomials, usable as an independent count).
pub fn catalan(n: usize) -> BigInt {
    let mut c = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = BigInt::zero();
        for i in 0..m {
            next += &c[i] * &c[m - 1 - i];
        }
        c.push(next);
    }
    c[n].clone()
}

/// `n`-th Bell number via the Bell triangle.
pub fn bell(n: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    let mut bell = BigInt::one();
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for v in &row {
            let last = next.last().unwrap().clone();
            next.push(last + v);
        }
        bell = next[0].clone();
        row = next;
    }
    bell
}

/// Möbius characteristic value of `NC_n`: `μ_n = (-1)^{n-1} C_{n-1}`.
pub fn mobius_nc_characteristic(n: usize) -> Rat {
    let c = catalan(n - 1);
    let signed = if n % 2 == 1 { c } else { -c };
    Rat::from_integer(signed)
}

/// Möbius function of the noncrossing lattice on `[σ, π]`.
///
/// Computed through the canonical interval factorization: restrict `σ` to
/// each block of `π`, take the Kreweras complement of the restriction to
/// turn the upper interval into a lower one, and multiply the signed
/// Catalan values over its block sizes.
pub fn mobius_nc(sigma: &Partition, pi: &Partition) -> Result<Rat> {
    if !sigma.is_noncrossing() || !pi.is_noncrossing() {
        return Err(Error::domain("mobius_nc requires noncrossing arguments"));
    }
    if !sigma.leq(pi)? {
        return Err(Error::domain("mobius_nc requires sigma <= pi"));
    }
    let mut result = Rat::one();
    for block in pi.blocks() {
        let restricted = sigma.restrict(&block)?;
        let complement = restricted.kreweras()?;
        for (size, count) in complement.block_size_profile().iter().enumerate().skip(1) {
            for _ in 0..*count {
                result *= mobius_nc_characteristic(size);
            }
        }
    }
    Ok(result)
}

/// Möbius function of the full partition lattice on `[σ, π]`.
///
/// The interval contracts to `[0̂_p, π/σ]`, which factors over the blocks of
/// the quotient with `μ(0̂_k, 1̂_k) = (-1)^{k-1} (k-1)!`.
pub fn mobius_set(sigma: &Partition, pi: &Partition) -> Result<Rat> {
    if !sigma.leq(pi)? {
        return Err(Error::domain("mobius_set requires sigma <= pi"));
    }
    let quotient = pi.quotient(sigma)?;
    let mut result = BigInt::one();
    for size in quotient.block_sizes() {
        let mut factorial = BigInt::one();
        for k in 2..size {
            factorial *= BigInt::from(k);
        }
        result *= if size % 2 == 1 { factorial } else { -factorial };
    }
    Ok(Rat::from_integer(result))
}

/// Möbius function evaluated from its defining recursion
/// `Σ_{σ ≤ τ ≤ π} μ(σ, τ) = [σ = π]`, by explicit summation over the chosen
/// lattice. Exponential in `n`; kept as the reference oracle for the
/// factorized routes above.
pub fn mobius_recursive(sigma: &Partition, pi: &Partition, family: Family) -> Result<Rat> {
    if family == Family::Noncrossing && (!sigma.is_noncrossing() || !pi.is_noncrossing()) {
        return Err(Error::domain(
            "noncrossing lattice requires noncrossing arguments",
        ));
    }
    if !sigma.leq(pi)? {
        return Err(Error::domain("mobius_recursive requires sigma <= pi"));
    }
    let interval: Vec<Partition> = partitions(pi.n(), family)?
        .filter(|tau| sigma.leq(tau).unwrap() && tau.leq(pi).unwrap())
        .collect();
    let mut memo: HashMap<Partition, Rat> = HashMap::new();
    memo.insert(sigma.clone(), Rat::one());
    // Interval elements arrive in a linear extension-compatible order only
    // after sorting by block count (coarser partitions have fewer blocks).
    let mut by_rank = interval;
    by_rank.sort_by_key(|q| std::cmp::Reverse(q.num_blocks()));
    for tau in &by_rank {
        if memo.contains_key(tau) {
            continue;
        }
        let mut acc = Rat::zero();
        for (other, value) in &memo {
            if other.leq(tau).unwrap() {
                acc += value;
            }
        }
        memo.insert(tau.clone(), -acc);
    }
    Ok(memo.remove(pi).unwrap())
}

/// A multiplicative function on noncrossing intervals, stored as the finite
/// prefix `f_1, ..., f_M` of its characteristic sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativeFunction {
    characteristic: Vec<Rat>,
}

impl MultiplicativeFunction {
    pub fn from_characteristic(characteristic: Vec<Rat>) -> Self {
        MultiplicativeFunction { characteristic }
    }

    /// Zeta function: identically one.
    pub fn zeta(order: usize) -> Self {
        Self::from_characteristic(vec![Rat::one(); order])
    }

    /// Unit of the reduced incidence algebra: `δ_1 = 1`, `δ_k = 0` for `k ≥ 2`.
    pub fn delta(order: usize) -> Self {
        let mut characteristic = vec![Rat::zero(); order];
        if order > 0 {
            characteristic[0] = Rat::one();
        }
        Self::from_characteristic(characteristic)
    }

    /// Möbius function: signed Catalan numbers.
    pub fn mobius(order: usize) -> Self {
        Self::from_characteristic((1..=order).map(mobius_nc_characteristic).collect())
    }

    /// Absolute Möbius function: Catalan numbers.
    pub fn abs_mobius(order: usize) -> Self {
        Self::from_characteristic(
            (1..=order)
                .map(|n| Rat::from_integer(catalan(n - 1)))
                .collect(),
        )
    }

    /// Zeta of the singleton-free poset: `0, 1, 1, ...`.
    pub fn zeta_no_singletons(order: usize) -> Self {
        let mut characteristic = vec![Rat::one(); order];
        if order > 0 {
            characteristic[0] = Rat::zero();
        }
        Self::from_characteristic(characteristic)
    }

    /// Highest order `M` for which the characteristic is known.
    pub fn order(&self) -> usize {
        self.characteristic.len()
    }

    pub fn characteristic(&self) -> &[Rat] {
        &self.characteristic
    }

    /// `f_k` for 1-based `k`.
    pub fn char_at(&self, k: usize) -> Result<&Rat> {
        self.characteristic.get(k - 1).ok_or(Error::Order {
            need: k,
            have: self.order(),
        })
    }

    /// Zeroes out `f_1`, keeping the rest (the "no singleton contribution"
    /// variant of a multiplicative function).
    pub fn zero_first(&self) -> Self {
        let mut characteristic = self.characteristic.clone();
        if !characteristic.is_empty() {
            characteristic[0] = Rat::zero();
        }
        Self::from_characteristic(characteristic)
    }

    /// Pointwise scaling of the characteristic sequence.
    pub fn scaled(&self, factor: &Rat) -> Self {
        Self::from_characteristic(self.characteristic.iter().map(|c| c * factor).collect())
    }

    /// Evaluation `f_π = Π_p f_p^{k_p}` over the block-size profile of `π`.
    pub fn eval(&self, pi: &Partition) -> Result<Rat> {
        let mut result = Rat::one();
        for size in pi.block_sizes() {
            result *= self.char_at(size)?;
        }
        Ok(result)
    }

    /// JSON form `{"order": M, "characteristic": ["1", "-1", ...]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "characteristic": self
                .characteristic
                .iter()
                .map(rat_to_string)
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let entries = value
            .get("characteristic")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"characteristic\" array".into()))?;
        let mut characteristic = Vec::with_capacity(entries.len());
        for item in entries {
            let s = item
                .as_str()
                .ok_or_else(|| Error::Parse("characteristic entries must be strings".into()))?;
            characteristic.push(parse_rat(s)?);
        }
        if let Some(order) = value.get("order").and_then(Value::as_u64) {
            if order as usize != characteristic.len() {
                return Err(Error::Parse(format!(
                    "order {} does not match {} characteristic entries",
                    order,
                    characteristic.len()
                )));
            }
        }
        Ok(Self::from_characteristic(characteristic))
    }
}

/// Convolution in the reduced incidence algebra up to order `M`:
/// `(f ⊠ g)_n = Σ_{π ∈ NC_n} f_π g_{K(π)}`.
pub fn convolve_nc(
    f: &MultiplicativeFunction,
    g: &MultiplicativeFunction,
    order: usize,
) -> Result<MultiplicativeFunction> {
    if f.order() < order || g.order() < order {
        return Err(Error::Order {
            need: order,
            have: f.order().min(g.order()),
        });
    }
    let mut characteristic = Vec::with_capacity(order);
    for n in 1..=order {
        let mut acc = Rat::zero();
        for pi in partitions_any_ceiling(n)? {
            let complement = pi.kreweras()?;
            acc += f.eval(&pi)? * g.eval(&complement)?;
        }
        characteristic.push(acc);
    }
    Ok(MultiplicativeFunction::from_characteristic(characteristic))
}

fn partitions_any_ceiling(n: usize) -> Result<crate::partitions::PartitionIter> {
    crate::partitions::partitions_with_ceiling(n, Family::Noncrossing, usize::MAX)
}

//! Moment–cumulant transforms over both partition lattices, the
//! Leonov–Shiryaev product formula, crossing reduction, and a formal engine
//! for conditioned-cumulant ("cumulants of cumulants") identities.
//!
//! Transforms are Möbius inversions: `K_π = Σ_{σ≤π} φ_σ μ(σ,π)` with the sum
//! restricted to the chosen lattice, and `φ_π = Σ_{σ≤π} K_σ` back. The
//! lattice parameter is explicit everywhere; there is no silent defaulting
//! between `Π_n` and `NC_n`.
//!
//! Identity verification works symbolically: a [`FormalCombo`] is an exact
//! rational linear combination of indeterminates — either plain `φ_τ`
//! symbols or pairs `u[ρ,τ]` standing for `φ_ρ∘ψ_τ`. Two sides of an
//! identity are equal iff their combos subtract to zero, which certifies the
//! identity for every exchangeability system at once.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::incidence::{mobius_nc, mobius_set};
use crate::partitions::{partitions_with_ceiling, Family, Partition};
use crate::rat::{parse_rat, rat_to_string, Rat};
use crate::{Error, Result};

/// The lattice a transform or identity runs over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Lattice {
    Set,
    Noncrossing,
}

impl Lattice {
    pub fn family(self) -> Family {
        match self {
            Lattice::Set => Family::All,
            Lattice::Noncrossing => Family::Noncrossing,
        }
    }

    pub fn contains(self, pi: &Partition) -> bool {
        match self {
            Lattice::Set => true,
            Lattice::Noncrossing => pi.is_noncrossing(),
        }
    }

    pub fn mobius(self, sigma: &Partition, pi: &Partition) -> Result<Rat> {
        match self {
            Lattice::Set => mobius_set(sigma, pi),
            Lattice::Noncrossing => mobius_nc(sigma, pi),
        }
    }

    /// All lattice elements of order `n` (no ceiling; callers bound `n`).
    pub fn elements(self, n: usize) -> Result<Vec<Partition>> {
        Ok(partitions_with_ceiling(n, self.family(), usize::MAX)?.collect())
    }

    pub fn label(self) -> &'static str {
        match self {
            Lattice::Set => "set",
            Lattice::Noncrossing => "nc",
        }
    }
}

impl std::str::FromStr for Lattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "set" => Ok(Lattice::Set),
            "nc" | "noncrossing" => Ok(Lattice::Noncrossing),
            other => Err(Error::Parse(format!("unknown lattice {other:?}"))),
        }
    }
}

// ---------------------------------------------------------------------------
// Assignments of exact values to partitions
// ---------------------------------------------------------------------------

/// Values indexed by partitions: either generated multiplicatively from a
/// single-variable sequence (`φ_π = Π m_{|b|}`), or an explicit table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Assignment {
    /// `values[k-1]` is the sequence value at order `k`.
    Sequence(Vec<Rat>),
    /// Explicit values per partition; queried partitions must be present.
    Table(BTreeMap<Partition, Rat>),
}

pub type MomentAssignment = Assignment;
pub type CumulantTable = Assignment;

impl Assignment {
    /// Value at a partition: the blockwise product in sequence mode, the
    /// stored entry in table mode.
    pub fn value(&self, pi: &Partition) -> Result<Rat> {
        match self {
            Assignment::Sequence(m) => {
                let mut acc = Rat::one();
                for size in pi.block_sizes() {
                    let v = m.get(size - 1).ok_or_else(|| {
                        Error::Missing(format!("sequence value of order {size} not provided"))
                    })?;
                    acc *= v;
                }
                Ok(acc)
            }
            Assignment::Table(map) => map
                .get(pi)
                .cloned()
                .ok_or_else(|| Error::Missing(format!("no value for partition {pi}"))),
        }
    }

    /// JSON: `{"n": 4, "mode": "sequence", "moments": ["0","1",...]}` or
    /// `{"mode": "table", "entries": [{"partition": "1,2|3", "value": "3/2"}]}`.
    pub fn to_json(&self) -> Value {
        match self {
            Assignment::Sequence(m) => json!({
                "n": m.len(),
                "mode": "sequence",
                "moments": m.iter().map(rat_to_string).collect::<Vec<_>>(),
            }),
            Assignment::Table(map) => json!({
                "mode": "table",
                "entries": map
                    .iter()
                    .map(|(pi, v)| json!({"partition": pi.to_string(), "value": rat_to_string(v)}))
                    .collect::<Vec<_>>(),
            }),
        }
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let mode = value
            .get("mode")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("assignment JSON needs a \"mode\" field".into()))?;
        match mode {
            "sequence" => {
                let entries = value
                    .get("moments")
                    .and_then(Value::as_array)
                    .ok_or_else(|| {
                        Error::Parse("sequence mode needs a \"moments\" array".into())
                    })?;
                let mut m = Vec::with_capacity(entries.len());
                for item in entries {
                    let s = item
                        .as_str()
                        .ok_or_else(|| Error::Parse("moments must be rational strings".into()))?;
                    m.push(parse_rat(s)?);
                }
                Ok(Assignment::Sequence(m))
            }
            "table" => {
                let entries = value
                    .get("entries")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("table mode needs an \"entries\" array".into()))?;
                let mut map = BTreeMap::new();
                for item in entries {
                    let pi: Partition = item
                        .get("partition")
                        .and_then(Value::as_str)
                        .ok_or_else(|| Error::Parse("table entry needs a \"partition\"".into()))?
                        .parse()?;
                    let v =
                        parse_rat(item.get("value").and_then(Value::as_str).ok_or_else(|| {
                            Error::Parse("table entry needs a \"value\"".into())
                        })?)?;
                    map.insert(pi, v);
                }
                Ok(Assignment::Table(map))
            }
            other => Err(Error::Parse(format!("unknown assignment mode {other:?}"))),
        }
    }
}

/// Möbius-inverted cumulant `K_π = Σ_{σ≤π, σ∈lattice} φ_σ μ(σ,π)`.
pub fn moments_to_cumulants(moments: &Assignment, pi: &Partition, lattice: Lattice) -> Result<Rat> {
    if !lattice.contains(pi) {
        return Err(Error::domain(
            "noncrossing transform requires a noncrossing partition",
        ));
    }
    let mut acc = Rat::zero();
    for sigma in lattice.elements(pi.n())? {
        if sigma.leq(pi)? {
            acc += moments.value(&sigma)? * lattice.mobius(&sigma, pi)?;
        }
    }
    Ok(acc)
}

/// The inverse transform `φ_π = Σ_{σ≤π, σ∈lattice} K_σ`.
pub fn cumulants_to_moments(
    cumulants: &Assignment,
    pi: &Partition,
    lattice: Lattice,
) -> Result<Rat> {
    if !lattice.contains(pi) {
        return Err(Error::domain(
            "noncrossing transform requires a noncrossing partition",
        ));
    }
    let mut acc = Rat::zero();
    for sigma in lattice.elements(pi.n())? {
        if sigma.leq(pi)? {
            acc += cumulants.value(&sigma)?;
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Formal linear combinations
// ---------------------------------------------------------------------------

/// Indeterminates for coefficient-wise identity verification.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Symbol {
    /// A plain partitioned-expectation symbol `φ_τ`.
    Phi(Partition),
    /// `u[ρ,τ] = φ_ρ∘ψ_τ` with `τ ≤ ρ`.
    U(Partition, Partition),
}

impl std::fmt::Display for Symbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Symbol::Phi(pi) => write!(f, "phi[{pi}]"),
            Symbol::U(rho, tau) => write!(f, "u[{rho};{tau}]"),
        }
    }
}

/// Exact rational linear combination of [`Symbol`]s; zero coefficients are
/// never stored, so equality is plain map equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalCombo {
    terms: BTreeMap<Symbol, Rat>,
}

impl FormalCombo {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(symbol: Symbol, coeff: Rat) -> Self {
        let mut combo = Self::zero();
        combo.add_term(symbol, coeff);
        combo
    }

    pub fn add_term(&mut self, symbol: Symbol, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(symbol);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        let mut out = Self::zero();
        for (s, c) in &self.terms {
            out.add_term(s.clone(), c * factor);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, symbol: &Symbol) -> Rat {
        self.terms.get(symbol).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Symbol, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .terms
            .iter()
            .map(|(s, c)| json!({"symbol": s.to_string(), "coeff": rat_to_string(c)}))
            .collect::<Vec<_>>())
    }
}

/// `K_π` expanded into `φ_σ` symbols over the chosen lattice.
pub fn cumulant_combo(pi: &Partition, lattice: Lattice) -> Result<FormalCombo> {
    if !lattice.contains(pi) {
        return Err(Error::domain("cumulant_combo requires a lattice member"));
    }
    let mut combo = FormalCombo::zero();
    for sigma in lattice.elements(pi.n())? {
        if sigma.leq(pi)? {
            let mu = lattice.mobius(&sigma, pi)?;
            combo.add_term(Symbol::Phi(sigma), mu);
        }
    }
    Ok(combo)
}

// ---------------------------------------------------------------------------
// Leonov–Shiryaev product formula
// ---------------------------------------------------------------------------

/// Both sides of the product formula as formal combinations over fine
/// `φ_τ` symbols (`τ ∈ Π_n`, `n = Σ sizes`).
///
/// The left side expands `K_π` of the grouped products via Möbius inversion
/// in `Π_m` and the regrouping `φ_ρ(products) = φ_{ρ̃}(fine variables)`; the
/// right side sums the fine cumulants `K_σ` over `σ ∈ Π_n` whose join with
/// the interval partition is the induced grouping of `π`. The fine symbols
/// carry no relations, so equality certifies the identity for every
/// exchangeability system.
pub fn product_formula_sides(
    pi: &Partition,
    sizes: &[usize],
) -> Result<(FormalCombo, FormalCombo)> {
    let m = pi.n();
    if sizes.len() != m {
        return Err(Error::domain(format!(
            "sizes length {} does not match the outer ground set {m}",
            sizes.len()
        )));
    }
    let n: usize = sizes.iter().sum();
    let grouped_pi = pi.induced_grouping(sizes)?;
    let interval_partition = Partition::singletons(m).induced_grouping(sizes)?;

    let mut lhs = FormalCombo::zero();
    for rho in Lattice::Set.elements(m)? {
        if rho.leq(pi)? {
            let mu = mobius_set(&rho, pi)?;
            lhs.add_term(Symbol::Phi(rho.induced_grouping(sizes)?), mu);
        }
    }

    let mut rhs = FormalCombo::zero();
    for sigma in Lattice::Set.elements(n)? {
        if sigma.join(&interval_partition)? != grouped_pi {
            continue;
        }
        for tau in Lattice::Set.elements(n)? {
            if tau.leq(&sigma)? {
                let mu = mobius_set(&tau, &sigma)?;
                rhs.add_term(Symbol::Phi(tau), mu);
            }
        }
    }
    Ok((lhs, rhs))
}

// ---------------------------------------------------------------------------
// Crossing reduction through connected neighbours
// ---------------------------------------------------------------------------

/// One rewrite step turning `K_π` into cumulants with fewer connected
/// neighbours:
/// `K_π(..., X_k, X_{k+1}, ...) = K_π̂(..., X_k X_{k+1}, ...) − Σ_ρ K_ρ`.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    /// `π̂ = π/[k=k+1]` on `{1..n-1}` with the products as one variable.
    pub merged: Partition,
    /// The correction set `{ρ < π : ρ ∨ ν = π}` (ν pairs only `k, k+1`).
    pub corrections: Vec<Partition>,
}

/// Computes the rewrite at position `k`; requires `k ~_π k+1`. The step
/// certifies that the merged partition and every correction term strictly
/// decrease the connected-neighbour count.
pub fn alternating_reduction(pi: &Partition, k: usize) -> Result<ReductionStep> {
    let n = pi.n();
    if k == 0 || k >= n {
        return Err(Error::domain(format!("position {k} outside 1..{}", n - 1)));
    }
    if pi.block_index(k) != pi.block_index(k + 1) {
        return Err(Error::domain(format!(
            "reduction requires {k} ~ {} in the partition",
            k + 1
        )));
    }
    let cn = pi.shape().connected_neighbours;
    let merged = pi.merge_neighbours(k)?;

    // ρ ∨ ν = π with ρ < π forces ρ to split the block B containing k, k+1
    // into two parts separating them, keeping every other block.
    let blocks = pi.blocks();
    let b_index = pi.block_index(k);
    let b = &blocks[b_index];
    let rest: Vec<usize> = b
        .iter()
        .copied()
        .filter(|&e| e != k && e != k + 1)
        .collect();
    let mut corrections = Vec::new();
    for mask in 0..(1u32 << rest.len()) {
        let mut part_k = vec![k];
        let mut part_k1 = vec![k + 1];
        for (bit, &e) in rest.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                part_k.push(e);
            } else {
                part_k1.push(e);
            }
        }
        part_k.sort_unstable();
        part_k1.sort_unstable();
        let mut new_blocks: Vec<Vec<usize>> = blocks
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != b_index)
            .map(|(_, bl)| bl.clone())
            .collect();
        new_blocks.push(part_k);
        new_blocks.push(part_k1);
        corrections.push(Partition::from_blocks(n, &new_blocks)?);
    }
    corrections.sort();

    if merged.shape().connected_neighbours != cn - 1 {
        return Err(Error::domain(
            "merged partition did not reduce the connected-neighbour count",
        ));
    }
    for rho in &corrections {
        if rho.shape().connected_neighbours > cn - 1 {
            return Err(Error::domain(
                "correction term did not reduce the connected-neighbour count",
            ));
        }
    }
    Ok(ReductionStep {
        merged,
        corrections,
    })
}

/// A cumulant over grouped variables: position `i` of `partition` stands for
/// the product of `sizes[i-1]` consecutive original variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupedCumulant {
    pub partition: Partition,
    pub sizes: Vec<usize>,
}

impl GroupedCumulant {
    /// Expansion into fine `φ_τ` symbols over the original ground set.
    pub fn expand(&self) -> Result<FormalCombo> {
        let mut combo = FormalCombo::zero();
        for rho in Lattice::Set.elements(self.partition.n())? {
            if rho.leq(&self.partition)? {
                let mu = mobius_set(&rho, &self.partition)?;
                combo.add_term(Symbol::Phi(rho.induced_grouping(&self.sizes)?), mu);
            }
        }
        Ok(combo)
    }
}

/// Fully reduces `K_π` to a combination of cumulants indexed by alternating
/// partitions, always rewriting at the smallest connected pair. Termination
/// is guaranteed because every step strictly decreases `cn`.
pub fn reduce_to_alternating(pi: &Partition) -> Result<Vec<(Rat, GroupedCumulant)>> {
    let mut queue = vec![(
        Rat::one(),
        GroupedCumulant {
            partition: pi.clone(),
            sizes: vec![1; pi.n()],
        },
    )];
    let mut done: Vec<(Rat, GroupedCumulant)> = Vec::new();
    while let Some((coeff, term)) = queue.pop() {
        let shape = term.partition.shape();
        if shape.alternating {
            done.push((coeff, term));
            continue;
        }
        let k = (1..term.partition.n())
            .find(|&k| term.partition.block_index(k) == term.partition.block_index(k + 1))
            .expect("non-alternating partition has a connected pair");
        let step = alternating_reduction(&term.partition, k)?;
        let mut merged_sizes = term.sizes.clone();
        let absorbed = merged_sizes.remove(k);
        merged_sizes[k - 1] += absorbed;
        queue.push((
            coeff.clone(),
            GroupedCumulant {
                partition: step.merged,
                sizes: merged_sizes,
            },
        ));
        for rho in step.corrections {
            queue.push((
                -coeff.clone(),
                GroupedCumulant {
                    partition: rho,
                    sizes: term.sizes.clone(),
                },
            ));
        }
    }
    // Merge duplicate terms for a canonical result.
    let mut merged: BTreeMap<GroupedCumulant, Rat> = BTreeMap::new();
    for (coeff, term) in done {
        let entry = merged.entry(term).or_insert_with(Rat::zero);
        *entry += coeff;
    }
    Ok(merged
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(t, c)| (c, t))
        .collect())
}

// ---------------------------------------------------------------------------
// Conditioned cumulants: the formal Brillinger engine
// ---------------------------------------------------------------------------

/// Möbius cache for a fixed order and lattice.
pub struct BrillingerContext {
    lattice: Lattice,
    elements: Vec<Partition>,
    mobius: HashMap<(usize, usize), Rat>,
    leq: Vec<Vec<bool>>,
    index: HashMap<Partition, usize>,
}

impl BrillingerContext {
    pub fn new(n: usize, lattice: Lattice) -> Result<Self> {
        let elements = lattice.elements(n)?;
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            index.insert(e.clone(), i);
        }
        let count = elements.len();
        let mut leq = vec![vec![false; count]; count];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                leq[i][j] = a.leq(b)?;
            }
        }
        let mut mobius = HashMap::new();
        for i in 0..count {
            for j in 0..count {
                if leq[i][j] {
                    mobius.insert((i, j), lattice.mobius(&elements[i], &elements[j])?);
                }
            }
        }
        Ok(BrillingerContext {
            lattice,
            elements,
            mobius,
            leq,
            index,
        })
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn elements(&self) -> &[Partition] {
        &self.elements
    }

    fn id(&self, pi: &Partition) -> Result<usize> {
        self.index
            .get(pi)
            .copied()
            .ok_or_else(|| Error::domain(format!("{pi} is not in the chosen lattice")))
    }

    /// `E1(σ, π) = φ_σ∘C_π^ψ = Σ_{τ≤π} u[σ,τ] μ(τ,π)`, for `π ≤ σ`.
    pub fn e1(&self, sigma: &Partition, pi: &Partition) -> Result<FormalCombo> {
        let (si, pi_i) = (self.id(sigma)?, self.id(pi)?);
        if !self.leq[pi_i][si] {
            return Err(Error::domain("e1 requires pi <= sigma"));
        }
        let mut combo = FormalCombo::zero();
        for (ti, tau) in self.elements.iter().enumerate() {
            if self.leq[ti][pi_i] {
                combo.add_term(
                    Symbol::U(sigma.clone(), tau.clone()),
                    self.mobius[&(ti, pi_i)].clone(),
                );
            }
        }
        Ok(combo)
    }

    /// `E2(σ, π) = C_σ^φ∘C_π^ψ = Σ_{τ≤π} Σ_{π≤ρ≤σ} u[ρ,τ] μ(ρ,σ) μ(τ,π)`.
    pub fn e2(&self, sigma: &Partition, pi: &Partition) -> Result<FormalCombo> {
        let (si, pi_i) = (self.id(sigma)?, self.id(pi)?);
        if !self.leq[pi_i][si] {
            return Err(Error::domain("e2 requires pi <= sigma"));
        }
        let mut combo = FormalCombo::zero();
        for (ri, rho) in self.elements.iter().enumerate() {
            if !(self.leq[pi_i][ri] && self.leq[ri][si]) {
                continue;
            }
            let mu_rho = &self.mobius[&(ri, si)];
            for (ti, tau) in self.elements.iter().enumerate() {
                if self.leq[ti][pi_i] {
                    combo.add_term(
                        Symbol::U(rho.clone(), tau.clone()),
                        mu_rho * &self.mobius[&(ti, pi_i)],
                    );
                }
            }
        }
        Ok(combo)
    }

    /// `C_n^φ = Σ_π u[π,π] μ(π,1̂_n)`: the total cumulant with the
    /// substitution `φ_π := u[π,π]` encoding the invariance `φ = φ∘ψ`.
    pub fn cphi(&self) -> Result<FormalCombo> {
        let n = self.elements[0].n();
        let top = self.id(&Partition::full(n))?;
        let mut combo = FormalCombo::zero();
        for (pi_i, pi) in self.elements.iter().enumerate() {
            combo.add_term(
                Symbol::U(pi.clone(), pi.clone()),
                self.mobius[&(pi_i, top)].clone(),
            );
        }
        Ok(combo)
    }
}

/// Outcome of [`brillinger_check`].
#[derive(Clone, Debug)]
pub struct BrillingerReport {
    pub n: usize,
    pub lattice: Lattice,
    /// Nonzero terms of `C_n^φ − Σ_σ E2(1̂, σ)`; empty iff the identity holds.
    pub nonzero_terms: Vec<(Symbol, Rat)>,
    /// `E1(σ,π) = Σ_{π≤ρ≤σ} E2(ρ,π)` for every pair `π ≤ σ`.
    pub intermediate_ok: bool,
    /// `Σ_{σ≤π} E1(π,σ) = u[π,π]` for every `π`.
    pub telescoping_ok: bool,
}

impl BrillingerReport {
    pub fn passed(&self) -> bool {
        self.nonzero_terms.is_empty() && self.intermediate_ok && self.telescoping_ok
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": "brillinger",
            "n": self.n,
            "lattice": self.lattice.label(),
            "nonzero_terms": self
                .nonzero_terms
                .iter()
                .map(|(s, c)| json!({"symbol": s.to_string(), "coeff": rat_to_string(c)}))
                .collect::<Vec<_>>(),
            "intermediate_ok": self.intermediate_ok,
            "telescoping_ok": self.telescoping_ok,
            "passed": self.passed(),
        })
    }
}

/// Ceilings for [`brillinger_check`]: the double Möbius sums grow with the
/// square of the lattice size.
pub fn brillinger_ceiling(lattice: Lattice) -> usize {
    match lattice {
        Lattice::Noncrossing => 6,
        Lattice::Set => 5,
    }
}

/// Verifies, coefficient by coefficient over free `u[ρ,τ]` indeterminates:
/// the total-cumulant expansion `C_n^φ = Σ_σ C_n^φ∘C_σ^ψ`, the interchange
/// identity `E1 = Σ E2`, and the telescoping column sums.
pub fn brillinger_check(n: usize, lattice: Lattice) -> Result<BrillingerReport> {
    if n == 0 || n > brillinger_ceiling(lattice) {
        return Err(Error::SizeLimit {
            what: "brillinger verification",
            n,
            max: brillinger_ceiling(lattice),
        });
    }
    let ctx = BrillingerContext::new(n, lattice)?;
    let top = Partition::full(n);
    let elements = ctx.elements().to_vec();
    let count = elements.len();

    // Each E2(ρ, π) feeds the theorem sum and many interchange checks;
    // compute every pair once.
    let mut e2_cache: HashMap<(usize, usize), FormalCombo> = HashMap::new();
    for (ri, rho) in elements.iter().enumerate() {
        for (pi_i, pi) in elements.iter().enumerate() {
            if pi.leq(rho)? {
                e2_cache.insert((ri, pi_i), ctx.e2(rho, pi)?);
            }
        }
    }
    let top_i = elements.iter().position(|e| *e == top).unwrap();

    let mut total = ctx.cphi()?;
    for sigma_i in 0..count {
        total = total.sub(&e2_cache[&(top_i, sigma_i)]);
    }
    let nonzero_terms: Vec<(Symbol, Rat)> =
        total.terms().map(|(s, c)| (s.clone(), c.clone())).collect();

    let mut intermediate_ok = true;
    for sigma in &elements {
        for (pi_i, pi) in elements.iter().enumerate() {
            if !pi.leq(sigma)? {
                continue;
            }
            let lhs = ctx.e1(sigma, pi)?;
            let mut rhs = FormalCombo::zero();
            for (ri, rho) in elements.iter().enumerate() {
                if pi.leq(rho)? && rho.leq(sigma)? {
                    rhs = rhs.add(&e2_cache[&(ri, pi_i)]);
                }
            }
            if lhs != rhs {
                intermediate_ok = false;
            }
        }
    }

    let mut telescoping_ok = true;
    for pi in &elements {
        let mut acc = FormalCombo::zero();
        for sigma in &elements {
            if sigma.leq(pi)? {
                acc = acc.add(&ctx.e1(pi, sigma)?);
            }
        }
        let expected = FormalCombo::term(Symbol::U(pi.clone(), pi.clone()), Rat::one());
        if acc != expected {
            telescoping_ok = false;
        }
    }

    Ok(BrillingerReport {
        n,
        lattice,
        nonzero_terms,
        intermediate_ok,
        telescoping_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn seq(values: &[i64]) -> Assignment {
        Assignment::Sequence(values.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn semicircle_and_gaussian_fourth_cumulants_vanish() {
        // Semicircle prefix m = (0, 1, 0, 2) over NC_4.
        let m = seq(&[0, 1, 0, 2]);
        let k4 = moments_to_cumulants(&m, &Partition::full(4), Lattice::Noncrossing).unwrap();
        assert_eq!(k4, rat(0));
        // Gaussian prefix m = (0, 1, 0, 3) over Π_4.
        let m = seq(&[0, 1, 0, 3]);
        let k4 = moments_to_cumulants(&m, &Partition::full(4), Lattice::Set).unwrap();
        assert_eq!(k4, rat(0));
        // 0̂_n keeps only σ = 0̂_n: the product of first moments.
        let m = seq(&[3, 7]);
        let k = moments_to_cumulants(&m, &Partition::singletons(2), Lattice::Set).unwrap();
        assert_eq!(k, rat(9));
    }

    #[test]
    fn pair_partition_counts_from_unit_second_cumulants() {
        // K_2 = 1, all other cumulants 0: m_4 counts pair partitions.
        let k = seq(&[0, 1, 0, 0]);
        let m4_nc = cumulants_to_moments(&k, &Partition::full(4), Lattice::Noncrossing).unwrap();
        assert_eq!(m4_nc, rat(2));
        let m4_set = cumulants_to_moments(&k, &Partition::full(4), Lattice::Set).unwrap();
        assert_eq!(m4_set, rat(3));
    }

    #[test]
    fn round_trip_table_both_lattices() {
        for lattice in [Lattice::Set, Lattice::Noncrossing] {
            for n in 1..=5 {
                let elements = lattice.elements(n).unwrap();
                // Deterministic pseudo-random rational table.
                let moments: BTreeMap<Partition, Rat> = elements
                    .iter()
                    .enumerate()
                    .map(|(i, pi)| {
                        (
                            pi.clone(),
                            crate::rat::ratio((i as i64 * 7 - 11) % 13, 1 + (i as i64 % 4)),
                        )
                    })
                    .collect();
                let m = Assignment::Table(moments.clone());
                let cumulants: BTreeMap<Partition, Rat> = elements
                    .iter()
                    .map(|pi| (pi.clone(), moments_to_cumulants(&m, pi, lattice).unwrap()))
                    .collect();
                let k = Assignment::Table(cumulants);
                for pi in &elements {
                    assert_eq!(
                        cumulants_to_moments(&k, pi, lattice).unwrap(),
                        moments[pi],
                        "round trip failed at {pi} over {lattice:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn missing_data_is_reported() {
        let m = Assignment::Table(BTreeMap::new());
        assert!(matches!(
            moments_to_cumulants(&m, &Partition::full(2), Lattice::Set),
            Err(Error::Missing(_))
        ));
        let m = seq(&[1]);
        assert!(matches!(
            moments_to_cumulants(&m, &Partition::full(2), Lattice::Set),
            Err(Error::Missing(_))
        ));
    }

    #[test]
    fn crossing_input_rejected_on_nc_lattice() {
        let m = seq(&[0, 1, 0, 2]);
        assert!(moments_to_cumulants(&m, &p("1,3|2,4"), Lattice::Noncrossing).is_err());
        assert!(moments_to_cumulants(&m, &p("1,3|2,4"), Lattice::Set).is_ok());
    }

    #[test]
    fn singleton_partitions_force_vanishing_cumulants() {
        // Every σ ≤ π inherits the singletons of π, so the cumulant combo of
        // a partition with singleton {j} only involves φ_σ with that
        // singleton.
        for n in 1..=6 {
            for lattice in [Lattice::Set, Lattice::Noncrossing] {
                for pi in lattice.elements(n).unwrap() {
                    let singletons = pi.shape().singletons;
                    if singletons.is_empty() {
                        continue;
                    }
                    let combo = cumulant_combo(&pi, lattice).unwrap();
                    for (symbol, _) in combo.terms() {
                        let Symbol::Phi(sigma) = symbol else { panic!() };
                        for &j in &singletons {
                            assert!(
                                sigma.shape().singletons.contains(&j),
                                "σ = {sigma} below π = {pi} lost singleton {j}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn product_formula_small_cases() {
        // m = 2, sizes = (2,1), π = 1̂_2: the join condition selects exactly
        // three partitions of Π_3.
        let pi = Partition::full(2);
        let sizes = [2usize, 1];
        let grouped = pi.induced_grouping(&sizes).unwrap();
        assert_eq!(grouped, Partition::full(3));
        let nu = Partition::singletons(2).induced_grouping(&sizes).unwrap();
        let joined: Vec<Partition> = Lattice::Set
            .elements(3)
            .unwrap()
            .into_iter()
            .filter(|sigma| sigma.join(&nu).unwrap() == grouped)
            .collect();
        assert_eq!(joined, vec![p("1,2,3"), p("1,3|2"), p("1|2,3")]);
        let (lhs, rhs) = product_formula_sides(&pi, &sizes).unwrap();
        assert_eq!(lhs, rhs);

        // All sizes 1: both sides are the plain expansion of K_π.
        let pi = p("1,3|2");
        let (lhs, rhs) = product_formula_sides(&pi, &[1, 1, 1]).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, cumulant_combo(&pi, Lattice::Set).unwrap());

        // m = 1, sizes = (k): K_1(X_1...X_k) = Σ_{σ∈Π_k} K_σ.
        let (lhs, rhs) = product_formula_sides(&Partition::full(1), &[3]).unwrap();
        assert_eq!(lhs, rhs);
        let mut expected = FormalCombo::zero();
        for sigma in Lattice::Set.elements(3).unwrap() {
            expected = expected.add(&cumulant_combo(&sigma, Lattice::Set).unwrap());
        }
        assert_eq!(lhs, expected);
    }

    #[test]
    fn product_formula_exhaustive_small() {
        for m in 1..=3 {
            for pi in Lattice::Set.elements(m).unwrap() {
                for sizes in size_tuples(m, 2) {
                    let (lhs, rhs) = product_formula_sides(&pi, &sizes).unwrap();
                    assert_eq!(lhs, rhs, "π = {pi}, sizes = {sizes:?}");
                }
            }
        }
    }

    fn size_tuples(m: usize, max: usize) -> Vec<Vec<usize>> {
        if m == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for rest in size_tuples(m - 1, max) {
            for s in 1..=max {
                let mut t = rest.clone();
                t.push(s);
                out.push(t);
            }
        }
        out
    }

    #[test]
    fn alternating_reduction_examples() {
        // π = {1,2}, k = 1: K_2(X_1,X_2) = K_1(X_1 X_2) − K_{0̂}(X_1, X_2).
        let step = alternating_reduction(&Partition::full(2), 1).unwrap();
        assert_eq!(step.merged, Partition::full(1));
        assert_eq!(step.corrections, vec![Partition::singletons(2)]);

        // π = 1̂_3, k = 1: corrections are the two splits separating 1, 2.
        let step = alternating_reduction(&Partition::full(3), 1).unwrap();
        assert_eq!(step.merged, Partition::full(2));
        assert_eq!(step.corrections, vec![p("1,3|2"), p("1|2,3")]);

        // Alternating partition: no valid position.
        assert!(alternating_reduction(&p("1,3|2,4"), 1).is_err());
        assert!(alternating_reduction(&p("1,2"), 2).is_err());
    }

    #[test]
    fn correction_set_matches_brute_force_join_scan() {
        for n in 2..=5 {
            for pi in Lattice::Set.elements(n).unwrap() {
                for k in 1..n {
                    if pi.block_index(k) != pi.block_index(k + 1) {
                        continue;
                    }
                    let step = alternating_reduction(&pi, k).unwrap();
                    let mut nu_blocks: Vec<Vec<usize>> = (1..=n)
                        .filter(|&e| e != k && e != k + 1)
                        .map(|e| vec![e])
                        .collect();
                    nu_blocks.push(vec![k, k + 1]);
                    let nu = Partition::from_blocks(n, &nu_blocks).unwrap();
                    let mut expected: Vec<Partition> = Lattice::Set
                        .elements(n)
                        .unwrap()
                        .into_iter()
                        .filter(|rho| {
                            rho != &pi && rho.leq(&pi).unwrap() && rho.join(&nu).unwrap() == pi
                        })
                        .collect();
                    expected.sort();
                    assert_eq!(step.corrections, expected, "π = {pi}, k = {k}");
                }
            }
        }
    }

    #[test]
    fn full_reduction_reaches_alternating_and_preserves_the_expansion() {
        for n in 1..=6 {
            for pi in Lattice::Set.elements(n).unwrap() {
                let reduced = reduce_to_alternating(&pi).unwrap();
                let mut total = FormalCombo::zero();
                for (coeff, term) in &reduced {
                    assert!(term.partition.shape().alternating);
                    total = total.add(&term.expand().unwrap().scale(coeff));
                }
                assert_eq!(
                    total,
                    cumulant_combo(&pi, Lattice::Set).unwrap(),
                    "re-expansion mismatch for π = {pi}"
                );
            }
        }
    }

    #[test]
    fn brillinger_n2_by_hand() {
        let ctx = BrillingerContext::new(2, Lattice::Noncrossing).unwrap();
        let bottom = Partition::singletons(2);
        let top = Partition::full(2);
        let u = |a: &Partition, b: &Partition| Symbol::U(a.clone(), b.clone());

        let cphi = ctx.cphi().unwrap();
        assert_eq!(cphi.coeff(&u(&top, &top)), rat(1));
        assert_eq!(cphi.coeff(&u(&bottom, &bottom)), rat(-1));
        assert_eq!(cphi.len(), 2);

        let e2_top = ctx.e2(&top, &top).unwrap();
        assert_eq!(e2_top.coeff(&u(&top, &top)), rat(1));
        assert_eq!(e2_top.coeff(&u(&top, &bottom)), rat(-1));

        let e2_bottom = ctx.e2(&top, &bottom).unwrap();
        assert_eq!(e2_bottom.coeff(&u(&top, &bottom)), rat(1));
        assert_eq!(e2_bottom.coeff(&u(&bottom, &bottom)), rat(-1));

        assert_eq!(e2_top.add(&e2_bottom), cphi);

        // E1(σ,σ) contains u[σ,σ] with coefficient 1.
        let e1 = ctx.e1(&top, &top).unwrap();
        assert_eq!(e1.coeff(&u(&top, &top)), rat(1));
    }

    #[test]
    fn brillinger_small_orders() {
        for n in 1..=4 {
            let report = brillinger_check(n, Lattice::Noncrossing).unwrap();
            assert!(report.passed(), "NC order {n}: {:?}", report.nonzero_terms);
        }
        for n in 1..=3 {
            let report = brillinger_check(n, Lattice::Set).unwrap();
            assert!(report.passed(), "set order {n}");
        }
        assert!(matches!(
            brillinger_check(9, Lattice::Set),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn assignment_json_round_trip() {
        let m = seq(&[0, 1, 0, 2]);
        let v = m.to_json();
        assert_eq!(v["mode"], "sequence");
        assert_eq!(Assignment::from_json(&v).unwrap(), m);

        let mut table = BTreeMap::new();
        table.insert(p("1,2|3"), crate::rat::ratio(3, 2));
        let t = Assignment::Table(table);
        let v = t.to_json();
        assert_eq!(v["entries"][0]["partition"], "1,2|3");
        assert_eq!(v["entries"][0]["value"], "3/2");
        assert_eq!(Assignment::from_json(&v).unwrap(), t);
    }
}

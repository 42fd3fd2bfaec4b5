//! Set partitions of `{1..n}`, the refinement lattice, and the noncrossing
//! sublattice with its Kreweras complementation.
//!
//! A partition is stored as its restricted-growth string: entry `i` holds the
//! block index of element `i+1`, blocks numbered by first appearance. That
//! form is unique, so derived equality, hashing and ordering are canonical.
//! Elements are 1-based in every public interface.
//!
//! The text format is bit-exact: blocks separated by `|`, elements
//! comma-separated ascending, blocks ordered by their minima, e.g. `1,3|2|4`.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::{Error, Result};

/// Default ceiling for [`partitions`]: Bell(14) is around 1.9e8, the
/// practical limit for exhaustive sweeps in exact arithmetic.
pub const DEFAULT_ENUMERATION_CEILING: usize = 14;

/// A set partition of `{1..n}` in canonical (restricted-growth) form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    rgs: Vec<usize>,
}

/// Which family an enumeration yields.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    All,
    Noncrossing,
}

/// Structural predicates of a partition: connected neighbours, alternation
/// and singleton blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    /// `#{k : k ~ k+1}` over `1 <= k <= n-1`.
    pub connected_neighbours: usize,
    /// True iff no adjacent pair shares a block.
    pub alternating: bool,
    /// Elements forming singleton blocks, ascending.
    pub singletons: Vec<usize>,
    pub has_singleton: bool,
}

impl Partition {
    /// Builds from a restricted-growth string (0-based block indices,
    /// blocks numbered by first appearance).
    pub fn from_rgs(rgs: Vec<usize>) -> Result<Self> {
        if rgs.is_empty() {
            return Err(Error::domain("partition ground set must be nonempty"));
        }
        let mut max_seen = 0usize;
        for (i, &b) in rgs.iter().enumerate() {
            let limit = if i == 0 { 0 } else { max_seen + 1 };
            if b > limit {
                return Err(Error::domain(format!(
                    "restricted-growth violation at position {}: {} > {}",
                    i + 1,
                    b,
                    limit
                )));
            }
            max_seen = max_seen.max(b);
        }
        Ok(Partition { rgs })
    }

    /// Builds from explicit blocks over `{1..n}`. The blocks may be given in
    /// any order; canonical form is computed here.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("partition ground set must be nonempty"));
        }
        let mut owner = vec![usize::MAX; n + 1];
        for (bi, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::domain("empty block"));
            }
            for &e in block {
                if e == 0 || e > n {
                    return Err(Error::domain(format!("element {e} outside 1..={n}")));
                }
                if owner[e] != usize::MAX {
                    return Err(Error::domain(format!("element {e} occurs twice")));
                }
                owner[e] = bi;
            }
        }
        if owner[1..].contains(&usize::MAX) {
            return Err(Error::domain("blocks do not cover the ground set"));
        }
        Ok(Self::canonicalize(&owner[1..]))
    }

    /// Relabels an arbitrary block assignment (one label per element,
    /// elements in order) into canonical restricted-growth form.
    fn canonicalize(labels: &[usize]) -> Self {
        let mut map: Vec<(usize, usize)> = Vec::new();
        let mut rgs = Vec::with_capacity(labels.len());
        for &l in labels {
            let id = match map.iter().find(|&&(from, _)| from == l) {
                Some(&(_, to)) => to,
                None => {
                    let to = map.len();
                    map.push((l, to));
                    to
                }
            };
            rgs.push(id);
        }
        Partition { rgs }
    }

    /// The discrete partition `0̂_n` (all singletons).
    pub fn singletons(n: usize) -> Self {
        assert!(n >= 1, "ground set must be nonempty");
        Partition {
            rgs: (0..n).collect(),
        }
    }

    /// The one-block partition `1̂_n`.
    pub fn full(n: usize) -> Self {
        assert!(n >= 1, "ground set must be nonempty");
        Partition { rgs: vec![0; n] }
    }

    /// Ground-set size.
    pub fn n(&self) -> usize {
        self.rgs.len()
    }

    /// Number of blocks `|π|`.
    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().copied().max().unwrap() + 1
    }

    /// 0-based block index of a 1-based element.
    pub fn block_index(&self, element: usize) -> usize {
        self.rgs[element - 1]
    }

    /// The restricted-growth string.
    pub fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    /// Blocks as sorted element lists, ordered by minimum.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        blocks
    }

    /// Sizes of the blocks, indexed by block.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.num_blocks()];
        for &b in &self.rgs {
            sizes[b] += 1;
        }
        sizes
    }

    /// The profile `(k_p)`: `profile[p]` counts blocks of size `p`
    /// (index 0 unused). Satisfies `Σ p·k_p = n`.
    pub fn block_size_profile(&self) -> Vec<usize> {
        let mut profile = vec![0usize; self.n() + 1];
        for s in self.block_sizes() {
            profile[s] += 1;
        }
        profile
    }

    /// True iff there is no quadruple `i<j<k<l` with `i~k`, `j~l`, `i≁j`.
    pub fn is_noncrossing(&self) -> bool {
        let nb = self.num_blocks();
        let mut last = vec![0usize; nb];
        for (i, &b) in self.rgs.iter().enumerate() {
            last[b] = i + 1;
        }
        let mut seen = vec![false; nb];
        let mut stack: Vec<usize> = Vec::new();
        for (i, &b) in self.rgs.iter().enumerate() {
            let pos = i + 1;
            if !seen[b] {
                seen[b] = true;
                stack.push(b);
            } else {
                while let Some(&top) = stack.last() {
                    if last[top] < pos {
                        stack.pop();
                    } else {
                        break;
                    }
                }
                if stack.last() != Some(&b) {
                    return false;
                }
            }
        }
        true
    }

    /// Refinement order: true iff every block of `self` lies inside a block
    /// of `other`.
    pub fn leq(&self, other: &Partition) -> Result<bool> {
        self.check_same_n(other)?;
        let mut image = vec![usize::MAX; self.num_blocks()];
        for (i, &b) in self.rgs.iter().enumerate() {
            let target = other.rgs[i];
            if image[b] == usize::MAX {
                image[b] = target;
            } else if image[b] != target {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Lattice meet (common refinement).
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.check_same_n(other)?;
        let n = self.n();
        let labels: Vec<usize> = (0..n)
            .map(|i| self.rgs[i] * (other.num_blocks()) + other.rgs[i])
            .collect();
        Ok(Self::canonicalize(&labels))
    }

    /// Lattice join (transitive closure of the union of both relations).
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.check_same_n(other)?;
        let n = self.n();
        let mut uf = UnionFind::new(n);
        for part in [self, other] {
            let mut first = vec![usize::MAX; part.num_blocks()];
            for (i, &b) in part.rgs.iter().enumerate() {
                if first[b] == usize::MAX {
                    first[b] = i;
                } else {
                    uf.union(first[b], i);
                }
            }
        }
        let labels: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
        Ok(Self::canonicalize(&labels))
    }

    /// Kreweras complement of a noncrossing partition, as a partition of the
    /// interleaved points relabeled `1..n`.
    ///
    /// Construction: let `p` map each element to the cyclically next element
    /// of its block and `γ` be the long cycle `(1 2 .. n)`; the blocks of
    /// `K(π)` are the cycles of `p⁻¹∘γ`. The maximal-interweave description
    /// (the largest `σ` with `interweave(π, σ)` noncrossing) is kept as an
    /// independent oracle in the verification suites.
    pub fn kreweras(&self) -> Result<Partition> {
        if !self.is_noncrossing() {
            return Err(Error::domain(
                "kreweras complement requires a noncrossing partition",
            ));
        }
        let n = self.n();
        // prev[i] = cyclically previous element of i inside its block (1-based).
        let mut prev = vec![0usize; n + 1];
        for block in self.blocks() {
            for (j, &e) in block.iter().enumerate() {
                let before = if j == 0 {
                    block[block.len() - 1]
                } else {
                    block[j - 1]
                };
                prev[e] = before;
            }
        }
        let mut labels = vec![usize::MAX; n];
        let mut next_label = 0usize;
        for start in 1..=n {
            if labels[start - 1] != usize::MAX {
                continue;
            }
            let label = next_label;
            next_label += 1;
            let mut cur = start;
            loop {
                labels[cur - 1] = label;
                let gamma = if cur == n { 1 } else { cur + 1 };
                cur = prev[gamma];
                if cur == start {
                    break;
                }
            }
        }
        Ok(Self::canonicalize(&labels))
    }

    /// Places `self` on odd positions `2i-1` and `other` on even positions
    /// `2i` of `{1..2n}`.
    pub fn interweave(&self, other: &Partition) -> Result<Partition> {
        self.check_same_n(other)?;
        let n = self.n();
        let shift = self.num_blocks();
        let mut labels = Vec::with_capacity(2 * n);
        for i in 0..n {
            labels.push(self.rgs[i]);
            labels.push(shift + other.rgs[i]);
        }
        Ok(Self::canonicalize(&labels))
    }

    /// Identifies `k` and `k+1` (merging their blocks if distinct) and
    /// relabels the ground set down to `{1..n-1}`.
    pub fn merge_neighbours(&self, k: usize) -> Result<Partition> {
        let n = self.n();
        if k == 0 || k >= n {
            return Err(Error::domain(format!(
                "merge position {k} outside 1..={}",
                n - 1
            )));
        }
        let merged_from = self.rgs[k]; // block of k+1
        let merged_to = self.rgs[k - 1]; // block of k
        let mut labels = Vec::with_capacity(n - 1);
        for (i, &b) in self.rgs.iter().enumerate() {
            if i + 1 == k + 1 {
                continue; // element k+1 is absorbed into k
            }
            labels.push(if b == merged_from { merged_to } else { b });
        }
        Ok(Self::canonicalize(&labels))
    }

    /// Replaces element `i` by an interval of `sizes[i-1]` consecutive
    /// points; block `B` becomes the union of the intervals of its members.
    pub fn induced_grouping(&self, sizes: &[usize]) -> Result<Partition> {
        if sizes.len() != self.n() {
            return Err(Error::domain(format!(
                "sizes length {} does not match ground set {}",
                sizes.len(),
                self.n()
            )));
        }
        if sizes.contains(&0) {
            return Err(Error::domain("interval sizes must be positive"));
        }
        let total: usize = sizes.iter().sum();
        let mut labels = Vec::with_capacity(total);
        for (i, &s) in sizes.iter().enumerate() {
            labels.extend(std::iter::repeat_n(self.rgs[i], s));
        }
        Ok(Self::canonicalize(&labels))
    }

    /// The quotient `self / finer` on the block set of `finer`: block `j` of
    /// `finer` maps to the `self`-block containing it. Requires
    /// `finer ≤ self`.
    pub fn quotient(&self, finer: &Partition) -> Result<Partition> {
        if !finer.leq(self)? {
            return Err(Error::domain("quotient requires the finer partition below"));
        }
        let p = finer.num_blocks();
        let mut labels = vec![usize::MAX; p];
        for (i, &b) in finer.rgs.iter().enumerate() {
            if labels[b] == usize::MAX {
                labels[b] = self.rgs[i];
            }
        }
        Ok(Self::canonicalize(&labels))
    }

    /// Restriction to a subset of elements (ascending), relabeled `1..k`.
    pub fn restrict(&self, elements: &[usize]) -> Result<Partition> {
        if elements.is_empty() {
            return Err(Error::domain("restriction to an empty set"));
        }
        let mut labels = Vec::with_capacity(elements.len());
        for w in elements.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::domain("restriction elements must be ascending"));
            }
        }
        for &e in elements {
            if e == 0 || e > self.n() {
                return Err(Error::domain(format!("element {e} outside ground set")));
            }
            labels.push(self.rgs[e - 1]);
        }
        Ok(Self::canonicalize(&labels))
    }

    /// Connected neighbours, alternation and singleton data.
    pub fn shape(&self) -> Shape {
        let cn = (1..self.n())
            .filter(|&k| self.rgs[k - 1] == self.rgs[k])
            .count();
        let singletons: Vec<usize> = self
            .blocks()
            .into_iter()
            .filter(|b| b.len() == 1)
            .map(|b| b[0])
            .collect();
        Shape {
            connected_neighbours: cn,
            alternating: cn == 0,
            has_singleton: !singletons.is_empty(),
            singletons,
        }
    }

    /// The canonical index function of the partition: element `i` maps to
    /// its 1-based block number.
    pub fn canonical_index_function(&self) -> IndexFunction {
        IndexFunction {
            values: self.rgs.iter().map(|&b| b + 1).collect(),
        }
    }

    fn check_same_n(&self, other: &Partition) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::domain(format!(
                "ground sets differ: {} vs {}",
                self.n(),
                other.n()
            )));
        }
        Ok(())
    }

    /// JSON form: array of arrays of integers, blocks ordered by minimum.
    pub fn to_json(&self) -> Value {
        json!(self.blocks())
    }

    /// Parses the JSON array-of-arrays form.
    pub fn from_json(value: &Value) -> Result<Partition> {
        let outer = value
            .as_array()
            .ok_or_else(|| Error::Parse("partition JSON must be an array of arrays".into()))?;
        let mut blocks = Vec::with_capacity(outer.len());
        let mut n = 0usize;
        for item in outer {
            let inner = item
                .as_array()
                .ok_or_else(|| Error::Parse("partition block must be an array".into()))?;
            let mut block = Vec::with_capacity(inner.len());
            for e in inner {
                let v = e.as_u64().ok_or_else(|| {
                    Error::Parse("partition element must be a positive integer".into())
                })? as usize;
                n = n.max(v);
                block.push(v);
            }
            blocks.push(block);
        }
        Partition::from_blocks(n, &blocks)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for block in self.blocks() {
            if !first {
                write!(f, "|")?;
            }
            first = false;
            let parts: Vec<String> = block.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut n = 0usize;
        for chunk in s.trim().split('|') {
            let mut block = Vec::new();
            for e in chunk.split(',') {
                let v: usize = e.trim().parse().map_err(|_| {
                    Error::Parse(format!("invalid partition element {e:?} in {s:?}"))
                })?;
                n = n.max(v);
                block.push(v);
            }
            blocks.push(block);
        }
        Partition::from_blocks(n, &blocks)
    }
}

/// An index function `h : [n] → ℕ` with positive values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexFunction {
    values: Vec<usize>,
}

impl IndexFunction {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("index function must be nonempty"));
        }
        if values.contains(&0) {
            return Err(Error::domain("index values must be positive"));
        }
        Ok(IndexFunction { values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// The kernel partition: `i ~ j` iff `h(i) = h(j)`.
    pub fn kernel(&self) -> Partition {
        Partition::canonicalize(&self.values)
    }
}

/// Lexicographic enumeration (in restricted-growth strings) of all or of
/// noncrossing partitions of `{1..n}` under the default ceiling.
pub fn partitions(n: usize, family: Family) -> Result<PartitionIter> {
    partitions_with_ceiling(n, family, DEFAULT_ENUMERATION_CEILING)
}

/// Same as [`partitions`] with an explicit ceiling.
pub fn partitions_with_ceiling(n: usize, family: Family, ceiling: usize) -> Result<PartitionIter> {
    if n == 0 || n > ceiling {
        return Err(Error::SizeLimit {
            what: "partition enumeration",
            n,
            max: ceiling,
        });
    }
    Ok(PartitionIter {
        rgs: vec![0; n],
        family,
        state: IterState::Fresh,
    })
}

enum IterState {
    Fresh,
    Running,
    Done,
}

/// Streaming iterator over partitions; see [`partitions`].
pub struct PartitionIter {
    rgs: Vec<usize>,
    family: Family,
    state: IterState,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        match self.state {
            IterState::Fresh => {
                self.state = IterState::Running;
                // All-zeros is 1̂_n, the lexicographic minimum; it is
                // noncrossing, so it starts both families.
                Some(Partition {
                    rgs: self.rgs.clone(),
                })
            }
            IterState::Running => {
                if self.advance() {
                    Some(Partition {
                        rgs: self.rgs.clone(),
                    })
                } else {
                    self.state = IterState::Done;
                    None
                }
            }
            IterState::Done => None,
        }
    }
}

impl PartitionIter {
    /// Advances to the lexicographically next restricted-growth string,
    /// skipping crossing prefixes when enumerating the noncrossing family.
    /// Resetting a suffix to zeros never introduces a crossing, so pruning
    /// at the increment position suffices.
    fn advance(&mut self) -> bool {
        let n = self.rgs.len();
        let mut j = n - 1;
        loop {
            if j == 0 {
                return false;
            }
            let max_prefix = self.rgs[..j].iter().copied().max().unwrap();
            loop {
                self.rgs[j] += 1;
                if self.rgs[j] > max_prefix + 1 {
                    break;
                }
                if self.family == Family::All
                    || self.rgs[j] == max_prefix + 1
                    || nc_joinable(&self.rgs[..j], self.rgs[j])
                {
                    for t in j + 1..n {
                        self.rgs[t] = 0;
                    }
                    return true;
                }
            }
            j -= 1;
        }
    }
}

/// Can the next element join existing block `v` without creating a crossing
/// inside `prefix`? (`prefix` is assumed noncrossing.)
fn nc_joinable(prefix: &[usize], v: usize) -> bool {
    let mut last_v = 0usize;
    for (i, &b) in prefix.iter().enumerate() {
        if b == v {
            last_v = i + 1;
        }
    }
    // A block straddling last_v closes the gap between last_v and the new
    // element, so joining v would cross it.
    let blocks = prefix.iter().copied().max().unwrap() + 1;
    let mut first = vec![usize::MAX; blocks];
    let mut last = vec![0usize; blocks];
    for (i, &b) in prefix.iter().enumerate() {
        if first[b] == usize::MAX {
            first[b] = i + 1;
        }
        last[b] = i + 1;
    }
    for b in 0..blocks {
        if b != v && first[b] < last_v && last[b] > last_v {
            return false;
        }
    }
    true
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

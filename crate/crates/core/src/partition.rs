//! Good t-partitions: ordered partitions `E_1 | ... | E_t` of the ground set
//! with split integers `a_1..a_t`, checked against (P1), (P2)(a), (P2)(b).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::matroid::Matroid;
use crate::subset::Subset;

/// Ordered blocks with one split integer per block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoodPartitionCandidate {
    blocks: Vec<Subset>,
    splits: Vec<usize>,
}

impl GoodPartitionCandidate {
    /// No checks; see [`check_structure`].
    pub fn new(blocks: Vec<Subset>, splits: Vec<usize>) -> Self {
        GoodPartitionCandidate { blocks, splits }
    }

    pub fn from_lists(blocks: &[&[usize]], splits: &[usize]) -> Self {
        GoodPartitionCandidate {
            blocks: blocks.iter().map(|b| Subset::of(b)).collect(),
            splits: splits.to_vec(),
        }
    }

    #[inline]
    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    #[inline]
    pub fn splits(&self) -> &[usize] {
        &self.splits
    }

    /// Number of blocks.
    #[inline]
    pub fn arity(&self) -> usize {
        self.blocks.len()
    }

    /// `E_1 ∪ ... ∪ E_j` (so `prefix(0)` is empty).
    pub fn prefix(&self, j: usize) -> Subset {
        self.interval(0, j)
    }

    /// `E_{i+1} ∪ ... ∪ E_j` in 1-based block terms.
    pub fn interval(&self, i: usize, j: usize) -> Subset {
        self.blocks[i..j].iter().fold(Subset::EMPTY, |acc, &b| acc | b)
    }

    /// `a_1 + ... + a_j`.
    pub fn prefix_sum(&self, j: usize) -> usize {
        self.splits[..j].iter().sum()
    }

    pub fn split_sum(&self, i: usize, j: usize) -> usize {
        self.splits[i..j].iter().sum()
    }

    pub fn total(&self) -> usize {
        self.splits.iter().sum()
    }
}

impl fmt::Display for GoodPartitionCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(" a=(")?;
        for (i, a) in self.splits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// The candidate is not an ordered partition with admissible splits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructuralError {
    TooFewBlocks { blocks: usize },
    SplitCountMismatch { blocks: usize, splits: usize },
    EmptyBlock { block: usize },
    OutsideGround { block: usize, n: usize },
    Overlap { first: usize, second: usize, common: Subset },
    Uncovered { missing: Subset },
    /// Requires `0 < split < rank`, where `rank` is the rank of the block.
    SplitOutOfRange { block: usize, split: usize, rank: usize },
}

impl fmt::Display for StructuralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuralError::TooFewBlocks { blocks } => {
                write!(f, "need at least 2 blocks, got {blocks}")
            }
            StructuralError::SplitCountMismatch { blocks, splits } => {
                write!(f, "{blocks} blocks but {splits} split integers")
            }
            StructuralError::EmptyBlock { block } => write!(f, "block {block} is empty"),
            StructuralError::OutsideGround { block, n } => {
                write!(f, "block {block} has elements outside 1..={n}")
            }
            StructuralError::Overlap { first, second, common } => {
                write!(f, "blocks {first} and {second} share {common}")
            }
            StructuralError::Uncovered { missing } => {
                write!(f, "blocks do not cover {missing}")
            }
            StructuralError::SplitOutOfRange { block, split, rank } => {
                write!(f, "block {block}: need 0 < a = {split} < rank = {rank}")
            }
        }
    }
}

impl core::error::Error for StructuralError {}

/// How the size bounds of (P2)(a) are read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum P2aReading {
    /// `|X| <= a_1 + ... + a_j`, `|Y| <= a_{j+1} + ... + a_t`.
    #[default]
    PrefixSums,
    /// `|X| <= a_1`, `|Y| <= a_2` for every cut `j`.
    Literal,
}

/// A concrete failure of one clause. Block indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionWitness {
    P1 { rank: usize, sum: usize },
    /// `x ∪ y` is dependent, with `x` in the first `cut` blocks.
    P2a { cut: usize, x: Subset, y: Subset },
    P2b { first: usize, second: usize, x: Subset, y: Subset, z: Subset },
}

impl PartitionWitness {
    pub fn clause(&self) -> &'static str {
        match self {
            PartitionWitness::P1 { .. } => "P1",
            PartitionWitness::P2a { .. } => "P2a",
            PartitionWitness::P2b { .. } => "P2b",
        }
    }

    /// Re-derives the violation from scratch.
    pub fn replay(&self, m: &Matroid, c: &GoodPartitionCandidate, reading: P2aReading) -> bool {
        let t = c.arity();
        match *self {
            PartitionWitness::P1 { rank, sum } => {
                rank == m.rank() && sum == c.total() && rank != sum
            }
            PartitionWitness::P2a { cut, x, y } => {
                if cut == 0 || cut >= t {
                    return false;
                }
                let (bx, by) = p2a_bounds(c, cut, reading);
                x.is_subset(c.prefix(cut))
                    && y.is_subset(c.interval(cut, t))
                    && x.len() <= bx
                    && y.len() <= by
                    && m.is_independent(x)
                    && m.is_independent(y)
                    && !m.is_independent(x | y)
            }
            PartitionWitness::P2b { first, second, x, y, z } => {
                if first == 0 || first >= second || second >= t {
                    return false;
                }
                x.is_subset(c.prefix(first))
                    && y.is_subset(c.interval(first, second))
                    && z.is_subset(c.interval(second, t))
                    && x.len() <= c.prefix_sum(first)
                    && y.len() <= c.split_sum(first, second)
                    && z.len() <= c.split_sum(second, t)
                    && m.is_independent(x)
                    && m.is_independent(y)
                    && m.is_independent(z)
                    && !m.is_independent(x | y | z)
            }
        }
    }
}

impl fmt::Display for PartitionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionWitness::P1 { rank, sum } => {
                write!(f, "P1: rank {rank} but splits sum to {sum}")
            }
            PartitionWitness::P2a { cut, x, y } => {
                write!(f, "P2a at cut {cut}: X={x}, Y={y}, X∪Y dependent")
            }
            PartitionWitness::P2b { first, second, x, y, z } => write!(
                f,
                "P2b at cuts {first},{second}: X={x}, Y={y}, Z={z}, X∪Y∪Z dependent"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionVerdict {
    pub p1_ok: bool,
    pub p2a_ok: bool,
    pub p2b_ok: bool,
    /// First failing clause in the order P1, P2a, P2b.
    pub witness: Option<PartitionWitness>,
}

impl PartitionVerdict {
    pub fn passed(&self) -> bool {
        self.p1_ok && self.p2a_ok && self.p2b_ok
    }
}

/// Checks that `c` is an ordered partition of the ground set with
/// `0 < a_i < rank(E_i)`.
pub fn check_structure(m: &Matroid, c: &GoodPartitionCandidate) -> Result<(), StructuralError> {
    let t = c.arity();
    if t < 2 {
        return Err(StructuralError::TooFewBlocks { blocks: t });
    }
    if c.splits.len() != t {
        return Err(StructuralError::SplitCountMismatch { blocks: t, splits: c.splits.len() });
    }
    let ground = m.ground();
    for (i, &b) in c.blocks.iter().enumerate() {
        if b.is_empty() {
            return Err(StructuralError::EmptyBlock { block: i + 1 });
        }
        if !b.is_subset(ground) {
            return Err(StructuralError::OutsideGround { block: i + 1, n: m.ground_size() });
        }
    }
    for i in 0..t {
        for j in i + 1..t {
            let common = c.blocks[i] & c.blocks[j];
            if !common.is_empty() {
                return Err(StructuralError::Overlap { first: i + 1, second: j + 1, common });
            }
        }
    }
    let missing = ground - c.prefix(t);
    if !missing.is_empty() {
        return Err(StructuralError::Uncovered { missing });
    }
    for (i, (&b, &a)) in c.blocks.iter().zip(&c.splits).enumerate() {
        let rank = m.rank_of(b);
        if a == 0 || a >= rank {
            return Err(StructuralError::SplitOutOfRange { block: i + 1, split: a, rank });
        }
    }
    Ok(())
}

/// (P1): `r(M) = a_1 + ... + a_t`.
pub fn check_p1(m: &Matroid, c: &GoodPartitionCandidate) -> bool {
    m.rank() == c.total()
}

fn p2a_bounds(c: &GoodPartitionCandidate, cut: usize, reading: P2aReading) -> (usize, usize) {
    match reading {
        P2aReading::PrefixSums => (c.prefix_sum(cut), c.split_sum(cut, c.arity())),
        P2aReading::Literal => (c.splits[0], c.splits.get(1).copied().unwrap_or(0)),
    }
}

/// Independent sets of one size inside one interval, memoised per call.
struct IndependentCache<'m> {
    m: &'m Matroid,
    entries: BTreeMap<(u64, usize), Vec<Subset>>,
}

impl<'m> IndependentCache<'m> {
    fn new(m: &'m Matroid) -> Self {
        IndependentCache { m, entries: BTreeMap::new() }
    }

    /// Independent subsets of `a` of size `min(bound, rank(a))`.
    ///
    /// Independence is hereditary, so checking only these largest sets
    /// decides the clause for all smaller ones.
    fn largest(&mut self, a: Subset, bound: usize) -> &[Subset] {
        let k = bound.min(self.m.rank_of(a));
        let m = self.m;
        self.entries
            .entry((a.bits(), k))
            .or_insert_with(|| m.independent_sets_of_size(a, k))
    }
}

/// (P2)(a); returns the first violating `(cut, X, Y)` in enumeration order.
pub fn check_p2a(
    m: &Matroid,
    c: &GoodPartitionCandidate,
    reading: P2aReading,
) -> Result<(), PartitionWitness> {
    let mut cache = IndependentCache::new(m);
    check_p2a_with(&mut cache, c, reading)
}

fn check_p2a_with(
    cache: &mut IndependentCache<'_>,
    c: &GoodPartitionCandidate,
    reading: P2aReading,
) -> Result<(), PartitionWitness> {
    let m = cache.m;
    let t = c.arity();
    for cut in 1..t {
        let (bx, by) = p2a_bounds(c, cut, reading);
        let xs = cache.largest(c.prefix(cut), bx).to_vec();
        let ys = cache.largest(c.interval(cut, t), by);
        for &x in &xs {
            for &y in ys {
                if !m.is_independent(x | y) {
                    return Err(PartitionWitness::P2a { cut, x, y });
                }
            }
        }
    }
    Ok(())
}

/// (P2)(b); vacuous for `t = 2`.
pub fn check_p2b(m: &Matroid, c: &GoodPartitionCandidate) -> Result<(), PartitionWitness> {
    let mut cache = IndependentCache::new(m);
    check_p2b_with(&mut cache, c)
}

fn check_p2b_with(
    cache: &mut IndependentCache<'_>,
    c: &GoodPartitionCandidate,
) -> Result<(), PartitionWitness> {
    let m = cache.m;
    let t = c.arity();
    for first in 1..t {
        for second in first + 1..t {
            let xs = cache.largest(c.prefix(first), c.prefix_sum(first)).to_vec();
            let ys = cache
                .largest(c.interval(first, second), c.split_sum(first, second))
                .to_vec();
            let zs = cache.largest(c.interval(second, t), c.split_sum(second, t));
            for &x in &xs {
                for &y in &ys {
                    let xy = x | y;
                    if !m.is_independent(xy) {
                        // Z = ∅ is always allowed
                        return Err(PartitionWitness::P2b { first, second, x, y, z: Subset::EMPTY });
                    }
                    for &z in zs {
                        if !m.is_independent(xy | z) {
                            return Err(PartitionWitness::P2b { first, second, x, y, z });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Structure, then all three clauses. Every clause is evaluated; the witness
/// is the first failure in the order P1, P2a, P2b.
pub fn is_good_partition(
    m: &Matroid,
    c: &GoodPartitionCandidate,
) -> Result<PartitionVerdict, StructuralError> {
    is_good_partition_with(m, c, P2aReading::PrefixSums)
}

pub fn is_good_partition_with(
    m: &Matroid,
    c: &GoodPartitionCandidate,
    reading: P2aReading,
) -> Result<PartitionVerdict, StructuralError> {
    check_structure(m, c)?;
    let mut cache = IndependentCache::new(m);
    Ok(evaluate(&mut cache, c, reading))
}

fn evaluate(
    cache: &mut IndependentCache<'_>,
    c: &GoodPartitionCandidate,
    reading: P2aReading,
) -> PartitionVerdict {
    let m = cache.m;
    let p1_ok = check_p1(m, c);
    let p2a = check_p2a_with(cache, c, reading);
    let p2b = check_p2b_with(cache, c);
    let witness = if !p1_ok {
        Some(PartitionWitness::P1 { rank: m.rank(), sum: c.total() })
    } else {
        p2a.clone().err().or_else(|| p2b.clone().err())
    };
    PartitionVerdict { p1_ok, p2a_ok: p2a.is_ok(), p2b_ok: p2b.is_ok(), witness }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of (ordered partition, split vector) pairs examined.
    pub max_examined: Option<u64>,
    pub reading: P2aReading,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_examined: None, reading: P2aReading::PrefixSums }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub candidates: Vec<GoodPartitionCandidate>,
    /// False when the budget ran out; `candidates` is then a prefix of the
    /// full answer.
    pub complete: bool,
    pub examined: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchError {
    ArityOutOfRange { t: usize, rank: usize },
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::ArityOutOfRange { t, rank } => {
                write!(f, "need 2 <= t <= rank = {rank}, got t = {t}")
            }
        }
    }
}

impl core::error::Error for SearchError {}

/// All good t-partitions of `m`.
///
/// Order: unordered partitions by restricted growth string (blocks keyed by
/// their minimum), then block permutations in lexicographic order, then split
/// vectors in lexicographic order. Block order is significant, so a partition
/// and its reversal are reported separately.
pub fn search_good_partitions(
    m: &Matroid,
    t: usize,
    limits: SearchLimits,
) -> Result<SearchOutcome, SearchError> {
    let r = m.rank();
    if t < 2 || t > r {
        return Err(SearchError::ArityOutOfRange { t, rank: r });
    }
    let mut search = Search {
        m,
        t,
        limits,
        cache: IndependentCache::new(m),
        out: Vec::new(),
        examined: 0,
        exhausted: false,
    };
    let n = m.ground_size();
    let mut blocks = vec![Subset::EMPTY; t];
    search.partitions(1, n, 0, &mut blocks);
    Ok(SearchOutcome {
        candidates: search.out,
        complete: !search.exhausted,
        examined: search.examined,
    })
}

struct Search<'m> {
    m: &'m Matroid,
    t: usize,
    limits: SearchLimits,
    cache: IndependentCache<'m>,
    out: Vec<GoodPartitionCandidate>,
    examined: u64,
    exhausted: bool,
}

impl Search<'_> {
    /// Places element `e` into one of the `used` open blocks or a new one.
    fn partitions(&mut self, e: usize, n: usize, used: usize, blocks: &mut [Subset]) {
        if self.exhausted {
            return;
        }
        let t = self.t;
        if e > n {
            if used == t {
                self.unordered(blocks);
            }
            return;
        }
        // not enough elements left to open the remaining blocks
        if t - used > n - e + 1 {
            return;
        }
        for b in 0..used {
            blocks[b] = blocks[b].with(e);
            self.partitions(e + 1, n, used, blocks);
            blocks[b] = blocks[b].without(e);
        }
        if used < t {
            blocks[used] = Subset::singleton(e);
            self.partitions(e + 1, n, used + 1, blocks);
            blocks[used] = Subset::EMPTY;
        }
    }

    fn unordered(&mut self, blocks: &[Subset]) {
        let ranks: Vec<usize> = blocks.iter().map(|&b| self.m.rank_of(b)).collect();
        if ranks.iter().any(|&r| r < 2) {
            return;
        }
        // (P1) needs sum(a_i) = r with a_i <= r_i - 1
        if ranks.iter().map(|r| r - 1).sum::<usize>() < self.m.rank() {
            return;
        }
        let t = self.t;
        let mut order: Vec<usize> = (0..t).collect();
        loop {
            let ordered: Vec<Subset> = order.iter().map(|&i| blocks[i]).collect();
            let caps: Vec<usize> = order.iter().map(|&i| ranks[i] - 1).collect();
            self.splits(&ordered, &caps);
            if self.exhausted || !next_permutation(&mut order) {
                return;
            }
        }
    }

    fn splits(&mut self, blocks: &[Subset], caps: &[usize]) {
        let r = self.m.rank();
        let mut a = vec![0usize; blocks.len()];
        self.splits_rec(blocks, caps, &mut a, 0, r);
    }

    fn splits_rec(
        &mut self,
        blocks: &[Subset],
        caps: &[usize],
        a: &mut [usize],
        i: usize,
        remaining: usize,
    ) {
        if self.exhausted {
            return;
        }
        let t = blocks.len();
        if i == t - 1 {
            if remaining >= 1 && remaining <= caps[i] {
                a[i] = remaining;
                self.examine(blocks, a);
            }
            return;
        }
        let rest_min = t - 1 - i;
        let rest_max: usize = caps[i + 1..].iter().sum();
        for v in 1..=caps[i] {
            if v + rest_min > remaining {
                break;
            }
            if remaining - v > rest_max {
                continue;
            }
            a[i] = v;
            self.splits_rec(blocks, caps, a, i + 1, remaining - v);
        }
    }

    fn examine(&mut self, blocks: &[Subset], a: &[usize]) {
        if let Some(max) = self.limits.max_examined {
            if self.examined >= max {
                self.exhausted = true;
                return;
            }
        }
        self.examined += 1;
        let c = GoodPartitionCandidate::new(blocks.to_vec(), a.to_vec());
        let verdict = evaluate(&mut self.cache, &c, self.limits.reading);
        if verdict.passed() {
            self.out.push(c);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Groups candidates by their unordered block set, keeping first-seen order
/// inside each group. Groups are keyed by the sorted block list.
pub fn group_by_block_multiset(
    candidates: &[GoodPartitionCandidate],
) -> Vec<(Vec<Subset>, Vec<GoodPartitionCandidate>)> {
    let mut groups: BTreeMap<Vec<Subset>, Vec<GoodPartitionCandidate>> = BTreeMap::new();
    for c in candidates {
        let mut key = c.blocks.clone();
        key.sort_unstable();
        groups.entry(key).or_default().push(c.clone());
    }
    groups.into_iter().collect()
}

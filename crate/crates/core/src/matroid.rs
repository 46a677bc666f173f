//! Matroids given by an explicit family of bases.
//!
//! A [`BaseFamily`] is a structurally sound list of equal-size subsets; a
//! [`Matroid`] is a family that has passed the exhaustive basis exchange
//! check. Small ground sets (`n <= 16`) additionally carry dense tables so
//! that base and independence queries are single lookups.

use alloc::vec::Vec;
use core::fmt;

use crate::bitmap::Bitmap;
use crate::subset::{binomial, subsets_of_size, Subset, MAX_ELEMENTS};

/// Ground sets up to this size get dense base/independence tables.
pub const DENSE_TABLE_LIMIT: usize = 16;

/// Ground sets up to this size are validated with a dense spanning table.
const DENSE_VALIDATION_LIMIT: usize = 20;

/// Constructors refuse to materialise more bases than this.
pub const MAX_ENUMERATED_BASES: u64 = 1 << 24;

/// Structural problems with a candidate base family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyError {
    GroundSize { n: usize },
    RankExceedsGround { rank: usize, n: usize },
    Empty,
    LabelOutOfRange { label: usize, n: usize },
    ElementOutOfRange { base: Subset, n: usize },
    WrongCardinality { base: Subset, expected: usize },
    Duplicate { base: Subset },
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::GroundSize { n } => {
                write!(f, "ground set size {n} outside 1..={MAX_ELEMENTS}")
            }
            FamilyError::RankExceedsGround { rank, n } => {
                write!(f, "rank {rank} exceeds ground set size {n}")
            }
            FamilyError::Empty => f.write_str("base family is empty"),
            FamilyError::LabelOutOfRange { label, n } => {
                write!(f, "element {label} outside 1..={n}")
            }
            FamilyError::ElementOutOfRange { base, n } => {
                write!(f, "base {base} has elements outside 1..={n}")
            }
            FamilyError::WrongCardinality { base, expected } => {
                write!(f, "base {base} has {} elements, expected {expected}", base.len())
            }
            FamilyError::Duplicate { base } => write!(f, "base {base} listed twice"),
        }
    }
}

impl core::error::Error for FamilyError {}

/// Nonempty family of `rank`-subsets of `{1..n}` in canonical (integer) order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BaseFamily {
    n: usize,
    rank: usize,
    bases: Vec<Subset>,
}

impl BaseFamily {
    pub fn new(n: usize, rank: usize, mut bases: Vec<Subset>) -> Result<Self, FamilyError> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(FamilyError::GroundSize { n });
        }
        if rank > n {
            return Err(FamilyError::RankExceedsGround { rank, n });
        }
        if bases.is_empty() {
            return Err(FamilyError::Empty);
        }
        let ground = Subset::full(n);
        for &b in &bases {
            if !b.is_subset(ground) {
                return Err(FamilyError::ElementOutOfRange { base: b, n });
            }
            if b.len() != rank {
                return Err(FamilyError::WrongCardinality { base: b, expected: rank });
            }
        }
        bases.sort_unstable();
        if let Some(w) = bases.windows(2).find(|w| w[0] == w[1]) {
            return Err(FamilyError::Duplicate { base: w[0] });
        }
        Ok(BaseFamily { n, rank, bases })
    }

    /// Builds a family from lists of 1-based labels.
    pub fn from_lists<I, J>(n: usize, rank: usize, lists: I) -> Result<Self, FamilyError>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = usize>,
    {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(FamilyError::GroundSize { n });
        }
        let mut bases = Vec::new();
        for list in lists {
            let mut s = Subset::EMPTY;
            let mut count = 0;
            for label in list {
                if label == 0 || label > n {
                    return Err(FamilyError::LabelOutOfRange { label, n });
                }
                s = s.with(label);
                count += 1;
            }
            if count != s.len() {
                // repeated label inside one base
                return Err(FamilyError::WrongCardinality { base: s, expected: rank });
            }
            bases.push(s);
        }
        BaseFamily::new(n, rank, bases)
    }

    /// Trusted constructor for families already known to be sorted and valid.
    pub(crate) fn from_sorted(n: usize, rank: usize, bases: Vec<Subset>) -> Self {
        debug_assert!(!bases.is_empty());
        debug_assert!(bases.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(bases.iter().all(|b| b.len() == rank));
        BaseFamily { n, rank, bases }
    }

    #[inline]
    pub fn ground_size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn ground(&self) -> Subset {
        Subset::full(self.n)
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bases.len()
    }

    /// Always false; a family is nonempty by construction.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    #[inline]
    pub fn contains(&self, s: Subset) -> bool {
        self.bases.binary_search(&s).is_ok()
    }

    pub fn into_bases(self) -> Vec<Subset> {
        self.bases
    }
}

impl fmt::Debug for BaseFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BaseFamily")
            .field("n", &self.n)
            .field("rank", &self.rank)
            .field("bases", &self.bases)
            .finish()
    }
}

/// Witness that the exchange axiom fails: `e ∈ b1 \ b2` and no
/// `f ∈ b2 \ b1` has `(b1 - e) + f` in the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExchangeViolation {
    pub b1: Subset,
    pub b2: Subset,
    pub e: usize,
}

impl ExchangeViolation {
    /// Re-checks the witness against `family`.
    pub fn replay(&self, family: &BaseFamily) -> bool {
        family.contains(self.b1)
            && family.contains(self.b2)
            && self.b1.contains(self.e)
            && !self.b2.contains(self.e)
            && (self.b2 - self.b1)
                .iter()
                .all(|f| !family.contains(self.b1.without(self.e).with(f)))
    }
}

impl fmt::Display for ExchangeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "exchange fails for B1={}, B2={}, e={}",
            self.b1, self.b2, self.e
        )
    }
}

impl core::error::Error for ExchangeViolation {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatroidError {
    Family(FamilyError),
    Exchange(ExchangeViolation),
}

impl fmt::Display for MatroidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatroidError::Family(e) => write!(f, "malformed base family: {e}"),
            MatroidError::Exchange(v) => write!(f, "not a matroid: {v}"),
        }
    }
}

impl core::error::Error for MatroidError {}

impl From<FamilyError> for MatroidError {
    fn from(e: FamilyError) -> Self {
        MatroidError::Family(e)
    }
}

impl From<ExchangeViolation> for MatroidError {
    fn from(v: ExchangeViolation) -> Self {
        MatroidError::Exchange(v)
    }
}

/// Failures of the matroid constructors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructError {
    GroundSize { n: usize },
    RankOutOfRange { n: usize, rank: usize },
    TooManyBases { count: u64 },
    EmptyRestriction,
    OutsideGround { set: Subset, n: usize },
    Invalid(MatroidError),
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::GroundSize { n } => {
                write!(f, "ground set size {n} outside 1..={MAX_ELEMENTS}")
            }
            ConstructError::RankOutOfRange { n, rank } => {
                write!(f, "rank {rank} not in 1..={n}")
            }
            ConstructError::TooManyBases { count } => {
                write!(f, "{count} bases exceed the enumeration cap {MAX_ENUMERATED_BASES}")
            }
            ConstructError::EmptyRestriction => f.write_str("restriction to the empty set"),
            ConstructError::OutsideGround { set, n } => {
                write!(f, "{set} is not a subset of 1..={n}")
            }
            ConstructError::Invalid(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for ConstructError {}

/// Why a set cannot be relaxed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelaxError {
    OutsideGround { set: Subset },
    /// The set is independent, so not a circuit.
    Independent,
    /// Removing `element` leaves a dependent set, so the set is not minimal.
    NotMinimal { element: usize },
    WrongRank { rank: usize, expected: usize },
    /// `element` lies in the closure but not in the set.
    NotFlat { element: usize },
    Exchange(ExchangeViolation),
}

impl fmt::Display for RelaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelaxError::OutsideGround { set } => write!(f, "{set} is not inside the ground set"),
            RelaxError::Independent => f.write_str("not a circuit: the set is independent"),
            RelaxError::NotMinimal { element } => {
                write!(f, "not a circuit: dependent after removing {element}")
            }
            RelaxError::WrongRank { rank, expected } => {
                write!(f, "not a hyperplane: rank {rank}, expected {expected}")
            }
            RelaxError::NotFlat { element } => {
                write!(f, "not a flat: closure contains {element}")
            }
            RelaxError::Exchange(v) => write!(f, "relaxation is not a matroid: {v}"),
        }
    }
}

impl core::error::Error for RelaxError {}

#[derive(Clone)]
struct Tables {
    bases: Bitmap,
    independent: Bitmap,
}

impl Tables {
    fn build(family: &BaseFamily) -> Option<Self> {
        if family.n > DENSE_TABLE_LIMIT {
            return None;
        }
        let bases = Bitmap::from_sets(family.n, &family.bases);
        let mut independent = bases.clone();
        independent.close_downward();
        Some(Tables { bases, independent })
    }
}

/// A validated matroid.
#[derive(Clone)]
pub struct Matroid {
    family: BaseFamily,
    tables: Option<Tables>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.family.n)
            .field("rank", &self.family.rank)
            .field("bases", &self.family.bases)
            .finish()
    }
}

/// Exhaustive exchange check; returns the first violation in canonical order
/// (B1 ascending, then B2 ascending, then e ascending).
pub fn find_exchange_violation(family: &BaseFamily) -> Option<ExchangeViolation> {
    if family.len() < 2 {
        return None;
    }
    let n = family.n;
    let ground = family.ground();
    let dense = if n <= DENSE_VALIDATION_LIMIT {
        let bases = Bitmap::from_sets(n, &family.bases);
        let mut spanning = bases.clone();
        spanning.close_upward();
        Some((bases, spanning))
    } else {
        None
    };
    let is_base = |s: Subset| match &dense {
        Some((bases, _)) => bases.contains(s),
        None => family.contains(s),
    };

    // exchanges[e - 1] = { f ∉ b1 : b1 - e + f is a base }
    let mut exchanges = [Subset::EMPTY; MAX_ELEMENTS];
    for &b1 in &family.bases {
        for e in b1 {
            let mut reach = Subset::EMPTY;
            for f in ground - b1 {
                if is_base(b1.without(e).with(f)) {
                    reach = reach.with(f);
                }
            }
            exchanges[e - 1] = reach;
        }
        if let Some((_, spanning)) = &dense {
            // A violation exists for (b1, e) iff some base avoids reach ∪ {e}.
            let any_bad = b1
                .iter()
                .any(|e| spanning.contains(ground - exchanges[e - 1].with(e)));
            if !any_bad {
                continue;
            }
        }
        for &b2 in &family.bases {
            for e in b1 - b2 {
                if (exchanges[e - 1] & b2).is_empty() {
                    return Some(ExchangeViolation { b1, b2, e });
                }
            }
        }
    }
    None
}

impl Matroid {
    /// Validates a structurally sound family against the exchange axiom.
    pub fn new(family: BaseFamily) -> Result<Self, ExchangeViolation> {
        match find_exchange_violation(&family) {
            Some(v) => Err(v),
            None => Ok(Matroid::new_unchecked(family)),
        }
    }

    /// Skips the exchange check. Only for families already known to be
    /// matroids (constructor outputs, restrictions); the result is otherwise
    /// unspecified.
    pub fn new_unchecked(family: BaseFamily) -> Self {
        let tables = Tables::build(&family);
        Matroid { family, tables }
    }

    /// Structural checks followed by the exchange check.
    pub fn from_bases(n: usize, rank: usize, bases: Vec<Subset>) -> Result<Self, MatroidError> {
        let family = BaseFamily::new(n, rank, bases)?;
        Ok(Matroid::new(family)?)
    }

    pub fn from_lists<I, J>(n: usize, rank: usize, lists: I) -> Result<Self, MatroidError>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = usize>,
    {
        let family = BaseFamily::from_lists(n, rank, lists)?;
        Ok(Matroid::new(family)?)
    }

    /// `U_{n,r}`: every `r`-subset of `{1..n}` is a base.
    pub fn uniform(n: usize, rank: usize) -> Result<Self, ConstructError> {
        let family = uniform_family(n, rank)?;
        Matroid::new(family).map_err(|v| ConstructError::Invalid(MatroidError::Exchange(v)))
    }

    /// [`Matroid::uniform`] without the exchange check.
    pub fn uniform_unchecked(n: usize, rank: usize) -> Result<Self, ConstructError> {
        Ok(Matroid::new_unchecked(uniform_family(n, rank)?))
    }

    #[inline]
    pub fn family(&self) -> &BaseFamily {
        &self.family
    }

    #[inline]
    pub fn ground_size(&self) -> usize {
        self.family.n
    }

    #[inline]
    pub fn ground(&self) -> Subset {
        self.family.ground()
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.family.rank
    }

    #[inline]
    pub fn bases(&self) -> &[Subset] {
        &self.family.bases
    }

    #[inline]
    pub fn base_count(&self) -> usize {
        self.family.len()
    }

    #[inline]
    pub fn is_base(&self, s: Subset) -> bool {
        match &self.tables {
            Some(t) if s.is_subset(self.ground()) => t.bases.contains(s),
            Some(_) => false,
            None => self.family.contains(s),
        }
    }

    /// True iff `s` lies inside some base. The empty set is independent.
    #[inline]
    pub fn is_independent(&self, s: Subset) -> bool {
        if !s.is_subset(self.ground()) {
            return false;
        }
        match &self.tables {
            Some(t) => t.independent.contains(s),
            None => self.family.bases.iter().any(|&b| s.is_subset(b)),
        }
    }

    /// Size of a largest independent subset of `a`.
    pub fn rank_of(&self, a: Subset) -> usize {
        let cap = a.len().min(self.rank());
        let mut best = 0;
        for &b in self.bases() {
            let k = (b & a).len();
            if k > best {
                best = k;
                if best == cap {
                    break;
                }
            }
        }
        best
    }

    /// All independent subsets of `a` with exactly `k` elements, ascending.
    pub fn independent_sets_of_size(&self, a: Subset, k: usize) -> Vec<Subset> {
        if self.tables.is_some() {
            return subsets_of_size(a & self.ground(), k)
                .filter(|&s| self.is_independent(s))
                .collect();
        }
        let mut out = Vec::new();
        for &b in self.bases() {
            let inside = b & a;
            if inside.len() >= k {
                out.extend(subsets_of_size(inside, k));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `{e : rank(x ∪ e) = rank(x)}`.
    pub fn closure(&self, x: Subset) -> Subset {
        let base_rank = self.rank_of(x);
        let mut out = x & self.ground();
        for e in self.ground() - x {
            if self.rank_of(x.with(e)) == base_rank {
                out = out.with(e);
            }
        }
        out
    }

    /// Minimal dependent set.
    pub fn is_circuit(&self, x: Subset) -> bool {
        !x.is_empty()
            && x.is_subset(self.ground())
            && !self.is_independent(x)
            && x.iter().all(|e| self.is_independent(x.without(e)))
    }

    /// Sets that are both circuits and hyperplanes, ascending.
    ///
    /// Such a set has exactly `r` elements and misses one element of a base,
    /// so every candidate has the form `B - y + x`.
    pub fn circuit_hyperplanes(&self) -> Vec<Subset> {
        let r = self.rank();
        if r == 0 {
            return Vec::new();
        }
        let ground = self.ground();
        let mut candidates = Vec::new();
        for &b in self.bases() {
            for y in b {
                for x in ground - b {
                    let c = b.without(y).with(x);
                    if !self.is_base(c) {
                        candidates.push(c);
                    }
                }
            }
        }
        candidates.sort_unstable();
        candidates.dedup();
        candidates.retain(|&c| {
            self.is_circuit(c) && self.rank_of(c) == r - 1 && self.closure(c) == c
        });
        candidates
    }

    /// Adjoins the circuit-hyperplane `x` to the bases.
    pub fn relax(&self, x: Subset) -> Result<Matroid, RelaxError> {
        if !x.is_subset(self.ground()) {
            return Err(RelaxError::OutsideGround { set: x });
        }
        if self.is_independent(x) {
            return Err(RelaxError::Independent);
        }
        if let Some(element) = x.iter().find(|&e| !self.is_independent(x.without(e))) {
            return Err(RelaxError::NotMinimal { element });
        }
        let rank = self.rank_of(x);
        let expected = self.rank().saturating_sub(1);
        if rank != expected || self.rank() == 0 {
            return Err(RelaxError::WrongRank { rank, expected });
        }
        let closure = self.closure(x);
        if let Some(element) = (closure - x).min_element() {
            return Err(RelaxError::NotFlat { element });
        }
        let mut bases = self.bases().to_vec();
        let at = bases.binary_search(&x).unwrap_err();
        bases.insert(at, x);
        let family = BaseFamily::from_sorted(self.ground_size(), self.rank(), bases);
        Matroid::new(family).map_err(RelaxError::Exchange)
    }

    /// Restriction to `a`, re-indexed to `1..=|a|`.
    pub fn restrict(&self, a: Subset) -> Result<Restriction, ConstructError> {
        if a.is_empty() {
            return Err(ConstructError::EmptyRestriction);
        }
        if !a.is_subset(self.ground()) {
            return Err(ConstructError::OutsideGround { set: a, n: self.ground_size() });
        }
        let k = self.rank_of(a);
        let mut bases: Vec<Subset> = self
            .bases()
            .iter()
            .map(|&b| b & a)
            .filter(|s| s.len() == k)
            .collect();
        bases.sort_unstable();
        bases.dedup();
        let reindexed: Vec<Subset> = bases.iter().map(|s| s.compress(a)).collect();
        let family = BaseFamily::from_sorted(a.len(), k, reindexed);
        Ok(Restriction {
            matroid: Matroid::new_unchecked(family),
            support: a,
        })
    }

    /// `self ⊕ other`, with `other`'s labels shifted by `self.ground_size()`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, ConstructError> {
        let family = direct_sum_family(self.family(), other.family())?;
        Matroid::new(family).map_err(|v| ConstructError::Invalid(MatroidError::Exchange(v)))
    }
}

fn uniform_family(n: usize, rank: usize) -> Result<BaseFamily, ConstructError> {
    if n == 0 || n > MAX_ELEMENTS {
        return Err(ConstructError::GroundSize { n });
    }
    if rank == 0 || rank > n {
        return Err(ConstructError::RankOutOfRange { n, rank });
    }
    let count = binomial(n, rank);
    if count > MAX_ENUMERATED_BASES {
        return Err(ConstructError::TooManyBases { count });
    }
    let bases: Vec<Subset> = subsets_of_size(Subset::full(n), rank).collect();
    Ok(BaseFamily::from_sorted(n, rank, bases))
}

/// Bases of `first ⊕ second` (labels of `second` shifted), unvalidated.
pub(crate) fn direct_sum_family(
    first: &BaseFamily,
    second: &BaseFamily,
) -> Result<BaseFamily, ConstructError> {
    let n = first.n + second.n;
    if n > MAX_ELEMENTS {
        return Err(ConstructError::GroundSize { n });
    }
    let count = (first.len() as u64).saturating_mul(second.len() as u64);
    if count > MAX_ENUMERATED_BASES {
        return Err(ConstructError::TooManyBases { count });
    }
    let shift = first.n as u32;
    let mut bases = Vec::with_capacity(count as usize);
    for &b2 in second.bases() {
        for &b1 in first.bases() {
            bases.push(Subset::from_bits(b1.bits() | (b2.bits() << shift)));
        }
    }
    // second-summand bits are high, so this nested order is already sorted
    debug_assert!(bases.windows(2).all(|w| w[0] < w[1]));
    Ok(BaseFamily::from_sorted(n, first.rank + second.rank, bases))
}

/// A restriction `M|A` viewed both on `1..=|A|` and on the original labels.
#[derive(Clone, Debug)]
pub struct Restriction {
    matroid: Matroid,
    support: Subset,
}

impl Restriction {
    /// The re-indexed matroid on `1..=|A|`.
    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    /// `A` itself.
    pub fn support(&self) -> Subset {
        self.support
    }

    /// `labels()[i]` is the original label of new element `i + 1`.
    pub fn labels(&self) -> Vec<usize> {
        self.support.iter().collect()
    }

    pub fn to_original(&self, s: Subset) -> Subset {
        s.expand(self.support)
    }

    pub fn to_local(&self, s: Subset) -> Subset {
        s.compress(self.support)
    }

    /// Bases of the restriction in original labels.
    pub fn masked_bases(&self) -> Vec<Subset> {
        self.matroid
            .bases()
            .iter()
            .map(|&b| self.to_original(b))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use alloc::vec;

    fn fam(n: usize, r: usize, lists: &[&[usize]]) -> BaseFamily {
        BaseFamily::from_lists(n, r, lists.iter().map(|l| l.iter().copied())).unwrap()
    }

    #[test]
    fn paper_pair_and_counterexample() {
        let m1 = fam(4, 2, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]]);
        assert!(Matroid::new(m1).is_ok());
        let bad = fam(4, 2, &[&[1, 3], &[2, 3], &[2, 4]]);
        let v = Matroid::new(bad.clone()).unwrap_err();
        assert_eq!(
            v,
            ExchangeViolation { b1: Subset::of(&[1, 3]), b2: Subset::of(&[2, 4]), e: 3 }
        );
        assert!(v.replay(&bad));
    }

    #[test]
    fn single_base_is_a_matroid() {
        assert!(Matroid::new(fam(5, 3, &[&[1, 2, 3]])).is_ok());
    }

    #[test]
    fn malformed_families_are_rejected_structurally() {
        let wrong = BaseFamily::from_lists(4, 2, [vec![1, 2], vec![1, 2, 3]]);
        assert!(matches!(wrong, Err(FamilyError::WrongCardinality { .. })));
        let dup = BaseFamily::from_lists(4, 2, [vec![1, 2], vec![2, 1]]);
        assert_eq!(dup, Err(FamilyError::Duplicate { base: Subset::of(&[1, 2]) }));
        let out = BaseFamily::from_lists(4, 2, [vec![1, 5]]);
        assert_eq!(out, Err(FamilyError::LabelOutOfRange { label: 5, n: 4 }));
        assert_eq!(BaseFamily::new(4, 2, vec![]), Err(FamilyError::Empty));
        assert_eq!(BaseFamily::new(65, 2, vec![]), Err(FamilyError::GroundSize { n: 65 }));
        let repeated = BaseFamily::from_lists(4, 2, [vec![1, 1]]);
        assert!(matches!(repeated, Err(FamilyError::WrongCardinality { .. })));
        assert!(matches!(
            Matroid::from_lists(4, 2, [vec![1, 2, 3]]),
            Err(MatroidError::Family(_))
        ));
    }

    #[test]
    fn uniform_counts() {
        assert_eq!(Matroid::uniform(8, 4).unwrap().base_count(), 70);
        assert_eq!(Matroid::uniform(3, 3).unwrap().base_count(), 1);
        assert_eq!(Matroid::uniform(4, 2).unwrap().base_count(), 6);
        assert_eq!(
            Matroid::uniform(3, 4).unwrap_err(),
            ConstructError::RankOutOfRange { n: 3, rank: 4 }
        );
        assert!(matches!(
            Matroid::uniform(64, 32),
            Err(ConstructError::TooManyBases { .. })
        ));
    }

    #[test]
    fn independence_and_rank() {
        let u42 = Matroid::uniform(4, 2).unwrap();
        assert!(u42.is_independent(Subset::of(&[1, 2])));
        assert!(u42.is_independent(Subset::EMPTY));
        assert!(!u42.is_independent(Subset::of(&[1, 2, 3])));
        let w3 = fixtures::whirl3();
        assert!(!w3.is_independent(Subset::of(&[1, 2, 3])));
        let u84 = Matroid::uniform(8, 4).unwrap();
        assert_eq!(u84.rank_of(Subset::of(&[1, 2])), 2);
        assert_eq!(u84.rank_of(Subset::EMPTY), 0);
        assert_eq!(u84.rank_of(u84.ground()), 4);
        let fig1 = fixtures::figure1_matroid();
        assert_eq!(fig1.rank_of(Subset::of(&[1, 2])), 2);
    }

    #[test]
    fn restriction_views() {
        let u84 = Matroid::uniform(8, 4).unwrap();
        let r = u84.restrict(Subset::of(&[1, 2, 3])).unwrap();
        assert_eq!(r.matroid().bases(), &[Subset::of(&[1, 2, 3])]);
        assert_eq!(r.labels(), [1, 2, 3]);

        let w3 = fixtures::whirl3();
        let r = w3.restrict(Subset::of(&[1, 2, 3])).unwrap();
        let expected: Vec<Subset> = subsets_of_size(Subset::of(&[1, 2, 3]), 2)
            .filter(|&s| w3.is_independent(s))
            .collect();
        assert_eq!(r.masked_bases(), expected);
        assert_eq!(r.masked_bases().len(), 3);

        let shifted = w3.restrict(Subset::of(&[2, 4, 6])).unwrap();
        assert_eq!(shifted.labels(), [2, 4, 6]);
        assert_eq!(shifted.matroid().bases(), &[Subset::of(&[1, 2, 3])]);

        let whole = w3.restrict(w3.ground()).unwrap();
        assert_eq!(whole.matroid(), &w3);
        assert_eq!(w3.restrict(Subset::EMPTY).unwrap_err(), ConstructError::EmptyRestriction);
    }

    #[test]
    fn closure_examples() {
        let w3 = fixtures::whirl3();
        assert_eq!(w3.closure(Subset::of(&[1, 2])), Subset::of(&[1, 2, 3]));
        assert_eq!(w3.closure(w3.ground()), w3.ground());
        let u = Matroid::uniform(6, 3).unwrap();
        assert_eq!(u.closure(Subset::of(&[2, 5])), Subset::of(&[2, 5]));
    }

    #[test]
    fn circuit_hyperplanes_of_fixtures() {
        let k4 = fixtures::k4_pattern();
        let lines: Vec<Subset> = fixtures::K4_LINES.iter().map(|l| Subset::of(l)).collect();
        let mut sorted = lines.clone();
        sorted.sort();
        assert_eq!(k4.circuit_hyperplanes(), sorted);

        let mut w3_lines: Vec<Subset> =
            [[1, 2, 3], [3, 5, 6], [1, 4, 5]].iter().map(|l| Subset::of(l)).collect();
        w3_lines.sort();
        assert_eq!(fixtures::whirl3().circuit_hyperplanes(), w3_lines);

        for (n, r) in [(4, 2), (5, 3), (6, 1), (6, 6)] {
            assert!(Matroid::uniform(n, r).unwrap().circuit_hyperplanes().is_empty());
        }
    }

    #[test]
    fn relaxation_examples() {
        let k4 = fixtures::k4_pattern();
        let w3 = k4.relax(Subset::of(&[2, 4, 6])).unwrap();
        assert_eq!(w3.base_count(), 17);
        assert_eq!(w3, fixtures::whirl3());

        let relaxed = w3.relax(Subset::of(&[1, 2, 3])).unwrap();
        assert_eq!(relaxed.base_count(), 18);
        assert!(Matroid::new(relaxed.family().clone()).is_ok());

        let u42 = Matroid::uniform(4, 2).unwrap();
        assert_eq!(u42.relax(Subset::of(&[1, 2])).unwrap_err(), RelaxError::Independent);
        assert_eq!(
            u42.relax(Subset::of(&[1, 2, 3])).unwrap_err(),
            RelaxError::WrongRank { rank: 2, expected: 1 }
        );
        // {1,2,3,4} in W³ is dependent but contains the circuit {1,2,3}
        assert!(matches!(
            w3.relax(Subset::of(&[1, 2, 3, 4])),
            Err(RelaxError::NotMinimal { .. })
        ));
    }

    #[test]
    fn direct_sum_examples() {
        let u21 = Matroid::uniform(2, 1).unwrap();
        let s = u21.direct_sum(&u21).unwrap();
        let expected = fam(4, 2, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]]);
        assert_eq!(s.family(), &expected);

        let s = Matroid::uniform(4, 2).unwrap().direct_sum(&Matroid::uniform(3, 1).unwrap()).unwrap();
        assert_eq!((s.base_count(), s.rank(), s.ground_size()), (18, 3, 7));

        let single = Matroid::from_lists(3, 2, [vec![1, 3]]).unwrap();
        let w3 = fixtures::whirl3();
        let s = w3.direct_sum(&single).unwrap();
        let extended: Vec<Subset> =
            w3.bases().iter().map(|&b| b | Subset::of(&[7, 9])).collect();
        assert_eq!(s.bases(), &extended[..]);

        let big = Matroid::uniform(40, 1).unwrap();
        assert_eq!(
            big.direct_sum(&Matroid::uniform(30, 1).unwrap()).unwrap_err(),
            ConstructError::GroundSize { n: 70 }
        );
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        // n = 18 is above the dense table limit but below the validation limit
        let m = Matroid::uniform(18, 2).unwrap();
        assert!(m.is_independent(Subset::of(&[3, 17])));
        assert!(!m.is_independent(Subset::of(&[3, 17, 18])));
        let sets = m.independent_sets_of_size(Subset::of(&[1, 2, 3, 18]), 2);
        assert_eq!(sets.len(), 6);
        let m = Matroid::uniform(24, 2).unwrap();
        assert_eq!(m.base_count(), 276);
        // elements 2..23 are loops, so they lie in every closure
        let lopsided = Matroid::from_lists(24, 1, [vec![1], vec![24]]).unwrap();
        assert_eq!(lopsided.closure(Subset::EMPTY), Subset::full(23) - Subset::of(&[1]));
        assert_eq!(lopsided.closure(Subset::of(&[1])), lopsided.ground());
    }
}

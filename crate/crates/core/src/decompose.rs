//! Decomposition pieces defined by prefix conditions, the full verification
//! pipeline, uniform matroids, and the relaxation and direct-sum transfers.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::matroid::{
    direct_sum_family, find_exchange_violation, BaseFamily, ConstructError, ExchangeViolation, Matroid,
    RelaxError,
};
use crate::partition::{
    check_structure, is_good_partition_with, GoodPartitionCandidate, P2aReading, PartitionVerdict,
    StructuralError,
};
use crate::polytope::{face_certificate, verify_decomposition, DecompositionReport, FaceCertificate, FaceError};
use crate::subset::Subset;

/// Which construction produced a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Lemma2,
    Lifted,
    External,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Lemma2 => "lemma2",
            Provenance::Lifted => "lifted",
            Provenance::External => "external",
        }
    }
}

/// Pieces on the parent's ground set with the parent's rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub parent: Matroid,
    pub pieces: Vec<Matroid>,
    pub provenance: Provenance,
    /// The partition the pieces were built from, when there is one.
    pub candidate: Option<GoodPartitionCandidate>,
}

impl Decomposition {
    pub fn piece_families(&self) -> Vec<BaseFamily> {
        self.pieces.iter().map(|p| p.family().clone()).collect()
    }

    pub fn verify(&self) -> DecompositionReport {
        verify_decomposition(&self.parent, &self.piece_families())
            .expect("pieces share the parent's ground set and rank")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    AtLeast(usize),
    AtMost(usize),
    Exactly(usize),
}

impl Bound {
    pub fn admits(self, v: usize) -> bool {
        match self {
            Bound::AtLeast(b) => v >= b,
            Bound::AtMost(b) => v <= b,
            Bound::Exactly(b) => v == b,
        }
    }
}

/// `|B ∩ (E_1 ∪ ... ∪ E_prefix)|` compared against `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrefixConstraint {
    pub prefix: usize,
    pub set: Subset,
    pub bound: Bound,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrefixConditionSpec {
    pub constraints: Vec<PrefixConstraint>,
}

impl PrefixConditionSpec {
    pub fn admits(&self, b: Subset) -> bool {
        self.constraints.iter().all(|c| c.bound.admits((b & c.set).len()))
    }

    pub fn filter(&self, bases: &[Subset]) -> Vec<Subset> {
        bases.iter().copied().filter(|&b| self.admits(b)).collect()
    }
}

/// Conditions of piece `j` (1-based): at least `a_1 + .. + a_i` inside the
/// `i`-th prefix for `i < j`, at most `a_1 + .. + a_j` inside the `j`-th.
pub fn piece_conditions(c: &GoodPartitionCandidate, j: usize) -> PrefixConditionSpec {
    assert!(j >= 1 && j <= c.arity());
    let mut constraints = Vec::with_capacity(j);
    for i in 1..j {
        constraints.push(PrefixConstraint { prefix: i, set: c.prefix(i), bound: Bound::AtLeast(c.prefix_sum(i)) });
    }
    constraints.push(PrefixConstraint { prefix: j, set: c.prefix(j), bound: Bound::AtMost(c.prefix_sum(j)) });
    PrefixConditionSpec { constraints }
}

/// Description of the overlap of pieces `j < k`: prefixes `h <= k` other
/// than `j, k` bounded below, prefix `j` exact, prefix `k` bounded above.
pub fn intersection_conditions(c: &GoodPartitionCandidate, j: usize, k: usize) -> PrefixConditionSpec {
    assert!(j >= 1 && j < k && k <= c.arity());
    let mut constraints = Vec::with_capacity(k);
    for h in 1..=k {
        let s = c.prefix_sum(h);
        let bound = if h == j {
            Bound::Exactly(s)
        } else if h == k {
            Bound::AtMost(s)
        } else {
            Bound::AtLeast(s)
        };
        constraints.push(PrefixConstraint { prefix: h, set: c.prefix(h), bound });
    }
    PrefixConditionSpec { constraints }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecomposeError {
    Structural(StructuralError),
    /// 1-based piece index.
    EmptyPiece { piece: usize },
    PieceNotMatroid { piece: usize, violation: ExchangeViolation },
}

impl fmt::Display for DecomposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecomposeError::Structural(e) => write!(f, "candidate is malformed: {e}"),
            DecomposeError::EmptyPiece { piece } => write!(f, "piece {piece} has no bases"),
            DecomposeError::PieceNotMatroid { piece, violation } => {
                write!(f, "piece {piece} is not a matroid: {violation}")
            }
        }
    }
}

impl core::error::Error for DecomposeError {}

/// Base families of the pieces, unvalidated.
pub fn piece_families(m: &Matroid, c: &GoodPartitionCandidate) -> Vec<Vec<Subset>> {
    (1..=c.arity()).map(|j| piece_conditions(c, j).filter(m.bases())).collect()
}

/// The `t` prefix-defined pieces, each checked to be a nonempty matroid.
pub fn lemma2_pieces(m: &Matroid, c: &GoodPartitionCandidate) -> Result<Decomposition, DecomposeError> {
    check_structure(m, c).map_err(DecomposeError::Structural)?;
    let mut pieces = Vec::with_capacity(c.arity());
    for (i, bases) in piece_families(m, c).into_iter().enumerate() {
        if bases.is_empty() {
            return Err(DecomposeError::EmptyPiece { piece: i + 1 });
        }
        let family = BaseFamily::from_sorted(m.ground_size(), m.rank(), bases);
        let piece = Matroid::new(family)
            .map_err(|violation| DecomposeError::PieceNotMatroid { piece: i + 1, violation })?;
        pieces.push(piece);
    }
    Ok(Decomposition {
        parent: m.clone(),
        pieces,
        provenance: Provenance::Lemma2,
        candidate: Some(c.clone()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntersectionError {
    NoCandidate,
    PairOutOfRange { first: usize, second: usize, pieces: usize },
    /// The prefix description and the set intersection differ.
    Mismatch { only_description: Vec<Subset>, only_intersection: Vec<Subset> },
    NotMatroid(ExchangeViolation),
}

impl fmt::Display for IntersectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntersectionError::NoCandidate => f.write_str("decomposition has no partition attached"),
            IntersectionError::PairOutOfRange { first, second, pieces } => {
                write!(f, "need 1 <= {first} < {second} <= {pieces}")
            }
            IntersectionError::Mismatch { only_description, only_intersection } => write!(
                f,
                "description and intersection differ ({} vs {} extra bases)",
                only_description.len(),
                only_intersection.len()
            ),
            IntersectionError::NotMatroid(v) => write!(f, "intersection is not a matroid: {v}"),
        }
    }
}

impl core::error::Error for IntersectionError {}

/// Bases common to pieces `j < k` (1-based), via the prefix description,
/// checked against the set intersection and the exchange axiom. An empty
/// result is allowed.
pub fn intersection_family(d: &Decomposition, j: usize, k: usize) -> Result<Vec<Subset>, IntersectionError> {
    let c = d.candidate.as_ref().ok_or(IntersectionError::NoCandidate)?;
    let t = d.pieces.len();
    if j == 0 || j >= k || k > t || t != c.arity() {
        return Err(IntersectionError::PairOutOfRange { first: j, second: k, pieces: t });
    }
    let described = intersection_conditions(c, j, k).filter(d.parent.bases());
    let direct: Vec<Subset> = d.pieces[j - 1]
        .bases()
        .iter()
        .copied()
        .filter(|&b| d.pieces[k - 1].is_base(b))
        .collect();
    if described != direct {
        return Err(IntersectionError::Mismatch {
            only_description: described.iter().copied().filter(|b| !direct.contains(b)).collect(),
            only_intersection: direct.iter().copied().filter(|b| !described.contains(b)).collect(),
        });
    }
    if !described.is_empty() {
        let family = BaseFamily::from_sorted(d.parent.ground_size(), d.parent.rank(), described.clone());
        if let Some(v) = find_exchange_violation(&family) {
            return Err(IntersectionError::NotMatroid(v));
        }
    }
    Ok(described)
}

/// One step of the split sequence: the remainder `R_{j-1}` is cut by
/// `x(E_1 ∪ .. ∪ E_j) = a_1 + .. + a_j` into piece `j` and `R_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitStep {
    /// 1-based.
    pub step: usize,
    pub remainder_before: usize,
    pub piece: usize,
    pub remainder_after: usize,
    pub overlap: usize,
    /// Piece and new remainder together give the old remainder.
    pub union_ok: bool,
    pub remainder_violation: Option<ExchangeViolation>,
    pub overlap_violation: Option<ExchangeViolation>,
    pub face_in_piece: Result<FaceCertificate, FaceError>,
    pub face_in_remainder: Result<FaceCertificate, FaceError>,
}

impl SplitStep {
    pub fn passed(&self) -> bool {
        self.union_ok
            && self.remainder_violation.is_none()
            && self.overlap_violation.is_none()
            && self.face_in_piece.is_ok()
            && self.face_in_remainder.is_ok()
    }
}

/// Each hyperplane split in turn, as two-piece decompositions of the
/// current remainder.
pub fn split_sequence(m: &Matroid, c: &GoodPartitionCandidate, pieces: &[Vec<Subset>]) -> Vec<SplitStep> {
    let n = m.ground_size();
    let r = m.rank();
    let t = c.arity();
    let mut remainder: Vec<Subset> = m.bases().to_vec();
    let mut steps = Vec::new();
    for j in 1..t {
        let set = c.prefix(j);
        let s = c.prefix_sum(j);
        let next: Vec<Subset> = remainder.iter().copied().filter(|b| (*b & set).len() >= s).collect();
        let piece = &pieces[j - 1];
        let overlap: Vec<Subset> = piece.iter().copied().filter(|b| next.binary_search(b).is_ok()).collect();
        let mut union: Vec<Subset> = piece.iter().chain(next.iter()).copied().collect();
        union.sort_unstable();
        union.dedup();
        let union_ok = union == remainder;
        let remainder_violation = if next.is_empty() {
            None
        } else {
            find_exchange_violation(&BaseFamily::from_sorted(n, r, next.clone()))
        };
        let overlap_violation = if overlap.is_empty() {
            None
        } else {
            find_exchange_violation(&BaseFamily::from_sorted(n, r, overlap.clone()))
        };
        let (face_in_piece, face_in_remainder) = if piece.is_empty() || next.is_empty() {
            (Err(FaceError::Overflow), Err(FaceError::Overflow))
        } else {
            (
                face_certificate(&BaseFamily::from_sorted(n, r, piece.clone()), &overlap),
                face_certificate(&BaseFamily::from_sorted(n, r, next.clone()), &overlap),
            )
        };
        steps.push(SplitStep {
            step: j,
            remainder_before: remainder.len(),
            piece: piece.len(),
            remainder_after: next.len(),
            overlap: overlap.len(),
            union_ok,
            remainder_violation,
            overlap_violation,
            face_in_piece,
            face_in_remainder,
        });
        remainder = next;
    }
    steps
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    Partition,
    Construction,
    Description,
    Verification,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Partition => "partition",
            Stage::Construction => "construction",
            Stage::Description => "description",
            Stage::Verification => "verification",
        }
    }
}

/// Outcome of the prefix description check for one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescriptionCheck {
    pub first: usize,
    pub second: usize,
    pub size: usize,
    pub error: Option<IntersectionError>,
}

/// Stages run in order; a failing stage stops the later ones. The split
/// sequence is computed whenever the pieces could be built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceReport {
    pub candidate: GoodPartitionCandidate,
    pub partition: Result<PartitionVerdict, StructuralError>,
    pub decomposition: Option<Result<Decomposition, DecomposeError>>,
    pub descriptions: Vec<DescriptionCheck>,
    pub verification: Option<DecompositionReport>,
    pub splits: Vec<SplitStep>,
}

impl SequenceReport {
    /// First failing stage, if any.
    pub fn failed_stage(&self) -> Option<Stage> {
        match &self.partition {
            Ok(v) if v.passed() => {}
            _ => return Some(Stage::Partition),
        }
        match &self.decomposition {
            Some(Ok(_)) => {}
            _ => return Some(Stage::Construction),
        }
        if self.descriptions.iter().any(|d| d.error.is_some()) {
            return Some(Stage::Description);
        }
        match &self.verification {
            Some(r) if r.passed() => None,
            _ => Some(Stage::Verification),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed_stage().is_none()
    }

    pub fn pieces(&self) -> Option<&[Matroid]> {
        match &self.decomposition {
            Some(Ok(d)) => Some(&d.pieces),
            _ => None,
        }
    }

    pub fn splits_passed(&self) -> bool {
        !self.splits.is_empty() && self.splits.iter().all(SplitStep::passed)
    }
}

pub fn verify_sequence_decomposition(m: &Matroid, c: &GoodPartitionCandidate) -> SequenceReport {
    verify_sequence_decomposition_with(m, c, P2aReading::PrefixSums)
}

/// Partition check, piece construction, prefix descriptions of all pairwise
/// overlaps, then the decomposition check with face certificates.
pub fn verify_sequence_decomposition_with(
    m: &Matroid,
    c: &GoodPartitionCandidate,
    reading: P2aReading,
) -> SequenceReport {
    let mut report = SequenceReport {
        candidate: c.clone(),
        partition: is_good_partition_with(m, c, reading),
        decomposition: None,
        descriptions: Vec::new(),
        verification: None,
        splits: Vec::new(),
    };
    if report.failed_stage() == Some(Stage::Partition) {
        return report;
    }
    let built = lemma2_pieces(m, c);
    if let Ok(d) = &built {
        let families: Vec<Vec<Subset>> = d.pieces.iter().map(|p| p.bases().to_vec()).collect();
        report.splits = split_sequence(m, c, &families);
        let t = d.pieces.len();
        for j in 1..=t {
            for k in j + 1..=t {
                let (size, error) = match intersection_family(d, j, k) {
                    Ok(bases) => (bases.len(), None),
                    Err(e) => (0, Some(e)),
                };
                report.descriptions.push(DescriptionCheck { first: j, second: k, size, error });
            }
        }
    }
    let ok = built.is_ok();
    report.decomposition = Some(built);
    if !ok || report.failed_stage() == Some(Stage::Description) {
        return report;
    }
    if let Some(Ok(d)) = &report.decomposition {
        report.verification = Some(d.verify());
    }
    report
}

/// Partitions of `n` into exactly `t` parts, each at least 2.
///
/// Subtracting 1 from every part gives partitions of `n - t` into exactly
/// `t` positive parts, counted by `q(m, k) = q(m - 1, k - 1) + q(m - k, k)`.
pub fn count_partitions_pt(n: usize, t: usize) -> u128 {
    if t == 0 {
        return (n == 0) as u128;
    }
    if n < 2 * t {
        return 0;
    }
    let m = n - t;
    // q[a][b]: partitions of a into exactly b positive parts
    let mut q = vec![vec![0u128; t + 1]; m + 1];
    q[0][0] = 1;
    for a in 1..=m {
        for b in 1..=t.min(a) {
            q[a][b] = q[a - 1][b - 1] + if a >= b { q[a - b][b] } else { 0 };
        }
    }
    q[m][t]
}

/// Nondecreasing lists of `t` parts, each at least 2, summing to `n`, in
/// lexicographic order.
pub fn partitions_into_parts(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, slots: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut p = min;
        while p * slots <= remaining {
            cur.push(p);
            rec(remaining - p, slots - 1, p, cur, out);
            cur.pop();
            p += 1;
        }
    }
    let mut out = Vec::new();
    if t > 0 {
        rec(n, t, 2, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniformError {
    /// Requires `n >= r + t`, `r >= t >= 2`, parts at least 2 summing to `n`.
    Precondition { n: usize, r: usize, t: usize },
    BadParts { parts: Vec<usize> },
    /// `Σ r_i >= r + t` failed on this instance.
    Inequality { parts: Vec<usize>, sum: usize, needed: usize },
    Construct(ConstructError),
}

impl fmt::Display for UniformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniformError::Precondition { n, r, t } => {
                write!(f, "need n >= r + t and r >= t >= 2, got n={n}, r={r}, t={t}")
            }
            UniformError::BadParts { parts } => {
                write!(f, "parts {parts:?} must be at least 2 and sum to n")
            }
            UniformError::Inequality { parts, sum, needed } => {
                write!(f, "block ranks for parts {parts:?} sum to {sum} < {needed}")
            }
            UniformError::Construct(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for UniformError {}

/// Consecutive blocks with the canonical split vector for a uniform matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformInstance {
    pub parts: Vec<usize>,
    /// `min(p_i, r)`.
    pub block_ranks: Vec<usize>,
    pub candidate: GoodPartitionCandidate,
}

fn check_uniform_pre(n: usize, r: usize, t: usize) -> Result<(), UniformError> {
    if t < 2 || r < t || n < r + t || n > crate::subset::MAX_ELEMENTS {
        return Err(UniformError::Precondition { n, r, t });
    }
    Ok(())
}

/// Blocks `{1..p_1}, {p_1+1..p_1+p_2}, ...` with `a_i = r_i - a'_i`, where
/// every `a'_i` starts at 1 and the surplus `Σ r_i - r - t` is added from
/// the last block backwards, capped at `a'_i = r_i - 1`.
pub fn uniform_good_partition(n: usize, r: usize, parts: &[usize]) -> Result<UniformInstance, UniformError> {
    let t = parts.len();
    check_uniform_pre(n, r, t)?;
    if parts.iter().any(|&p| p < 2) || parts.iter().sum::<usize>() != n {
        return Err(UniformError::BadParts { parts: parts.to_vec() });
    }
    let ranks: Vec<usize> = parts.iter().map(|&p| p.min(r)).collect();
    let sum: usize = ranks.iter().sum();
    if sum < r + t {
        return Err(UniformError::Inequality { parts: parts.to_vec(), sum, needed: r + t });
    }
    let mut primes = vec![1usize; t];
    let mut surplus = sum - r - t;
    for i in (0..t).rev() {
        let add = surplus.min(ranks[i] - 1 - primes[i]);
        primes[i] += add;
        surplus -= add;
    }
    debug_assert_eq!(surplus, 0);
    let splits: Vec<usize> = ranks.iter().zip(&primes).map(|(ri, ai)| ri - ai).collect();
    let mut blocks = Vec::with_capacity(t);
    let mut start = 1;
    for &p in parts {
        blocks.push((start..start + p).collect::<Subset>());
        start += p;
    }
    Ok(UniformInstance {
        parts: parts.to_vec(),
        block_ranks: ranks,
        candidate: GoodPartitionCandidate::new(blocks, splits),
    })
}

/// Sorted piece sizes plus piece ranks; distinct values certify distinct
/// decompositions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Invariant {
    pub sizes: Vec<usize>,
    pub ranks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformDecomposition {
    pub instance: UniformInstance,
    pub report: SequenceReport,
    /// `None` when the pieces could not be built.
    pub invariant: Option<Invariant>,
}

/// One decomposition of `U_{n,r}` per partition of `n` into `t` parts of
/// size at least 2.
pub fn enumerate_uniform_decompositions(n: usize, r: usize, t: usize) -> Result<Vec<UniformDecomposition>, UniformError> {
    check_uniform_pre(n, r, t)?;
    let m = Matroid::uniform_unchecked(n, r).map_err(UniformError::Construct)?;
    let mut out = Vec::new();
    for parts in partitions_into_parts(n, t) {
        out.push(uniform_decomposition(&m, &parts)?);
    }
    Ok(out)
}

/// [`enumerate_uniform_decompositions`] for a single part list.
pub fn uniform_decomposition(m: &Matroid, parts: &[usize]) -> Result<UniformDecomposition, UniformError> {
    let instance = uniform_good_partition(m.ground_size(), m.rank(), parts)?;
    let report = verify_sequence_decomposition(m, &instance.candidate);
    let invariant = report.pieces().map(|pieces| {
        let mut sizes: Vec<usize> = pieces.iter().map(Matroid::base_count).collect();
        sizes.sort_unstable();
        Invariant { sizes, ranks: pieces.iter().map(Matroid::rank).collect() }
    });
    Ok(UniformDecomposition { instance, report, invariant })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransferError {
    Relax(RelaxError),
    Structural(StructuralError),
    /// The candidate is not good on the unrelaxed matroid.
    NotGood(PartitionVerdict),
}

impl fmt::Display for TransferError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransferError::Relax(e) => write!(f, "cannot relax: {e}"),
            TransferError::Structural(e) => write!(f, "candidate is malformed: {e}"),
            TransferError::NotGood(v) => match &v.witness {
                Some(w) => write!(f, "candidate is not good on the original matroid: {w}"),
                None => f.write_str("candidate is not good on the original matroid"),
            },
        }
    }
}

impl core::error::Error for TransferError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub relaxed: Matroid,
    pub relaxed_set: Subset,
    pub report: SequenceReport,
    /// 1-based pieces of the relaxation that contain the new base.
    pub absorbing: Vec<usize>,
}

impl TransferReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Relaxes `x`, then reruns the whole pipeline for `c` on the relaxation.
pub fn relaxation_transfer(m: &Matroid, x: Subset, c: &GoodPartitionCandidate) -> Result<TransferReport, TransferError> {
    let verdict = is_good_partition_with(m, c, P2aReading::PrefixSums).map_err(TransferError::Structural)?;
    if !verdict.passed() {
        return Err(TransferError::NotGood(verdict));
    }
    let relaxed = m.relax(x).map_err(TransferError::Relax)?;
    let report = verify_sequence_decomposition(&relaxed, c);
    let absorbing = report
        .pieces()
        .map(|pieces| {
            pieces
                .iter()
                .enumerate()
                .filter(|(_, p)| p.is_base(x))
                .map(|(i, _)| i + 1)
                .collect()
        })
        .unwrap_or_default();
    Ok(TransferReport { relaxed, relaxed_set: x, report, absorbing })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftError {
    Construct(ConstructError),
}

impl fmt::Display for LiftError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftError::Construct(e) => write!(f, "cannot form the direct sum: {e}"),
        }
    }
}

impl core::error::Error for LiftError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub lifted: Decomposition,
    /// `(piece, expected, actual)` base counts that differ; 1-based.
    pub size_mismatches: Vec<(usize, usize, usize)>,
    /// Pairs whose overlap is not the lifted overlap.
    pub overlap_mismatches: Vec<(usize, usize)>,
    pub verification: DecompositionReport,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.size_mismatches.is_empty() && self.overlap_mismatches.is_empty() && self.verification.passed()
    }
}

/// Pieces `N_i ⊕ m2` on `m1 ⊕ m2`, with the product checks and a full
/// verification of the result.
pub fn direct_sum_lift(d: &Decomposition, m2: &Matroid) -> Result<LiftReport, LiftError> {
    let parent = d.parent.direct_sum(m2).map_err(LiftError::Construct)?;
    let mut pieces = Vec::with_capacity(d.pieces.len());
    let mut size_mismatches = Vec::new();
    for (i, p) in d.pieces.iter().enumerate() {
        let family = direct_sum_family(p.family(), m2.family()).map_err(LiftError::Construct)?;
        let expected = p.base_count() * m2.base_count();
        if family.len() != expected {
            size_mismatches.push((i + 1, expected, family.len()));
        }
        pieces.push(Matroid::new_unchecked(family));
    }
    let mut overlap_mismatches = Vec::new();
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            let lifted: Vec<Subset> = pieces[i].bases().iter().copied().filter(|&b| pieces[j].is_base(b)).collect();
            let base: Vec<Subset> = d.pieces[i].bases().iter().copied().filter(|&b| d.pieces[j].is_base(b)).collect();
            let predicted = if base.is_empty() {
                Vec::new()
            } else {
                let family = BaseFamily::from_sorted(d.parent.ground_size(), d.parent.rank(), base);
                direct_sum_family(&family, m2.family()).map_err(LiftError::Construct)?.into_bases()
            };
            if lifted != predicted {
                overlap_mismatches.push((i + 1, j + 1));
            }
        }
    }
    let lifted = Decomposition { parent, pieces, provenance: Provenance::Lifted, candidate: None };
    let verification = lifted.verify();
    Ok(LiftReport { lifted, size_mismatches, overlap_mismatches, verification })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::subset::subsets_of_size;

    fn u42_split() -> GoodPartitionCandidate {
        GoodPartitionCandidate::from_lists(&[&[1, 2], &[3, 4]], &[1, 1])
    }

    #[test]
    fn two_block_pieces_of_u42() {
        let m = Matroid::uniform(4, 2).unwrap();
        let d = lemma2_pieces(&m, &u42_split()).unwrap();
        assert_eq!(d.pieces.len(), 2);
        assert_eq!(d.pieces[0].base_count(), 5);
        assert_eq!(d.pieces[1].base_count(), 5);
        assert!(!d.pieces[0].is_base(Subset::of(&[1, 2])));
        assert!(!d.pieces[1].is_base(Subset::of(&[3, 4])));
        let overlap = intersection_family(&d, 1, 2).unwrap();
        let expected: Vec<Subset> = [[1, 3], [2, 3], [1, 4], [2, 4]].iter().map(|s| Subset::of(s)).collect::<Vec<_>>();
        let mut expected = expected;
        expected.sort();
        assert_eq!(overlap, expected);
        let report = verify_sequence_decomposition(&m, &u42_split());
        assert!(report.passed(), "{:?}", report.failed_stage());
        assert!(report.splits_passed());
    }

    #[test]
    fn uniform_pairs_pieces_match_filter_oracle() {
        let m = Matroid::uniform(8, 4).unwrap();
        let c = fixtures::uniform_pairs_candidate();
        let d = lemma2_pieces(&m, &c).unwrap();
        let sizes: Vec<usize> = d.pieces.iter().map(Matroid::base_count).collect();
        assert_eq!(sizes, [55, 38, 33, 42]);
        // every base lies in some piece
        for &b in m.bases() {
            assert!(d.pieces.iter().any(|p| p.is_base(b)));
        }
        for j in 1..=4 {
            for k in j + 1..=4 {
                intersection_family(&d, j, k).unwrap();
            }
        }
    }

    #[test]
    fn three_block_split_sequence_is_valid() {
        let m = Matroid::uniform(6, 3).unwrap();
        let c = GoodPartitionCandidate::from_lists(&[&[1, 2], &[3, 4], &[5, 6]], &[1, 1, 1]);
        let report = verify_sequence_decomposition(&m, &c);
        assert_eq!(report.splits.len(), 2);
        assert!(report.splits_passed());
        // the overlap of consecutive pieces is a face of the later piece
        let verification = report.verification.as_ref().unwrap();
        for pair in &verification.pairs {
            assert!(pair.matroid_ok());
            assert!(pair.face_second.is_ok());
        }
    }

    #[test]
    fn partition_counts() {
        assert_eq!(count_partitions_pt(8, 4), 1);
        assert_eq!(count_partitions_pt(6, 2), 2);
        assert_eq!(count_partitions_pt(5, 3), 0);
        assert_eq!(count_partitions_pt(9, 2), 3);
        assert_eq!(count_partitions_pt(0, 0), 1);
        for n in 0..20 {
            for t in 1..6 {
                assert_eq!(count_partitions_pt(n, t), partitions_into_parts(n, t).len() as u128);
            }
        }
    }

    #[test]
    fn uniform_instances() {
        let inst = uniform_good_partition(8, 4, &[2, 2, 2, 2]).unwrap();
        assert_eq!(inst.candidate, fixtures::uniform_pairs_candidate());
        let inst = uniform_good_partition(7, 3, &[3, 4]).unwrap();
        assert_eq!(inst.block_ranks, [3, 3]);
        assert_eq!(inst.candidate.splits(), [2, 1]);
        let inst = uniform_good_partition(5, 2, &[2, 3]).unwrap();
        assert_eq!(inst.candidate.splits(), [1, 1]);
        assert_eq!(
            uniform_good_partition(6, 2, &[2, 2, 2]).unwrap_err(),
            UniformError::Precondition { n: 6, r: 2, t: 3 }
        );
        assert!(matches!(uniform_good_partition(7, 3, &[1, 6]), Err(UniformError::BadParts { .. })));
    }

    #[test]
    fn uniform_enumeration_two_blocks() {
        let all = enumerate_uniform_decompositions(9, 4, 2).unwrap();
        assert_eq!(all.len(), 3);
        for d in &all {
            assert!(d.report.passed(), "{:?}", d.report.failed_stage());
        }
        let mut invariants: Vec<_> = all.iter().map(|d| d.invariant.clone().unwrap()).collect();
        invariants.sort();
        invariants.dedup();
        assert_eq!(invariants.len(), 3);
        assert!(enumerate_uniform_decompositions(6, 2, 3).is_err());
    }

    #[test]
    fn relaxation_transfer_on_figure1() {
        let m = fixtures::figure1_matroid();
        let c = GoodPartitionCandidate::from_lists(&[&[1, 2], &[3, 4, 5, 6]], &[1, 2]);
        let hyperplanes = m.circuit_hyperplanes();
        assert!(!hyperplanes.is_empty());
        for x in hyperplanes {
            let t = relaxation_transfer(&m, x, &c).unwrap();
            assert!(t.passed(), "{x}: {:?}", t.report.failed_stage());
            assert!(!t.absorbing.is_empty());
        }
        assert!(matches!(
            relaxation_transfer(&m, Subset::of(&[1, 2]), &c),
            Err(TransferError::Relax(_))
        ));
    }

    #[test]
    fn lift_of_u42_split() {
        let m = Matroid::uniform(4, 2).unwrap();
        let d = lemma2_pieces(&m, &u42_split()).unwrap();
        let lift = direct_sum_lift(&d, &Matroid::uniform(2, 1).unwrap()).unwrap();
        assert!(lift.passed());
        assert_eq!(lift.lifted.parent.base_count(), 12);
        let sizes: Vec<usize> = lift.lifted.pieces.iter().map(Matroid::base_count).collect();
        assert_eq!(sizes, [10, 10]);
    }

    #[test]
    fn conditions_reproduce_pieces() {
        let m = Matroid::uniform(7, 3).unwrap();
        let c = uniform_good_partition(7, 3, &[3, 4]).unwrap().candidate;
        let d = lemma2_pieces(&m, &c).unwrap();
        for (j, p) in d.pieces.iter().enumerate() {
            assert_eq!(piece_conditions(&c, j + 1).filter(m.bases()), p.bases());
        }
        let all: Vec<Subset> = subsets_of_size(m.ground(), 3).collect();
        assert_eq!(all, m.bases());
    }
}

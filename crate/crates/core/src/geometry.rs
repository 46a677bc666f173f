//! Rank-3 matroids drawn as points and lines, and the two geometric
//! sufficient conditions for good 2- and 3-partitions.
//!
//! Lines are abstract point sets; nothing here looks at coordinates.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::matroid::{BaseFamily, Matroid};
use crate::partition::{is_good_partition, GoodPartitionCandidate, PartitionVerdict, StructuralError};
use crate::subset::{subsets_of_size, Subset, MAX_ELEMENTS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigError {
    GroundSize { n: usize },
    /// Lines need at least three points. Index is 1-based.
    ShortLine { line: usize },
    LineOutOfRange { line: usize },
    /// Two lines share two or more points.
    SharedPoints { first: usize, second: usize, common: Subset },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::GroundSize { n } => {
                write!(f, "point count {n} outside 1..={MAX_ELEMENTS}")
            }
            ConfigError::ShortLine { line } => write!(f, "line {line} has fewer than 3 points"),
            ConfigError::LineOutOfRange { line } => {
                write!(f, "line {line} names a point outside the configuration")
            }
            ConfigError::SharedPoints { first, second, common } => {
                write!(f, "lines {first} and {second} share {common}")
            }
        }
    }
}

impl core::error::Error for ConfigError {}

/// Points `1..n` and lines (point sets of size at least 3, pairwise meeting
/// in at most one point).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointLineConfig {
    n: usize,
    lines: Vec<Subset>,
}

impl PointLineConfig {
    pub fn new(n: usize, lines: Vec<Subset>) -> Result<Self, ConfigError> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(ConfigError::GroundSize { n });
        }
        let ground = Subset::full(n);
        for (i, &l) in lines.iter().enumerate() {
            if !l.is_subset(ground) {
                return Err(ConfigError::LineOutOfRange { line: i + 1 });
            }
            if l.len() < 3 {
                return Err(ConfigError::ShortLine { line: i + 1 });
            }
        }
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let common = lines[i] & lines[j];
                if common.len() > 1 {
                    return Err(ConfigError::SharedPoints { first: i + 1, second: j + 1, common });
                }
            }
        }
        Ok(PointLineConfig { n, lines })
    }

    pub fn from_lists(n: usize, lines: &[&[usize]]) -> Result<Self, ConfigError> {
        let mut sets = Vec::with_capacity(lines.len());
        for (i, l) in lines.iter().enumerate() {
            let s = Subset::try_from_elements(l.iter().copied())
                .map_err(|_| ConfigError::LineOutOfRange { line: i + 1 })?;
            sets.push(s);
        }
        PointLineConfig::new(n, sets)
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn lines(&self) -> &[Subset] {
        &self.lines
    }

    fn on_some_line(&self, s: Subset) -> bool {
        self.lines.iter().any(|&l| s.is_subset(l))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometryError {
    /// Every triple is collinear, or there are fewer than three points.
    RankBelowThree,
    NotAPartition(StructuralError),
    /// The geometric conditions held but the combinatorial check rejected the
    /// emitted candidate.
    ConclusionFailed { candidate: GoodPartitionCandidate, verdict: PartitionVerdict },
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::RankBelowThree => f.write_str("configuration has rank below 3"),
            GeometryError::NotAPartition(e) => write!(f, "blocks do not partition the points: {e}"),
            GeometryError::ConclusionFailed { candidate, verdict } => {
                write!(f, "geometric conditions hold but {candidate} is not good")?;
                if let Some(w) = &verdict.witness {
                    write!(f, " ({w})")?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for GeometryError {}

/// Rank-3 matroid whose bases are the non-collinear triples.
pub fn matroid_from_config(cfg: &PointLineConfig) -> Result<Matroid, GeometryError> {
    let bases: Vec<Subset> = subsets_of_size(Subset::full(cfg.n), 3)
        .filter(|&s| !cfg.on_some_line(s))
        .collect();
    if bases.is_empty() {
        return Err(GeometryError::RankBelowThree);
    }
    let family = BaseFamily::from_sorted(cfg.n, 3, bases);
    // A nonempty family of non-collinear triples from a linear space is
    // always a matroid; validate anyway since inputs are arbitrary.
    Matroid::new(family).map_err(|_| GeometryError::RankBelowThree)
}

/// Which geometric condition failed. Block and line indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometricFailure {
    Rank { block: usize, rank: usize, required: usize },
    /// `line` meets `block` and has more than one point in `crossing`.
    Line { line: usize, block: usize, crossing: Subset },
}

impl fmt::Display for GeometricFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometricFailure::Rank { block, rank, required } => {
                write!(f, "block {block} has rank {rank}, need {required}")
            }
            GeometricFailure::Line { line, block, crossing } => write!(
                f,
                "line {line} meets block {block} and has points {crossing} on the other side"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometricOutcome {
    Pass { candidate: GoodPartitionCandidate, verdict: PartitionVerdict },
    Fail(GeometricFailure),
}

impl GeometricOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, GeometricOutcome::Pass { .. })
    }
}

fn partition_check(n: usize, blocks: &[Subset]) -> Result<(), StructuralError> {
    let ground = Subset::full(n);
    let mut seen = Subset::EMPTY;
    for (i, &b) in blocks.iter().enumerate() {
        if b.is_empty() {
            return Err(StructuralError::EmptyBlock { block: i + 1 });
        }
        if !b.is_subset(ground) {
            return Err(StructuralError::OutsideGround { block: i + 1, n });
        }
        if let Some(j) = blocks[..i].iter().position(|&p| !(p & b).is_empty()) {
            return Err(StructuralError::Overlap { first: j + 1, second: i + 1, common: blocks[j] & b });
        }
        seen |= b;
    }
    if seen != ground {
        return Err(StructuralError::Uncovered { missing: ground - seen });
    }
    Ok(())
}

/// Lines meeting `block` with two or more points in `other`.
fn crossing_line(cfg: &PointLineConfig, block_index: usize, block: Subset, other: Subset) -> Option<GeometricFailure> {
    cfg.lines.iter().enumerate().find_map(|(i, &l)| {
        let crossing = l & other;
        (l.len() >= 3 && !(l & block).is_empty() && crossing.len() > 1).then_some(
            GeometricFailure::Line { line: i + 1, block: block_index, crossing },
        )
    })
}

fn confirm(m: &Matroid, candidate: GoodPartitionCandidate) -> Result<GeometricOutcome, GeometryError> {
    let verdict = is_good_partition(m, &candidate).map_err(GeometryError::NotAPartition)?;
    if verdict.passed() {
        Ok(GeometricOutcome::Pass { candidate, verdict })
    } else {
        Err(GeometryError::ConclusionFailed { candidate, verdict })
    }
}

/// Two-block condition: `r(E_1) >= 2`, `r(E_2) = 3`, and every line meeting
/// `E_1` has at most one point in `E_2`. On success the candidate with
/// `a = (1, 2)` is confirmed combinatorially.
pub fn check_corollary3(
    cfg: &PointLineConfig,
    e1: Subset,
    e2: Subset,
) -> Result<GeometricOutcome, GeometryError> {
    partition_check(cfg.n, &[e1, e2]).map_err(GeometryError::NotAPartition)?;
    let m = matroid_from_config(cfg)?;
    check_corollary3_on(cfg, &m, e1, e2)
}

fn check_corollary3_on(
    cfg: &PointLineConfig,
    m: &Matroid,
    e1: Subset,
    e2: Subset,
) -> Result<GeometricOutcome, GeometryError> {
    for (i, (b, required)) in [(e1, 2), (e2, 3)].into_iter().enumerate() {
        let rank = m.rank_of(b);
        if rank < required {
            return Ok(GeometricOutcome::Fail(GeometricFailure::Rank { block: i + 1, rank, required }));
        }
    }
    if let Some(f) = crossing_line(cfg, 1, e1, e2) {
        return Ok(GeometricOutcome::Fail(f));
    }
    confirm(m, GoodPartitionCandidate::new(vec![e1, e2], vec![1, 2]))
}

/// Three-block condition: every block has rank at least 2, every line
/// meeting `E_1` has at most one point in `E_2 ∪ E_3`, and every line
/// meeting `E_3` has at most one point in `E_1 ∪ E_2`. On success the
/// candidate with `a = (1, 1, 1)` is confirmed combinatorially.
pub fn check_corollary4(
    cfg: &PointLineConfig,
    e1: Subset,
    e2: Subset,
    e3: Subset,
) -> Result<GeometricOutcome, GeometryError> {
    partition_check(cfg.n, &[e1, e2, e3]).map_err(GeometryError::NotAPartition)?;
    let m = matroid_from_config(cfg)?;
    check_corollary4_on(cfg, &m, e1, e2, e3)
}

fn check_corollary4_on(
    cfg: &PointLineConfig,
    m: &Matroid,
    e1: Subset,
    e2: Subset,
    e3: Subset,
) -> Result<GeometricOutcome, GeometryError> {
    for (i, b) in [e1, e2, e3].into_iter().enumerate() {
        let rank = m.rank_of(b);
        if rank < 2 {
            return Ok(GeometricOutcome::Fail(GeometricFailure::Rank { block: i + 1, rank, required: 2 }));
        }
    }
    if let Some(f) = crossing_line(cfg, 1, e1, e2 | e3) {
        return Ok(GeometricOutcome::Fail(f));
    }
    if let Some(f) = crossing_line(cfg, 3, e3, e1 | e2) {
        return Ok(GeometricOutcome::Fail(f));
    }
    confirm(m, GoodPartitionCandidate::new(vec![e1, e2, e3], vec![1, 1, 1]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeometricArity {
    Two,
    Three,
}

impl GeometricArity {
    pub fn blocks(self) -> usize {
        match self {
            GeometricArity::Two => 2,
            GeometricArity::Three => 3,
        }
    }
}

/// Every ordered block assignment passing the condition for `arity`.
///
/// Assignments are scanned as base-`t` words with point 1 most significant,
/// so the output order is deterministic. Configurations of rank below 3
/// yield no candidates.
pub fn search_geometric_partitions(
    cfg: &PointLineConfig,
    arity: GeometricArity,
) -> Result<Vec<GoodPartitionCandidate>, GeometryError> {
    let m = match matroid_from_config(cfg) {
        Ok(m) => m,
        Err(GeometryError::RankBelowThree) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let t = arity.blocks();
    let n = cfg.n;
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let mut blocks = vec![Subset::EMPTY; t];
        for (i, &d) in digits.iter().enumerate() {
            blocks[d] = blocks[d].with(i + 1);
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            let outcome = match arity {
                GeometricArity::Two => check_corollary3_on(cfg, &m, blocks[0], blocks[1])?,
                GeometricArity::Three => {
                    check_corollary4_on(cfg, &m, blocks[0], blocks[1], blocks[2])?
                }
            };
            if let GeometricOutcome::Pass { candidate, .. } = outcome {
                out.push(candidate);
            }
        }
        // increment, last point least significant
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < t {
                break;
            }
            digits[i] = 0;
        }
    }
}

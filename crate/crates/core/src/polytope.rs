//! Base polytopes as vertex sets: affine dimension, face certificates, and
//! the validity check for a proposed decomposition.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::linalg::{self, Exact, Overflow, Phase1};
use crate::matroid::{find_exchange_violation, BaseFamily, ExchangeViolation, Matroid};
use crate::subset::Subset;

/// 0/1 vectors in dimension `n`, stored as subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    n: usize,
    vectors: Vec<Subset>,
}

impl VertexSet {
    /// Sorts and deduplicates; entries outside `1..n` are dropped.
    pub fn new(n: usize, mut vectors: Vec<Subset>) -> Self {
        let ground = Subset::full(n);
        vectors.retain(|v| v.is_subset(ground));
        vectors.sort_unstable();
        vectors.dedup();
        VertexSet { n, vectors }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn vectors(&self) -> &[Subset] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Incidence vectors as integer rows.
    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.vectors.iter().map(|v| incidence(*v, self.n)).collect()
    }
}

fn incidence(s: Subset, n: usize) -> Vec<i64> {
    (1..=n).map(|e| s.contains(e) as i64).collect()
}

/// Incidence vectors of the bases.
pub fn vertices(m: &Matroid) -> VertexSet {
    VertexSet { n: m.ground_size(), vectors: m.bases().to_vec() }
}

fn with_fallback<R>(
    small: impl FnOnce() -> Result<R, Overflow>,
    big: impl FnOnce() -> Result<R, Overflow>,
) -> Result<R, Overflow> {
    small().or_else(|_| big())
}

/// Dimension of the affine hull; `None` for the empty set.
pub fn affine_dimension(v: &VertexSet) -> Option<usize> {
    if v.is_empty() {
        return None;
    }
    let rows: Vec<Vec<i64>> = v
        .vectors
        .iter()
        .map(|&x| {
            let mut r = incidence(x, v.n);
            r.push(1);
            r
        })
        .collect();
    let dim = v.n + 1;
    let rank = with_fallback(
        || linalg::rank::<i128>(&rows, dim),
        || linalg::rank::<BigInt>(&rows, dim),
    )
    .expect("big integers do not overflow");
    Some(rank - 1)
}

/// `w·x = c` on the certified subset and `w·x <= c - 1` on every other
/// vertex of the piece. Improper faces (empty or whole) carry `w = 0, c = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceCertificate {
    pub w: Vec<i64>,
    pub c: i64,
    pub improper: bool,
}

impl FaceCertificate {
    fn improper(n: usize) -> Self {
        FaceCertificate { w: vec![0; n], c: 0, improper: true }
    }

    /// `w·x` for a 0/1 vector.
    pub fn value(&self, x: Subset) -> i64 {
        x.iter().map(|e| self.w.get(e - 1).copied().unwrap_or(0)).sum()
    }

    /// Exact integer replay against `piece`. The subset is taken to be the
    /// vertices in `subset`; anything in `subset` but not in `piece` fails.
    pub fn replay(&self, piece: &[Subset], subset: &[Subset]) -> bool {
        if subset.iter().any(|s| !piece.contains(s)) {
            return false;
        }
        if self.improper {
            let zero = self.w.iter().all(|&x| x == 0) && self.c == 0;
            let trivial = subset.is_empty() || piece.iter().all(|p| subset.contains(p));
            return zero && trivial;
        }
        piece.iter().all(|&x| {
            let v = self.value(x);
            if subset.contains(&x) {
                v == self.c
            } else {
                v < self.c
            }
        })
    }
}

/// Outside vertices whose weighted average lies in the affine hull of the
/// subset, which rules out any supporting hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotAFace {
    /// Positive integer weights; the average is `Σ w·x / total`.
    pub outside: Vec<(Subset, i64)>,
    pub total: i64,
}

impl NotAFace {
    pub fn replay(&self, n: usize, piece: &[Subset], subset: &[Subset]) -> bool {
        if self.outside.is_empty() || self.total <= 0 {
            return false;
        }
        let mut sum = 0i64;
        let mut point = vec![0i64; n + 1];
        for &(x, weight) in &self.outside {
            if weight <= 0 || !piece.contains(&x) || subset.contains(&x) {
                return false;
            }
            sum += weight;
            for e in x {
                if e > n {
                    return false;
                }
                point[e - 1] += weight;
            }
        }
        if sum != self.total || subset.is_empty() {
            return false;
        }
        point[n] = self.total;
        let mut rows: Vec<Vec<i64>> = subset
            .iter()
            .map(|&s| {
                let mut r = incidence(s, n);
                r.push(1);
                r
            })
            .collect();
        let rank_before = exact_rank(&rows, n + 1);
        rows.push(point);
        exact_rank(&rows, n + 1) == rank_before
    }
}

fn exact_rank(rows: &[Vec<i64>], dim: usize) -> usize {
    with_fallback(
        || linalg::rank::<i128>(rows, dim),
        || linalg::rank::<BigInt>(rows, dim),
    )
    .expect("big integers do not overflow")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceError {
    NotAFace(NotAFace),
    /// A vertex of the proposed face is not a vertex of the piece.
    NotContained { base: Subset },
    /// The certificate exists but does not fit in `i64`.
    Overflow,
}

impl fmt::Display for FaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceError::NotAFace(w) => {
                write!(f, "not a face: average of")?;
                for (x, weight) in &w.outside {
                    write!(f, " {weight}×{x}")?;
                }
                write!(f, " (over {}) lies in its affine hull", w.total)
            }
            FaceError::NotContained { base } => write!(f, "{base} is not a base of the piece"),
            FaceError::Overflow => f.write_str("certificate entries exceed 64 bits"),
        }
    }
}

impl core::error::Error for FaceError {}

/// Certificate that `subset` is the vertex set of a face of `conv(piece)`,
/// or a witness that it is not.
pub fn face_certificate(piece: &BaseFamily, subset: &[Subset]) -> Result<FaceCertificate, FaceError> {
    let mut inside = subset.to_vec();
    inside.sort_unstable();
    inside.dedup();
    if let Some(&base) = inside.iter().find(|&&s| !piece.contains(s)) {
        return Err(FaceError::NotContained { base });
    }
    let n = piece.ground_size();
    if inside.is_empty() || inside.len() == piece.len() {
        return Ok(FaceCertificate::improper(n));
    }
    let outside: Vec<Subset> = piece
        .bases()
        .iter()
        .copied()
        .filter(|b| inside.binary_search(b).is_err())
        .collect();
    let r = piece.rank() as i64;
    let solved = with_fallback(
        || separate::<i128>(n, r, &inside, &outside),
        || separate::<BigInt>(n, r, &inside, &outside),
    )
    .map_err(|_| FaceError::Overflow)?;
    let result = solved?;
    debug_assert!(result.replay(piece.bases(), &inside));
    Ok(result)
}

/// Parameterises `(w, c)` over the nullspace of the rows `(x, -1)`, `x` in
/// `inside`, then asks for `q(x)·y < 0` on every outside vertex. The
/// alternative system `Σ λ_x q(x) = 0, Σ λ_x = 1, λ >= 0` is solved by
/// phase-1 simplex; its dual gives `y` when it is infeasible.
fn separate<T: Exact>(
    n: usize,
    r: i64,
    inside: &[Subset],
    outside: &[Subset],
) -> Result<Result<FaceCertificate, FaceError>, Overflow> {
    let rows: Vec<Vec<i64>> = inside
        .iter()
        .map(|&s| {
            let mut row = incidence(s, n);
            row.push(-1);
            row
        })
        .collect();
    let (kernel, _) = linalg::nullspace::<T>(&rows, n + 1)?;
    let d = kernel.len();

    // q rows, deduplicated; the first vertex with each q represents it
    let mut reps: Vec<(Vec<T>, Subset)> = Vec::new();
    for &x in outside {
        let mut xr = incidence(x, n);
        xr.push(-1);
        let q: Vec<T> = kernel.iter().map(|k| linalg::dot(k, &xr)).collect::<Result<_, _>>()?;
        if !reps.iter().any(|(p, _)| *p == q) {
            reps.push((q, x));
        }
    }
    let cols = reps.len();
    let mut m: Vec<Vec<T>> = (0..d)
        .map(|k| reps.iter().map(|(q, _)| q[k].clone()).collect())
        .collect();
    m.push(vec![T::from_i64(1); cols]);
    let mut b = vec![T::zero(); d];
    b.push(T::from_i64(1));

    match linalg::phase1(&m, &b)? {
        Phase1::Feasible { numerators, denominator } => {
            let mut weights = Vec::new();
            for (j, num) in numerators.iter().enumerate() {
                if num.is_positive() {
                    let Some(w) = num.to_i64() else {
                        return Ok(Err(FaceError::Overflow));
                    };
                    weights.push((reps[j].1, w));
                }
            }
            let Some(total) = denominator.to_i64() else {
                return Ok(Err(FaceError::Overflow));
            };
            Ok(Err(FaceError::NotAFace(NotAFace { outside: weights, total })))
        }
        Phase1::Infeasible { dual } => {
            let mut wc = vec![T::zero(); n + 1];
            for (k, y) in dual.iter().take(d).enumerate() {
                if y.is_zero() {
                    continue;
                }
                for (acc, v) in wc.iter_mut().zip(&kernel[k]) {
                    *acc = acc.add(&v.mul(y)?)?;
                }
            }
            normalize(&mut wc, r)?;
            let mut w = Vec::with_capacity(n);
            for v in &wc[..n] {
                match v.to_i64() {
                    Some(x) => w.push(x),
                    None => return Ok(Err(FaceError::Overflow)),
                }
            }
            let Some(c) = wc[n].to_i64() else {
                return Ok(Err(FaceError::Overflow));
            };
            Ok(Ok(FaceCertificate { w, c, improper: false }))
        }
    }
}

/// Every base has `r` elements, so adding `λ` to all of `w` and `λr` to `c`
/// changes nothing. Shift so that `min w = 0`, then divide by the gcd.
fn normalize<T: Exact>(wc: &mut [T], r: i64) -> Result<(), Overflow> {
    let n = wc.len() - 1;
    let min = wc[..n].iter().min().cloned().unwrap_or_else(T::zero);
    if !min.is_zero() {
        let shift = min.mul(&T::from_i64(r))?;
        for v in &mut wc[..n] {
            *v = v.sub(&min)?;
        }
        wc[n] = wc[n].sub(&shift)?;
    }
    linalg::reduce(wc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    /// Piece `piece` (1-based) has a different ground set size or rank.
    PieceShape { piece: usize, n: usize, rank: usize },
    NoPieces,
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::PieceShape { piece, n, rank } => {
                write!(f, "piece {piece} lives on {n} elements with rank {rank}, unlike the parent")
            }
            VerifyError::NoPieces => f.write_str("no pieces given"),
        }
    }
}

impl core::error::Error for VerifyError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCheck {
    /// Parent bases in no piece.
    pub missing: Vec<Subset>,
    /// `(piece, base)` with `base` not a base of the parent; piece is 1-based.
    pub foreign: Vec<(usize, Subset)>,
}

impl CoverCheck {
    pub fn ok(&self) -> bool {
        self.missing.is_empty() && self.foreign.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceCheck {
    pub size: usize,
    pub violation: Option<ExchangeViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    /// 1-based piece indices, `first < second`.
    pub first: usize,
    pub second: usize,
    pub intersection: Vec<Subset>,
    pub violation: Option<ExchangeViolation>,
    pub face_first: Result<FaceCertificate, FaceError>,
    pub face_second: Result<FaceCertificate, FaceError>,
}

impl PairCheck {
    pub fn matroid_ok(&self) -> bool {
        self.violation.is_none()
    }

    pub fn face_ok(&self) -> bool {
        self.face_first.is_ok() && self.face_second.is_ok()
    }
}

/// Stage of the first failure, in check order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Cover { missing: Option<Subset>, foreign: Option<(usize, Subset)> },
    Piece { piece: usize, violation: ExchangeViolation },
    IntersectionMatroid { first: usize, second: usize, violation: ExchangeViolation },
    /// `relative_to` is the piece the intersection failed to be a face of.
    IntersectionFace { first: usize, second: usize, relative_to: usize, error: FaceError },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Cover { missing: Some(b), .. } => write!(f, "cover: base {b} is in no piece"),
            Failure::Cover { foreign: Some((p, b)), .. } => {
                write!(f, "cover: piece {p} has {b}, which is not a base of the parent")
            }
            Failure::Cover { .. } => f.write_str("cover"),
            Failure::Piece { piece, violation } => write!(f, "piece {piece}: {violation}"),
            Failure::IntersectionMatroid { first, second, violation } => {
                write!(f, "intersection {first}∩{second}: {violation}")
            }
            Failure::IntersectionFace { first, second, relative_to, error } => {
                write!(f, "intersection {first}∩{second} relative to piece {relative_to}: {error}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub cover: CoverCheck,
    pub pieces: Vec<PieceCheck>,
    pub pairs: Vec<PairCheck>,
}

impl DecompositionReport {
    pub fn cover_ok(&self) -> bool {
        self.cover.ok()
    }

    pub fn pieces_ok(&self) -> bool {
        self.pieces.iter().all(|p| p.violation.is_none())
    }

    pub fn intersections_matroid_ok(&self) -> bool {
        self.pairs.iter().all(PairCheck::matroid_ok)
    }

    pub fn intersections_face_ok(&self) -> bool {
        self.pairs.iter().all(PairCheck::face_ok)
    }

    pub fn passed(&self) -> bool {
        self.cover_ok() && self.pieces_ok() && self.intersections_matroid_ok() && self.intersections_face_ok()
    }

    pub fn first_failure(&self) -> Option<Failure> {
        if !self.cover_ok() {
            return Some(Failure::Cover {
                missing: self.cover.missing.first().copied(),
                foreign: self.cover.foreign.first().copied(),
            });
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if let Some(v) = p.violation {
                return Some(Failure::Piece { piece: i + 1, violation: v });
            }
        }
        for p in &self.pairs {
            if let Some(v) = p.violation {
                return Some(Failure::IntersectionMatroid { first: p.first, second: p.second, violation: v });
            }
        }
        for p in &self.pairs {
            for (relative_to, face) in [(p.first, &p.face_first), (p.second, &p.face_second)] {
                if let Err(error) = face {
                    return Some(Failure::IntersectionFace {
                        first: p.first,
                        second: p.second,
                        relative_to,
                        error: error.clone(),
                    });
                }
            }
        }
        None
    }
}

/// Cover, piece validity, pairwise intersections as matroids, and pairwise
/// intersections as faces of both pieces. All checks always run.
pub fn verify_decomposition(parent: &Matroid, pieces: &[BaseFamily]) -> Result<DecompositionReport, VerifyError> {
    if pieces.is_empty() {
        return Err(VerifyError::NoPieces);
    }
    for (i, p) in pieces.iter().enumerate() {
        if p.ground_size() != parent.ground_size() || p.rank() != parent.rank() {
            return Err(VerifyError::PieceShape { piece: i + 1, n: p.ground_size(), rank: p.rank() });
        }
    }
    let mut missing = Vec::new();
    for &b in parent.bases() {
        if !pieces.iter().any(|p| p.contains(b)) {
            missing.push(b);
        }
    }
    let mut foreign = Vec::new();
    for (i, p) in pieces.iter().enumerate() {
        for &b in p.bases() {
            if !parent.is_base(b) {
                foreign.push((i + 1, b));
            }
        }
    }
    let piece_checks = pieces
        .iter()
        .map(|p| PieceCheck { size: p.len(), violation: find_exchange_violation(p) })
        .collect();
    let mut pairs = Vec::new();
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            pairs.push(check_pair(&pieces[i], &pieces[j], i + 1, j + 1));
        }
    }
    Ok(DecompositionReport { cover: CoverCheck { missing, foreign }, pieces: piece_checks, pairs })
}

fn check_pair(a: &BaseFamily, b: &BaseFamily, first: usize, second: usize) -> PairCheck {
    let intersection: Vec<Subset> = a.bases().iter().copied().filter(|&x| b.contains(x)).collect();
    let violation = if intersection.is_empty() {
        None
    } else {
        let family = BaseFamily::from_sorted(a.ground_size(), a.rank(), intersection.clone());
        find_exchange_violation(&family)
    };
    PairCheck {
        first,
        second,
        face_first: face_certificate(a, &intersection),
        face_second: face_certificate(b, &intersection),
        intersection,
        violation,
    }
}

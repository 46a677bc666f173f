//! JSON documents read and written by the command-line tool.
//!
//! Elements are 1-based everywhere, sets are sorted ascending and lists of
//! sets are in canonical (bitset) order. Field order is fixed by the structs.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use splitlab_core::decompose::{Decomposition, DescriptionCheck, SequenceReport, SplitStep};
use splitlab_core::geometry::PointLineConfig;
use splitlab_core::matroid::{BaseFamily, ExchangeViolation, Matroid};
use splitlab_core::partition::{GoodPartitionCandidate, PartitionVerdict, PartitionWitness};
use splitlab_core::polytope::{DecompositionReport, FaceCertificate, FaceError, PairCheck};
use splitlab_core::Subset;

use crate::error::CliError;

pub fn set(s: Subset) -> Vec<usize> {
    s.iter().collect()
}

pub fn sets(list: &[Subset]) -> Vec<Vec<usize>> {
    list.iter().map(|&s| set(s)).collect()
}

fn subset(elements: &[usize], n: usize, what: &str) -> Result<Subset, CliError> {
    if let Some(&bad) = elements.iter().find(|&&e| e == 0 || e > n) {
        return Err(CliError::Input(format!("{what}: element {bad} not in 1..={n}")));
    }
    Ok(elements.iter().copied().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatroidDoc {
    pub n: usize,
    pub r: usize,
    pub bases: Vec<Vec<usize>>,
}

impl MatroidDoc {
    pub fn from_family(f: &BaseFamily) -> Self {
        MatroidDoc { n: f.ground_size(), r: f.rank(), bases: sets(f.bases()) }
    }

    pub fn from_matroid(m: &Matroid) -> Self {
        Self::from_family(m.family())
    }

    /// Shape checks only; the exchange axiom is left to the caller.
    pub fn family(&self) -> Result<BaseFamily, CliError> {
        BaseFamily::from_lists(self.n, self.r, self.bases.iter().map(|b| b.iter().copied()))
            .map_err(|e| CliError::Input(format!("base family: {e}")))
    }

    pub fn matroid(&self) -> Result<Matroid, CliError> {
        Matroid::new(self.family()?).map_err(|v| CliError::Input(format!("not a matroid: {v}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateDoc {
    pub blocks: Vec<Vec<usize>>,
    pub a: Vec<usize>,
}

impl CandidateDoc {
    pub fn from_candidate(c: &GoodPartitionCandidate) -> Self {
        CandidateDoc { blocks: sets(c.blocks()), a: c.splits().to_vec() }
    }

    /// Rejects only labels outside the ground set; everything else is a
    /// structural verdict reported by the pipeline.
    pub fn candidate(&self, n: usize) -> Result<GoodPartitionCandidate, CliError> {
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| subset(b, n, &format!("block {}", i + 1)))
            .collect::<Result<_, _>>()?;
        Ok(GoodPartitionCandidate::new(blocks, self.a.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    pub n: usize,
    pub lines: Vec<Vec<usize>>,
}

impl ConfigDoc {
    pub fn config(&self) -> Result<PointLineConfig, CliError> {
        let lines = self
            .lines
            .iter()
            .enumerate()
            .map(|(i, l)| subset(l, self.n.min(64), &format!("line {}", i + 1)))
            .collect::<Result<_, _>>()?;
        PointLineConfig::new(self.n, lines).map_err(|e| CliError::Input(format!("configuration: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub w: Vec<i64>,
    pub c: i64,
    pub improper: bool,
}

impl From<&FaceCertificate> for CertificateDoc {
    fn from(f: &FaceCertificate) -> Self {
        CertificateDoc { w: f.w.clone(), c: f.c, improper: f.improper }
    }
}

#[derive(Debug, Serialize)]
pub struct ViolationDoc {
    pub b1: Vec<usize>,
    pub b2: Vec<usize>,
    pub e: usize,
}

impl From<&ExchangeViolation> for ViolationDoc {
    fn from(v: &ExchangeViolation) -> Self {
        ViolationDoc { b1: set(v.b1), b2: set(v.b2), e: v.e }
    }
}

fn violation(v: &Option<ExchangeViolation>) -> Option<ViolationDoc> {
    v.as_ref().map(ViolationDoc::from)
}

#[derive(Debug, Serialize)]
pub struct WeightedBase {
    pub base: Vec<usize>,
    pub weight: i64,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceDoc {
    Certificate(CertificateDoc),
    /// A positive combination of bases outside the subset whose average
    /// lies in the subset's affine hull.
    NotAFace { outside: Vec<WeightedBase>, total: i64 },
    Error(String),
}

impl From<&Result<FaceCertificate, FaceError>> for FaceDoc {
    fn from(r: &Result<FaceCertificate, FaceError>) -> Self {
        match r {
            Ok(c) => FaceDoc::Certificate(c.into()),
            Err(FaceError::NotAFace(w)) => FaceDoc::NotAFace {
                outside: w.outside.iter().map(|&(b, k)| WeightedBase { base: set(b), weight: k }).collect(),
                total: w.total,
            },
            Err(e) => FaceDoc::Error(e.to_string()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessDoc {
    pub clause: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sum: Option<usize>,
}

impl From<&PartitionWitness> for WitnessDoc {
    fn from(w: &PartitionWitness) -> Self {
        let mut doc = WitnessDoc {
            clause: w.clause(),
            cut: None,
            first: None,
            second: None,
            x: None,
            y: None,
            z: None,
            rank: None,
            sum: None,
        };
        match *w {
            PartitionWitness::P1 { rank, sum } => {
                doc.rank = Some(rank);
                doc.sum = Some(sum);
            }
            PartitionWitness::P2a { cut, x, y } => {
                doc.cut = Some(cut);
                doc.x = Some(set(x));
                doc.y = Some(set(y));
            }
            PartitionWitness::P2b { first, second, x, y, z } => {
                doc.first = Some(first);
                doc.second = Some(second);
                doc.x = Some(set(x));
                doc.y = Some(set(y));
                doc.z = Some(set(z));
            }
        }
        doc
    }
}

#[derive(Debug, Serialize)]
pub struct VerdictDoc {
    pub passed: bool,
    pub p1: bool,
    pub p2a: bool,
    pub p2b: bool,
    pub witness: Option<WitnessDoc>,
}

impl From<&PartitionVerdict> for VerdictDoc {
    fn from(v: &PartitionVerdict) -> Self {
        VerdictDoc {
            passed: v.passed(),
            p1: v.p1_ok,
            p2a: v.p2a_ok,
            p2b: v.p2b_ok,
            witness: v.witness.as_ref().map(WitnessDoc::from),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PartitionDoc {
    pub structure: Option<String>,
    pub verdict: Option<VerdictDoc>,
}

#[derive(Debug, Serialize)]
pub struct ForeignDoc {
    pub piece: usize,
    pub base: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct CoverDoc {
    pub missing: Vec<Vec<usize>>,
    pub foreign: Vec<ForeignDoc>,
}

#[derive(Debug, Serialize)]
pub struct PieceDoc {
    pub size: usize,
    pub violation: Option<ViolationDoc>,
}

#[derive(Debug, Serialize)]
pub struct PairDoc {
    pub first: usize,
    pub second: usize,
    pub intersection: Vec<Vec<usize>>,
    pub matroid: bool,
    pub violation: Option<ViolationDoc>,
    pub face_first: FaceDoc,
    pub face_second: FaceDoc,
}

impl From<&PairCheck> for PairDoc {
    fn from(p: &PairCheck) -> Self {
        PairDoc {
            first: p.first,
            second: p.second,
            intersection: sets(&p.intersection),
            matroid: p.matroid_ok(),
            violation: violation(&p.violation),
            face_first: (&p.face_first).into(),
            face_second: (&p.face_second).into(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerificationDoc {
    pub passed: bool,
    pub first_failure: Option<String>,
    pub cover: CoverDoc,
    pub pieces: Vec<PieceDoc>,
    pub pairs: Vec<PairDoc>,
}

impl From<&DecompositionReport> for VerificationDoc {
    fn from(r: &DecompositionReport) -> Self {
        VerificationDoc {
            passed: r.passed(),
            first_failure: r.first_failure().map(|f| f.to_string()),
            cover: CoverDoc {
                missing: sets(&r.cover.missing),
                foreign: r.cover.foreign.iter().map(|&(piece, b)| ForeignDoc { piece, base: set(b) }).collect(),
            },
            pieces: r.pieces.iter().map(|p| PieceDoc { size: p.size, violation: violation(&p.violation) }).collect(),
            pairs: r.pairs.iter().map(PairDoc::from).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DescriptionDoc {
    pub first: usize,
    pub second: usize,
    pub size: usize,
    pub error: Option<String>,
}

impl From<&DescriptionCheck> for DescriptionDoc {
    fn from(d: &DescriptionCheck) -> Self {
        DescriptionDoc { first: d.first, second: d.second, size: d.size, error: d.error.as_ref().map(|e| e.to_string()) }
    }
}

#[derive(Debug, Serialize)]
pub struct SplitDoc {
    pub step: usize,
    pub passed: bool,
    pub remainder_before: usize,
    pub piece: usize,
    pub remainder_after: usize,
    pub overlap: usize,
    pub union_ok: bool,
    pub remainder_violation: Option<ViolationDoc>,
    pub overlap_violation: Option<ViolationDoc>,
    pub face_in_piece: FaceDoc,
    pub face_in_remainder: FaceDoc,
}

impl From<&SplitStep> for SplitDoc {
    fn from(s: &SplitStep) -> Self {
        SplitDoc {
            step: s.step,
            passed: s.passed(),
            remainder_before: s.remainder_before,
            piece: s.piece,
            remainder_after: s.remainder_after,
            overlap: s.overlap,
            union_ok: s.union_ok,
            remainder_violation: violation(&s.remainder_violation),
            overlap_violation: violation(&s.overlap_violation),
            face_in_piece: (&s.face_in_piece).into(),
            face_in_remainder: (&s.face_in_remainder).into(),
        }
    }
}

/// Full pipeline report; also the input format of `lift` (only `parent`,
/// `pieces` and `candidate` are read back).
#[derive(Debug, Serialize)]
pub struct DecompositionDoc {
    pub passed: bool,
    pub failed_stage: Option<&'static str>,
    pub provenance: &'static str,
    pub parent: MatroidDoc,
    pub candidate: Option<CandidateDoc>,
    pub partition: Option<PartitionDoc>,
    pub construction_error: Option<String>,
    pub pieces: Vec<MatroidDoc>,
    pub descriptions: Vec<DescriptionDoc>,
    pub verification: Option<VerificationDoc>,
    pub splits: Vec<SplitDoc>,
}

impl DecompositionDoc {
    pub fn from_sequence(parent: &Matroid, r: &SequenceReport) -> Self {
        let partition = match &r.partition {
            Ok(v) => PartitionDoc { structure: None, verdict: Some(v.into()) },
            Err(e) => PartitionDoc { structure: Some(e.to_string()), verdict: None },
        };
        let construction_error = match &r.decomposition {
            Some(Err(e)) => Some(e.to_string()),
            _ => None,
        };
        DecompositionDoc {
            passed: r.passed(),
            failed_stage: r.failed_stage().map(|s| s.as_str()),
            provenance: "lemma2",
            parent: MatroidDoc::from_matroid(parent),
            candidate: Some(CandidateDoc::from_candidate(&r.candidate)),
            partition: Some(partition),
            construction_error,
            pieces: r.pieces().unwrap_or(&[]).iter().map(MatroidDoc::from_matroid).collect(),
            descriptions: r.descriptions.iter().map(DescriptionDoc::from).collect(),
            verification: r.verification.as_ref().map(VerificationDoc::from),
            splits: r.splits.iter().map(SplitDoc::from).collect(),
        }
    }
}

impl DecompositionDoc {
    /// A decomposition given directly by its pieces.
    pub fn from_pieces(d: &Decomposition, report: &DecompositionReport) -> Self {
        DecompositionDoc {
            passed: report.passed(),
            failed_stage: (!report.passed()).then_some("verification"),
            provenance: d.provenance.as_str(),
            parent: MatroidDoc::from_matroid(&d.parent),
            candidate: d.candidate.as_ref().map(CandidateDoc::from_candidate),
            partition: None,
            construction_error: None,
            pieces: d.pieces.iter().map(MatroidDoc::from_matroid).collect(),
            descriptions: Vec::new(),
            verification: Some(report.into()),
            splits: Vec::new(),
        }
    }
}

/// The part of a decomposition document that `lift` consumes.
#[derive(Debug, Deserialize)]
pub struct DecompositionInput {
    pub parent: MatroidDoc,
    #[serde(default)]
    pub candidate: Option<CandidateDoc>,
    pub pieces: Vec<MatroidDoc>,
}

/// Indented JSON with a trailing newline. Arrays of scalars (sets, weight
/// vectors) stay on one line.
pub fn render<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("documents serialize");
    let mut out = String::new();
    write_value(&mut out, &value, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.push_str(&"  ".repeat(d));
    match v {
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&item.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

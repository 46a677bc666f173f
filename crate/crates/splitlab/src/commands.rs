//! One function per subcommand. Each returns the process exit code:
//! 0 when every check passed, 1 when a check failed with a witness.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use splitlab_core::decompose::{
    direct_sum_lift, enumerate_uniform_decompositions, partitions_into_parts, uniform_decomposition,
    verify_sequence_decomposition_with, Decomposition, Provenance, UniformError,
};
use splitlab_core::geometry::{matroid_from_config, search_geometric_partitions, GeometricArity};
use splitlab_core::matroid::{find_exchange_violation, Matroid};
use splitlab_core::partition::{search_good_partitions, P2aReading, SearchLimits};
use splitlab_core::polytope::verify_decomposition;

use crate::error::CliError;
use crate::formats::{
    CandidateDoc, CertificateDoc, ConfigDoc, DecompositionDoc, DecompositionInput, MatroidDoc, ViolationDoc,
};
use crate::manifest::Run;

fn code(passed: bool) -> i32 {
    if passed {
        0
    } else {
        1
    }
}

fn reading(strict: bool) -> P2aReading {
    if strict {
        P2aReading::Literal
    } else {
        P2aReading::PrefixSums
    }
}

#[derive(Serialize)]
struct ValidateDoc {
    valid: bool,
    n: usize,
    r: usize,
    base_count: usize,
    violation: Option<ViolationDoc>,
}

pub fn validate(matroid: &Path, out: Option<PathBuf>) -> Result<i32, CliError> {
    let mut run = Run::new("validate", out);
    let doc: MatroidDoc = run.load(matroid)?;
    let family = doc.family()?;
    run.prepare()?;
    let violation = find_exchange_violation(&family);
    let report = ValidateDoc {
        valid: violation.is_none(),
        n: family.ground_size(),
        r: family.rank(),
        base_count: family.len(),
        violation: violation.as_ref().map(ViolationDoc::from),
    };
    run.emit("validate.json", &report)?;
    let summary = match &violation {
        None => format!("matroid: n={} r={} with {} bases", family.ground_size(), family.rank(), family.len()),
        Some(v) => format!("not a matroid: {v}"),
    };
    let exit = code(violation.is_none());
    run.finish(exit, summary)?;
    Ok(exit)
}

#[derive(Serialize)]
struct PairCertificate {
    first: usize,
    second: usize,
    relative_to: usize,
    certificate: CertificateDoc,
}

pub fn decompose(
    matroid: Option<&Path>,
    geometry: Option<&Path>,
    candidate: &Path,
    out: Option<PathBuf>,
    strict_p2a: bool,
) -> Result<i32, CliError> {
    let mut run = Run::new("decompose", out);
    let m = match (matroid, geometry) {
        (Some(path), None) => run.load::<MatroidDoc>(path)?.matroid()?,
        (None, Some(path)) => {
            let cfg = run.load::<ConfigDoc>(path)?.config()?;
            matroid_from_config(&cfg).map_err(|e| CliError::Input(e.to_string()))?
        }
        _ => return Err(CliError::Input("give exactly one of --matroid and --geometry".into())),
    };
    let c = run.load::<CandidateDoc>(candidate)?.candidate(m.ground_size())?;
    run.prepare()?;
    let report = verify_sequence_decomposition_with(&m, &c, reading(strict_p2a));
    let doc = DecompositionDoc::from_sequence(&m, &report);
    run.emit("decomposition.json", &doc)?;
    // certificates are also inside the report; the separate file is only
    // written next to it
    if let (true, Some(v)) = (run.has_out(), &report.verification) {
        let mut certificates = Vec::new();
        for p in &v.pairs {
            for (relative_to, face) in [(p.first, &p.face_first), (p.second, &p.face_second)] {
                if let Ok(cert) = face {
                    certificates.push(PairCertificate {
                        first: p.first,
                        second: p.second,
                        relative_to,
                        certificate: cert.into(),
                    });
                }
            }
        }
        run.emit("certificates.json", &certificates)?;
    }
    let summary = match report.failed_stage() {
        None => format!("{c}: {} pieces verified", report.pieces().map_or(0, <[Matroid]>::len)),
        Some(stage) => {
            let detail = report
                .verification
                .as_ref()
                .and_then(|v| v.first_failure())
                .map(|f| format!(": {f}"))
                .unwrap_or_default();
            format!("{c}: failed at {}{detail}", stage.as_str())
        }
    };
    let exit = code(report.passed());
    run.finish(exit, summary)?;
    Ok(exit)
}

#[derive(Serialize)]
struct InvariantRow {
    parts: Vec<usize>,
    block_ranks: Vec<usize>,
    file: String,
    passed: bool,
    sizes: Option<Vec<usize>>,
    ranks: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct InvariantTable {
    n: usize,
    r: usize,
    t: usize,
    count: usize,
    distinct_invariants: usize,
    rows: Vec<InvariantRow>,
}

pub fn uniform(n: usize, r: usize, t: usize, out: Option<PathBuf>) -> Result<i32, CliError> {
    let mut run = Run::new("uniform", out);
    let all_parts = partitions_into_parts(n, t);
    if all_parts.is_empty() {
        // surfaces the precondition error, if any
        enumerate_uniform_decompositions(n, r, t).map_err(|e| CliError::Precondition(e.to_string()))?;
    }
    let m = if all_parts.is_empty() {
        None
    } else {
        Some(Matroid::uniform_unchecked(n, r).map_err(|e| CliError::Precondition(e.to_string()))?)
    };
    let results: Vec<_> = match &m {
        Some(m) => all_parts.par_iter().map(|p| uniform_decomposition(m, p)).collect(),
        None => Vec::new(),
    };
    let mut decompositions = Vec::with_capacity(results.len());
    for result in results {
        match result {
            Ok(d) => decompositions.push(d),
            Err(e @ (UniformError::Precondition { .. } | UniformError::Construct(_))) => {
                return Err(CliError::Precondition(e.to_string()))
            }
            Err(e) => return Err(CliError::Input(e.to_string())),
        }
    }
    run.prepare()?;
    let mut rows = Vec::new();
    for d in &decompositions {
        let label: Vec<String> = d.instance.parts.iter().map(usize::to_string).collect();
        let file = format!("uniform-{}.json", label.join("-"));
        let doc = DecompositionDoc::from_sequence(m.as_ref().expect("parts exist"), &d.report);
        if run.has_out() {
            run.emit(&file, &doc)?;
        }
        rows.push(InvariantRow {
            parts: d.instance.parts.clone(),
            block_ranks: d.instance.block_ranks.clone(),
            file,
            passed: d.report.passed(),
            sizes: d.invariant.as_ref().map(|i| i.sizes.clone()),
            ranks: d.invariant.as_ref().map(|i| i.ranks.clone()),
        });
    }
    let mut invariants: Vec<_> = rows.iter().filter_map(|r| r.sizes.clone().zip(r.ranks.clone())).collect();
    invariants.sort();
    invariants.dedup();
    let passed = rows.iter().filter(|r| r.passed).count();
    let table = InvariantTable { n, r, t, count: rows.len(), distinct_invariants: invariants.len(), rows };
    let all_ok = passed == table.count && invariants.len() == table.count;
    run.emit("invariants.json", &table)?;
    let summary = format!("U_{{{n},{r}}}, t={t}: {} decompositions, {passed} verified", table.count);
    let exit = code(all_ok);
    run.finish(exit, summary)?;
    Ok(exit)
}

#[derive(Serialize)]
struct SizeMismatch {
    piece: usize,
    expected: usize,
    actual: usize,
}

#[derive(Serialize)]
struct LiftDoc {
    input_passed: bool,
    size_mismatches: Vec<SizeMismatch>,
    overlap_mismatches: Vec<[usize; 2]>,
    #[serde(flatten)]
    decomposition: DecompositionDoc,
}

pub fn lift(decomposition: &Path, matroid: &Path, out: Option<PathBuf>) -> Result<i32, CliError> {
    let mut run = Run::new("lift", out);
    let input: DecompositionInput = run.load(decomposition)?;
    let m2 = run.load::<MatroidDoc>(matroid)?.matroid()?;
    let parent = input.parent.matroid()?;
    let pieces = input.pieces.iter().map(MatroidDoc::matroid).collect::<Result<Vec<_>, _>>()?;
    let candidate = input.candidate.as_ref().map(|c| c.candidate(parent.ground_size())).transpose()?;
    let families: Vec<_> = pieces.iter().map(|p| p.family().clone()).collect();
    let input_report = verify_decomposition(&parent, &families).map_err(|e| CliError::Input(e.to_string()))?;
    let d = Decomposition { parent, pieces, provenance: Provenance::External, candidate };
    let report = direct_sum_lift(&d, &m2).map_err(|e| CliError::Precondition(e.to_string()))?;
    run.prepare()?;
    let mut doc = DecompositionDoc::from_pieces(&report.lifted, &report.verification);
    doc.passed = report.passed();
    let lifted = LiftDoc {
        input_passed: input_report.passed(),
        size_mismatches: report
            .size_mismatches
            .iter()
            .map(|&(piece, expected, actual)| SizeMismatch { piece, expected, actual })
            .collect(),
        overlap_mismatches: report.overlap_mismatches.iter().map(|&(i, j)| [i, j]).collect(),
        decomposition: doc,
    };
    run.emit("lift.json", &lifted)?;
    let sizes: Vec<String> = report.lifted.pieces.iter().map(|p| p.base_count().to_string()).collect();
    let summary = format!(
        "lifted {} pieces onto {} bases (piece sizes {}): {}",
        report.lifted.pieces.len(),
        report.lifted.parent.base_count(),
        sizes.join(", "),
        if report.passed() { "verified" } else { "failed" }
    );
    let exit = code(report.passed());
    run.finish(exit, summary)?;
    Ok(exit)
}

#[derive(Serialize)]
struct SearchDoc {
    t: usize,
    complete: bool,
    examined: u64,
    candidates: Vec<CandidateDoc>,
}

pub fn search(
    matroid: &Path,
    t: usize,
    budget: Option<u64>,
    strict_p2a: bool,
    out: Option<PathBuf>,
) -> Result<i32, CliError> {
    let mut run = Run::new("search", out);
    let m = run.load::<MatroidDoc>(matroid)?.matroid()?;
    let limits = SearchLimits { max_examined: budget, reading: reading(strict_p2a) };
    let found = search_good_partitions(&m, t, limits).map_err(|e| CliError::Precondition(e.to_string()))?;
    run.prepare()?;
    let doc = SearchDoc {
        t,
        complete: found.complete,
        examined: found.examined,
        candidates: found.candidates.iter().map(CandidateDoc::from_candidate).collect(),
    };
    run.emit("candidates.json", &doc)?;
    let summary = format!(
        "{} good {t}-partitions after {} examined{}",
        doc.candidates.len(),
        found.examined,
        if found.complete { "" } else { " (budget exhausted, incomplete)" }
    );
    run.finish(0, summary)?;
    Ok(0)
}

#[derive(Serialize)]
struct ArityDoc {
    t: usize,
    candidates: Vec<CandidateDoc>,
}

#[derive(Serialize)]
struct GeometryDoc {
    matroid: MatroidDoc,
    partitions: Vec<ArityDoc>,
}

pub fn geometry(config: &Path, t: Option<usize>, out: Option<PathBuf>) -> Result<i32, CliError> {
    let mut run = Run::new("geometry", out);
    let cfg = run.load::<ConfigDoc>(config)?.config()?;
    let m = matroid_from_config(&cfg).map_err(|e| CliError::Input(e.to_string()))?;
    let arities = match t {
        None => vec![(2, GeometricArity::Two), (3, GeometricArity::Three)],
        Some(2) => vec![(2, GeometricArity::Two)],
        Some(3) => vec![(3, GeometricArity::Three)],
        Some(other) => return Err(CliError::Precondition(format!("--t must be 2 or 3 for geometry, got {other}"))),
    };
    run.prepare()?;
    let mut partitions = Vec::new();
    for (t, arity) in arities {
        let found = search_geometric_partitions(&cfg, arity).map_err(|e| CliError::Input(e.to_string()))?;
        partitions.push(ArityDoc { t, candidates: found.iter().map(CandidateDoc::from_candidate).collect() });
    }
    let counts: Vec<String> =
        partitions.iter().map(|p| format!("{} with t={}", p.candidates.len(), p.t)).collect();
    let doc = GeometryDoc { matroid: MatroidDoc::from_matroid(&m), partitions };
    run.emit("geometry.json", &doc)?;
    let summary = format!("{} bases; geometric partitions: {}", m.base_count(), counts.join(", "));
    run.finish(0, summary)?;
    Ok(0)
}

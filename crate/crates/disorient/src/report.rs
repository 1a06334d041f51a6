//! Structured analysis reports for CLI and programmatic consumers.
//!
//! [`analyze`] runs the disorientability decision on a parsed complex and
//! assembles a serializable report: verdict, diagnostics, optional
//! certificate, cycle basis, Laplacian spectra, and an optional comparison
//! against the exhaustive search oracle. All list orders are canonical, so
//! serializing a report is deterministic.

use serde::Serialize;

use crate::complex::Sign;
use crate::decide::{brute_force_disorientable, check_disorientable_oriented, two_coloring};
use crate::doc::{Label, ParsedComplex};
use crate::dual::{fundamental_cycles, signed_down_dual_oriented, CycleClassification, DualGraph};
use crate::spectral::{hodge_laplacian, spectrum, LaplacianKind, ZERO_EIGENVALUE_TOL};
use crate::split::SplitLog;
use crate::{Error, Result};

/// What to include in an [`AnalysisReport`] beyond verdict and diagnostics.
#[derive(Debug, Clone, Default)]
pub struct ReportOptions {
    pub include_certificate: bool,
    pub include_cycles: bool,
    pub include_spectra: bool,
    /// Run the exhaustive oracle with this cap and report agreement.
    pub oracle_cap: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub format_version: String,
    pub summary: String,
    pub verdict: String,
    pub diagnostics: Diagnostics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle_basis: Option<Vec<CycleSummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti_numbers: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectra: Option<Vec<SpectrumSummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repair: Option<RepairSummary>,
}

#[derive(Debug, Serialize)]
pub struct Diagnostics {
    pub dimension: usize,
    /// Simplex count per dimension, from vertices up.
    pub simplex_counts: Vec<usize>,
    pub connected_components: usize,
    /// Components of the top-level down-dual graph.
    pub dual_components: usize,
    pub branching_faces: Vec<BranchingFace>,
    pub stray_maximal_simplices: Vec<Vec<Label>>,
}

#[derive(Debug, Serialize)]
pub struct BranchingFace {
    pub face: Vec<Label>,
    pub degree: usize,
}

/// Machine-checkable witness for either verdict.
#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A valid disorientation: one sign per top-dimensional simplex.
    Disorientation { signs: Vec<SignedSimplexOut> },
    /// A cycle of the signed down-dual that no assignment satisfies.
    ObstructingCycle {
        simplices: Vec<Vec<Label>>,
        shared_faces: Vec<Vec<Label>>,
        length: usize,
        twisted: bool,
    },
}

#[derive(Debug, Serialize)]
pub struct SignedSimplexOut {
    pub simplex: Vec<Label>,
    pub sign: i8,
}

#[derive(Debug, Serialize)]
pub struct CycleSummary {
    pub simplices: Vec<Vec<Label>>,
    pub shared_faces: Vec<Vec<Label>>,
    pub length: usize,
    pub twisted: bool,
    pub branching_exempt: bool,
    pub violating: bool,
}

#[derive(Debug, Serialize)]
pub struct SpectrumSummary {
    pub dim: usize,
    pub matrix_size: usize,
    pub zero_multiplicity: usize,
    pub lambda_max: f64,
    pub eigenvalues: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct OracleSummary {
    pub cap: usize,
    pub within_cap: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_disorientable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct RepairSummary {
    pub iterations: usize,
    pub steps: Vec<RepairStep>,
    pub betti_before: Vec<usize>,
    pub betti_after: Vec<usize>,
    pub topology_preserved: bool,
}

#[derive(Debug, Serialize)]
pub struct RepairStep {
    pub subdivided_edge: Vec<Label>,
    pub new_vertex: Label,
    pub affected_top_simplices: Vec<Vec<Label>>,
}

fn labels_of(parsed: &ParsedComplex, d: usize, index: usize) -> Vec<Label> {
    parsed.simplex_labels(parsed.complex.simplex(d, index))
}

fn cycle_labels(
    parsed: &ParsedComplex,
    graph: &DualGraph,
    cycle: &CycleClassification,
) -> (Vec<Vec<Label>>, Vec<Vec<Label>>) {
    let n = parsed.complex.dimension();
    let simplices = cycle
        .dual_vertices
        .iter()
        .map(|&u| labels_of(parsed, n, u))
        .collect();
    let faces = cycle
        .edges
        .iter()
        .map(|&e| parsed.simplex_labels(&graph.edges[e].label))
        .collect();
    (simplices, faces)
}

/// Round a floating-point value for report output (nine decimal places,
/// normalized zero); computation keeps full precision.
pub fn round_for_output(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Run the decision procedure and assemble a report.
pub fn analyze(parsed: &ParsedComplex, opts: &ReportOptions) -> Result<AnalysisReport> {
    let k = &parsed.complex;
    let n = k.dimension();
    let verdict = check_disorientable_oriented(k, &parsed.reference_signs)?;

    let summary = match verdict.obstruction() {
        None => {
            let d = verdict
                .disorientation()
                .expect("disorientable verdict carries signs");
            let (plus, minus) = two_coloring(d);
            format!(
                "disorientable: {} top simplices of dimension {n}, sign classes {}+/{}-",
                k.num_simplices(n),
                plus.len(),
                minus.len()
            )
        }
        Some(o) => {
            let kind = if o.cycle.twisted {
                format!("twisted cycle of even length {}", o.cycle.length)
            } else {
                format!("simple cycle of odd length {}", o.cycle.length)
            };
            format!("not disorientable: {kind} in the signed down-dual")
        }
    };

    let diagnostics = Diagnostics {
        dimension: n,
        simplex_counts: (0..=n).map(|d| k.num_simplices(d)).collect(),
        connected_components: k.connected_components(),
        dual_components: verdict.dual_components,
        branching_faces: verdict
            .branching
            .branching_faces()
            .map(|e| BranchingFace {
                face: parsed.simplex_labels(&e.face),
                degree: e.degree,
            })
            .collect(),
        stray_maximal_simplices: k
            .stray_maximal_simplices()
            .iter()
            .map(|s| parsed.simplex_labels(s))
            .collect(),
    };

    let needs_dual = opts.include_certificate && !verdict.is_disorientable();
    let dual = if needs_dual || opts.include_cycles {
        Some(signed_down_dual_oriented(k, &parsed.reference_signs)?)
    } else {
        None
    };

    let certificate = if !opts.include_certificate {
        None
    } else {
        match (&verdict.disorientation(), &verdict.obstruction()) {
            (Some(d), _) => Some(Certificate::Disorientation {
                signs: d
                    .signs
                    .iter()
                    .enumerate()
                    .map(|(i, s)| SignedSimplexOut {
                        simplex: labels_of(parsed, n, i),
                        sign: s.as_i32() as i8,
                    })
                    .collect(),
            }),
            (_, Some(o)) => {
                let dual = dual.as_ref().expect("dual was built for the obstruction");
                let (simplices, shared_faces) = cycle_labels(parsed, &dual.graph, &o.cycle);
                Some(Certificate::ObstructingCycle {
                    simplices,
                    shared_faces,
                    length: o.cycle.length,
                    twisted: o.cycle.twisted,
                })
            }
            _ => unreachable!("a verdict is exactly one of the two outcomes"),
        }
    };

    let cycle_basis = if !opts.include_cycles {
        None
    } else {
        let dual = dual.as_ref().expect("dual was built for the cycle basis");
        Some(
            fundamental_cycles(dual)
                .iter()
                .map(|c| {
                    let (simplices, shared_faces) = cycle_labels(parsed, &dual.graph, c);
                    CycleSummary {
                        simplices,
                        shared_faces,
                        length: c.length,
                        twisted: c.twisted,
                        branching_exempt: c.branching_exempt,
                        violating: c.violating(),
                    }
                })
                .collect(),
        )
    };

    let (betti_numbers, spectra) = if !opts.include_spectra {
        (None, None)
    } else {
        let mut summaries = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let m = hodge_laplacian(k, d, LaplacianKind::Full)?;
            let s = spectrum(&m, ZERO_EIGENVALUE_TOL)?;
            summaries.push(SpectrumSummary {
                dim: d,
                matrix_size: s.eigenvalues.len(),
                zero_multiplicity: s.multiplicity_of_zero,
                lambda_max: round_for_output(s.lambda_max),
                eigenvalues: s
                    .eigenvalues
                    .iter()
                    .copied()
                    .map(round_for_output)
                    .collect(),
            });
        }
        let betti = summaries.iter().map(|s| s.zero_multiplicity).collect();
        (Some(betti), Some(summaries))
    };

    let oracle = match opts.oracle_cap {
        None => None,
        Some(cap) => match brute_force_disorientable(k, cap) {
            Ok(found) => {
                let oracle_disorientable = found.is_some();
                Some(OracleSummary {
                    cap,
                    within_cap: true,
                    oracle_disorientable: Some(oracle_disorientable),
                    agrees: Some(oracle_disorientable == verdict.is_disorientable()),
                })
            }
            Err(Error::BruteForceCapExceeded { .. }) => Some(OracleSummary {
                cap,
                within_cap: false,
                oracle_disorientable: None,
                agrees: None,
            }),
            Err(e) => return Err(e),
        },
    };

    Ok(AnalysisReport {
        format_version: "1".to_string(),
        summary,
        verdict: if verdict.is_disorientable() {
            "disorientable".to_string()
        } else {
            "not_disorientable".to_string()
        },
        diagnostics,
        certificate,
        cycle_basis,
        betti_numbers,
        spectra,
        oracle,
        repair: None,
    })
}

/// Summarize an edge-subdivision repair, with labels covering the new
/// vertices (see `doc::extend_labels`).
pub fn repair_summary(
    betti_before: Vec<usize>,
    betti_after: Vec<usize>,
    log: &SplitLog,
    labels: &[Label],
) -> RepairSummary {
    let steps = log
        .steps
        .iter()
        .map(|s| RepairStep {
            subdivided_edge: s
                .subdivided_edge
                .vertices()
                .iter()
                .map(|&v| labels[v].clone())
                .collect(),
            new_vertex: labels[s.new_vertex].clone(),
            affected_top_simplices: s
                .affected_top_simplices
                .iter()
                .map(|t| t.vertices().iter().map(|&v| labels[v].clone()).collect())
                .collect(),
        })
        .collect();
    RepairSummary {
        iterations: log.iterations(),
        topology_preserved: betti_before == betti_after,
        steps,
        betti_before,
        betti_after,
    }
}

/// Pretty-print a report as JSON with a trailing newline.
pub fn to_json(report: &AnalysisReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serialization is infallible");
    out.push('\n');
    out
}

/// A disorientation restated on the sign conventions of a report: the label
/// form of `two_coloring`, exposed for CLI-facing callers.
pub fn sign_classes(parsed: &ParsedComplex, signs: &[Sign]) -> (Vec<Vec<Label>>, Vec<Vec<Label>>) {
    let n = parsed.complex.dimension();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (i, s) in signs.iter().enumerate() {
        match s {
            Sign::Plus => plus.push(labels_of(parsed, n, i)),
            Sign::Minus => minus.push(labels_of(parsed, n, i)),
        }
    }
    (plus, minus)
}

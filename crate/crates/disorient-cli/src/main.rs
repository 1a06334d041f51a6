//! Command-line interface for disorientability analysis of simplicial
//! complexes.
//!
//! Every subcommand reads a JSON complex document from a file path or from
//! stdin (`-`), prints a one-line human summary followed by a pretty JSON
//! payload, and exits with 0 on success (for `check`: disorientable), 1 when
//! a complex is not disorientable, 2 on any error, and 3 when the repair
//! loop hits its iteration cap. `generate` writes a complex document
//! instead, so its stdout can be piped back into the other subcommands.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use disorient::decide::DEFAULT_BRUTE_FORCE_CAP;
use disorient::doc::{extend_labels, parse_document, write_document, Label, ParsedComplex};
use disorient::dual::{down_dual, fundamental_cycles, signed_down_dual_oriented, up_dual};
use disorient::report::{
    analyze, repair_summary, round_for_output, to_json, AnalysisReport, CycleSummary, ReportOptions,
};
use disorient::spectral::{
    betti_numbers, hodge_laplacian, normalized_graph_laplacian, spectrum, LaplacianKind,
    ZERO_EIGENVALUE_TOL,
};
use disorient::split::{default_split_iterations, make_disorientable};
use disorient::{generate, Error, Sign, SimplicialComplex};

#[derive(Parser)]
#[command(
    name = "disorient",
    version,
    about = "Decide whether a simplicial complex is disorientable, with certificates, \
             spectral cross-checks, dual-graph inspection, and constructive repair"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide disorientability and report a verdict.
    Check {
        /// Input document path, or `-` for stdin.
        input: String,
        /// Include the machine-checkable certificate for the verdict.
        #[arg(long)]
        certificate: bool,
        /// Include the classified fundamental cycle basis of the signed dual.
        #[arg(long)]
        cycles: bool,
        /// Include Hodge-Laplacian spectra and Betti numbers.
        #[arg(long)]
        spectra: bool,
        /// Cross-check the verdict against the exhaustive sign search.
        #[arg(long)]
        oracle: bool,
        /// Top-simplex cap for the exhaustive search (implies --oracle).
        #[arg(long, value_name = "N")]
        oracle_cap: Option<usize>,
    },
    /// Print the spectrum of a Laplacian of the complex.
    Spectrum {
        /// Input document path, or `-` for stdin.
        input: String,
        /// Dimension of the Laplacian (required unless --normalized).
        #[arg(long)]
        dim: Option<usize>,
        /// Which Hodge Laplacian to use.
        #[arg(long, value_enum, default_value_t = KindArg::Full, conflicts_with = "normalized")]
        kind: KindArg,
        /// Use the normalized graph Laplacian (graphs only).
        #[arg(long)]
        normalized: bool,
    },
    /// Print a dual graph of the complex.
    Dual {
        /// Input document path, or `-` for stdin.
        input: String,
        /// Dimension to build the dual at (defaults to the top dimension).
        #[arg(long)]
        dim: Option<usize>,
        /// Build the up-dual (shared cofaces) instead of the down-dual.
        #[arg(long)]
        up: bool,
        /// Attach coherence signs (top-dimensional down-dual only).
        #[arg(long)]
        signed: bool,
        /// Also classify the fundamental cycle basis (implies --signed).
        #[arg(long)]
        cycles: bool,
    },
    /// Repair a complex by stellar edge subdivision until disorientable.
    Split {
        /// Input document path, or `-` for stdin.
        input: String,
        /// Iteration cap (defaults to 10x the number of top simplices).
        #[arg(long, value_name = "N")]
        max_iter: Option<usize>,
        /// Write the repaired complex document here.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Generate a named example complex as a document.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
}

#[derive(Args)]
struct OutArg {
    /// Write the document here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Cycle graph on n vertices (n >= 3).
    Cycle {
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Path graph on n vertices (n >= 2).
    Path {
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Complete graph on n vertices (n >= 2).
    Complete {
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Star with the given number of leaves (>= 1).
    Star {
        leaves: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Strip of k triangles, optionally closed into a band, optionally
    /// twisted (closed twisted needs k >= 5, closed untwisted k >= 6).
    Strip {
        k: usize,
        #[arg(long)]
        closed: bool,
        #[arg(long)]
        twisted: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Boundary of the n-simplex (n >= 2), a combinatorial (n-1)-sphere.
    SimplexBoundary {
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Torus from an m-by-n triangulated grid (m, n >= 3).
    Torus {
        m: usize,
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Klein bottle from an m-by-n triangulated grid (m, n >= 3).
    Klein {
        m: usize,
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Book of triangles sharing one edge (pages >= 1).
    Book {
        pages: usize,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Full,
    Up,
    Down,
}

enum CliError {
    Lib(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    // Restore the default SIGPIPE disposition so a reader closing the pipe
    // ends the process quietly, as it does for other Unix filters.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Lib(Error::SplitIterationCap { cap, log })) => {
            eprintln!(
                "error: subdivision hit the iteration cap {cap} after {} steps without \
                 reaching a disorientable complex",
                log.iterations()
            );
            ExitCode::from(3)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Lib(Error::Io(e)))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Lib(Error::Io(e)))
    }
}

fn parse_input(path: &str) -> Result<ParsedComplex, CliError> {
    Ok(parse_document(&read_input(path)?)?)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Check {
            input,
            certificate,
            cycles,
            spectra,
            oracle,
            oracle_cap,
        } => {
            let parsed = parse_input(&input)?;
            let opts = ReportOptions {
                include_certificate: certificate,
                include_cycles: cycles,
                include_spectra: spectra,
                oracle_cap: if oracle || oracle_cap.is_some() {
                    Some(oracle_cap.unwrap_or(DEFAULT_BRUTE_FORCE_CAP))
                } else {
                    None
                },
            };
            let report = analyze(&parsed, &opts)?;
            let disorientable = report.verdict == "disorientable";
            print_report(&report);
            Ok(if disorientable { 0 } else { 1 })
        }
        Command::Spectrum {
            input,
            dim,
            kind,
            normalized,
        } => {
            let parsed = parse_input(&input)?;
            run_spectrum(&parsed.complex, dim, kind, normalized)
        }
        Command::Dual {
            input,
            dim,
            up,
            signed,
            cycles,
        } => {
            let parsed = parse_input(&input)?;
            run_dual(&parsed, dim, up, signed || cycles, cycles)
        }
        Command::Split {
            input,
            max_iter,
            out,
        } => run_split(&input, max_iter, out),
        Command::Generate { kind } => run_generate(kind),
    }
}

fn print_report(report: &AnalysisReport) {
    println!("{}", report.summary);
    print!("{}", to_json(report));
}

#[derive(Serialize)]
struct SpectrumReport {
    dim: usize,
    kind: String,
    matrix_size: usize,
    zero_multiplicity: usize,
    lambda_max: f64,
    eigenvalues: Vec<f64>,
}

fn run_spectrum(
    k: &SimplicialComplex,
    dim: Option<usize>,
    kind: KindArg,
    normalized: bool,
) -> Result<u8, CliError> {
    let (matrix, kind_name) = if normalized {
        if dim.is_some_and(|d| d != 0) {
            return Err(usage(
                "--normalized works on vertices; omit --dim or pass --dim 0",
            ));
        }
        (normalized_graph_laplacian(k)?, "normalized_graph")
    } else {
        let d = dim.ok_or_else(|| usage("--dim is required unless --normalized is given"))?;
        let kind = match kind {
            KindArg::Full => LaplacianKind::Full,
            KindArg::Up => LaplacianKind::Up,
            KindArg::Down => LaplacianKind::Down,
        };
        let name = match kind {
            LaplacianKind::Full => "full",
            LaplacianKind::Up => "up",
            LaplacianKind::Down => "down",
            LaplacianKind::NormalizedGraph => unreachable!("not a CLI Hodge kind"),
        };
        (hodge_laplacian(k, d, kind)?, name)
    };
    let s = spectrum(&matrix, ZERO_EIGENVALUE_TOL)?;
    let payload = SpectrumReport {
        dim: matrix.d,
        kind: kind_name.to_string(),
        matrix_size: s.eigenvalues.len(),
        zero_multiplicity: s.multiplicity_of_zero,
        lambda_max: round_for_output(s.lambda_max),
        eigenvalues: s
            .eigenvalues
            .iter()
            .copied()
            .map(round_for_output)
            .collect(),
    };
    println!(
        "dim {} {} Laplacian: size {}, zero multiplicity {}, lambda_max {}",
        payload.dim,
        payload.kind,
        payload.matrix_size,
        payload.zero_multiplicity,
        payload.lambda_max
    );
    print_json(&payload);
    Ok(0)
}

#[derive(Serialize)]
struct DualReport {
    dim: usize,
    direction: String,
    signed: bool,
    vertex_count: usize,
    edge_count: usize,
    components: usize,
    edges: Vec<DualEdgeOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycle_basis: Option<Vec<CycleSummary>>,
}

#[derive(Serialize)]
struct DualEdgeOut {
    u: Vec<Label>,
    v: Vec<Label>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shared_face: Option<Vec<Label>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shared_coface: Option<Vec<Label>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<i8>,
}

fn run_dual(
    parsed: &ParsedComplex,
    dim: Option<usize>,
    up: bool,
    signed: bool,
    cycles: bool,
) -> Result<u8, CliError> {
    let k = &parsed.complex;
    let n = k.dimension();
    let d = dim.unwrap_or(n);
    if signed && up {
        return Err(usage("--signed applies to the down-dual, not --up"));
    }
    if signed && d != n {
        return Err(usage(format!(
            "--signed needs the top dimension {n}, got --dim {d}"
        )));
    }

    let (graph, signed_dual) = if up {
        (up_dual(k, d)?, None)
    } else if signed {
        let dual = signed_down_dual_oriented(k, &parsed.reference_signs)?;
        (dual.graph.clone(), Some(dual))
    } else {
        (down_dual(k, d)?, None)
    };

    let edges = graph
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| DualEdgeOut {
            u: parsed.simplex_labels(k.simplex(d, e.u)),
            v: parsed.simplex_labels(k.simplex(d, e.v)),
            shared_face: (!up).then(|| parsed.simplex_labels(&e.label)),
            shared_coface: up.then(|| parsed.simplex_labels(&e.label)),
            weight: signed_dual.as_ref().map(|sd| sd.weight(i).as_i32() as i8),
        })
        .collect();

    let cycle_basis = match (&signed_dual, cycles) {
        (Some(dual), true) => Some(
            fundamental_cycles(dual)
                .iter()
                .map(|c| {
                    let simplices = c
                        .dual_vertices
                        .iter()
                        .map(|&u| parsed.simplex_labels(k.simplex(d, u)))
                        .collect();
                    let shared_faces = c
                        .edges
                        .iter()
                        .map(|&e| parsed.simplex_labels(&dual.graph.edges[e].label))
                        .collect();
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
        ),
        _ => None,
    };

    let payload = DualReport {
        dim: d,
        direction: if up {
            "up".to_string()
        } else {
            "down".to_string()
        },
        signed,
        vertex_count: graph.vertex_count,
        edge_count: graph.edge_count(),
        components: graph.component_count(),
        edges,
        cycle_basis,
    };
    println!(
        "{}-dual at dimension {}: {} vertices, {} edges, {} component(s){}",
        payload.direction,
        payload.dim,
        payload.vertex_count,
        payload.edge_count,
        payload.components,
        if signed { ", signed" } else { "" }
    );
    print_json(&payload);
    Ok(0)
}

fn run_split(input: &str, max_iter: Option<usize>, out: Option<PathBuf>) -> Result<u8, CliError> {
    let parsed = parse_input(input)?;
    let k = &parsed.complex;
    let betti_before = betti_numbers(k)?;
    let cap = max_iter.unwrap_or_else(|| default_split_iterations(k));
    let (repaired, log, _signs) = make_disorientable(k, cap)?;
    let betti_after = betti_numbers(&repaired)?;

    let labels = extend_labels(&parsed.labels, repaired.max_vertex_id() + 1);
    let n = repaired.dimension();
    let repaired_parsed = ParsedComplex {
        complex: repaired.clone(),
        labels: labels.clone(),
        reference_signs: vec![Sign::Plus; repaired.num_simplices(n)],
    };
    let opts = ReportOptions {
        include_certificate: true,
        ..Default::default()
    };
    let mut report = analyze(&repaired_parsed, &opts)?;
    report.repair = Some(repair_summary(betti_before, betti_after, &log, &labels));
    report.summary = format!(
        "repaired in {} subdivision(s): {}",
        log.iterations(),
        report.summary
    );

    if let Some(path) = &out {
        let doc = write_document(&repaired, Some(&labels), None)?;
        fs::write(path, doc).map_err(|e| CliError::Lib(Error::Io(e)))?;
    }
    print_report(&report);
    Ok(0)
}

fn run_generate(kind: GenerateKind) -> Result<u8, CliError> {
    let (k, out) = match kind {
        GenerateKind::Cycle { n, out } => (generate::cycle_graph(n)?, out),
        GenerateKind::Path { n, out } => (generate::path_graph(n)?, out),
        GenerateKind::Complete { n, out } => (generate::complete_graph(n)?, out),
        GenerateKind::Star { leaves, out } => (generate::star(leaves)?, out),
        GenerateKind::Strip {
            k,
            closed,
            twisted,
            out,
        } => (generate::triangle_strip(k, closed, twisted)?, out),
        GenerateKind::SimplexBoundary { n, out } => (generate::simplex_boundary(n)?, out),
        GenerateKind::Torus { m, n, out } => (generate::torus(m, n)?, out),
        GenerateKind::Klein { m, n, out } => (generate::klein_bottle(m, n)?, out),
        GenerateKind::Book { pages, out } => (generate::book(pages)?, out),
    };
    let doc = write_document(&k, None, None)?;
    match out.out {
        Some(path) => {
            fs::write(&path, doc).map_err(|e| CliError::Lib(Error::Io(e)))?;
            println!("wrote {}", path.display());
        }
        None => print!("{doc}"),
    }
    Ok(0)
}

fn print_json<T: Serialize>(payload: &T) {
    let mut text = serde_json::to_string_pretty(payload).expect("payload serialization");
    text.push('\n');
    print!("{text}");
}

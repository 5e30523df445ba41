//! Batch command-line front end: spectra, bound certification, path
//! decompositions, family generation, and extremal searches with
//! machine-readable output.

use clap::{Parser, Subcommand, ValueEnum};
use dirichlet_core::bounds::{self, BoundReport, BoundsError};
use dirichlet_core::decomp::{self, DecompError};
use dirichlet_core::extremal::{self, EnumLimits, ExtremalError, ExtremalReport};
use dirichlet_core::families::{self, FamilyError};
use dirichlet_core::graph::{BoundaryGraph, GraphError, GraphJson};
use dirichlet_core::spectral::{self, SpectralError};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "dirichlet",
    about = "First Dirichlet eigenvalues of graphs with boundary: spectra, certified bounds, decompositions, extremal searches",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Absolute tolerance for bound certification and equality flags.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Seed recorded in the run configuration (fixed default for
    /// reproducibility; current commands are fully deterministic).
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Worker threads for the extremal search; 0 picks automatically.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Raise the desk-scale enumeration limits, as "interior,leaves".
    #[arg(long, global = true, value_name = "K,B")]
    limit_override: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Full Dirichlet spectrum and the ground eigenfunction.
    Spectrum {
        /// Graph file in the JSON format {"n", "edges", "boundary"}.
        input: Option<PathBuf>,
        /// Generated family instead of a file, e.g. star:3 or pc:2,3.
        #[arg(long)]
        family: Option<String>,
    },
    /// Evaluate every applicable bound and certify it against lambda1.
    Bounds {
        input: Option<PathBuf>,
        #[arg(long)]
        family: Option<String>,
    },
    /// Build a path collection and report its covering/packing certificate.
    Decompose {
        input: Option<PathBuf>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Forest)]
        method: Method,
    },
    /// Exhaustive extremal-tree verification for the class (a, k).
    Extremal {
        /// Floor of the leaf-to-interior ratio b/k.
        #[arg(short)]
        a: usize,
        /// Number of interior vertices.
        #[arg(short)]
        k: usize,
        /// Which leaf-count family to verify.
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
    },
    /// Emit a generated family in the JSON graph format.
    Generate {
        #[arg(long)]
        family: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Shortest-path forest covering (any boundary graph).
    Forest,
    /// Center-rooted decomposition (trees with leaf boundary).
    TreeCenter,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    #[value(name = "ak+1")]
    RemainderOne,
    #[value(name = "ak+k-1")]
    RemainderKMinusOne,
    #[value(name = "ak+2")]
    RemainderTwo,
    All,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid graph file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("invalid family: {0}")]
    Family(#[from] FamilyError),
    #[error("{0}")]
    Decomp(#[from] DecompError),
    #[error("{0}")]
    Bounds(#[from] BoundsError),
    #[error("solver failure: {0}")]
    Spectral(#[from] SpectralError),
    #[error("{0}")]
    Extremal(#[from] ExtremalError),
}

impl CliError {
    /// 2 for validation/usage problems, 3 for solver failures, 1 for
    /// verification mismatches.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Spectral(e) => spectral_code(e),
            CliError::Bounds(BoundsError::Spectral(e)) => spectral_code(e),
            CliError::Extremal(ExtremalError::Mismatch(_)) => 1,
            CliError::Extremal(ExtremalError::Spectral(e)) => spectral_code(e),
            _ => 2,
        }
    }
}

fn spectral_code(e: &SpectralError) -> u8 {
    match e {
        SpectralError::NoConvergence(_) | SpectralError::PerronViolation { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .ok();
    }
    if cli.tol <= 0.0 {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    let limits = parse_limits(cli.limit_override.as_deref())?;
    match &cli.command {
        Command::Spectrum { input, family } => {
            let bg = load_graph(input, family)?;
            cmd_spectrum(&bg, cli.format)
        }
        Command::Bounds { input, family } => {
            let bg = load_graph(input, family)?;
            cmd_bounds(&bg, cli.format, cli.tol)
        }
        Command::Decompose {
            input,
            family,
            method,
        } => {
            let bg = load_graph(input, family)?;
            cmd_decompose(&bg, *method, cli.format)
        }
        Command::Extremal { a, k, which } => cmd_extremal(*a, *k, *which, cli.format, &limits),
        Command::Generate { family } => {
            let bg = parse_family(family)?;
            println!("{}", serde_json::to_string_pretty(&bg.to_json())?);
            Ok(0)
        }
    }
}

fn parse_limits(spec: Option<&str>) -> Result<EnumLimits, CliError> {
    let defaults = EnumLimits::default();
    let Some(spec) = spec else {
        return Ok(defaults);
    };
    let parts: Vec<&str> = spec.split(',').collect();
    let bad = || CliError::Usage(format!("--limit-override expects \"K,B\", got {spec:?}"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let max_interior: usize = parts[0].trim().parse().map_err(|_| bad())?;
    let max_leaves: usize = parts[1].trim().parse().map_err(|_| bad())?;
    if max_interior > defaults.max_interior || max_leaves > defaults.max_leaves {
        eprintln!(
            "warning: raising enumeration limits to ({max_interior}, {max_leaves}); \
             class counts grow quickly beyond the defaults ({}, {})",
            defaults.max_interior, defaults.max_leaves
        );
    }
    Ok(EnumLimits {
        max_interior,
        max_leaves,
    })
}

fn load_graph(input: &Option<PathBuf>, family: &Option<String>) -> Result<BoundaryGraph, CliError> {
    match (input, family) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            let parsed: GraphJson = serde_json::from_str(&text)?;
            Ok(BoundaryGraph::from_json(&parsed)?)
        }
        (None, Some(spec)) => parse_family(spec),
        _ => Err(CliError::Usage(
            "provide exactly one of an input file or --family".into(),
        )),
    }
}

/// Family mini-grammar: star:b, path:n, pc:l,a, slp:p,q,c,d,e, mohar:k,t.
fn parse_family(spec: &str) -> Result<BoundaryGraph, CliError> {
    let (kind, args) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("family {spec:?} is missing parameters")))?;
    let values: Vec<usize> = args
        .split(',')
        .map(|part| part.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("family {spec:?} has non-integer parameters")))?;
    let expect = |n: usize| -> Result<(), CliError> {
        if values.len() == n {
            Ok(())
        } else {
            Err(CliError::Usage(format!(
                "family {kind:?} expects {n} parameter(s), got {}",
                values.len()
            )))
        }
    };
    match kind {
        "star" => {
            expect(1)?;
            Ok(families::gen_star(values[0])?)
        }
        "path" => {
            expect(1)?;
            Ok(families::gen_path(values[0])?)
        }
        "pc" => {
            expect(2)?;
            Ok(families::gen_path_cliques(values[0], values[1])?)
        }
        "slp" => {
            expect(5)?;
            Ok(families::gen_slp(
                values[0], values[1], values[2], values[3], values[4],
            )?)
        }
        "mohar" => {
            expect(2)?;
            let g = families::gen_mohar(values[0], values[1])?;
            let leaves = g.leaves();
            Ok(BoundaryGraph::from_graph(g, &leaves)?)
        }
        other => Err(CliError::Usage(format!("unknown family kind {other:?}"))),
    }
}

/// Formats with 12 significant digits for golden-file stability.
fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-4..12).contains(&exponent) {
        format!("{:.*}", (11 - exponent).max(0) as usize, x)
    } else {
        format!("{x:.11e}")
    }
}

fn cmd_spectrum(bg: &BoundaryGraph, format: Format) -> Result<u8, CliError> {
    let spectrum = spectral::dirichlet_spectrum(bg)?;
    let pair = spectral::ground_pair(&spectrum)?;
    match format {
        Format::Json => {
            let payload = json!({
                "interior": bg.interior(),
                "eigenvalues": spectrum.eigenvalues,
                "ground_eigenfunction": pair.eigenfunction,
                "residual_tol": spectrum.residual_tol,
            });
            println!("{}", serde_json::to_string_pretty(&payload)?);
        }
        Format::Csv => {
            println!("index,eigenvalue");
            for (i, lambda) in spectrum.eigenvalues.iter().enumerate() {
                println!("{},{}", i + 1, sig12(*lambda));
            }
        }
        Format::Table => {
            println!("interior size: {}", bg.interior().len());
            for (i, lambda) in spectrum.eigenvalues.iter().enumerate() {
                println!("lambda[{}] = {}", i + 1, sig12(*lambda));
            }
            println!("ground eigenfunction (vertex: value):");
            for (&v, value) in bg.interior().iter().zip(&pair.eigenfunction) {
                println!("  {v}: {}", sig12(*value));
            }
            println!("residual tolerance: {:.3e}", spectrum.residual_tol);
        }
    }
    Ok(0)
}

fn bounds_exit_code(report: &BoundReport) -> u8 {
    if report.violations().is_empty() {
        0
    } else {
        1
    }
}

fn cmd_bounds(bg: &BoundaryGraph, format: Format, tol: f64) -> Result<u8, CliError> {
    let report = bounds::verify_all(bg, tol)?;
    let m = &report.metrics;
    let product = report.lambda1 * m.interior_size as f64 * m.diameter as f64;
    match format {
        Format::Json => {
            let payload = json!({
                "report": report,
                "lambda1_interior_diameter_product": product,
            });
            println!("{}", serde_json::to_string_pretty(&payload)?);
        }
        Format::Csv => print!("{}", report.to_csv()),
        Format::Table => {
            println!("lambda1 = {}", sig12(report.lambda1));
            println!(
                "r = {}, D = {}, R = {}, d = {}, delta = {}, |interior| = {}, |boundary| = {}, |E(interior,boundary)| = {}",
                m.inscribed_radius,
                m.diameter,
                m.circumscribed_radius,
                m.max_degree,
                m.min_interior_degree,
                m.interior_size,
                m.boundary_size,
                m.interior_boundary_edges
            );
            println!("lambda1 * |interior| * D = {}", sig12(product));
            println!(
                "{:<20} {:<6} {:>18} {:>18} {:>9} {:>9}",
                "bound", "kind", "value", "slack", "equality", "asserted"
            );
            for b in &report.bounds {
                println!(
                    "{:<20} {:<6} {:>18} {:>18} {:>9} {:>9}",
                    b.name,
                    match b.kind {
                        bounds::BoundKind::Lower => "lower",
                        bounds::BoundKind::Upper => "upper",
                    },
                    sig12(b.value),
                    sig12(b.slack),
                    b.equality,
                    b.asserted
                );
            }
        }
    }
    let code = bounds_exit_code(&report);
    if code != 0 {
        for b in report.violations() {
            eprintln!(
                "certification failure: {} ({:?}) violated by {}",
                b.name,
                b.kind,
                sig12(-b.slack)
            );
        }
    }
    Ok(code)
}

fn cmd_decompose(bg: &BoundaryGraph, method: Method, format: Format) -> Result<u8, CliError> {
    let pc = match method {
        Method::Forest => decomp::shortest_path_forest_cover(bg),
        Method::TreeCenter => decomp::tree_path_decomposition(bg)?,
    };
    let cert = decomp::certify(bg, &pc)?;
    let implied = if cert.covering >= 1 {
        Some(bounds::lb_covering_packing(
            cert.covering,
            cert.packing,
            cert.max_len,
        ))
    } else {
        None
    };
    match format {
        Format::Json => {
            let payload = json!({
                "paths": pc.paths,
                "certificate": cert,
                "implied_lower_bound": implied,
            });
            println!("{}", serde_json::to_string_pretty(&payload)?);
        }
        Format::Csv => {
            println!("covering,packing,max_len,implied_lower_bound");
            println!(
                "{},{},{},{}",
                cert.covering,
                cert.packing,
                cert.max_len,
                implied.map_or_else(|| "unusable".to_string(), sig12)
            );
        }
        Format::Table => {
            println!("{} path(s):", pc.paths.len());
            for path in &pc.paths {
                let rendered: Vec<String> = path.iter().map(ToString::to_string).collect();
                println!("  {}", rendered.join(" -> "));
            }
            println!(
                "certificate: c = {}, p = {}, max length = {}",
                cert.covering, cert.packing, cert.max_len
            );
            match implied {
                Some(bound) => println!("implied lower bound: {}", sig12(bound)),
                None => println!("certificate unusable: covering is zero"),
            }
        }
    }
    Ok(0)
}

fn cmd_extremal(
    a: usize,
    k: usize,
    which: Which,
    format: Format,
    limits: &EnumLimits,
) -> Result<u8, CliError> {
    let selection = match which {
        Which::RemainderOne => Some(a * k + 1),
        Which::RemainderKMinusOne => Some(a * k + k - 1),
        Which::RemainderTwo => Some(a * k + 2),
        Which::All => None,
    };
    let outcome = extremal::verify_extremal_selected(a, k, selection, limits);
    let (report, code) = match outcome {
        Ok(report) => (report, 0u8),
        Err(ExtremalError::Mismatch(report)) => (*report, 1u8),
        Err(other) => return Err(other.into()),
    };
    print_extremal(&report, format)?;
    Ok(code)
}

fn print_extremal(report: &ExtremalReport, format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report)?),
        Format::Csv => {
            println!("leaves,families,max_lambda1,expected,argmax_classes,total_classes,status");
            for case in &report.cases {
                let labels: Vec<&str> = case.families.iter().map(|f| f.label()).collect();
                println!(
                    "{},{},{},{},{},{},{}",
                    case.leaves,
                    labels.join("|"),
                    sig12(case.result.max_lambda1),
                    case.expected.map_or_else(String::new, sig12),
                    case.result.argmax.len(),
                    case.result.total_enumerated,
                    status_word(case.passed),
                );
            }
        }
        Format::Table => {
            println!(
                "extremal verification for a = {}, k = {}",
                report.a, report.k
            );
            for case in &report.cases {
                println!(
                    "b = {:<3} [{}] max = {} over {} classes, {} argmax: {}",
                    case.leaves,
                    status_word(case.passed),
                    sig12(case.result.max_lambda1),
                    case.result.total_enumerated,
                    case.result.argmax.len(),
                    case.detail
                );
                for tree in &case.result.argmax {
                    println!("    argmax {}  edges {:?}", tree.code, tree.edges);
                }
            }
        }
    }
    Ok(())
}

fn status_word(passed: Option<bool>) -> &'static str {
    match passed {
        Some(true) => "PASS",
        Some(false) => "FAIL",
        None => "REPORT",
    }
}

//! `phrecon`: generate plane graphs, compute their directional diagrams,
//! reconstruct them through a diagram oracle, compare and draw them.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use phrecon::compare::compare_graphs;
use phrecon::geometry::TOLERANCE_ENV;
use phrecon::svg::{render_svg, RenderOptions};
use phrecon::{
    lower_star_diagrams, random_plane_graph, reconstruct_graph, validate, DiagramOracle, Direction,
    Error, Execution, PlaneGraph, DEFAULT_TOLERANCE,
};

const EXIT_MISMATCH: u8 = 1;
const EXIT_GENERATION: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_INVALID_GRAPH: u8 = 4;
const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "phrecon",
    version,
    about = "Plane graph reconstruction from directional persistence diagrams"
)]
struct Cli {
    /// Absolute tolerance for equal-height and on-line tests.
    #[arg(long, global = true, env = TOLERANCE_ENV, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a random general-position plane graph.
    Gen(GenArgs),
    /// Write the dimension 0 and 1 diagrams of a graph for one direction.
    Diagrams(DiagramsArgs),
    /// Recover a graph through the diagram oracle and report query counts.
    Reconstruct(ReconstructArgs),
    /// Check that two graphs are equal up to relabelling.
    Verify(VerifyArgs),
    /// Draw a graph as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    #[arg(long, default_value_t = 0.5, value_parser = parse_density)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DiagramsArgs {
    graph: PathBuf,
    /// Direction as `dx,dy`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_direction)]
    direction: Direction,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReconstructArgs {
    /// Hidden graph; only the oracle built from it is used for reconstruction.
    graph: PathBuf,
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Per-coordinate tolerance when scoring the result against the input.
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    /// Memoize repeated directions; queries are still counted.
    #[arg(long)]
    cache: bool,
    /// Probe vertex pairs on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    a: PathBuf,
    b: PathBuf,
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
}

#[derive(Debug, Args)]
struct RenderArgs {
    graph: PathBuf,
    /// Overlay the three filtration-line families.
    #[arg(long)]
    lines: bool,
    /// Shade the bow tie at vertex `i` isolating vertex `j`.
    #[arg(long, value_parser = parse_pair)]
    bowtie: Option<(usize, usize)>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct RunReport {
    vertex_queries: usize,
    edge_queries: usize,
    retries: usize,
    max_vertex_error: f64,
    edge_set_equal: bool,
    wall_time_ms: f64,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type CliResult = Result<(), Failure>;

fn parse_density(s: &str) -> Result<f64, String> {
    let d: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&d) {
        Ok(d)
    } else {
        Err(format!("density {d} outside [0, 1]"))
    }
}

fn parse_direction(s: &str) -> Result<Direction, String> {
    let (dx, dy) = s.split_once(',').ok_or("expected dx,dy")?;
    let dx: f64 = dx.trim().parse().map_err(|e| format!("{e}"))?;
    let dy: f64 = dy.trim().parse().map_err(|e| format!("{e}"))?;
    Direction::new(dx, dy).map_err(|e| e.to_string())
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (i, j) = s.split_once(',').ok_or("expected i,j")?;
    Ok((
        i.trim().parse().map_err(|e| format!("{e}"))?,
        j.trim().parse().map_err(|e| format!("{e}"))?,
    ))
}

fn read_graph(path: &Path) -> Result<PlaneGraph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    PlaneGraph::from_json(&text)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, contents: &str) -> CliResult {
    let result = match path {
        Some(p) => fs::write(p, contents),
        None => io::stdout().write_all(contents.as_bytes()),
    };
    result.map_err(|e| Failure::new(EXIT_USAGE, format!("write failed: {e}")))
}

fn degenerate(err: Error) -> Failure {
    match err {
        Error::DegenerateDirection(i, j, dx, dy) => Failure::new(
            EXIT_DEGENERATE,
            format!("vertices {i} and {j} are at equal height in direction ({dx}, {dy})"),
        ),
        other => Failure::new(EXIT_MISMATCH, other.to_string()),
    }
}

fn require_valid(g: &PlaneGraph, tol: f64) -> CliResult {
    let violations = validate(g, tol);
    if violations.is_empty() {
        return Ok(());
    }
    let listed: Vec<String> = violations.iter().map(ToString::to_string).collect();
    Err(Failure::new(
        EXIT_INVALID_GRAPH,
        format!("invalid graph:\n  {}", listed.join("\n  ")),
    ))
}

fn cmd_gen(args: &GenArgs) -> CliResult {
    let g = random_plane_graph(args.n as usize, args.density, args.seed).map_err(|e| match e {
        Error::GenerationFailed(_) => Failure::new(EXIT_GENERATION, e.to_string()),
        other => Failure::new(EXIT_USAGE, other.to_string()),
    })?;
    write_output(args.out.as_deref(), &(g.to_json() + "\n"))
}

fn cmd_diagrams(args: &DiagramsArgs, tol: f64) -> CliResult {
    let g = read_graph(&args.graph)?;
    let d = lower_star_diagrams(&g, args.direction, tol).map_err(degenerate)?;
    write_output(args.out.as_deref(), &(d.to_json() + "\n"))
}

fn cmd_reconstruct(args: &ReconstructArgs, tol: f64) -> CliResult {
    let truth = read_graph(&args.graph)?;
    require_valid(&truth, tol)?;
    let oracle = DiagramOracle::new(truth.clone())
        .with_tolerance(tol)
        .with_cache(args.cache);
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let start = Instant::now();
    let result = reconstruct_graph(&oracle, exec).map_err(degenerate)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    let cmp = compare_graphs(&truth, &result.graph, args.eps);
    let report = RunReport {
        vertex_queries: result.vertex_queries,
        edge_queries: result.edge_queries,
        retries: result.retries,
        max_vertex_error: cmp.max_vertex_error,
        edge_set_equal: cmp.is_equal(),
        wall_time_ms,
    };
    write_output(args.out.as_deref(), &(result.graph.to_json() + "\n"))?;
    if let Some(path) = &args.report {
        let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        write_output(Some(path), &text)?;
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> CliResult {
    let a = read_graph(&args.a)?;
    let b = read_graph(&args.b)?;
    let cmp = compare_graphs(&a, &b, args.eps);
    if cmp.is_equal() {
        return Ok(());
    }
    let mut diff = Vec::new();
    if a.vertex_count() != b.vertex_count() {
        diff.push(format!(
            "vertex count {} vs {}",
            a.vertex_count(),
            b.vertex_count()
        ));
    }
    for i in &cmp.unmatched {
        diff.push(format!(
            "- vertex {i} {} has no partner within {}",
            a.vertices()[*i],
            args.eps
        ));
    }
    for (i, j) in &cmp.missing_in_b {
        diff.push(format!("- edge ({i}, {j})"));
    }
    for (i, j) in &cmp.extra_in_b {
        diff.push(format!("+ edge ({i}, {j})"));
    }
    println!("{}", diff.join("\n"));
    Err(Failure::new(EXIT_MISMATCH, "graphs differ"))
}

fn cmd_render(args: &RenderArgs, tol: f64) -> CliResult {
    let g = read_graph(&args.graph)?;
    if let Some((i, j)) = args.bowtie {
        let n = g.vertex_count();
        if i >= n || j >= n || i == j {
            return Err(Failure::new(
                EXIT_USAGE,
                format!("bow tie indices ({i}, {j}) invalid for {n} vertices"),
            ));
        }
    }
    let opts = RenderOptions {
        lines: args.lines,
        bowtie: args.bowtie,
    };
    let svg = render_svg(&g, &opts, tol).map_err(|e| match e {
        Error::IndexOutOfRange { .. } => Failure::new(EXIT_USAGE, e.to_string()),
        other => degenerate(other),
    })?;
    write_output(args.out.as_deref(), &svg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let tol = cli.tolerance;
    let outcome = match &cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Diagrams(args) => cmd_diagrams(args, tol),
        Command::Reconstruct(args) => cmd_reconstruct(args, tol),
        Command::Verify(args) => cmd_verify(args),
        Command::Render(args) => cmd_render(args, tol),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("phrecon: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use plconvex::bench::{run_bench_with, BenchConfig, CSV_HEADER};
use plconvex::complex::{emit_surface, parse_surface, sniff, Format, PlSurface, SurfaceIoError};
use plconvex::generator::{generate, Family, GenSpec, Generated};
use plconvex::oracle::{supporting_hyperplane_oracle, OracleError};
use plconvex::scalar::{format_rational, parse_rational};
use plconvex::verifier::{check_convexity_parallel, Mode, Report, Verdict};

const EXIT_CONVEX: u8 = 0;
const EXIT_NOT_CONVEX: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_UNCERTAIN: u8 = 3;
const EXIT_USAGE: u8 = 4;

#[derive(Parser)]
#[command(name = "plconvex", version, about = "Convexity verification for piecewise-linear surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a surface bounds a convex body.
    Check(CheckArgs),
    /// Write a generated instance.
    Gen(GenArgs),
    /// Run the brute-force supporting-hyperplane decider.
    Oracle(OracleArgs),
    /// Time the verifier on random hulls of growing size.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Auto,
    Off,
    Plposet,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum OutputArg {
    Human,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    RandomHull,
    Cube,
    Simplex,
    CrossPolytope,
    Hypercube,
    Dodecahedron,
    Torus,
    Dented,
    WoundFan,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    /// Relative tolerance in float mode.
    #[arg(long, default_value_t = 1e-9)]
    eps: f64,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, env = "PLCONVEX_SEED", default_value_t = 0)]
    seed: u64,
}

impl Common {
    fn mode(&self) -> Mode {
        match self.mode {
            ModeArg::Exact => Mode::exact(self.seed),
            ModeArg::Float => Mode::float(self.eps, self.seed),
        }
    }

    fn jobs(&self) -> usize {
        self.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())).max(1)
    }
}

#[derive(Args)]
struct CheckArgs {
    /// Surface file, or `-` for standard input.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "human")]
    output: OutputArg,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long, default_value_t = 50)]
    points: usize,
    #[arg(long, env = "PLCONVEX_SEED", default_value_t = 0)]
    seed: u64,
    /// Base family of a dent.
    #[arg(long, value_enum, default_value = "random-hull")]
    base: FamilyArg,
    /// Dent depth in (0, 1), e.g. 2/5 or 0.4.
    #[arg(long, default_value = "2/5")]
    depth: String,
    /// Rays of a wound fan.
    #[arg(long, default_value_t = 7)]
    rays: usize,
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
    /// Output file (default: standard output).
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// Surface file, or `-` for standard input.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
    #[arg(long, value_enum, default_value = "human")]
    output: OutputArg,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', default_values_t = [100usize, 1_000, 10_000, 100_000])]
    sizes: Vec<usize>,
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1)]
    repeats: usize,
}

struct Failure(u8, String);

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

impl From<SurfaceIoError> for Failure {
    fn from(e: SurfaceIoError) -> Self {
        Failure(EXIT_INVALID, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Check(a) => run_check(&a),
        Command::Gen(a) => run_gen(&a),
        Command::Oracle(a) => run_oracle(&a),
        Command::Bench(a) => run_bench(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("plconvex: {msg}");
            ExitCode::from(code)
        }
    }
}

fn detect_format(path: &Path, text: &str, arg: FormatArg) -> Format {
    match arg {
        FormatArg::Off => Format::Off,
        FormatArg::Plposet => Format::PlPoset,
        FormatArg::Auto => match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("off") => Format::Off,
            Some("plposet" | "json") => Format::PlPoset,
            _ => sniff(text),
        },
    }
}

fn load(path: &Path, format: FormatArg) -> Result<PlSurface, Failure> {
    let read = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    let text = read.map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    let format = detect_format(path, &text, format);
    Ok(parse_surface(&text, format)?)
}

fn exit_for(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::Convex => EXIT_CONVEX,
        Verdict::NotConvex => EXIT_NOT_CONVEX,
        Verdict::Invalid => EXIT_INVALID,
        Verdict::Uncertain => EXIT_UNCERTAIN,
    }
}

fn print_human(report: &Report) {
    let c = &report.counts;
    println!("{}", report.verdict.as_str());
    println!("faces: f0={} f_n-3={} f_n-2={} f_n-1={} incidences={}", c.f0, c.f_sub, c.f_ridge, c.f_facet, c.f_sub_ridge);
    if let Some(w) = &report.witness {
        println!("witness: face of dimension {} index {} ({})", w.face.dim, w.face.index, w.reason);
    }
    println!("stars checked: {}  max predicate degree: {}", report.processed, report.degree_max());
    println!("elapsed: {:.3} ms", report.elapsed.as_secs_f64() * 1e3);
}

fn run_check(a: &CheckArgs) -> Result<u8, Failure> {
    let surface = match load(&a.input, a.format) {
        Ok(s) => s,
        Err(Failure(EXIT_INVALID, msg)) if a.output == OutputArg::Json => {
            println!("{}", serde_json::json!({ "verdict": "Invalid", "witness_face": null, "reason": msg }));
            return Ok(EXIT_INVALID);
        }
        Err(e) => return Err(e),
    };
    let report = check_convexity_parallel(&surface, a.common.mode(), a.common.jobs());
    match a.output {
        OutputArg::Json => println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("json")),
        OutputArg::Human => print_human(&report),
    }
    Ok(exit_for(report.verdict))
}

fn family(arg: FamilyArg, a: &GenArgs) -> Result<Family, Failure> {
    Ok(match arg {
        FamilyArg::RandomHull => Family::RandomHull,
        FamilyArg::Cube => Family::Cube,
        FamilyArg::Simplex => Family::Simplex,
        FamilyArg::CrossPolytope => Family::CrossPolytope,
        FamilyArg::Hypercube => Family::Hypercube,
        FamilyArg::Dodecahedron => Family::Dodecahedron,
        FamilyArg::Torus => Family::Torus,
        FamilyArg::WoundFan => Family::WoundFan(a.rays),
        FamilyArg::Dented => {
            let depth = parse_rational(&a.depth).map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
            let base = GenSpec::new(a.dim, family(a.base, a)?, a.points, a.seed);
            Family::Dented { base: Box::new(base), depth }
        }
    })
}

fn run_gen(a: &GenArgs) -> Result<u8, Failure> {
    if matches!(a.base, FamilyArg::Dented) && matches!(a.family, FamilyArg::Dented) {
        return Err(Failure(EXIT_USAGE, "a dent needs a non-dented base".into()));
    }
    let spec = GenSpec::new(a.dim, family(a.family, a)?, a.points, a.seed);
    let generated = generate(&spec).map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
    let text = match generated {
        Generated::Surface { surface, .. } => {
            let format = match (a.format, &a.out) {
                (FormatArg::Off, _) => Format::Off,
                (FormatArg::Plposet, _) => Format::PlPoset,
                (FormatArg::Auto, Some(p)) if p.extension().is_some_and(|e| e == "off") => Format::Off,
                (FormatArg::Auto, _) if surface.ambient_dim() == 3 => Format::Off,
                (FormatArg::Auto, _) => Format::PlPoset,
            };
            emit_surface(&surface, format)?
        }
        Generated::Fan(fan) => {
            let rays: Vec<Vec<String>> = fan.rays.iter().map(|r| r.iter().map(format_rational).collect()).collect();
            serde_json::to_string_pretty(&serde_json::json!({ "rays": rays })).expect("json") + "\n"
        }
    };
    match &a.out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::Write::write_all(&mut std::io::stdout().lock(), text.as_bytes())?,
    }
    Ok(0)
}

fn run_oracle(a: &OracleArgs) -> Result<u8, Failure> {
    let surface = load(&a.input, a.format)?;
    let verdict = supporting_hyperplane_oracle(&surface).map_err(|e| match e {
        OracleError::NonPlanarFacet(_) | OracleError::MissingCoordinates => Failure(EXIT_INVALID, e.to_string()),
    })?;
    match a.output {
        OutputArg::Json => println!("{}", serde_json::to_string_pretty(&verdict).expect("json")),
        OutputArg::Human => {
            println!("{}", if verdict.convex { "Convex" } else { "NotConvex" });
            if let (Some(f), Some(v)) = (verdict.failing_facet, verdict.strictly_outside_vertex) {
                println!("facet {} separates vertex {}", f.index, v.index);
            }
        }
    }
    Ok(if verdict.convex { EXIT_CONVEX } else { EXIT_NOT_CONVEX })
}

fn run_bench(a: &BenchArgs) -> Result<u8, Failure> {
    let cfg = BenchConfig {
        sizes: a.sizes.clone(),
        mode: a.common.mode(),
        jobs: a.common.jobs(),
        seed: a.common.seed,
        repeats: a.repeats,
    };
    println!("{CSV_HEADER}");
    let result = run_bench_with(&cfg, |row| println!("{}", row.csv()));
    println!("# slope,{:.4}", result.slope);
    Ok(0)
}

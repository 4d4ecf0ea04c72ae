use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use nucleus_core::drg::{build_family, DualPolarKind, Family, Graph};
use nucleus_core::report::Status;
use nucleus_core::suite::{parse_groups, run_suite, SuiteReport};
use nucleus_core::summary::{analyze, nucleus_report, poset_report};
use nucleus_core::Error;

#[derive(Parser)]
#[command(
    name = "nucleus-lab",
    version,
    about = "Exact nucleus computations for Q-polynomial distance-regular graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family member as graph JSON.
    Generate(GraphArgs),
    /// Intersection array, spectrum, Krein pattern and dual eigenvalues.
    Analyze(GraphArgs),
    /// Compute and decompose the nucleus.
    Nucleus(GraphArgs),
    /// The subspace poset of the base vertex (dual polar graphs).
    Poset(GraphArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Hypercube,
    Hamming,
    Odd,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    #[value(name = "D")]
    D,
    #[value(name = "2A-even")]
    TwoAEven,
    #[value(name = "2A-odd")]
    TwoAOdd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long, value_enum, required_unless_present = "input")]
    family: Option<FamilyArg>,
    /// Diameter.
    #[arg(long = "D")]
    d: Option<usize>,
    /// Field order; for the unitary families, the square root of it.
    #[arg(long)]
    q: Option<u64>,
    /// Alphabet size of a Hamming graph.
    #[arg(long = "N")]
    n: Option<usize>,
    /// Graph JSON to read instead of a family.
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    base_vertex: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Comma-separated check groups: drg, spectral, nucleus, tdsystem, projgeom, pmain.
    #[arg(long)]
    only: Option<String>,
    /// Allow instances with more than 500 vertices.
    #[arg(long)]
    large: bool,
}

/// Instances above this order need `--large`.
const LARGE: usize = 500;

enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotDistanceRegular(_)
            | Error::Disconnected
            | Error::NotQPolynomial(_)
            | Error::NegativeKrein { .. }
            | Error::NonIntegerSpectrum
            | Error::RepeatedEigenvalue(_)
            | Error::Certification(_)
            | Error::NotInvariant(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn family(args: &GraphArgs) -> Result<Family, Failure> {
    let need = |x: Option<usize>, flag: &str| {
        x.ok_or_else(|| Failure::Usage(format!("--{flag} is required for this family")))
    };
    let f = args.family.expect("clap requires --family without --input");
    let d = need(args.d, "D")?;
    let dual = |kind| -> Result<Family, Failure> {
        let q = args
            .q
            .ok_or_else(|| Failure::Usage("--q is required for dual polar families".into()))?;
        Ok(Family::DualPolar { kind, d, q })
    };
    Ok(match f {
        FamilyArg::Hypercube => Family::Hypercube { d },
        FamilyArg::Hamming => Family::Hamming {
            d,
            n: need(args.n, "N")?,
        },
        FamilyArg::Odd => Family::Odd { d },
        FamilyArg::B => dual(DualPolarKind::B)?,
        FamilyArg::C => dual(DualPolarKind::C)?,
        FamilyArg::D => dual(DualPolarKind::D)?,
        FamilyArg::TwoAEven => dual(DualPolarKind::TwoAEven)?,
        FamilyArg::TwoAOdd => dual(DualPolarKind::TwoAOdd)?,
    })
}

fn load(args: &GraphArgs) -> Result<Graph, Failure> {
    let g = match &args.input {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Graph::from_json(&v)?
        }
        None => build_family(&family(args)?)?,
    };
    if args.base_vertex >= g.order() {
        return Err(Failure::Usage(format!(
            "base vertex {} out of range for {} vertices",
            args.base_vertex,
            g.order()
        )));
    }
    Ok(g)
}

fn emit(args: &GraphArgs, text: String) -> Result<(), Failure> {
    match &args.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn suite_text(rep: &SuiteReport) -> String {
    let mut s = format!("{}\n", rep.label);
    for (group, r) in &rep.groups {
        s.push_str(&format!("[{group}]\n"));
        for c in &r.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            if c.detail.is_empty() {
                s.push_str(&format!("  {tag}  {}\n", c.name));
            } else {
                s.push_str(&format!("  {tag}  {}  ({})\n", c.name, c.detail));
            }
        }
    }
    s.push_str(if rep.passed() {
        "all checks passed\n"
    } else {
        "verification FAILED\n"
    });
    s
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Generate(args) => {
            let g = load(&args)?;
            emit(&args, pretty(&g.to_json()))?;
            Ok(true)
        }
        Command::Analyze(args) => {
            let g = load(&args)?;
            emit(&args, pretty(&analyze(g, args.base_vertex)?))?;
            Ok(true)
        }
        Command::Nucleus(args) => {
            let g = load(&args)?;
            let (v, ok) = nucleus_report(g, args.base_vertex)?;
            emit(&args, pretty(&v))?;
            Ok(ok)
        }
        Command::Poset(args) => {
            let g = load(&args)?;
            let (v, ok) = poset_report(g, args.base_vertex)?;
            emit(&args, pretty(&v))?;
            Ok(ok)
        }
        Command::Verify(v) => {
            let groups = parse_groups(v.only.as_deref())?;
            let g = load(&v.graph)?;
            if g.order() > LARGE && !v.large {
                return Err(Failure::Usage(format!(
                    "{} vertices; pass --large to run instances above {LARGE}",
                    g.order()
                )));
            }
            let rep = run_suite(g, v.graph.base_vertex, &groups)?;
            let text = match v.graph.format.unwrap_or(Format::Text) {
                Format::Json => pretty(&rep.to_json()),
                Format::Text => suite_text(&rep),
            };
            emit(&v.graph, text)?;
            Ok(rep.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("NUCLEUS_LAB_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

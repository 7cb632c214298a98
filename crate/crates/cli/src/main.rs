use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gkm_core::builtin::ExampleSpec;
use gkm_core::exactlin::Rational;
use gkm_core::gkm::{equivariant_dims_with, validate_graph, GkmGraph, Parallelism};
use gkm_core::json::parse_rational;
use gkm_core::series::{
    basic_from_equivariant, gysin_betti, morse_bott_assemble, run_checks_with, BasicReport, CheckStatus, DegreeSeries,
    GysinData, MorseBottData, Verdict,
};
use gkm_core::toric::{polytope_skeleton, simplex_polytope, MomentPolytope};

mod table;

const EXIT_INPUT: u8 = 1;
const EXIT_CHECK_FAILED: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "gkm", version, about = "Equivariant and basic cohomology from GKM graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; only JSON is a stable interface.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for per-degree computations (1 = sequential).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Exit with status 3 when a result is inconclusive at the cutoff.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Graph JSON file, or `-` for standard input.
    file: PathBuf,

    /// Degree cutoff [default: max(20, 2 * (vertices + 2))].
    #[arg(long, env = "GKM_MAX_DEGREE", allow_negative_numbers = true)]
    max_degree: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the structural checks on a graph.
    Validate {
        /// Graph JSON file, or `-` for standard input.
        file: PathBuf,
    },
    /// Dimensions of equivariant cohomology by degree.
    Cohomology(GraphInput),
    /// Basic Betti numbers from the equivariant series.
    Basic(GraphInput),
    /// Assemble a Poincaré series from Morse-Bott data.
    MorseBott {
        file: PathBuf,
        #[arg(long, env = "GKM_MAX_DEGREE", allow_negative_numbers = true)]
        max_degree: Option<usize>,
    },
    /// Betti numbers of the total space from Gysin data.
    Gysin {
        file: PathBuf,
        /// Half of `dim M - 1`; defaults to `len(basic_dims) - 1`.
        #[arg(long)]
        n: Option<usize>,
    },
    /// GKM graph of the one-skeleton of a moment polytope.
    ToricSkeleton { file: PathBuf },
    /// Emit a builtin example graph (or, with --weights, a simplex polytope).
    Example {
        #[arg(value_parser = ["simplex", "fiber_join", "fiber-join", "hirzebruch", "stiefel"])]
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Comma-separated positive weights `a_0,...,a_n` of the ellipsoid.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<String>>,
    },
    /// Evaluate the theorem checks on a graph.
    Check(GraphInput),
}

/// Failure carrying its exit status.
struct Exit {
    code: u8,
    message: Option<String>,
}

impl From<anyhow::Error> for Exit {
    fn from(e: anyhow::Error) -> Self {
        Exit {
            code: EXIT_INPUT,
            message: Some(format!("{e:#}")),
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_graph(path: &PathBuf) -> Result<GkmGraph> {
    Ok(GkmGraph::from_json(&read_input(path)?)?)
}

struct Ctx {
    format: Format,
    parallelism: Parallelism,
    strict: bool,
}

impl Ctx {
    fn emit<T: Serialize>(&self, value: &T, table: impl FnOnce() -> String) -> Result<()> {
        let text = match self.format {
            Format::Json => serde_json::to_string_pretty(value)?,
            Format::Table => table(),
        };
        let mut out = io::stdout().lock();
        writeln!(out, "{}", text.trim_end())?;
        Ok(())
    }

    fn inconclusive(&self, what: &str) -> Result<(), Exit> {
        if self.strict {
            Err(Exit {
                code: EXIT_INCONCLUSIVE,
                message: Some(format!("inconclusive at cutoff: {what}")),
            })
        } else {
            eprintln!("warning: inconclusive at cutoff: {what}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct BasicOutput<'a> {
    cutoff: usize,
    equivariant: &'a DegreeSeries,
    basic: &'a DegreeSeries,
    report: &'a BasicReport,
}

fn cutoff_for(g: &GkmGraph, requested: Option<usize>) -> usize {
    requested.unwrap_or_else(|| g.default_max_degree())
}

fn example(
    name: &str,
    n: Option<usize>,
    genus: Option<usize>,
    m: Option<usize>,
    weights: Option<Vec<String>>,
) -> Result<serde_json::Value> {
    let spec: ExampleSpec = name.parse()?;
    let unused = |flag: &str, present: bool| -> Result<()> {
        if present {
            bail!("--{flag} does not apply to example {}", spec.name());
        }
        Ok(())
    };
    let spec = match spec {
        ExampleSpec::Simplex { .. } => {
            unused("genus", genus.is_some())?;
            unused("m", m.is_some())?;
            let n = n.unwrap_or(1);
            if let Some(w) = weights {
                let parsed: Vec<Rational> = w
                    .iter()
                    .map(|s| parse_rational(s).ok_or_else(|| anyhow!("weight {s:?} is not a rational number")))
                    .collect::<Result<_>>()?;
                return Ok(simplex_polytope(n, &parsed)?.to_json());
            }
            ExampleSpec::Simplex { n }
        }
        ExampleSpec::FiberJoin { .. } => {
            unused("m", m.is_some())?;
            unused("weights", weights.is_some())?;
            ExampleSpec::FiberJoin {
                n: n.unwrap_or(1),
                genus: genus.unwrap_or(0),
            }
        }
        ExampleSpec::Hirzebruch { .. } => {
            unused("n", n.is_some())?;
            unused("genus", genus.is_some())?;
            unused("weights", weights.is_some())?;
            ExampleSpec::Hirzebruch { m: m.unwrap_or(1) }
        }
        ExampleSpec::Stiefel => {
            for (flag, present) in [
                ("n", n.is_some()),
                ("genus", genus.is_some()),
                ("m", m.is_some()),
                ("weights", weights.is_some()),
            ] {
                unused(flag, present)?;
            }
            ExampleSpec::Stiefel
        }
    };
    Ok(spec.graph()?.to_json())
}

fn run(cli: Cli) -> Result<(), Exit> {
    let parallelism = match cli.jobs {
        Some(0) => return Err(anyhow!("--jobs must be at least 1").into()),
        Some(1) => Parallelism::Sequential,
        Some(j) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build_global()
                .map_err(|e| anyhow!("thread pool: {e}"))?;
            Parallelism::Rayon
        }
        None => Parallelism::Rayon,
    };
    let ctx = Ctx {
        format: cli.format,
        parallelism,
        strict: cli.strict,
    };

    match cli.command {
        Command::Validate { file } => {
            let g = load_graph(&file)?;
            let report = validate_graph(&g);
            ctx.emit(&report, || table::validation(&report))?;
            if !report.valid {
                let reasons: Vec<&str> = report.failed_reasons().iter().map(|r| r.as_str()).collect();
                return Err(Exit {
                    code: EXIT_INPUT,
                    message: Some(format!("invalid graph: {}", reasons.join(","))),
                });
            }
        }
        Command::Cohomology(input) => {
            let g = load_graph(&input.file)?;
            let cutoff = cutoff_for(&g, input.max_degree);
            let dims = equivariant_dims_with(&g, cutoff, ctx.parallelism).map_err(anyhow::Error::from)?;
            ctx.emit(&dims, || table::series("equivariant", &dims))?;
        }
        Command::Basic(input) => {
            let g = load_graph(&input.file)?;
            let cutoff = cutoff_for(&g, input.max_degree);
            let eq = equivariant_dims_with(&g, cutoff, ctx.parallelism).map_err(anyhow::Error::from)?;
            let (basic, report) = basic_from_equivariant(&eq, g.rank(), cutoff).map_err(anyhow::Error::from)?;
            let out = BasicOutput {
                cutoff,
                equivariant: &eq,
                basic: &basic,
                report: &report,
            };
            ctx.emit(&out, || table::basic(&eq, &basic, &report))?;
            if report.verdict == Verdict::InconclusiveAtCutoff {
                ctx.inconclusive(&format!("basic series has not terminated by degree {cutoff}"))?;
            }
        }
        Command::MorseBott { file, max_degree } => {
            let data: MorseBottData = serde_json::from_str(&read_input(&file)?).map_err(anyhow::Error::from)?;
            let natural = data
                .components
                .iter()
                .map(|c| c.index + c.series.cutoff())
                .max()
                .unwrap_or(0);
            let cutoff = max_degree.unwrap_or(natural.max(20));
            let series = morse_bott_assemble(&data, cutoff).map_err(anyhow::Error::from)?;
            ctx.emit(&series, || table::series("poincare", &series))?;
        }
        Command::Gysin { file, n } => {
            let data: GysinData = serde_json::from_str(&read_input(&file)?).map_err(anyhow::Error::from)?;
            let n = n.unwrap_or_else(|| data.n());
            let betti = gysin_betti(&data, n).map_err(anyhow::Error::from)?;
            ctx.emit(&betti, || table::betti(&betti))?;
        }
        Command::ToricSkeleton { file } => {
            let p = MomentPolytope::from_json(&read_input(&file)?).map_err(anyhow::Error::from)?;
            let g = polytope_skeleton(&p).map_err(anyhow::Error::from)?;
            let json = g.to_json();
            ctx.emit(&json, || table::graph(&g))?;
        }
        Command::Example {
            name,
            n,
            genus,
            m,
            weights,
        } => {
            let json = example(&name, n, genus, m, weights)?;
            // Graph JSON is the interchange format, so it is emitted as JSON
            // in either output mode.
            ctx.emit(&json, || serde_json::to_string_pretty(&json).unwrap_or_default())?;
        }
        Command::Check(input) => {
            let g = load_graph(&input.file)?;
            let cutoff = cutoff_for(&g, input.max_degree);
            let report = run_checks_with(&g, cutoff, ctx.parallelism).map_err(anyhow::Error::from)?;
            ctx.emit(&report, || table::checks(&report))?;
            if let Some(c) = report.checks.iter().find(|c| c.status == CheckStatus::Fail) {
                return Err(Exit {
                    code: EXIT_CHECK_FAILED,
                    message: Some(format!("check {} failed: {}", c.name, c.detail)),
                });
            }
            if report.any_inconclusive() {
                ctx.inconclusive("some checks need a larger --max-degree")?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let rendered = e.render().to_string();
            let first = rendered
                .lines()
                .map(|l| l.trim_start_matches("error:").trim())
                .find(|l| !l.is_empty())
                .unwrap_or("invalid arguments");
            eprintln!("error: {first}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(exit) => {
            if let Some(msg) = exit.message {
                eprintln!("error: {}", msg.replace('\n', " "));
            }
            ExitCode::from(exit.code)
        }
    }
}

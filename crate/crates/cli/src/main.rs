mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::Failure;

#[derive(Parser)]
#[command(name = "adhm", version, about = "Exact computations with ADHM data on P^1")]
struct Cli {
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest charge c accepted before refusing to run.
    #[arg(long, global = true, default_value_t = 8, value_name = "N")]
    max_c: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Source {
    /// Datum JSON file, or `-` for standard input.
    #[arg(long, value_name = "FILE", conflicts_with = "fixture")]
    input: Option<PathBuf>,

    /// Built-in fixture id (see `adhm fixtures`).
    #[arg(long, value_name = "ID")]
    fixture: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// ADHM equation, stability suite, unstable loci and Chern data.
    Check {
        #[command(flatten)]
        source: Source,
    },
    /// The monad on P^3, its framing on l_inf and optional pointwise data.
    Monad {
        #[command(flatten)]
        source: Source,
        /// Evaluate the monad at a point `x0,x1,x2,x3`.
        #[arg(long, value_name = "COORDS")]
        point: Option<String>,
        /// Rank-drop loci along the line through `p;q`, each `x0,x1,x2,x3`.
        #[arg(long, value_name = "P;Q")]
        line: Option<String>,
    },
    /// Dimensions of the deformation complex.
    Deform {
        #[command(flatten)]
        source: Source,
        /// Include the matrices of the two differentials.
        #[arg(long)]
        complex: bool,
    },
    /// Splits a stable datum into its regular and rank-0 parts.
    Du {
        #[command(flatten)]
        source: Source,
    },
    /// Rank-0 data: trace invariants, lines, the charge-1 variety, c = 2 fixtures.
    Rank0 {
        #[command(flatten)]
        source: Source,
        /// Lines `a,b,c,d;...`, each the line x2 = a x0 + b x1, x3 = c x0 + d x1.
        #[arg(long, value_name = "LINES", conflicts_with_all = ["input", "fixture", "charge1", "c2_fixtures"])]
        lines: Option<String>,
        /// Longest trace word (default min(c^2, 8)).
        #[arg(long, value_name = "N")]
        traces: Option<usize>,
        /// Charge-1 datum `x=..;y=..;z=..;w=..` with comma-separated entries.
        #[arg(long, value_name = "SPEC", conflicts_with_all = ["input", "fixture", "c2_fixtures"])]
        charge1: Option<String>,
        /// Run the c = 2 component identities.
        #[arg(long, conflicts_with_all = ["input", "fixture"])]
        c2_fixtures: bool,
    },
    /// Lists the built-in fixtures, or prints one as datum JSON.
    Fixtures {
        /// Fixture id to print.
        id: Option<String>,
    },
}

fn run(cli: Cli) -> Result<serde_json::Value, Failure> {
    let guard = cli.max_c;
    match cli.command {
        Command::Check { source } => commands::check(&commands::load(&source.input, &source.fixture, guard)?),
        Command::Monad { source, point, line } => commands::monad(
            &commands::load(&source.input, &source.fixture, guard)?,
            point.as_deref(),
            line.as_deref(),
        ),
        Command::Deform { source, complex } => {
            commands::deform(&commands::load(&source.input, &source.fixture, guard)?, complex)
        }
        Command::Du { source } => commands::du(&commands::load(&source.input, &source.fixture, guard)?),
        Command::Rank0 { source, lines, traces, charge1, c2_fixtures } => {
            if c2_fixtures {
                commands::c2_fixtures()
            } else if let Some(spec) = charge1 {
                commands::charge1(&spec)
            } else if let Some(spec) = lines {
                commands::lines(&spec, traces, guard)
            } else {
                commands::traces(&commands::load(&source.input, &source.fixture, guard)?, traces)
            }
        }
        Command::Fixtures { id } => commands::fixtures(id.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json || matches!(cli.command, Command::Fixtures { id: Some(_) });
    match run(cli) {
        Ok(report) => {
            let body = if json {
                serde_json::to_string_pretty(&report).expect("serializable") + "\n"
            } else {
                render::text(&report)
            };
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}

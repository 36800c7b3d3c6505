use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pointless_cli::ops::{self, Command, ReportMode, RunConfig};
use pointless_cli::schema::{self, CliError, Document};

/// Finite pointless-topology workbench: load JSON declarations, run one
/// operation, print a deterministic report.
#[derive(Parser)]
#[command(name = "pointless", version, about)]
struct Cli {
    /// Input document; repeat to merge several.
    #[arg(long, global = true)]
    input: Vec<PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    report: Format,

    /// Largest carrier a declared structure may have.
    #[arg(long, global = true, default_value_t = 12)]
    max_size: usize,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0xDE5C)]
    seed: u64,

    /// Run only targets whose label (or a part of it) equals this.
    #[arg(long, global = true)]
    only: Option<String>,

    #[command(subcommand)]
    command: CommandArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Clone, Copy)]
enum CommandArg {
    /// Validate every declaration and re-emit it.
    Validate,
    /// Classify each poset: semilattice, distributive lattice, or neither.
    Classify,
    /// Enumerate the points of each lattice with their extents.
    Points,
    /// Rebuild each lattice from its points and compare.
    Spatial,
    /// Represent each lattice by its poset of join-irreducibles.
    Birkhoff,
    /// Push out each pair of frame morphisms out of a common source.
    Pushout,
    /// List the coidempotents of each quantale.
    Cidem,
    /// List the idempotents above the unit of each quantale.
    Idem,
    /// Build the coidempotent frame of each fully flagged quantale.
    CidemLattice,
    /// Regard each lattice as a quantale with meet as tensor.
    Iota,
    /// Certify the semilattice-side transposition bijection per pair.
    AdjointSlat,
    /// Certify the frame-side transposition bijection per pair.
    AdjointFrm,
    /// Run both sheaf criteria on each presheaf and compare verdicts.
    Sheafcheck,
    /// Sheafify each presheaf and report the unit.
    Sheafify,
    /// Compute the frame of subterminal sheaves over each lattice.
    Subterminals,
    /// Form the day convolution product of each pair of presheaves.
    Dayprod,
    /// Display each structured frame and its coidempotent target.
    CatlocCheck,
    /// Transpose each structured frame to an arrow and round-trip it.
    CatlocEmbed,
    /// Run the built-in verification battery.
    Suite,
}

impl CommandArg {
    fn into_op(self) -> Command {
        match self {
            CommandArg::Validate => Command::Validate,
            CommandArg::Classify => Command::Classify,
            CommandArg::Points => Command::Points,
            CommandArg::Spatial => Command::Spatial,
            CommandArg::Birkhoff => Command::Birkhoff,
            CommandArg::Pushout => Command::Pushout,
            CommandArg::Cidem => Command::Cidem,
            CommandArg::Idem => Command::Idem,
            CommandArg::CidemLattice => Command::CidemLattice,
            CommandArg::Iota => Command::Iota,
            CommandArg::AdjointSlat => Command::AdjointSlat,
            CommandArg::AdjointFrm => Command::AdjointFrm,
            CommandArg::Sheafcheck => Command::Sheafcheck,
            CommandArg::Sheafify => Command::Sheafify,
            CommandArg::Subterminals => Command::Subterminals,
            CommandArg::Dayprod => Command::Dayprod,
            CommandArg::CatlocCheck => Command::CatlocCheck,
            CommandArg::CatlocEmbed => Command::CatlocEmbed,
            CommandArg::Suite => Command::Suite,
        }
    }
}

fn run(cli: &Cli) -> Result<ops::Report, CliError> {
    let mut docs = Vec::new();
    for path in &cli.input {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Input(format!("cannot read {}: {e}", path.display()))
        })?;
        docs.push(Document::parse(&text).map_err(|e| {
            CliError::Input(format!("{}: {e}", path.display()))
        })?);
    }
    let merged = Document::merge(docs)?;
    let ws = schema::resolve(&merged, cli.max_size)?;
    let cfg = RunConfig { max_size: cli.max_size, seed: cli.seed, only: cli.only.clone() };
    ops::run(cli.command.into_op(), &ws, &cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
        Ok(report) => {
            let mode = match cli.report {
                Format::Text => ReportMode::Text,
                Format::Json => ReportMode::Json,
            };
            print!("{}", ops::render(&report, mode));
            if report.has_failure() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}

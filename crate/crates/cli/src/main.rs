use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "dynbrace", version, about = "Dynamical skew braces, skew bracoids and their braidings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArg {
    /// Group preset, e.g. cyclic:4, klein4, prod:cyclic:2,cyclic:2, sym:3
    #[arg(value_name = "GROUP", conflicts_with = "group")]
    positional: Option<String>,
    /// Group preset (same as the positional argument)
    #[arg(long)]
    group: Option<String>,
}

impl GroupArg {
    fn spec(&self) -> Option<&str> {
        self.group.as_deref().or(self.positional.as_deref())
    }
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Maximum number of regular subsets to enumerate
    #[arg(long, default_value_t = 100_000_000)]
    cap: u128,
    /// Worker threads
    #[arg(long)]
    workers: Option<usize>,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    Dsb,
    Bracoid,
    Braiding,
    Quiver,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the maximal (zero-symmetric, or with --full all) structure
    Enumerate {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        common: Common,
        /// Include the initial (non-unital) regular subsets
        #[arg(long)]
        full: bool,
        /// JSON output
        #[arg(long)]
        json: bool,
        /// What to emit with --json
        #[arg(long, value_enum, default_value = "dsb")]
        emit: Emit,
        /// Restrict to one connected component
        #[arg(long)]
        component: Option<usize>,
        /// Name the vertices over cyclic:3 and cyclic:4 as s0.., r0..
        #[arg(long)]
        seed_examples: bool,
    },
    /// Component counts N_s (and with --full in_s) with their relations
    Invariants {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        full: bool,
        #[arg(long)]
        json: bool,
        /// Exit nonzero if a relation fails
        #[arg(long)]
        check: bool,
    },
    /// Check all axioms of a dynamical skew brace or skew bracoid file
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Check this braiding file instead of the derived braiding
        #[arg(long)]
        braiding: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Relabel a connected skew bracoid into a dynamical skew brace
    Parallelise {
        #[arg(long)]
        input: PathBuf,
        /// Base vertex name (default: first vertex)
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Apply to every connected component
        #[arg(long, conflicts_with = "base")]
        per_component: bool,
    },
    /// Ternary heap of a braided groupoid of pairs
    Heap {
        #[arg(long)]
        input: PathBuf,
        /// Vertex to use as the unit of the induced group
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// DOT drawing of an enumerated or given quiver
    ExportDot {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, conflicts_with_all = ["group", "positional"])]
        input: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        full: bool,
        #[arg(long)]
        collapse_labels: bool,
        #[arg(long)]
        component: Option<usize>,
        #[arg(long)]
        seed_examples: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate { group, common, full, json, emit, component, seed_examples } => {
            commands::enumerate(group.spec(), &common, full, json, emit, component, seed_examples)
        }
        Command::Invariants { group, common, full, json, check } => {
            commands::invariants(group.spec(), &common, full, json, check)
        }
        Command::Verify { input, braiding, workers } => commands::verify(&input, braiding.as_deref(), workers),
        Command::Parallelise { input, base, out, per_component } => {
            commands::parallelise(&input, base.as_deref(), out.as_deref(), per_component)
        }
        Command::Heap { input, point, out } => commands::heap(&input, point.as_deref(), out.as_deref()),
        Command::ExportDot { group, input, common, full, collapse_labels, component, seed_examples } => {
            commands::export_dot(group.spec(), input.as_deref(), &common, full, collapse_labels, component, seed_examples)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

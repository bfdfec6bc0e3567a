use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

mod commands;
mod demo;
mod input;
mod report;

use commands::{Globals, PairKind, SideArg, SubcatKind};
use input::Malformed;
use report::RunReport;

/// Balanced pairs, relative resolutions and Gorenstein checks over quiver algebras.
#[derive(Parser, Debug)]
#[command(name = "balpair", version)]
struct Cli {
    /// Prime field characteristic for builtin algebras and the demo corpus.
    #[arg(long, global = true, default_value_t = 2)]
    field: u32,
    /// Seed for generated complexes and maps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Longest resolution considered (defaults to vertices × nilpotency + 2).
    #[arg(long, global = true)]
    max_len: Option<usize>,
    /// Minimum quasi-bicomplex width.
    #[arg(long, global = true)]
    width: Option<usize>,
    /// Directory of complexes documents used instead of generated complexes.
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Algebra invariants.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Validity and cohomology of complexes.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Right or left approximation of a module.
    Approx {
        #[arg(long)]
        task: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Relative resolution (or coresolution) of a module.
    Resolve {
        #[arg(long)]
        task: PathBuf,
        #[arg(long)]
        co: bool,
    },
    /// Balanced-pair checks.
    #[command(subcommand)]
    Balanced(BalancedCmd),
    /// Quasi-bicomplex resolution and augmented total complex.
    Totalize {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        complexes: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SubcatKind::Gproj)]
        subcategory: SubcatKind,
    },
    /// The functor between the two homotopy categories.
    #[command(subcommand)]
    Equiv(EquivCmd),
    /// Gorenstein dimension, GProj and GInj.
    #[command(subcommand)]
    Gorenstein(GorensteinCmd),
    /// The comparison map into the tensor with a dualizing complex.
    #[command(subcommand)]
    Eta(EtaCmd),
    /// Runs every check on the shipped corpus.
    Demo,
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    /// Builds the algebra and reports its invariants.
    Check {
        #[arg(long)]
        algebra: String,
    },
}

#[derive(Subcommand, Debug)]
enum ComplexCmd {
    Check {
        #[arg(long)]
        complexes: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum BalancedCmd {
    Check {
        #[arg(long)]
        pair: PathBuf,
        /// Complexes whose relative acyclicity is compared on both sides.
        #[arg(long)]
        complexes: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum EquivCmd {
    Verify {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        complexes: Option<PathBuf>,
        #[arg(long)]
        y_complexes: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = PairKind::Gorenstein)]
        pair: PairKind,
    },
}

#[derive(Subcommand, Debug)]
enum GorensteinCmd {
    Profile {
        #[arg(long)]
        algebra: String,
    },
    Check {
        #[arg(long)]
        algebra: String,
    },
}

#[derive(Subcommand, Debug)]
enum EtaCmd {
    Verify {
        #[arg(long)]
        algebra: String,
    },
}

fn dispatch(cli: &Cli, g: &Globals) -> Result<Vec<report::Verdict>> {
    match &cli.command {
        Command::Algebra(AlgebraCmd::Check { algebra }) => commands::algebra_check(g, algebra),
        Command::Complex(ComplexCmd::Check { complexes }) => commands::complex_check(complexes),
        Command::Approx { task, side } => commands::approx(task, *side),
        Command::Resolve { task, co } => commands::resolve_cmd(g, task, *co),
        Command::Balanced(BalancedCmd::Check { pair, complexes }) => commands::balanced_check(g, pair, complexes.as_deref()),
        Command::Totalize { algebra, complexes, subcategory } => {
            commands::totalize_cmd(g, algebra.as_deref(), complexes.as_deref(), *subcategory)
        }
        Command::Equiv(EquivCmd::Verify { algebra, complexes, y_complexes, pair }) => {
            commands::equiv_verify(g, algebra.as_deref(), complexes.as_deref(), y_complexes.as_deref(), *pair)
        }
        Command::Gorenstein(GorensteinCmd::Profile { algebra }) => commands::gorenstein_profile_cmd(g, algebra),
        Command::Gorenstein(GorensteinCmd::Check { algebra }) => commands::gorenstein_check(g, algebra),
        Command::Eta(EtaCmd::Verify { algebra }) => commands::eta_verify(g, algebra),
        Command::Demo => demo::run(g),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let g = Globals { field: cli.field, seed: cli.seed, max_len: cli.max_len, width: cli.width, corpus: cli.corpus.clone() };
    let verdicts = match dispatch(&cli, &g) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e:#}");
            return if e.downcast_ref::<Malformed>().is_some() { ExitCode::from(2) } else { ExitCode::from(1) };
        }
    };
    let report = RunReport::new(argv[1..].to_vec(), cli.seed, verdicts);
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if let Some(path) = &cli.json_out {
        if let Err(e) = fs::write(path, format!("{text}\n")) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

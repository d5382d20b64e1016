//! `globengine`: exact computations with partial coactions — law checks,
//! induction from covers, globalization, cover analysis, and partial
//! group actions on finite sets.
//!
//! Exit codes: 0 all targets pass, 1 a mathematical law or criterion
//! fails, 2 input error, 3 internal assertion (never expected).

mod commands;
mod report;
mod workspace;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use commands::PsetAction;
use report::{Report, Status, TargetReport};

#[derive(Parser)]
#[command(name = "globengine", version, about = "Exact globalization engine for partial coactions")]
struct Cli {
    /// Input document(s); defaults to the built-in fixture corpus or the
    /// directory named by GLOBENGINE_FIXTURES.
    #[arg(short, long, global = true)]
    input: Vec<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for the randomized law suites; recorded in every report.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Worker threads for batch targets.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the defining laws of named objects (or `all`).
    Check {
        #[arg(required = true)]
        targets: Vec<String>,
    },
    /// Induce the partial comodule structure on a cover's base.
    Induce {
        #[arg(required = true)]
        targets: Vec<String>,
    },
    /// Decide globalizability and construct the globalization.
    Globalize {
        #[arg(required = true)]
        targets: Vec<String>,
    },
    /// Cover analysis.
    Cover {
        #[command(subcommand)]
        action: CoverCommand,
    },
    /// Partial actions of finite groups on finite sets.
    Pset {
        #[command(subcommand)]
        action: PsetCommand,
    },
    /// Round trips between partial comodules and covers.
    Roundtrip {
        #[arg(required = true)]
        targets: Vec<String>,
    },
    /// Run the law suites (fixtures, adjunction, functoriality, oracles).
    Laws {
        /// Randomized instances per suite.
        #[arg(long, default_value_t = 25)]
        instances: usize,
    },
}

#[derive(Subcommand)]
enum CoverCommand {
    /// Properness, minimality, and the comparison onto the globalization.
    Analyze {
        #[arg(required = true)]
        targets: Vec<String>,
    },
}

#[derive(Subcommand)]
enum PsetCommand {
    /// Verify the partial-action laws.
    Check {
        #[arg(required = true)]
        targets: Vec<String>,
    },
    /// Globalize by the equivalence-class quotient, cross-checked against
    /// the set coequalizer.
    Globalize {
        #[arg(required = true)]
        targets: Vec<String>,
    },
    /// Globalize by the set coequalizer alone.
    Coequalize {
        #[arg(required = true)]
        targets: Vec<String>,
    },
    /// Restrict the globalization back and compare.
    Roundtrip {
        #[arg(required = true)]
        targets: Vec<String>,
    },
    /// Check that the globalization is the orbit of the embedded carrier.
    Minimal {
        #[arg(required = true)]
        targets: Vec<String>,
    },
}

fn run(cli: &Cli) -> Result<Report, String> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let (command_name, results) = match &cli.command {
        Command::Laws { instances } => (
            "laws".to_string(),
            commands::cmd_laws(cli.seed, *instances),
        ),
        other => {
            let ws = workspace::load(&cli.input)?;
            match other {
                Command::Check { targets } => ("check".into(), batched(targets, |chunk| commands::cmd_check(&ws, chunk))),
                Command::Induce { targets } => ("induce".into(), batched(targets, |chunk| commands::cmd_induce(&ws, chunk))),
                Command::Globalize { targets } => (
                    "globalize".into(),
                    batched(targets, |chunk| commands::cmd_globalize(&ws, chunk)),
                ),
                Command::Cover {
                    action: CoverCommand::Analyze { targets },
                } => (
                    "cover analyze".into(),
                    batched(targets, |chunk| commands::cmd_cover_analyze(&ws, chunk)),
                ),
                Command::Pset { action } => {
                    let (name, kind, targets) = match action {
                        PsetCommand::Check { targets } => ("pset check", PsetAction::Check, targets),
                        PsetCommand::Globalize { targets } => {
                            ("pset globalize", PsetAction::Globalize, targets)
                        }
                        PsetCommand::Coequalize { targets } => {
                            ("pset coequalize", PsetAction::Coequalize, targets)
                        }
                        PsetCommand::Roundtrip { targets } => {
                            ("pset roundtrip", PsetAction::Roundtrip, targets)
                        }
                        PsetCommand::Minimal { targets } => {
                            ("pset minimal", PsetAction::Minimal, targets)
                        }
                    };
                    (
                        name.into(),
                        batched(targets, |chunk| commands::cmd_pset(&ws, &kind, chunk)),
                    )
                }
                Command::Roundtrip { targets } => (
                    "roundtrip".into(),
                    batched(targets, |chunk| commands::cmd_roundtrip(&ws, chunk)),
                ),
                Command::Laws { .. } => unreachable!("handled above"),
            }
        }
    };
    Ok(Report {
        command: command_name,
        seed: cli.seed,
        results,
    })
}

/// Evaluates independent targets in parallel, preserving input order.
fn batched<F>(targets: &[String], eval: F) -> Vec<TargetReport>
where
    F: Fn(&[String]) -> Vec<TargetReport> + Sync,
{
    if targets.len() <= 1 {
        eval(targets)
    } else {
        targets
            .par_iter()
            .map(|t| {
                let single = std::slice::from_ref(t);
                eval(single).remove(0)
            })
            .collect()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| run(&cli));
    match outcome {
        Ok(Ok(report)) => {
            match cli.format {
                Format::Json => print!("{}", report.render_json()),
                Format::Text => print!("{}", report.render_text()),
            }
            ExitCode::from(u8::try_from(report.status().exit_code()).expect("small code"))
        }
        Ok(Err(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(u8::try_from(Status::InputError.exit_code()).expect("small code"))
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".to_string());
            eprintln!("internal assertion failed: {message}");
            ExitCode::from(3)
        }
    }
}

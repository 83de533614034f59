use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crinv::jets::SliceKind;
use crinv_cli::commands::{self, ClassifyArgs, Options};
use crinv_cli::{CliError, Report};

#[derive(Parser)]
#[command(name = "crinv", version, about = "Exact CR invariants of the sphere via the ambient metric")]
struct Cli {
    /// Also write the report as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,

    /// Worker threads for the parallel parts.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Add timing and term counts to the report.
    #[arg(long, global = true)]
    profile: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Slice {
    N0,
    N1,
}

#[derive(Subcommand)]
enum Command {
    /// Harmonic extension of a jet.
    Extend {
        #[arg(long)]
        jet: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        /// Highest weight to print.
        #[arg(long)]
        show_weight: Option<i32>,
    },
    /// The Q-operator on a jet, or the generic Q polynomial.
    Q {
        #[arg(long)]
        jet: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        generic: bool,
    },
    /// Evaluate contraction schemes.
    Weyl {
        #[arg(long)]
        n: usize,
        /// Scheme ID as listed by `schemes`.
        #[arg(long)]
        scheme: Option<String>,
        /// Evaluate on this numeric jet instead of the generic one.
        #[arg(long)]
        jet: Option<PathBuf>,
        /// Generic evaluation (the default without --jet).
        #[arg(long)]
        generic: bool,
    },
    /// List canonical contraction schemes.
    Schemes {
        #[arg(long)]
        n: usize,
    },
    /// Project a jet onto a normal-form slice.
    Normalform {
        #[arg(long)]
        jet: PathBuf,
        #[arg(long, value_enum)]
        slice: Slice,
        #[arg(long)]
        max_weight: Option<i32>,
    },
    /// Classify invariant polynomials of a given weight.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        weight: i32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        rotations: usize,
        #[arg(long, default_value_t = 8)]
        unipotents: usize,
        #[arg(long, default_value_t = 10)]
        verify: usize,
    },
    /// Dimension and rank check of the jet isomorphism.
    Jetiso {
        #[arg(long)]
        n: usize,
    },
    /// Run the identity and invariance suite.
    Selfcheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let opts = Options { profile: cli.profile };
    match &cli.command {
        Command::Extend { jet, n, show_weight } => commands::extend(jet, *n, *show_weight, &opts),
        Command::Q { jet, n, generic } => commands::q(jet.as_deref(), *n, *generic, &opts),
        Command::Weyl { n, scheme, jet, generic } => {
            if *generic && jet.is_some() {
                return Err(CliError::Usage("--generic and --jet are exclusive".into()));
            }
            commands::weyl(*n, scheme.as_deref(), jet.as_deref(), &opts)
        }
        Command::Schemes { n } => commands::schemes(*n, &opts),
        Command::Normalform { jet, slice, max_weight } => {
            let kind = match slice {
                Slice::N0 => SliceKind::N0,
                Slice::N1 => SliceKind::N1,
            };
            commands::normalform(jet, kind, *max_weight, &opts)
        }
        Command::Classify { n, weight, seed, rotations, unipotents, verify } => commands::classify(
            &ClassifyArgs {
                n: *n,
                weight: *weight,
                seed: *seed,
                rotations: *rotations,
                unipotents: *unipotents,
                verify: *verify,
            },
            &opts,
        ),
        Command::Jetiso { n } => commands::jetiso(*n, &opts),
        Command::Selfcheck { n, seed, samples } => commands::selfcheck(*n, *seed, *samples, &opts),
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    print!("{}", report.to_text());
    if let Some(path) = &cli.json {
        std::fs::write(path, report.to_json())
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: cannot configure {t} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let started = Instant::now();
    let result = run(&cli).and_then(|mut report| {
        if let Some(p) = report.profile.as_mut() {
            p.elapsed_ms = started.elapsed().as_millis();
        }
        if report.passed() {
            Ok(report)
        } else {
            Err(CliError::CheckFailed(Box::new(report)))
        }
    });
    let outcome = match &result {
        Ok(report) => emit(&cli, report),
        Err(CliError::CheckFailed(report)) => emit(&cli, report).and(Err(CliError::CheckFailed(report.clone()))),
        Err(_) => Ok(()),
    };
    match result.and(outcome) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::CheckFailed(r) = &e {
                if let Some(c) = r.first_failure() {
                    eprintln!("first counterexample: {}", serde_json::to_string(c).expect("serializable"));
                }
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

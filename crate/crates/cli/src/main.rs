use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use novikov_cli::commands::{
    cmd_check, cmd_examples, cmd_novikov, cmd_spectrum, cmd_ss, load_document, parse_counts, parse_points,
    parse_reals, CheckSource, CommandError, ExitStatus, Format, Output, RunConfig, StrategyKind,
};
use novikov_core::algebra::{DEFAULT_PRIME, DEFAULT_TRIALS};

/// Novikov numbers, Morse-Bott certificates, deformation spectral sequences
/// and deformed Laplacian spectra.
///
/// DOC arguments are JSON files or names of bundled examples
/// (see `novikov examples`).
#[derive(Parser)]
#[command(name = "novikov", version)]
struct Cli {
    /// Seed for randomized rank computations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = StrategyArg::Randomized)]
    strategy: StrategyArg,
    /// Prime for randomized ranks, in (2^30, 2^32).
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS)]
    trials: u32,
    /// Kernel threshold for Laplacian eigenvalues.
    #[arg(long, global = true, default_value_t = 1e-8)]
    epsilon: f64,
    /// Truncation order when linearizing a complex.
    #[arg(long, global = true, default_value_t = 4)]
    order: usize,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Randomized,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    #[value(name = "json-like")]
    JsonLike,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Novikov numbers of a complex, optionally probing rational points.
    Novikov {
        doc: String,
        /// Points such as "2;3;-1" or "1,2;3,1/2".
        #[arg(long)]
        probes: Option<String>,
    },
    /// Check the (1+λ)Q(λ) factorization for Morse-Bott data.
    Check {
        morse: String,
        /// Complex supplying the Novikov numbers.
        complex: Option<String>,
        /// Novikov numbers given directly, e.g. "1,2,1".
        #[arg(long, conflicts_with = "complex")]
        betti: Option<String>,
    },
    /// Pages of the deformation spectral sequence.
    Ss {
        doc: String,
        /// Base point when linearizing a complex (default: all ones).
        #[arg(long)]
        point: Option<String>,
        /// Last page to compute (default: the truncation order).
        #[arg(long)]
        pages: Option<usize>,
    },
    /// Deformed Laplacian spectra and the kernel-vs-exact table.
    Spectrum {
        doc: String,
        /// Comma-separated values of s = t·α.
        #[arg(long, default_value = "")]
        s: String,
        /// Rational probe mode: exact dimensions at these points instead.
        #[arg(long)]
        probes: Option<String>,
    },
    /// List the bundled examples, or print one as JSON.
    Examples { name: Option<String> },
}

fn run(cli: &Cli) -> Result<Output, CommandError> {
    let cfg = RunConfig {
        seed: cli.seed,
        strategy: match cli.strategy {
            StrategyArg::Randomized => StrategyKind::Randomized,
            StrategyArg::Exact => StrategyKind::Exact,
        },
        prime: cli.prime,
        trials: cli.trials,
        epsilon: cli.epsilon,
        order: cli.order,
        format: match cli.format {
            FormatArg::Table => Format::Table,
            FormatArg::JsonLike => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
    };
    match &cli.command {
        Command::Novikov { doc, probes } => {
            let probes = probes.as_deref().map(parse_points).transpose()?.unwrap_or_default();
            cmd_novikov(&load_document(doc)?, &probes, &cfg)
        }
        Command::Check { morse, complex, betti } => {
            let source = match (complex, betti) {
                (Some(c), _) => CheckSource::Complex(load_document(c)?),
                (None, Some(b)) => CheckSource::Betti(parse_counts(b)?),
                (None, None) => return Err(CommandError::Input("give a complex or --betti".into())),
            };
            cmd_check(&load_document(morse)?, &source, &cfg)
        }
        Command::Ss { doc, point, pages } => {
            let point = match point {
                Some(p) => {
                    let mut pts = parse_points(p)?;
                    if pts.len() != 1 {
                        return Err(CommandError::Input("--point takes a single point".into()));
                    }
                    Some(pts.remove(0))
                }
                None => None,
            };
            cmd_ss(&load_document(doc)?, point.as_deref(), *pages, &cfg)
        }
        Command::Spectrum { doc, s, probes } => {
            let doc = load_document(doc)?;
            match probes {
                Some(p) => cmd_novikov(&doc, &parse_points(p)?, &cfg),
                None => cmd_spectrum(&doc, &parse_reals(s)?, &cfg),
            }
        }
        Command::Examples { name } => cmd_examples(name.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.text),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(ExitStatus::Malformed.code());
            }
            ExitCode::from(out.status.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status().code())
        }
    }
}

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use volent_core::Error;

mod render;

use render::Format;

/// Volume entropy of symmetric surface group presentations.
#[derive(Debug, Parser)]
#[command(name = "volent", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Markov,
    Compacted,
    Divided,
    Supercompacted,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print one of the matrices of the reduction chain.
    BuildMatrix {
        #[arg(long)]
        n: usize,
        /// Use the orientable presentation (even ranks only).
        #[arg(long)]
        orientable: bool,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Compute lambda_n and the volume entropy along every route.
    Entropy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        orientable: bool,
        #[arg(long, default_value_t = volent_core::spectral::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        /// Also show the entropy in bits.
        #[arg(long)]
        base2: bool,
    },
    /// Run the cross-check battery for ranks 3..=n-max.
    Verify {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Tabulate lambda_n, the entropy and the bounds over a range of ranks.
    Table {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// Only even ranks, which carry an orientable presentation.
        #[arg(long)]
        orientable_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

/// Rendered output and whether the command succeeded.
struct Output {
    text: String,
    ok: bool,
}

fn width_hint() -> Option<usize> {
    std::env::var("VOLENT_WIDTH").ok()?.trim().parse().ok()
}

fn run(cmd: Command) -> Result<Output, Error> {
    match cmd {
        Command::BuildMatrix { n, orientable, which, format } => {
            let text = render::matrix(n, orientable, which, format, width_hint())?;
            Ok(Output { text, ok: true })
        }
        Command::Entropy { n, orientable, tol, format, base2 } => {
            let spec = volent_core::PresentationSpec::new(n, orientable)?;
            let report = volent_core::volume_entropy(&spec, tol)?;
            Ok(Output {
                text: render::report(&report, format, base2),
                ok: report.consistent,
            })
        }
        Command::Verify { n_max, format } => {
            let results = volent_core::verify(n_max)?;
            Ok(Output {
                ok: results.iter().all(|r| r.passed),
                text: render::checks(&results, format),
            })
        }
        Command::Table { from, to, orientable_only, format } => {
            let policy = if orientable_only {
                volent_core::TablePolicy::OrientableOnly
            } else {
                volent_core::TablePolicy::AllRanks
            };
            let rows = volent_core::entropy_table(from, to, policy, 1e-12)?;
            Ok(Output { text: render::table(&rows, format), ok: true })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

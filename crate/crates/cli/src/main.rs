use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use slspec::lattice::DEFAULT_MAX_ELEMENTS;
use slspec_cli::{cmd_analyze, cmd_corpus, cmd_spec_dump, cmd_verify, render, CliError, Flags};

/// Secondary-like spectra of finite modules and checks of their theory.
#[derive(Parser)]
#[command(name = "slspec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include counterexample payloads for FAIL results.
    #[arg(long, global = true)]
    witnesses: bool,
    /// Size guard on |M|.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_MAX_ELEMENTS)]
    max_elements: usize,
    /// Full powerset enumeration up to this many spectrum points.
    #[arg(long, global = true, value_name = "N")]
    subset_cap: Option<usize>,
    /// Seed for subsampling beyond the caps.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Read instances as finite Z-modules.
    #[arg(long = "over-Z", global = true)]
    over_z: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Spectra, topology, maps and module flags of one instance.
    Analyze {
        /// Instance, e.g. "Z8 | (0)".
        instance: String,
    },
    /// Check registry results on one instance.
    Verify {
        instance: String,
        /// Result ids, or "all" (the default).
        results: Vec<String>,
    },
    /// Check results over a corpus file, or the built-in default corpus.
    Corpus {
        file: Option<PathBuf>,
        /// Comma-separated result ids; all when absent.
        #[arg(long, value_delimiter = ',')]
        results: Option<Vec<String>>,
    },
    /// List the result registry and default budgets.
    SpecDump,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = cli.common;
    let flags = Flags {
        json: c.json,
        witnesses: c.witnesses,
        max_elements: c.max_elements,
        subset_cap: c.subset_cap,
        seed: c.seed,
        over_z: c.over_z,
    };
    let report = match cli.command {
        Command::Analyze { instance } => cmd_analyze(&instance, &flags),
        Command::Verify { instance, results } => cmd_verify(&instance, &results, &flags),
        Command::Corpus { file, results } => {
            let results = results.map(|ids| ids.into_iter().filter(|s| !s.is_empty()).collect());
            cmd_corpus(file.as_deref(), results, &flags)
        }
        Command::SpecDump => Ok(cmd_spec_dump(&flags)),
    };
    match report {
        Ok(report) => {
            let (out, code) = render(report, &flags);
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err(e) => fail(e),
    }
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

//! `schubreg`: regularity, Grothendieck polynomials, tableaux and ladders from the command line.

mod commands;

use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schubreg::{Partition, Permutation};
use schubreg_verify::Class;

#[derive(Parser, Debug)]
#[command(name = "schubreg", version, about = "Castelnuovo-Mumford regularity of Schubert and ladder determinantal ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for sweeps. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,

    /// Cap on the number of enumerated objects.
    #[arg(long, global = true, default_value_t = schubreg::tableaux::DEFAULT_BUDGET)]
    pub budget: u64,

    /// Seed for the random ladder and polynomial corpora.
    #[arg(long, global = true, default_value_t = schubreg_verify::DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Input {
    /// One-line notation, e.g. "1 4 6 2 3 7 5" or 1462375.
    #[arg(long, conflicts_with_all = ["partition", "ladder"])]
    pub perm: Option<Permutation>,

    /// Second permutation w of a pair (v, w); --perm is v.
    #[arg(long, requires = "perm")]
    pub perm2: Option<Permutation>,

    /// Partition such as "(3,2,2)"; needs --descent.
    #[arg(long, requires = "descent", conflicts_with = "ladder")]
    pub partition: Option<Partition>,

    #[arg(long, requires = "partition")]
    pub descent: Option<usize>,

    /// JSON ladder file.
    #[arg(long)]
    pub ladder: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Regularity of S/I for a Schubert, Kazhdan-Lusztig or ladder ideal.
    Reg {
        #[command(flatten)]
        input: Input,
        /// Cross-check the closed form against an independent computation.
        #[arg(long)]
        verify: bool,
    },
    /// Grothendieck polynomial of w, or G_{v,w}(t) for a pair.
    Groth {
        #[command(flatten)]
        input: Input,
        /// Double polynomial in x and y.
        #[arg(long)]
        double: bool,
    },
    /// K-polynomial of the Schubert or Kazhdan-Lusztig ideal.
    Kpoly {
        #[command(flatten)]
        input: Input,
    },
    /// Rothe diagram, code, essential set and pattern classes.
    Diagram {
        #[command(flatten)]
        input: Input,
    },
    /// Flagged set-valued fillings of D(w) or of the shape of v.
    Tableau {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = TableauKind::Fsvd)]
        kind: TableauKind,
        /// Only the explicit maximal filling.
        #[arg(long)]
        construct: bool,
    },
    /// Associated permutations, presentation and regularity of a ladder file.
    Ladder {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        verify: bool,
    },
    /// Exhaustive check of one formula over a class of permutations.
    Verify {
        #[arg(long)]
        class: Class,
        #[arg(long)]
        n: usize,
        /// Raise the largest allowed n.
        #[arg(long)]
        ceiling: Option<usize>,
    },
    /// Macaulay2 script for the ideal.
    Export {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableauKind {
    Fsvd,
    Fsvt,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    panic::set_hook(Box::new(|_| {}));
    let outcome = panic::catch_unwind(|| commands::run(&cli));
    match outcome {
        Ok(Ok(out)) => {
            let rendered = match cli.format {
                Format::Text => out.text,
                Format::Json => commands::render_json(&out.json),
            };
            print!("{rendered}");
            if !rendered.ends_with('\n') {
                println!();
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 2 } else { 1 })
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}

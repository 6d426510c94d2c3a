//! `binform`: build semi-invariants of binary forms, classify polynomials and
//! evaluate their identities on Appell sequences.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use binform::appell::{BinomialSum, Family, FamilyAssignment};
use binform::catalog::Construction;
use binform::exact_poly::{Series, Style};
use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "binform", version, about = "Exact semi-invariants of binary forms and Appell identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print an Appell polynomial.
    Poly {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "plain")]
        format: Style,
    },
    /// Build a catalog construction.
    Build {
        #[arg(long)]
        construction: Construction,
        #[arg(long)]
        order: u32,
        /// Coefficient series, e.g. `b,c`; defaults to the construction's own.
        #[arg(long, value_delimiter = ',')]
        series: Vec<Series>,
        #[arg(long, default_value = "plain")]
        format: Style,
        /// Also print the comparisons with printed closed formulas.
        #[arg(long)]
        checks: bool,
    },
    /// Classify an expression: semi-invariant, invariant, degree, weight, ord, proper.
    Check {
        /// A polynomial literal or the path of a file containing one.
        #[arg(long)]
        expr: String,
        #[arg(long)]
        order: u32,
        #[arg(long)]
        verbose: bool,
    },
    /// Substitute Appell families into a construction and report its norm.
    Verify {
        #[arg(long)]
        construction: Construction,
        #[arg(long)]
        order: u32,
        /// Items such as `a=B b=E`.
        #[arg(long, num_args = 1.., required = true)]
        assign: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Norm table over a range of orders.
    Scan {
        #[arg(long)]
        construction: Construction,
        #[arg(long, num_args = 1.., required = true)]
        assign: Vec<String>,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// JSON output file, or `-` for stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a conjecture as printed, order by order.
    Conjecture {
        /// euler-dv, hermite-discr, be-dv, or b-shift, e-shift, h-shift for the
        /// rearranged identities with powers.
        #[arg(long)]
        name: String,
        #[arg(long)]
        from: Option<u32>,
        #[arg(long)]
        to: u32,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a binomial sum that should vanish.
    Binomial {
        /// tr, ch, tr2, trbar2, ch4, or ones:<construction>.
        #[arg(long)]
        sum: BinomialSum,
        #[arg(long)]
        from: Option<u32>,
        #[arg(long)]
        to: u32,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache_dir = std::env::var_os("BINFORM_CACHE_DIR").map(PathBuf::from);
    if let Some(dir) = &cache_dir {
        commands::load_cache(dir);
    }
    let code = match commands::run(cli.command) {
        Ok(outcome) => outcome.code(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    };
    if let Some(dir) = &cache_dir {
        commands::save_cache(dir);
    }
    code
}

fn parse_assignment(items: &[String]) -> Result<FamilyAssignment, String> {
    FamilyAssignment::parse_items(items.iter().flat_map(|s| s.split(',')).filter(|s| !s.is_empty()))
}

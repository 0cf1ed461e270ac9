mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ohtsuki_core::harness::{OutputFormat, Report, ReportHeader, RunConfig};
use ohtsuki_core::skein::SkeinLimits;
use ohtsuki_core::Error;

/// Ohtsuki invariants, skein polynomials and quantum invariants at odd primes.
#[derive(Debug, Parser)]
#[command(name = "ohtsuki", version, about)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Series truncation order, or highest λ requested.
    #[arg(long, global = true, default_value_t = 2)]
    order: usize,
    /// Cyclotomic precision M (coefficients mod r^M).
    #[arg(long = "precision-m", global = true)]
    precision_m: Option<u32>,
    /// Comma-separated odd primes.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = [5u64, 7, 11, 13])]
    primes: Vec<u64>,
    #[arg(long, global = true, default_value_t = 400)]
    max_crossings: usize,
    /// Deepest parallel cable any command may build.
    #[arg(long, global = true, default_value_t = 5)]
    max_cable: usize,
    /// Directory of the on-disk Jones cache; OHTSUKI_CACHE_DIR overrides it.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Corpus file used to resolve entry names; the bundled corpus by default.
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Which {
    Jones,
    Conway,
    Phi,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Jones polynomial, Conway polynomial or Φ of a diagram.
    Invariant {
        /// `braid:<n>:<word>`, `pd:<code>`, `X(...)` or a corpus name.
        entry: String,
        #[arg(long, value_enum, default_value_t = Which::Jones)]
        which: Which,
    },
    /// λ₁, λ₂ (and λ₃) of 1/n surgery on a knot or surgery on a unit-framed ASL.
    Lambda {
        entry: String,
        /// Surgery coefficient 1/n on a knot.
        #[arg(long, allow_negative_numbers = true, conflicts_with = "framing")]
        n: Option<i64>,
        /// Comma-separated unit framings, one per component.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        framing: Option<Vec<i64>>,
    },
    /// Congruence and Casson checks over every knot of the corpus.
    Sweep {
        /// Comma-separated surgery denominators.
        #[arg(long = "n", value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-2i64, -1, 1, 2])]
        ns: Vec<i64>,
    },
    /// Residue checks at odd primes.
    Fermat {
        #[command(subcommand)]
        sub: FermatCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum FermatCommand {
    /// Expansion of the weighted Gauss sum quotient against g_{l,n}.
    Gauss {
        #[arg(long = "l", default_value_t = 1)]
        l: u32,
    },
    /// Expansion of H_{i,f}(q) against the closed-form limits.
    Hlimit {
        #[arg(long, default_value_t = 3)]
        max_i: usize,
    },
    /// Expansion of τ_r against λ_n.
    Tau {
        #[arg(long)]
        entry: String,
        /// Comma-separated unit framings; +1 on every component by default.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        framing: Option<Vec<i64>>,
        #[arg(long)]
        prime: u64,
    },
    /// Self-test of the residue framework on classical Fermat functions.
    Fixtures {
        #[arg(long, default_value_t = 199)]
        max_prime: u64,
    },
}

impl GlobalOpts {
    fn config(&self) -> RunConfig {
        RunConfig {
            order: self.order,
            precision_m: self.precision_m,
            primes: self.primes.clone(),
            limits: SkeinLimits { max_crossings: self.max_crossings, ..SkeinLimits::default() },
            max_cable: self.max_cable,
            cache_dir: self.cache.clone(),
            format: match self.format {
                Format::Text => OutputFormat::Text,
                Format::Json => OutputFormat::Json,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = cli.opts.config();
    let header = ReportHeader::new(std::env::args().collect(), &config);
    match commands::run(&cli.command, &config, cli.opts.corpus.as_deref()) {
        Ok(out) => {
            match config.format {
                OutputFormat::Text => print!("{}{}", header.text(), out.text),
                OutputFormat::Json => {
                    let report = Report { header, pass: out.pass, body: out.body };
                    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
                }
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Divisibility(_)) {
                eprintln!("hint: raise the cyclotomic precision with --precision-m");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

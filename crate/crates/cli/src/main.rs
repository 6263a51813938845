mod commands;
mod config;
mod report;
mod suites;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{OutputFormat, RunConfig, PRECISION_ENV};
use mellin_core::criticality::SignConvention;
use suites::Suite;

/// Mellin transforms of Legendre functions: exact polynomial factors,
/// critical-line zeros, closed forms and verification suites.
#[derive(Parser, Debug)]
#[command(name = "mellin", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, env = PRECISION_ENV, default_value_t = 256)]
    precision: u32,
    /// Default case tolerance is 10^EXP.
    #[arg(long = "tolerance-exponent", global = true, default_value_t = -20, allow_negative_numbers = true)]
    tolerance_exponent: i32,
    /// Largest n exercised by the verification suites.
    #[arg(long = "max-n", global = true, default_value_t = 40)]
    max_n: u32,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Seed for the random parameter tuples of the appendix suite.
    #[arg(long, global = true, default_value_t = 20_240_601)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    /// (-1)^floor(n/2) for every even m.
    Stated,
    /// (-1)^deg p.
    Degree,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact polynomial factor p_n^m(s) as ascending "num/den" coefficients.
    Poly {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        m: u32,
    },
    /// Certified zeros of p_n^m and their distance from Re s = 1/2.
    Zeros {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        m: u32,
    },
    /// M_n^m(s) by the closed form or a named representation.
    Mellin {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        m: u32,
        /// Complex argument, e.g. `3/2`, `2+3i`, `0.5-1.25i`.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Representation (L2a..L3c, P1, P3, L8, COS_QUAD, TANH_QUAD, GENFUN), `closed` or `all`.
        #[arg(long, default_value = "closed")]
        rep: String,
    },
    /// Generating function partial sums against its closed lines.
    Genfun {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 60)]
        nmax: u32,
    },
    /// Fractional-part integrals and the I_j / J_j transforms.
    Fracpart {
        #[command(subcommand)]
        which: commands::FracCommand,
    },
    /// Run a verification suite; exit 1 if any case fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Sign used by the functional-equation suite.
        #[arg(long, value_enum, default_value_t = SignArg::Stated)]
        sign: SignArg,
    },
    /// Emit a table of polynomials, zeros or transform values.
    Table {
        #[arg(value_enum)]
        what: table::TableKind,
        #[arg(long, default_value_t = 0)]
        from: u32,
        #[arg(long)]
        to: u32,
        /// Rows for every m in 0..=m-max (even m only for zeros).
        #[arg(long = "m-max", default_value_t = 0)]
        m_max: u32,
        /// Argument for the transforms table.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        s: String,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure modes mapped to exit codes.
pub enum Failure {
    /// Exit 1.
    Verification,
    /// Exit 2: bad input or a precondition that does not hold.
    Domain(String),
    /// Exit 2 with path context.
    Io(String),
}

impl From<mellin_core::Error> for Failure {
    fn from(e: mellin_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = cli.global;
    let cfg = RunConfig {
        precision_bits: g.precision,
        tolerance_exponent: g.tolerance_exponent,
        max_n: g.max_n,
        output_format: g.format,
        seed: g.seed,
    };
    cfg.validate().map_err(Failure::Domain)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Poly { n, m } => commands::poly(&cfg, n, m, &mut out),
        Command::Zeros { n, m } => commands::zeros(&cfg, n, m, &mut out),
        Command::Mellin { n, m, s, rep } => commands::mellin(&cfg, n, m, &s, &rep, &mut out),
        Command::Genfun { t, s, nmax } => commands::genfun(&cfg, &t, &s, nmax, &mut out),
        Command::Fracpart { which } => commands::fracpart(&cfg, which, &mut out),
        Command::Verify { suite, sign } => {
            let sign = match sign {
                SignArg::Stated => SignConvention::Stated,
                SignArg::Degree => SignConvention::Degree,
            };
            commands::verify(&cfg, suite, suites::SuiteOptions { sign }, &mut out)
        }
        Command::Table { what, from, to, m_max, s, out: path } => {
            let rows = table::build(&cfg, what, from, to, m_max, &s)?;
            match path {
                Some(path) => {
                    let mut f = std::fs::File::create(&path)
                        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                    table::write(&rows, cfg.output_format, &mut f)
                        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
                }
                None => table::write(&rows, cfg.output_format, &mut out).map_err(|e| Failure::Io(format!("stdout: {e}"))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Domain(msg)) | Err(Failure::Io(msg)) => {
            let _ = std::io::stdout().flush();
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

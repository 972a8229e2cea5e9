//! Batch front-end for `niep-core`: JSON in, JSON or CSV out.
//!
//! Exit codes: 0 success, 2 condition not met (or `verify` mismatch), 3 input
//! error, 4 internal failure such as an oracle mismatch on a construction.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use niep_core::block::Sign;
use niep_core::realize::CheckMode;
use niep_core::RealMatrix;

pub mod commands;
pub mod input;
pub mod sweep;

use commands::{BuildOptions, Outcome};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] niep_core::Error),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 3,
            CliError::Core(e) if e.is_condition_failure() => 2,
            CliError::Core(e) if e.is_internal() => 4,
            CliError::Core(_) => 3,
            CliError::Verification(_) | CliError::Io(_) | CliError::Csv(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "niep", version, about = "Nonnegative matrices with prescribed spectra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; `csv` writes the constructed matrix (or the sweep).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Formula,
    Constructive,
}

#[derive(Debug, Clone, Args)]
pub struct BuildArgs {
    /// Scale applied to the skew part, in [0, 1].
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    pub sign: SignArg,
}

impl BuildArgs {
    fn options(&self) -> BuildOptions {
        BuildOptions {
            gamma: self.gamma,
            sign: self.sign.into(),
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// 4×4 realization of two reals and a conjugate pair.
    Realize4 {
        /// JSON list of four eigenvalues (`-` for stdin).
        input: PathBuf,
        /// Absolute oracle tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Realization of `{1, r, a ± ib}` from `{"r":..,"a":..,"b":..}`.
    RealizeRegion {
        input: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Sweep a grid of `(r, a, b)` points to CSV.
    RegionSweep {
        /// `r=lo:hi:steps,a=lo:hi:steps,b=lo:hi:steps`; omitted axes default
        /// to 21 steps over [0,1], [-1,1], [-1,1].
        #[arg(long)]
        grid: Option<String>,
    },
    /// Block build from explicit `S` and `C`.
    Build {
        input: PathBuf,
        #[command(flatten)]
        opts: BuildArgs,
        /// Last-row split for odd builds, e.g. `[[3,3],[3,0],[1,0]]`.
        #[arg(long)]
        split: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Sufficient-condition check for a circulant/skew spectrum pair.
    Check {
        input: PathBuf,
        #[command(flatten)]
        opts: BuildArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Constructive)]
        mode: ModeArg,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Rank-one augmentation with Perron root `rho`.
    Augment {
        input: PathBuf,
        #[command(flatten)]
        opts: BuildArgs,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Compare a matrix's spectrum with a claimed list.
    Verify {
        input: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn check_tol(tol: Option<f64>) -> Result<Option<f64>, CliError> {
    match tol {
        Some(t) if !(t.is_finite() && t >= 0.0) => Err(CliError::Input(format!(
            "tolerance {t} must be finite and nonnegative"
        ))),
        _ => Ok(tol),
    }
}

fn open_out(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            CliError::Input(format!("creating {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

/// Matrix rows as CSV, shortest round-trip float formatting.
pub fn write_matrix_csv<W: Write>(m: &RealMatrix, out: W) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    for i in 0..m.rows() {
        w.write_record(m.row(i).iter().map(|x| x.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

fn emit(outcome: &Outcome, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    match format {
        Format::Json => {
            let mut w = open_out(out)?;
            serde_json::to_writer(&mut w, &outcome.report)
                .map_err(|e| CliError::Io(e.into()))?;
            writeln!(w)?;
            w.flush()?;
        }
        Format::Csv => {
            let Some(m) = &outcome.matrix else {
                return Err(CliError::Input(
                    "this result has no matrix to write as CSV".into(),
                ));
            };
            write_matrix_csv(m, open_out(out)?)?;
        }
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<u8, CliError> {
    let out = cli.out.as_deref();
    let outcome = match cli.command {
        Command::RegionSweep { grid } => {
            if cli.format == Some(Format::Json) {
                return Err(CliError::Input("region-sweep only writes CSV".into()));
            }
            let grid = match grid {
                Some(g) => sweep::Grid::parse(&g)?,
                None => sweep::Grid::default(),
            };
            let rows = sweep::sweep(&grid)?;
            sweep::write_csv(&rows, open_out(out)?)?;
            let failures = rows.iter().filter(|r| r.is_failure()).count();
            if failures > 0 {
                log::error!("{failures} in-region points failed verification");
                return Ok(4);
            }
            return Ok(0);
        }
        Command::Realize4 { input, tol } => commands::realize4(&input, check_tol(tol)?)?,
        Command::RealizeRegion { input, tol } => {
            commands::realize_region_point(&input, check_tol(tol)?)?
        }
        Command::Build {
            input,
            opts,
            split,
            tol,
        } => {
            let split = split.as_deref().map(input::parse_split).transpose()?;
            commands::build(&input, opts.options(), split, check_tol(tol)?)?
        }
        Command::Check {
            input,
            opts,
            mode,
            tol,
        } => {
            let mode = match mode {
                ModeArg::Formula => CheckMode::Formula,
                ModeArg::Constructive => CheckMode::Constructive,
            };
            commands::check(&input, opts.options(), mode, check_tol(tol)?)?
        }
        Command::Augment { input, opts, tol } => {
            commands::augment(&input, opts.options(), check_tol(tol)?)?
        }
        Command::Verify { input, tol } => commands::verify(&input, check_tol(tol)?)?,
    };
    emit(&outcome, cli.format.unwrap_or(Format::Json), out)?;
    Ok(outcome.code)
}

/// Parses arguments, runs the command and returns the exit status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

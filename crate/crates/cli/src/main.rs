//! `kunzite`: command-line front end for the characteristic-p algebra
//! kernel.
//!
//! Subcommands: `gb` (reduced Groebner bases), `length` (Artinian or
//! localized lengths), `ehk` (Hilbert-Kunz series and multiplicity
//! estimates), `fsig` (Frobenius splitting numbers and F-signature
//! estimates), `probe` (multi-locus sweeps from a JSON config).
//!
//! Exit codes: 0 success, 1 input error, 2 resource limit or output I/O
//! failure, 3 internal invariant violation.

mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use kunzite_core::fsplit::{fsig_series, ParameterChainSpec, DEFAULT_T_MAX};
use kunzite_core::hilbert::{finite_length, local_length_at_prime};
use kunzite_core::hk::{ehk_estimate, hk_series};
use kunzite_core::probe::run_probe;
use kunzite_core::{ErrorClass, MonomialOrder};

/// A failure with the process exit code it maps to.
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }

    pub fn resource(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }
}

impl From<kunzite_core::Error> for CliError {
    fn from(err: kunzite_core::Error) -> Self {
        let code = match err.class() {
            ErrorClass::Input => 1,
            ErrorClass::ResourceLimit => 2,
            ErrorClass::Internal => 3,
        };
        CliError { code, message: err.to_string() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "kunzite",
    version,
    about = "Exact characteristic-p algebra: Groebner bases, Hilbert-Kunz \
             series, Frobenius splitting numbers, and semicontinuity probes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Groebner basis of an ideal in the presented ring
    /// (the presentation's relations are folded in).
    Gb {
        /// Ring description file (JSON).
        #[arg(long)]
        ring: PathBuf,
        /// Comma-separated generators, or `m` for all the variables.
        #[arg(long)]
        ideal: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Work budget (S-pair reductions) before giving up.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Vector-space length of R/I, localized at a prime when one is given.
    Length {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        ideal: String,
        /// Comma-separated generators of a homogeneous prime.
        #[arg(long)]
        prime: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Hilbert-Kunz length series for e = 1..=emax with a two-point
    /// multiplicity estimate.
    Ehk {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        ideal: String,
        /// Localize every length at this prime.
        #[arg(long)]
        prime: Option<String>,
        #[arg(long, default_value_t = 3)]
        emax: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Frobenius splitting numbers b_q for e = 1..=emax with an F-signature
    /// estimate, along the parameter chain of the given system of
    /// parameters.
    Fsig {
        #[arg(long)]
        ring: PathBuf,
        /// Comma-separated homogeneous system of parameters.
        #[arg(long)]
        sop: String,
        #[arg(long, default_value_t = 3)]
        emax: u32,
        /// Chain cap: candidate t values tried before giving up.
        #[arg(long, default_value_t = DEFAULT_T_MAX)]
        tmax: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multi-locus probe (semicontinuity and convergence sweeps) from a
    /// JSON config. Reports are JSON only.
    Probe {
        /// Probe config file (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Parallel locus evaluations.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Gb { ring, ideal, format, out, budget } => {
            let pres = config::load_ring(&ring)?;
            let handle = config::build_ideal(&pres, &ideal, budget)?;
            let basis = handle
                .including_relations()?
                .groebner_basis(MonomialOrder::Grevlex)?;
            let strings: Vec<String> = basis.iter().map(|g| g.to_string()).collect();
            let rendered = match format {
                Format::Json => report::to_json(&report::GbDto {
                    p: pres.ring().characteristic(),
                    vars: pres.ring().variables().to_vec(),
                    basis: strings,
                }),
                Format::Csv => report::gb_csv(&strings),
            };
            write_output(out.as_deref(), &rendered)
        }
        Command::Length { ring, ideal, prime, format, out, budget } => {
            let pres = config::load_ring(&ring)?;
            let handle = config::build_ideal(&pres, &ideal, budget)?;
            let length = match prime {
                Some(spec) => {
                    let prime = config::build_ideal(&pres, &spec, budget)?;
                    local_length_at_prime(&handle, &prime)?
                }
                None => finite_length(&handle.including_relations()?)?,
            };
            let rendered = match format {
                Format::Json => report::to_json(&report::LengthDto { length }),
                Format::Csv => format!("length\n{length}\n"),
            };
            write_output(out.as_deref(), &rendered)
        }
        Command::Ehk { ring, ideal, prime, emax, format, out, budget } => {
            let pres = config::load_ring(&ring)?;
            let handle = config::build_ideal(&pres, &ideal, budget)?;
            let locus = match prime {
                Some(spec) => Some(config::build_ideal(&pres, &spec, budget)?),
                None => None,
            };
            let series = hk_series(&handle, emax, locus.as_ref())?;
            let estimate = match ehk_estimate(&series) {
                Ok(est) => Some(est),
                Err(err) if err.class() == ErrorClass::Internal => return Err(err.into()),
                Err(_) => None,
            };
            let rendered = match format {
                Format::Json => {
                    report::to_json(&report::hk_series_dto(&series, estimate.as_ref()))
                }
                Format::Csv => report::hk_series_csv(&series),
            };
            write_output(out.as_deref(), &rendered)
        }
        Command::Fsig { ring, sop, emax, tmax, format, out } => {
            let pres = config::load_ring(&ring)?;
            let sop_polys = config::parse_gens(&pres, &sop)?;
            let chain = ParameterChainSpec::new(sop_polys, tmax)?;
            let series = fsig_series(&pres, &chain, emax)?;
            let rendered = match format {
                Format::Json => report::to_json(&report::splitting_series_dto(&series)),
                Format::Csv => report::splitting_series_csv(&series),
            };
            write_output(out.as_deref(), &rendered)
        }
        Command::Probe { config: path, jobs, out, budget } => {
            let job = config::load_probe(&path, budget)?;
            let outcome = run_probe(
                &job.loci,
                &job.family,
                job.chain.as_ref(),
                job.e_max,
                job.tolerance,
                jobs,
            )?;
            let rendered = report::to_json(&report::probe_dto(&outcome));
            write_output(out.as_deref(), &rendered)
        }
    }
}

fn write_output(path: Option<&std::path::Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, contents).map_err(|e| {
            CliError::resource(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

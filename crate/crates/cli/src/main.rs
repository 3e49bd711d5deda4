use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use abstor::complex::CONVENTION_TAG;
use abstor::report::Format;
use abstor::run::{run, Command, JobOptions, JobSpec, PointSpec, RunError};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact torsion, degeneration analysis and eta ledgers for one-parameter
/// families of twisted chain complexes.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on
/// unusable input.
#[derive(Parser, Debug)]
#[command(name = "abstor", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,

    /// Sign/inversion convention of the torsion (only FT-cal-1 exists).
    #[arg(long, default_value = CONVENTION_TAG, global = true)]
    convention: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Complex (.cplx) or presentation (.pres) files.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,

    /// Degeneration points: `auto`, or values such as `0`, `1/2`, `-i`.
    /// Repeat or separate with commas. Defaults to the file's `points`,
    /// then to `auto`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t0: Vec<String>,

    /// Duality file replacing the pairing in the complex file.
    #[arg(long)]
    duality: Option<PathBuf>,

    /// Ignore any duality pairing.
    #[arg(long, conflicts_with = "duality")]
    no_duality: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Torsion of each family and its valuation at the degeneration points.
    Torsion(FamilyArgs),
    /// Torsion-module dimensions, singularity exponent and checks per point.
    Analyze(FamilyArgs),
    /// Ray-invariance check of eta ledgers, optionally against a family
    /// complex supplying nu and sigma_odd.
    EtaCheck {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Alexander and Conway polynomials of knots, with the Seifert oracle.
    Conway {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Bundled examples and cross-module invariants.
    Selftest {
        /// Seed of the generated family corpus.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory of example files to use instead of the bundled ones.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

fn point_spec(values: &[String]) -> Result<Option<PointSpec>, RunError> {
    if values.is_empty() {
        return Ok(None);
    }
    if values.iter().any(|v| v.trim() == "auto") {
        if values.len() > 1 {
            return Err(RunError::Usage("--t0 auto cannot be combined with explicit points".into()));
        }
        return Ok(Some(PointSpec::Auto));
    }
    values.join(",").parse().map(Some)
}

fn job(cli: Cli) -> Result<(JobSpec, Format), RunError> {
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Structured => Format::Structured,
    };
    let mut options = JobOptions { format, convention: cli.convention, ..JobOptions::default() };
    let (command, inputs) = match cli.command {
        Cmd::Torsion(a) => family(&mut options, a, Command::Torsion)?,
        Cmd::Analyze(a) => family(&mut options, a, Command::Analyze)?,
        Cmd::EtaCheck { inputs } => (Command::EtaCheck, inputs),
        Cmd::Conway { inputs } => (Command::Conway, inputs),
        Cmd::Selftest { seed, corpus } => {
            options.seed = seed;
            options.corpus = corpus;
            (Command::Selftest, Vec::new())
        }
    };
    Ok((JobSpec { command, inputs, options }, format))
}

fn family(options: &mut JobOptions, a: FamilyArgs, command: Command) -> Result<(Command, Vec<PathBuf>), RunError> {
    options.t0 = point_spec(&a.t0)?;
    options.duality = a.duality;
    options.use_duality = !a.no_duality;
    Ok((command, a.inputs))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = job(cli).and_then(|(spec, format)| run(&spec).map(|r| (r, format)));
    match result {
        Ok((report, format)) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(format).as_bytes());
            let _ = out.flush();
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

//! Jobs: what the command line asks for, and the dispatch that turns a job
//! into a [`Report`].

mod bundle;
mod items;
mod selftest;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub use bundle::{bundled_files, BundledFile};
pub use items::{PointSource, DELTAS};
pub use selftest::{selftest, SelftestOptions};

use crate::complex::CONVENTION_TAG;
use crate::io::{self, ParseError};
use crate::report::{Format, Report};
use crate::GaussRat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Torsion,
    Analyze,
    EtaCheck,
    Conway,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Torsion => "torsion",
            Command::Analyze => "analyze",
            Command::EtaCheck => "eta-check",
            Command::Conway => "conway",
            Command::Selftest => "selftest",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = RunError;
    fn from_str(s: &str) -> Result<Self, RunError> {
        [Command::Torsion, Command::Analyze, Command::EtaCheck, Command::Conway, Command::Selftest]
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| RunError::Usage(format!("unknown command `{s}`")))
    }
}

/// Degeneration points requested on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSpec {
    Auto,
    List(Vec<GaussRat>),
}

impl FromStr for PointSpec {
    type Err = RunError;
    /// `auto`, or a comma-separated list of scalars.
    fn from_str(s: &str) -> Result<Self, RunError> {
        if s.trim() == "auto" {
            return Ok(PointSpec::Auto);
        }
        s.split(',')
            .map(|p| io::parse_scalar(p.trim()).map_err(|m| RunError::Usage(format!("bad --t0 value `{p}`: {m}"))))
            .collect::<Result<Vec<_>, _>>()
            .map(PointSpec::List)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobOptions {
    pub t0: Option<PointSpec>,
    /// Standalone duality file overriding any pairing inside the complex file.
    pub duality: Option<PathBuf>,
    /// When false, pairings are ignored even if present.
    pub use_duality: bool,
    pub format: Format,
    pub convention: String,
    /// Seed of the generated corpus used by `selftest`.
    pub seed: u64,
    /// Directory replacing the bundled example files in `selftest`.
    pub corpus: Option<PathBuf>,
}

impl Default for JobOptions {
    fn default() -> Self {
        JobOptions {
            t0: None,
            duality: None,
            use_duality: true,
            format: Format::Text,
            convention: CONVENTION_TAG.to_string(),
            seed: 0,
            corpus: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub inputs: Vec<PathBuf>,
    pub options: JobOptions,
}

impl JobSpec {
    pub fn new(command: Command, inputs: Vec<PathBuf>) -> Self {
        JobSpec { command, inputs, options: JobOptions::default() }
    }
}

/// Errors that stop a job before any verdict (exit status 2).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub enum Input {
    Complex(io::ComplexFile),
    Presentation(io::PresentationFile),
    Knot(io::KnotFile),
    Ledger(io::LedgerFile),
}

impl Input {
    fn kind(&self) -> &'static str {
        match self {
            Input::Complex(_) => "complex",
            Input::Presentation(_) => "presentation",
            Input::Knot(_) => "knot",
            Input::Ledger(_) => "ledger",
        }
    }
}

/// Parses any supported file, dispatching on its header keyword.
pub fn parse_input(name: &str, text: &str) -> Result<Input, ParseError> {
    let lx = io::Lexer::new(name, text);
    let head = lx.peek().map(|l| l.tokens[0].clone()).unwrap_or_default();
    Ok(match head.as_str() {
        "presentation" => Input::Presentation(io::parse_presentation(name, text)?),
        "knot" => Input::Knot(io::parse_knot(name, text)?),
        "ledger" => Input::Ledger(io::parse_ledger(name, text)?),
        // Let the complex parser produce the header error otherwise.
        _ => Input::Complex(io::parse_complex(name, text)?),
    })
}

fn read(path: &Path) -> Result<String, RunError> {
    std::fs::read_to_string(path).map_err(|e| RunError::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn load(path: &Path) -> Result<Input, RunError> {
    Ok(parse_input(&path.display().to_string(), &read(path)?)?)
}

fn wrong_kind(path: &Path, got: &Input, command: Command) -> RunError {
    RunError::Usage(format!("{}: a {} file cannot be used with `{command}`", path.display(), got.kind()))
}

/// Runs a job. Verdict failures are part of the report; only unusable input
/// is an error.
pub fn run(job: &JobSpec) -> Result<Report, RunError> {
    let opts = &job.options;
    if opts.convention != CONVENTION_TAG {
        return Err(RunError::Usage(format!(
            "unsupported convention `{}` (only {CONVENTION_TAG} is defined)",
            opts.convention
        )));
    }
    if job.command == Command::Selftest {
        if !job.inputs.is_empty() {
            return Err(RunError::Usage("selftest takes no input files".into()));
        }
        return selftest(&SelftestOptions { seed: opts.seed, corpus: opts.corpus.clone() });
    }
    if job.inputs.is_empty() {
        return Err(RunError::Usage(format!("`{}` needs at least one input file", job.command)));
    }
    let inputs: Vec<String> = job.inputs.iter().map(|p| p.display().to_string()).collect();
    let mut report = Report::new(job.command.name(), inputs, CONVENTION_TAG);
    let loaded = job.inputs.iter().map(|p| load(p).map(|i| (p, i))).collect::<Result<Vec<_>, _>>()?;
    if opts.duality.is_some() && (job.inputs.len() != 1 || !matches!(loaded[0].1, Input::Complex(_))) {
        return Err(RunError::Usage("--duality needs exactly one complex file".into()));
    }
    let points = match &opts.t0 {
        Some(PointSpec::Auto) => Some(PointSource::Auto),
        Some(PointSpec::List(l)) => Some(PointSource::Explicit(l.clone())),
        None => None,
    };
    match job.command {
        Command::Torsion | Command::Analyze => {
            for (path, input) in &loaded {
                let mut fam = match input {
                    Input::Complex(f) => items::Family::from_complex_file(f),
                    Input::Presentation(f) => items::Family::from_presentation(f),
                    other => return Err(wrong_kind(path, other, job.command)),
                };
                if let Some(d) = &opts.duality {
                    let text = read(d)?;
                    fam.pairing = Some(io::parse_duality(&d.display().to_string(), &text, &fam.complex)?);
                }
                if !opts.use_duality {
                    fam.pairing = None;
                }
                let name = path.display().to_string();
                let src = points.clone().unwrap_or_else(|| fam.default_points());
                report.items.push(if job.command == Command::Torsion {
                    items::torsion_item(&name, &fam, &src)
                } else {
                    items::analyze_item(&name, &fam, &src)
                });
            }
        }
        Command::Conway => {
            for (path, input) in &loaded {
                let Input::Knot(k) = input else { return Err(wrong_kind(path, input, job.command)) };
                report.items.push(items::conway_item(&path.display().to_string(), k));
            }
        }
        Command::EtaCheck => {
            let mut family = None;
            let mut ledgers = Vec::new();
            for (path, input) in &loaded {
                match input {
                    Input::Ledger(l) => ledgers.push((path, l)),
                    Input::Complex(f) if family.is_none() => family = Some(items::Family::from_complex_file(f)),
                    Input::Presentation(f) if family.is_none() => family = Some(items::Family::from_presentation(f)),
                    other => return Err(wrong_kind(path, other, job.command)),
                }
            }
            if ledgers.is_empty() {
                return Err(RunError::Usage("eta-check needs a ledger file".into()));
            }
            for (path, l) in ledgers {
                report.items.push(items::eta_item(&path.display().to_string(), l, family.as_ref(), false));
            }
        }
        Command::Selftest => unreachable!(),
    }
    Ok(report)
}

//! Command-line front end: reads algebras, racks and polynomials from JSON,
//! runs verification batteries and emits machine-readable reports.

pub mod battery;
pub mod report;

use std::fmt;
use std::path::PathBuf;

use leibrack::check::set_parallel;
use leibrack::formats::{parse_problem, FormatError, Problem};
use leibrack::leibniz::{catalog, IdealChoice, LeibnizAlgebra, CATALOG_NAMES};
use leibrack::rack::FiniteRack;
use serde_json::{json, Value};
use thiserror::Error;

use report::Report;

/// Algebras covered by `report` when no input is given.
pub const DEFAULT_SUBJECTS: &[&str] = &["sq2", "leib2", "heisenberg", "sl2", "leib3"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Validate,
    Ideals,
    RackCheck,
    Star,
    Cohomology,
    LpCheck,
    Report,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Command::Validate => "validate",
            Command::Ideals => "ideals",
            Command::RackCheck => "rack-check",
            Command::Star => "star",
            Command::Cohomology => "cohomology",
            Command::LpCheck => "lp-check",
            Command::Report => "report",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Files, or `catalog:NAME` for a built-in algebra.
    pub inputs: Vec<String>,
    pub command: Command,
    pub degree_cap: usize,
    pub hbar_order: usize,
    pub filtration_cap: usize,
    pub seed: u64,
    pub parallel: bool,
    pub output: Option<PathBuf>,
    /// Records wall times, which makes reports nondeterministic.
    pub timings: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            inputs: Vec::new(),
            command,
            degree_cap: 2,
            hbar_order: 4,
            filtration_cap: 3,
            seed: 0,
            parallel: false,
            output: None,
            timings: false,
        }
    }

    pub fn with_input(mut self, input: impl Into<String>) -> Self {
        self.inputs.push(input.into());
        self
    }

    fn to_json(&self) -> Value {
        json!({
            "inputs": self.inputs,
            "degree_cap": self.degree_cap,
            "hbar_order": self.hbar_order,
            "filtration_cap": self.filtration_cap,
            "seed": self.seed,
            "parallel": self.parallel,
        })
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: FormatError,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl CliError {
    /// Machine-readable form written in place of a report.
    pub fn to_json(&self) -> Value {
        let (kind, pointer) = match self {
            CliError::Parse { source, .. } => ("parse", source.pointer().map(str::to_string)),
            CliError::Io { .. } => ("io", None),
            CliError::Config(_) => ("config", None),
        };
        let location = match self {
            CliError::Parse {
                source: FormatError::Json { line, column, .. },
                ..
            } => json!({"line": line, "column": column}),
            _ => Value::Null,
        };
        json!({
            "status": "error",
            "error": {"kind": kind, "message": self.to_string(), "pointer": pointer, "location": location},
        })
    }
}

/// Exit status and report of a run.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
}

impl Outcome {
    /// The report as emitted: pretty-printed with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("serializable");
        s.push('\n');
        s
    }
}

/// Reads and merges every input; later inputs override earlier ones.
pub fn ingest(inputs: &[String]) -> Result<Problem, CliError> {
    let mut problem = Problem::default();
    for input in inputs {
        let next = if let Some(name) = input.strip_prefix("catalog:") {
            let algebra = catalog(name).map_err(|e| CliError::Parse {
                path: input.clone(),
                source: FormatError::Schema {
                    pointer: "/".into(),
                    message: e.to_string(),
                },
            })?;
            Problem {
                algebra: Some(algebra),
                ..Problem::default()
            }
        } else if let Some(n) = input.strip_prefix("dihedral:") {
            let n: usize = n
                .parse()
                .map_err(|_| CliError::Config(format!("bad rack {input}")))?;
            if n < 3 {
                return Err(CliError::Config(format!("bad rack {input}")));
            }
            Problem {
                rack: Some(FiniteRack::dihedral_with_unit(n)),
                ..Problem::default()
            }
        } else {
            let text = std::fs::read_to_string(input).map_err(|source| CliError::Io {
                path: input.clone(),
                source,
            })?;
            parse_problem(&text).map_err(|source| CliError::Parse {
                path: input.clone(),
                source,
            })?
        };
        problem = problem.merge(next);
    }
    Ok(problem)
}

fn require_algebra(p: &Problem, command: Command) -> Result<&LeibnizAlgebra, CliError> {
    p.algebra
        .as_ref()
        .ok_or_else(|| CliError::Config(format!("{command} needs an algebra input")))
}

fn subject_of(cfg: &RunConfig) -> String {
    cfg.inputs
        .iter()
        .map(|i| {
            i.strip_prefix("catalog:")
                .map(str::to_string)
                .unwrap_or_else(|| {
                    std::path::Path::new(i)
                        .file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_else(|| i.clone())
                })
        })
        .collect::<Vec<_>>()
        .join("+")
}

/// Runs one command. Parse and configuration problems are errors; failed
/// checks are reported with exit code 1.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.degree_cap == 0 || cfg.hbar_order == 0 || cfg.filtration_cap == 0 {
        return Err(CliError::Config("caps must be at least 1".into()));
    }
    set_parallel(cfg.parallel);
    let problem = ingest(&cfg.inputs)?;
    let choice = problem.ideal.clone().unwrap_or(IdealChoice::Squares);
    let subject = subject_of(cfg);
    let mut report = Report::new(cfg.timings);
    match cfg.command {
        Command::Validate => {
            if let Some(h) = &problem.algebra {
                battery::validate(&mut report, &subject, h);
            }
            if let Some(x) = &problem.rack {
                let kx = leibrack::rack::from_finite_rack(x);
                report.run("validate", &subject, || {
                    leibrack::rack::verify_rack_axioms(&kx)
                });
            }
        }
        Command::Ideals => {
            let h = require_algebra(&problem, cfg.command)?;
            if battery::validate(&mut report, &subject, h) {
                battery::ideals(&mut report, &subject, h, &choice);
            }
        }
        Command::RackCheck => {
            if let Some(h) = &problem.algebra {
                if battery::validate(&mut report, &subject, h) {
                    battery::rack_check_algebra(&mut report, &subject, h, &choice, cfg);
                }
            }
            if let Some(x) = &problem.rack {
                battery::rack_check_finite(&mut report, &format!("{subject}/rack"), x);
            }
            if problem.algebra.is_none() && problem.rack.is_none() {
                return Err(CliError::Config(
                    "rack-check needs an algebra or a rack".into(),
                ));
            }
        }
        Command::Star => {
            let h = require_algebra(&problem, cfg.command)?;
            if battery::validate(&mut report, &subject, h) {
                let pair = match (&problem.f, &problem.g) {
                    (Some(f), Some(g)) => Some((f, g)),
                    (None, None) => None,
                    _ => {
                        return Err(CliError::Config(
                            "star needs both f and g, or neither".into(),
                        ))
                    }
                };
                battery::star(&mut report, &subject, h, pair, cfg);
            }
        }
        Command::Cohomology => {
            if let Some(h) = &problem.algebra {
                if battery::validate(&mut report, &subject, h) {
                    battery::cohomology_algebra(&mut report, &subject, h, &choice, cfg);
                }
            }
            if let Some(x) = &problem.rack {
                battery::cohomology_finite(&mut report, &format!("{subject}/rack"), x);
            }
            if problem.algebra.is_none() && problem.rack.is_none() {
                return Err(CliError::Config(
                    "cohomology needs an algebra or a rack".into(),
                ));
            }
        }
        Command::LpCheck => {
            let h = require_algebra(&problem, cfg.command)?;
            if battery::validate(&mut report, &subject, h) {
                battery::lp_check(&mut report, &subject, h, &choice, cfg);
            }
        }
        Command::Report => {
            let explicit = problem.algebra.is_some() || problem.rack.is_some();
            if let Some(h) = &problem.algebra {
                battery::algebra_battery(&mut report, &subject, h, &choice, cfg);
            }
            if let Some(x) = &problem.rack {
                battery::rack_battery(&mut report, &format!("{subject}/rack"), x);
            }
            if !explicit && cfg.inputs.is_empty() {
                for name in CATALOG_NAMES {
                    let h = catalog(name).expect("catalog entries are valid");
                    battery::validate(&mut report, name, &h);
                }
                for name in DEFAULT_SUBJECTS {
                    let h = catalog(name).expect("catalog entries are valid");
                    battery::algebra_battery(&mut report, name, &h, &choice, cfg);
                }
                for n in [3, 5] {
                    battery::rack_battery(
                        &mut report,
                        &format!("R{n}"),
                        &FiniteRack::dihedral_with_unit(n),
                    );
                }
            }
        }
    }
    let doc = report.to_json(&cfg.command.to_string(), cfg.to_json());
    Ok(Outcome {
        exit_code: if report.passed() { 0 } else { 1 },
        report: doc,
    })
}

//! The three commands behind the `erkit` binary, as plain functions that
//! return an exit status and the text to print.

use std::fmt::Write as _;
use std::path::PathBuf;

use crate::decision::{run, Run};
use crate::er::{audit_axioms, Algorithm, AuditReport};
use crate::error::Error;
use crate::hierarchy::{EvaluateOptions, EvaluationModel, GeneralReliability};
use crate::io::{load_model_path, save_results, LoadError, LoadOptions, OutputFormat, ResultDocument};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_ITERATIONS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitStatus {
    Success = 0,
    /// The model failed to parse or validate.
    Validation = 1,
    /// Complete conflict or a degenerate normalisation during aggregation.
    Runtime = 2,
    Io = 3,
    /// Bad command-line arguments.
    Usage = 64,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Evaluate { model: PathBuf },
    Compare { model: PathBuf },
    CheckAxioms,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    /// `None` selects all three.
    pub algorithm: Option<Algorithm>,
    pub format: OutputFormat,
    pub trace: bool,
    pub strict: bool,
    pub general_reliability: GeneralReliability,
    pub seed: u64,
    pub iterations: usize,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            algorithm: Some(Algorithm::E2r),
            format: OutputFormat::Table,
            trace: false,
            strict: false,
            general_reliability: GeneralReliability::Discount,
            seed: DEFAULT_SEED,
            iterations: DEFAULT_ITERATIONS,
            out: None,
        }
    }

    fn algorithms(&self) -> Vec<Algorithm> {
        match self.algorithm {
            Some(a) => vec![a],
            None => Algorithm::ALL.to_vec(),
        }
    }
}

/// Exit status plus what belongs on stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(status: ExitStatus, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            status,
            stdout: String::new(),
            stderr,
        }
    }

    /// Sends the report to `out` when given, otherwise leaves it for stdout.
    fn deliver(mut self, out: Option<&PathBuf>) -> Self {
        let Some(path) = out else { return self };
        match std::fs::write(path, &self.stdout) {
            Ok(()) => {
                self.stdout.clear();
                self
            }
            Err(e) => Outcome::fail(ExitStatus::Io, format!("cannot write {}: {e}", path.display())),
        }
    }
}

pub fn execute(config: &RunConfig) -> Outcome {
    let outcome = match &config.command {
        Command::Evaluate { model } => cmd_evaluate(config, model),
        Command::Compare { model } => cmd_compare(config, model),
        Command::CheckAxioms => cmd_check_axioms(config),
    };
    if outcome.status == ExitStatus::Success {
        outcome.deliver(config.out.as_ref())
    } else {
        outcome
    }
}

fn load(config: &RunConfig, path: &PathBuf) -> Result<(EvaluationModel, String), Outcome> {
    let options = LoadOptions {
        strict: config.strict,
        renormalize_importance: false,
    };
    match load_model_path(path, options) {
        Ok(loaded) => {
            let mut warnings = String::new();
            for w in &loaded.warnings {
                let _ = writeln!(warnings, "{w}");
            }
            Ok((loaded.model, warnings))
        }
        Err(e @ LoadError::Io { .. }) => Err(Outcome::fail(ExitStatus::Io, e.to_string())),
        Err(e @ LoadError::Parse { .. }) => Err(Outcome::fail(
            ExitStatus::Validation,
            format!("{}: {e}", path.display()),
        )),
        Err(e @ LoadError::Invalid(_)) => Err(Outcome::fail(ExitStatus::Validation, e.to_string())),
    }
}

fn status_of(e: &Error) -> ExitStatus {
    match e.root_cause() {
        Error::CompleteConflict | Error::DegenerateOmega | Error::FrameTooLarge { .. } => ExitStatus::Runtime,
        _ => ExitStatus::Validation,
    }
}

fn runs(config: &RunConfig, model: &EvaluationModel, algorithms: &[Algorithm]) -> Result<Vec<Run>, Outcome> {
    let options = EvaluateOptions {
        general_reliability: config.general_reliability,
        trace: config.trace,
    };
    algorithms
        .iter()
        .map(|&a| run(model, a, options).map_err(|e| Outcome::fail(status_of(&e), format!("{a}: {e}"))))
        .collect()
}

/// Runs the selected algorithm(s) over every alternative.
pub fn cmd_evaluate(config: &RunConfig, model_path: &PathBuf) -> Outcome {
    let (model, stderr) = match load(config, model_path) {
        Ok(m) => m,
        Err(o) => return o,
    };
    let runs = match runs(config, &model, &config.algorithms()) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let doc = ResultDocument::new(&model.frame, &runs);
    Outcome {
        status: ExitStatus::Success,
        stdout: save_results(&doc, config.format),
        stderr,
    }
}

/// All three algorithms side by side, with Unknown-mass comparison and the
/// per-grade differences from E2R.
pub fn cmd_compare(config: &RunConfig, model_path: &PathBuf) -> Outcome {
    let (model, stderr) = match load(config, model_path) {
        Ok(m) => m,
        Err(o) => return o,
    };
    let runs = match runs(config, &model, &Algorithm::ALL) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let doc = ResultDocument::new(&model.frame, &runs).with_comparison();
    Outcome {
        status: ExitStatus::Success,
        stdout: save_results(&doc, config.format),
        stderr,
    }
}

pub fn cmd_check_axioms(config: &RunConfig) -> Outcome {
    if config.iterations == 0 {
        return Outcome::fail(ExitStatus::Usage, "--iterations must be at least 1");
    }
    let mut reports = Vec::new();
    for algorithm in config.algorithms() {
        match audit_axioms(algorithm, config.seed, config.iterations) {
            Ok(r) => reports.push(r),
            Err(e) => return Outcome::fail(ExitStatus::Runtime, format!("{algorithm}: {e}")),
        }
    }
    Outcome {
        status: ExitStatus::Success,
        stdout: render_audit(&reports, config.format),
        stderr: String::new(),
    }
}

pub fn render_audit(reports: &[AuditReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("audit reports always serialize");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut s = String::from("algorithm,axiom,held,violated\n");
            for r in reports {
                for t in &r.axioms {
                    let _ = writeln!(s, "{},{},{},{}", r.algorithm.id(), t.axiom, t.held, t.violated);
                }
            }
            s
        }
        OutputFormat::Table => {
            let mut s = String::new();
            for r in reports {
                let held = r.axioms.iter().filter(|t| t.always_holds()).count();
                let _ = writeln!(
                    s,
                    "{}: {held}/{} axioms hold (seed {}, {} instances per axiom)",
                    r.algorithm,
                    r.axioms.len(),
                    r.seed,
                    r.iterations
                );
                for t in &r.axioms {
                    let _ = writeln!(s, "  {:<15} held {:>5}  violated {:>5}", t.axiom, t.held, t.violated);
                }
                for t in &r.axioms {
                    if let Some(c) = &t.counterexample {
                        let json = serde_json::to_string(c).expect("counterexamples always serialize");
                        let _ = writeln!(s, "  first {} counterexample: {json}", t.axiom);
                    }
                }
                s.push('\n');
            }
            s
        }
    }
}

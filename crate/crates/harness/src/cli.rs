//! Command-line surface: argument parsing and dispatch, returning the exit
//! code and the text to print so that tests can drive it in-process.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use normkeep::{Tolerance, Vector};
use serde_json::json;

use crate::error::{HarnessError, Result, EXIT_CONFIG, EXIT_FAILURE, EXIT_OK};
use crate::report::{human_checks, human_object, human_search, machine, Format};
use crate::run::{project_point, renorm_pipeline, run_checks};
use crate::scenario::{load_scenario_with, Scenario, ToleranceOverride};
use crate::search::{run_search, SearchOptions};

#[derive(Debug, Parser)]
#[command(name = "normkeep", version, about = "Norm-maintaining function checks, projections and counterexample search")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "human", global = true)]
    pub format: Format,
    /// Relative tolerance, replacing the scenario's value.
    #[arg(long, global = true)]
    pub tol_rel: Option<f64>,
    /// Absolute tolerance, replacing the scenario's value.
    #[arg(long, global = true)]
    pub tol_abs: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every check of a scenario file.
    Check {
        scenario: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Project a point onto a subset declared in a scenario file.
    Project {
        scenario: PathBuf,
        #[arg(long)]
        set: String,
        /// Comma-separated coordinates, optionally in brackets: "3,4" or "[3,4]".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[command(flatten)]
        common: Common,
    },
    /// Build the induced seminorm of a subspace and verify it.
    Renorm {
        scenario: PathBuf,
        #[arg(long)]
        set: String,
        /// Axiom and LH samples.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Search for counterexamples to a registered statement.
    Search {
        statement: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Violations shrunk and reported in full.
        #[arg(long, default_value_t = 3)]
        max_findings: usize,
        #[command(flatten)]
        common: Common,
    },
    /// List the registered statements.
    Statements {
        #[command(flatten)]
        common: Common,
    },
}

/// Text produced by one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses a vector argument: decimal numbers separated by commas (or
/// whitespace), optionally wrapped in square brackets.
pub fn parse_vector_arg(text: &str) -> Result<Vec<f64>> {
    let trimmed = text.trim();
    let inner = match (trimmed.strip_prefix('['), trimmed.strip_suffix(']')) {
        (Some(_), Some(_)) => &trimmed[1..trimmed.len() - 1],
        (None, None) => trimmed,
        _ => return Err(HarnessError::Invalid(format!("unbalanced brackets in vector {text:?}"))),
    };
    let parts: Vec<&str> = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .collect();
    if parts.is_empty() {
        return Err(HarnessError::Invalid(format!("empty vector {text:?}")));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| HarnessError::Invalid(format!("bad coordinate {p:?} in vector {text:?}")))
        })
        .collect()
}

fn is_config_error(e: &HarnessError) -> bool {
    match e {
        HarnessError::Core(c) => matches!(c.code(), "dim_mismatch" | "bad_tolerance"),
        _ => true,
    }
}

fn overrides(c: &Common) -> ToleranceOverride {
    ToleranceOverride {
        rel: c.tol_rel,
        abs: c.tol_abs,
    }
}

fn tolerance(c: &Common) -> Result<Tolerance> {
    let def = Tolerance::default();
    Ok(Tolerance::new(c.tol_rel.unwrap_or(def.rel), c.tol_abs.unwrap_or(def.abs))?)
}

fn subset<'a>(sc: &'a Scenario, name: &str) -> Result<&'a normkeep::projection::SubsetSpec> {
    sc.subsets.get(name).ok_or_else(|| HarnessError::UnresolvedName(name.to_string()))
}

fn ok(code: i32, stdout: String) -> Result<Output> {
    Ok(Output {
        code,
        stdout,
        stderr: String::new(),
    })
}

fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Check { scenario, common } => {
            let sc = load_scenario_with(scenario, overrides(common))?;
            let report = run_checks(&sc);
            let text = match common.format {
                Format::Human => human_checks(&report),
                Format::Machine => machine("check", &report),
            };
            ok(report.exit_code(), text)
        }
        Command::Project { scenario, set, point, common } => {
            let sc = load_scenario_with(scenario, overrides(common))?;
            let x = subset(&sc, set)?;
            let y = Vector::from_vec(parse_vector_arg(point)?);
            let (_, detail) = project_point(x, &y, sc.tolerance)?;
            let body = json!({ "set": set, "point": y.as_slice(), "projection": detail });
            let text = match common.format {
                Format::Human => human_object(&format!("projection onto {set}"), &detail),
                Format::Machine => machine("project", &body),
            };
            ok(EXIT_OK, text)
        }
        Command::Renorm { scenario, set, samples, common } => {
            let sc = load_scenario_with(scenario, overrides(common))?;
            let x = subset(&sc, set)?;
            let report = renorm_pipeline(x, *samples, sc.seed, sc.tolerance)?;
            let code = if report.passed { EXIT_OK } else { EXIT_FAILURE };
            let text = match common.format {
                Format::Human => {
                    let mut v = serde_json::to_value(&report).expect("reports serialize");
                    // Per-sample rows are kept for the machine format only.
                    if let Some(lh) = v.get_mut("lh").and_then(|l| l.as_object_mut()) {
                        if let Some(rows) = lh.remove("rows") {
                            let n = rows.as_array().map_or(0, Vec::len);
                            lh.insert("samples".into(), json!(n));
                        }
                    }
                    human_object(&format!("induced seminorm of {set}"), &v)
                }
                Format::Machine => machine("renorm", &report),
            };
            ok(code, text)
        }
        Command::Search {
            statement,
            trials,
            seed,
            max_findings,
            common,
        } => {
            if *trials == 0 {
                return Err(HarnessError::Invalid("--trials must be at least 1".into()));
            }
            let opts = SearchOptions {
                trials: *trials,
                seed: *seed,
                tol: tolerance(common)?,
                max_findings: *max_findings,
                ..SearchOptions::default()
            };
            let report = run_search(statement, &opts)?;
            let code = if report.violations == 0 { EXIT_OK } else { EXIT_FAILURE };
            let text = match common.format {
                Format::Human => human_search(&report),
                Format::Machine => machine("search", &report),
            };
            ok(code, text)
        }
        Command::Statements { common } => {
            let list: Vec<_> = crate::search::STATEMENTS
                .iter()
                .map(|s| json!({ "id": s.id, "checker": s.checker, "summary": s.summary, "hypotheses": s.hypotheses, "mutant": s.mutant }))
                .collect();
            let text = match common.format {
                Format::Human => crate::search::STATEMENTS
                    .iter()
                    .map(|s| format!("{:<36} {}{}\n", s.id, s.summary, if s.mutant { " [mutant]" } else { "" }))
                    .collect(),
                Format::Machine => machine("statements", &list),
            };
            ok(EXIT_OK, text)
        }
    }
}

/// Runs one invocation from its arguments (program name first).
pub fn run_cli<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(out) => out,
        Err(e) => Output {
            code: if is_config_error(&e) { EXIT_CONFIG } else { EXIT_FAILURE },
            stdout: String::new(),
            stderr: format!("error[{}]: {e}\n", e.code()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_arguments() {
        assert_eq!(parse_vector_arg("3,4").unwrap(), vec![3.0, 4.0]);
        assert_eq!(parse_vector_arg(" [3, -4.5] ").unwrap(), vec![3.0, -4.5]);
        assert_eq!(parse_vector_arg("1e-3").unwrap(), vec![1e-3]);
        assert!(parse_vector_arg("[3,4").is_err());
        assert!(parse_vector_arg("").is_err());
        assert!(parse_vector_arg("a,b").is_err());
        assert!(parse_vector_arg("inf").is_err());
    }

    #[test]
    fn unknown_statement_is_a_config_error() {
        let out = run_cli(["normkeep", "search", "nope", "--trials", "1"]);
        assert_eq!(out.code, EXIT_CONFIG);
        assert!(out.stderr.contains("unknown_statement"));
    }

    #[test]
    fn bad_flag_is_a_config_error() {
        assert_eq!(run_cli(["normkeep", "check"]).code, EXIT_CONFIG);
    }
}

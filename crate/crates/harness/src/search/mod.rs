//! Randomized search for counterexamples to the implications the checkers
//! encode. Trials are seeded individually, so a finding's fingerprint
//! replays it exactly.

mod consistency;
mod instance;
mod statements;

use std::collections::BTreeMap;

use normkeep::rng::{derive_seed, seeded};
use normkeep::sequence::Confidence;
use normkeep::Tolerance;
use serde::Serialize;

use crate::error::{HarnessError, Result};

pub use consistency::{upgrade_consistency, ConsistencyReport};
pub use instance::{
    generate, round1, scaled_witness, DeltaInstance, Family, GeneratorConfig, Instance, NormCode, NormedInstance,
    SubsetInstance,
};
pub use statements::{find, Context, Evaluation, Statement, STATEMENTS, WELL_FORMED};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub trials: usize,
    pub seed: u64,
    pub tol: Tolerance,
    pub generator: GeneratorConfig,
    /// Violations shrunk and reported in full; later ones are only counted.
    pub max_findings: usize,
    /// Accepted shrink steps per finding.
    pub shrink_steps: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            trials: 1000,
            seed: 0,
            tol: Tolerance::default(),
            generator: GeneratorConfig::default(),
            max_findings: 3,
            shrink_steps: 200,
        }
    }
}

/// Everything needed to regenerate a trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fingerprint {
    pub statement: String,
    pub seed: u64,
    pub trial: usize,
    pub generator: GeneratorConfig,
}

impl Fingerprint {
    pub fn trial_seed(&self) -> u64 {
        derive_seed(self.seed, self.trial as u64)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub fingerprint: Fingerprint,
    pub magnitude: f64,
    pub detail: String,
    pub confidence: Confidence,
    pub instance: Instance,
    pub shrunk: Instance,
    pub shrunk_magnitude: f64,
    pub shrink_steps: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub statement: String,
    pub checker: &'static str,
    pub summary: &'static str,
    pub mutant: bool,
    pub seed: u64,
    pub trials: usize,
    pub tolerance: Tolerance,
    /// Trials on which every hypothesis held.
    pub hypothesis_hits: usize,
    pub held: usize,
    pub violations: usize,
    /// Trials skipped, by the first hypothesis that failed.
    pub skipped: BTreeMap<String, usize>,
    pub findings: Vec<Finding>,
}

impl SearchReport {
    /// A sound statement must have no violations; a mutant must have some.
    pub fn as_expected(&self) -> bool {
        if self.mutant {
            self.violations > 0
        } else {
            self.violations == 0
        }
    }
}

pub fn statement(id: &str) -> Result<&'static Statement> {
    find(id).ok_or_else(|| HarnessError::UnknownStatement(id.to_string()))
}

fn trial_instance(st: &Statement, fp: &Fingerprint) -> Instance {
    generate(st.family, &fp.generator, &mut seeded(fp.trial_seed()))
}

/// Regenerates and re-evaluates the trial a fingerprint names.
pub fn replay(fp: &Fingerprint, tol: Tolerance) -> Result<(Instance, Evaluation)> {
    let st = statement(&fp.statement)?;
    let inst = trial_instance(st, fp);
    let ctx = Context { tol, cfg: fp.generator };
    let eval = st.evaluate(&inst, &ctx);
    Ok((inst, eval))
}

/// Greedy shrinking: take the first simpler candidate that still violates
/// the statement, until none does.
pub fn shrink(st: &Statement, inst: &Instance, ctx: &Context, max_steps: usize) -> (Instance, f64, usize) {
    let mut current = inst.clone();
    let mut magnitude = match st.evaluate(inst, ctx) {
        Evaluation::Violated { magnitude, .. } => magnitude,
        _ => return (current, f64::NAN, 0),
    };
    let mut steps = 0;
    while steps < max_steps {
        let size = current.size();
        let next = current.shrink_candidates().into_iter().find_map(|cand| {
            if cand.size() >= size {
                return None;
            }
            match st.evaluate(&cand, ctx) {
                Evaluation::Violated { magnitude, .. } => Some((cand, magnitude)),
                _ => None,
            }
        });
        match next {
            Some((cand, m)) => {
                current = cand;
                magnitude = m;
                steps += 1;
            }
            None => break,
        }
    }
    (current, magnitude, steps)
}

pub fn run_search(id: &str, opts: &SearchOptions) -> Result<SearchReport> {
    let st = statement(id)?;
    let ctx = Context {
        tol: opts.tol,
        cfg: opts.generator,
    };
    let mut report = SearchReport {
        statement: st.id.to_string(),
        checker: st.checker,
        summary: st.summary,
        mutant: st.mutant,
        seed: opts.seed,
        trials: opts.trials,
        tolerance: opts.tol,
        hypothesis_hits: 0,
        held: 0,
        violations: 0,
        skipped: BTreeMap::new(),
        findings: Vec::new(),
    };
    for trial in 0..opts.trials {
        let fp = Fingerprint {
            statement: st.id.to_string(),
            seed: opts.seed,
            trial,
            generator: opts.generator,
        };
        let inst = trial_instance(st, &fp);
        match st.evaluate(&inst, &ctx) {
            Evaluation::Skipped(name) => *report.skipped.entry(name.to_string()).or_default() += 1,
            Evaluation::Held => {
                report.hypothesis_hits += 1;
                report.held += 1;
            }
            Evaluation::Violated {
                magnitude,
                detail,
                confidence,
            } => {
                report.hypothesis_hits += 1;
                report.violations += 1;
                if report.findings.len() < opts.max_findings {
                    let (shrunk, shrunk_magnitude, shrink_steps) = shrink(st, &inst, &ctx, opts.shrink_steps);
                    report.findings.push(Finding {
                        fingerprint: fp,
                        magnitude,
                        detail,
                        confidence,
                        instance: inst,
                        shrunk,
                        shrunk_magnitude,
                        shrink_steps,
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(trials: usize, seed: u64) -> SearchOptions {
        SearchOptions {
            trials,
            seed,
            ..SearchOptions::default()
        }
    }

    #[test]
    fn statement_ids_are_unique() {
        let mut ids: Vec<&str> = STATEMENTS.iter().map(|s| s.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), STATEMENTS.len());
    }

    #[test]
    fn unknown_statement_is_reported() {
        let err = run_search("no-such-statement", &opts(1, 0)).unwrap_err();
        assert_eq!(err.code(), "unknown_statement");
    }

    #[test]
    fn sound_statements_hold_on_a_short_run() {
        for st in STATEMENTS.iter().filter(|s| !s.mutant) {
            let r = run_search(st.id, &opts(150, 11)).unwrap();
            assert_eq!(r.violations, 0, "{}: {:?}", st.id, r.findings.first().map(|f| &f.detail));
            assert!(r.hypothesis_hits > 0, "{} never met its hypotheses: {:?}", st.id, r.skipped);
        }
    }

    #[test]
    fn mutant_is_refuted_and_shrunk() {
        let r = run_search("norm-sandwich-without-convergence", &opts(300, 5)).unwrap();
        assert!(r.violations > 0);
        let f = &r.findings[0];
        assert!(f.shrunk.size() <= f.instance.size());
        let st = statement(&f.fingerprint.statement).unwrap();
        let ctx = Context {
            tol: r.tolerance,
            cfg: f.fingerprint.generator,
        };
        assert!(matches!(st.evaluate(&f.shrunk, &ctx), Evaluation::Violated { .. }));
    }

    #[test]
    fn fingerprint_replays_the_violation() {
        let r = run_search("norm-sandwich-without-convergence", &opts(300, 9)).unwrap();
        let f = &r.findings[0];
        let (inst, eval) = replay(&f.fingerprint, r.tolerance).unwrap();
        assert_eq!(inst, f.instance);
        match eval {
            Evaluation::Violated { magnitude, .. } => assert_eq!(magnitude.to_bits(), f.magnitude.to_bits()),
            other => panic!("replay did not violate: {other:?}"),
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let a = run_search("strong-weak-attainment-lhw", &opts(60, 3)).unwrap();
        let b = run_search("strong-weak-attainment-lhw", &opts(60, 3)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

//! Executing the checks of a scenario.

use std::time::Instant;

use normkeep::delta::{delta_norm, strong_attainment, towards_point_attainment, weak_attainment};
use normkeep::linalg::vector;
use normkeep::membership::{
    check_lh, check_lhw, lh_from_shared_target, lh_from_target_and_convergence, lhw_from_attainment,
    strong_from_weak_attainment, target_norm_convergence, upgrade_by_norm_convergence, upgrade_by_norm_sandwich,
    upgrade_by_weak_convergence, MembershipCertificate, SandwichBranch,
};
use normkeep::normed::{verify_norm_axioms, ElementSpace};
use normkeep::projection::{
    check_triangular, classify_proximinality, project, projection_homogeneity, sup_own_norm, ProjectionSolution,
    SubsetSpec,
};
use normkeep::renorm::{build_induced_seminorm, verify_lh_equality, verify_seminorm_axioms};
use normkeep::rng::{derive_seed, gaussian_vector, seeded};
use normkeep::{Tolerance, Vector};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{HarnessError, EXIT_FAILURE, EXIT_OK};
use crate::scenario::{CheckSpec, Checker, PairBinding, RawProbes, Scenario, SpaceBinding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    /// Every expectation given was met.
    Pass,
    /// An expectation was not met.
    Fail,
    /// The checker returned an error.
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckError {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checker: &'static str,
    pub status: CheckStatus,
    pub outcome: Option<String>,
    pub value: Option<f64>,
    pub expect: Option<String>,
    pub expect_value: Option<f64>,
    pub slack: Option<f64>,
    pub error: Option<CheckError>,
    pub detail: Value,
    /// Wall time, shown in human reports only.
    #[serde(skip)]
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub seed: u64,
    pub tolerance: Tolerance,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub checks: Vec<CheckReport>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.failed == 0 && self.errors == 0 {
            EXIT_OK
        } else {
            EXIT_FAILURE
        }
    }
}

struct Outcome {
    outcome: String,
    value: Option<f64>,
    slack: Option<f64>,
    detail: Value,
}

fn from_cert(cert: MembershipCertificate) -> Outcome {
    Outcome {
        outcome: cert.verdict.as_str().to_string(),
        value: Some(cert.norm_x),
        slack: Some(cert.allowed - cert.gap.abs()),
        detail: serde_json::to_value(&cert).expect("certificate serializes"),
    }
}

fn holds(h: bool) -> String {
    if h { "holds" } else { "fails" }.to_string()
}

type CheckResult = std::result::Result<Outcome, HarnessError>;

fn probes(sc: &Scenario, spec: &CheckSpec, dim: usize) -> Vec<Vector> {
    match spec.args.probes.as_ref().expect("validated at load") {
        RawProbes::List(list) => list.iter().map(|v| vector(v)).collect(),
        RawProbes::Random { random } => {
            let mut rng = seeded(derive_seed(sc.seed, spec.name.len() as u64));
            (0..*random).map(|_| gaussian_vector(&mut rng, dim) * 2.0).collect()
        }
    }
}

fn run_one(sc: &Scenario, spec: &CheckSpec, tol: Tolerance) -> CheckResult {
    let a = &spec.args;
    let pair = || -> &PairBinding { &sc.pairs[a.pair.as_ref().expect("validated")] };
    let delta_pair = || {
        pair()
            .delta()
            .ok_or_else(|| HarnessError::Invalid(format!("{}: {} needs a delta pair", spec.name, spec.checker.name())))
    };
    let element = || &sc.elements[a.element.as_ref().expect("validated")];
    let witness = || &sc.witnesses[a.witness.as_ref().expect("validated")];
    let pair_seq = |name: &Option<String>| &sc.pair_sequences[name.as_ref().expect("validated")];
    let at_pair = || {
        let [i, j] = a.at_pair.expect("validated");
        (i, j)
    };
    let z = || vector(a.z.as_ref().expect("validated"));
    let set = || -> &SubsetSpec { &sc.subsets[a.set.as_ref().expect("validated")] };
    let point = || vector(a.point.as_ref().expect("validated"));
    let delta_space = || match &sc.spaces[a.space.as_ref().expect("validated")] {
        SpaceBinding::Delta(d) => Ok(d.clone()),
        SpaceBinding::Normed(_) => Err(HarnessError::Invalid(format!(
            "{}: {} needs a delta space",
            spec.name,
            spec.checker.name()
        ))),
    };

    Ok(match spec.checker {
        Checker::CheckLh => from_cert(check_lh(pair().space_pair(), element(), tol)?),
        Checker::CheckLhw => {
            let w = a.witness.as_ref().map(|n| &sc.witnesses[n]);
            from_cert(check_lhw(pair().space_pair(), element(), w, tol)?)
        }
        Checker::UpgradeByNormConvergence => {
            from_cert(upgrade_by_norm_convergence(pair().space_pair(), element(), witness(), tol)?)
        }
        Checker::UpgradeByWeakConvergence => {
            from_cert(upgrade_by_weak_convergence(pair().space_pair(), element(), witness(), tol)?)
        }
        Checker::UpgradeByNormSandwich => {
            let branch = match a.branch.as_deref() {
                Some("above") => SandwichBranch::Above,
                _ => SandwichBranch::Below,
            };
            from_cert(upgrade_by_norm_sandwich(pair().space_pair(), element(), witness(), branch, tol)?)
        }
        Checker::StrongFromWeakAttainment => {
            let c = strong_from_weak_attainment(delta_pair()?, element(), at_pair(), witness(), tol)?;
            Outcome {
                outcome: holds(c.holds),
                value: Some(c.residual),
                slack: None,
                detail: serde_json::to_value(c).expect("serializes"),
            }
        }
        Checker::LhwFromAttainment => from_cert(lhw_from_attainment(delta_pair()?, element(), at_pair(), witness(), tol)?),
        Checker::LhFromSharedTarget => from_cert(lh_from_shared_target(
            delta_pair()?,
            element(),
            &z(),
            pair_seq(&a.pair_seq),
            pair_seq(&a.pair_seq_y),
            tol,
        )?),
        Checker::TargetNormConvergence => {
            let r = target_norm_convergence(
                delta_pair()?,
                element(),
                &z(),
                pair_seq(&a.pair_seq_y),
                pair_seq(&a.pair_seq),
                witness(),
                tol,
            )?;
            let outcome = match (&r.certificate, r.applicable, r.norms_converge) {
                (Some(c), _, _) => c.verdict.as_str().to_string(),
                (None, true, true) => "norms_converge".into(),
                (None, true, false) => "norms_diverge".into(),
                (None, false, _) => "not_applicable".into(),
            };
            Outcome {
                outcome,
                value: Some(r.residual),
                slack: None,
                detail: serde_json::to_value(&r).expect("serializes"),
            }
        }
        Checker::LhFromTargetAndConvergence => from_cert(lh_from_target_and_convergence(
            delta_pair()?,
            element(),
            &z(),
            pair_seq(&a.pair_seq),
            witness(),
            tol,
        )?),
        Checker::DeltaNorm => {
            let v = delta_norm(&*delta_space()?, element())?;
            Outcome {
                outcome: "ok".into(),
                value: Some(v.value),
                slack: None,
                detail: json!({ "value": v.value, "pair": [v.pair.0, v.pair.1] }),
            }
        }
        Checker::StrongAttainment => {
            let c = strong_attainment(&*delta_space()?, element(), at_pair(), tol)?;
            Outcome {
                outcome: holds(c.holds),
                value: Some(c.residual),
                slack: None,
                detail: serde_json::to_value(c).expect("serializes"),
            }
        }
        Checker::WeakAttainment => {
            let p = delta_pair()?;
            let c = weak_attainment(p.x(), p.y(), element(), at_pair(), witness(), tol)?;
            Outcome {
                outcome: holds(c.holds),
                value: Some(c.residual),
                slack: None,
                detail: serde_json::to_value(c).expect("serializes"),
            }
        }
        Checker::TowardsPointAttainment => {
            let c = towards_point_attainment(&*delta_space()?, element(), &z(), pair_seq(&a.pair_seq), tol)?;
            Outcome {
                outcome: holds(c.holds),
                value: Some(c.residual),
                slack: None,
                detail: serde_json::to_value(c).expect("serializes"),
            }
        }
        Checker::VerifyNormAxioms => {
            let space = sc.spaces[a.space.as_ref().expect("validated")].as_element_space();
            let r = verify_norm_axioms(space.as_ref(), a.samples.unwrap_or(200), sc.seed, tol);
            Outcome {
                outcome: if r.all_passed() { "norm" } else if r.is_seminorm() { "seminorm" } else { "not_norm" }.into(),
                value: None,
                slack: None,
                detail: serde_json::to_value(&r).expect("serializes"),
            }
        }
        Checker::Project => {
            let (sol, detail) = project_point(set(), &point(), tol)?;
            Outcome {
                outcome: sol.cardinality.as_str().to_string(),
                value: Some(sol.distance),
                slack: None,
                detail,
            }
        }
        Checker::ClassifyProximinality => {
            let x = set();
            let r = classify_proximinality(x, &probes(sc, spec, x.ambient().dim()), tol)?;
            Outcome {
                outcome: r.class.as_str().to_string(),
                value: None,
                slack: None,
                detail: serde_json::to_value(&r).expect("serializes"),
            }
        }
        Checker::CheckTriangular => {
            let x = set();
            let ps = probes(sc, spec, x.ambient().dim());
            let pairs: Vec<(Vector, Vector)> = ps.chunks(2).filter(|c| c.len() == 2).map(|c| (c[0].clone(), c[1].clone())).collect();
            let r = check_triangular(x, &pairs, tol)?;
            Outcome {
                outcome: holds(r.holds),
                value: Some(r.worst_slack),
                slack: Some(-r.worst_slack),
                detail: serde_json::to_value(&r).expect("serializes"),
            }
        }
        Checker::ProjectionHomogeneity => {
            let r = projection_homogeneity(set(), &point(), &[-2.0, -1.0, 0.5, 3.0], tol)?;
            Outcome {
                outcome: holds(r.holds),
                value: Some(r.set_gap),
                slack: None,
                detail: serde_json::to_value(&r).expect("serializes"),
            }
        }
        Checker::Renorm => {
            let report = renorm_pipeline(set(), a.samples.unwrap_or(100), sc.seed, tol)?;
            Outcome {
                outcome: if report.passed { "passed" } else { "failed" }.into(),
                value: Some(report.lh.worst_deviation),
                slack: None,
                detail: serde_json::to_value(&report).expect("serializes"),
            }
        }
    })
}

/// Projects `y` and describes the solution, including the supremum of the
/// own norm over the minimizers when it can be formed.
pub fn project_point(x: &SubsetSpec, y: &Vector, tol: Tolerance) -> Result<(ProjectionSolution, Value), HarnessError> {
    let sol = project(x, y, tol)?;
    let sup = sup_own_norm(x, &sol).ok();
    let pts: Vec<Vec<f64>> = sol.minimizers.points().iter().map(|p| p.iter().copied().collect()).collect();
    let detail = json!({
        "distance": sol.distance,
        "solver": sol.solver,
        "cardinality": sol.cardinality,
        "minimizers": { "kind": sol.minimizers.kind(), "points": pts },
        "sup_own_norm": sup,
        "evaluations": sol.evaluations,
    });
    Ok((sol, detail))
}

#[derive(Debug, Clone, Serialize)]
pub struct RenormReport {
    pub quotient_dim: Option<usize>,
    pub null_basis: Option<Vec<Vec<f64>>>,
    pub exact: bool,
    pub hypotheses: normkeep::renorm::HypothesisEvidence,
    pub axioms: normkeep::renorm::SeminormAxiomReport,
    pub lh: normkeep::renorm::LhEqualityReport,
    pub passed: bool,
}

/// Builds the induced seminorm, checks its axioms on `samples` samples and
/// the LH equality on `samples` elements of `X`.
pub fn renorm_pipeline(x: &SubsetSpec, samples: usize, seed: u64, tol: Tolerance) -> Result<RenormReport, HarnessError> {
    let sn = build_induced_seminorm(x, tol)?;
    let axioms = verify_seminorm_axioms(&sn, samples, seed, tol)?;
    let span = sn.source_space();
    let mut rng = seeded(derive_seed(seed, 7));
    let mut xs: Vec<Vector> = vec![Vector::zeros(span.dim())];
    xs.extend((0..samples).map(|_| span.sample(&mut rng)));
    let lh = verify_lh_equality(&sn, &xs, tol)?;
    let null_basis = sn
        .null_basis()
        .map(|b| b.column_iter().map(|c| c.iter().copied().collect()).collect());
    Ok(RenormReport {
        quotient_dim: sn.quotient_dim(),
        null_basis,
        exact: sn.is_exact(),
        hypotheses: sn.evidence().clone(),
        passed: axioms.passed && lh.all_in_lh && sn.evidence().injective_on_x,
        axioms,
        lh,
    })
}

/// Runs every check in order; checker errors become failed checks.
pub fn run_checks(sc: &Scenario) -> RunReport {
    let mut report = RunReport {
        seed: sc.seed,
        tolerance: sc.tolerance,
        passed: 0,
        failed: 0,
        errors: 0,
        checks: Vec::with_capacity(sc.checks.len()),
    };
    for spec in &sc.checks {
        let start = Instant::now();
        let result = run_one(sc, spec, sc.tolerance);
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        let mut check = CheckReport {
            name: spec.name.clone(),
            checker: spec.checker.name(),
            status: CheckStatus::Pass,
            outcome: None,
            value: None,
            expect: spec.args.expect.clone(),
            expect_value: spec.args.expect_value,
            slack: None,
            error: None,
            detail: Value::Null,
            elapsed_ms,
        };
        match result {
            Ok(o) => {
                let outcome_ok = spec.args.expect.as_ref().is_none_or(|e| *e == o.outcome);
                let value_ok = match (spec.args.expect_value, o.value) {
                    (Some(e), Some(v)) => sc.tolerance.eq(e, v),
                    (Some(_), None) => false,
                    (None, _) => true,
                };
                check.status = if outcome_ok && value_ok { CheckStatus::Pass } else { CheckStatus::Fail };
                check.outcome = Some(o.outcome);
                check.value = o.value;
                check.slack = o.slack;
                check.detail = o.detail;
            }
            // An expected error code turns the error into a pass.
            Err(e) if spec.args.expect.as_deref() == Some(e.code()) => {
                check.outcome = Some(e.code().to_string());
                check.error = Some(CheckError {
                    code: e.code().to_string(),
                    message: e.to_string(),
                });
            }
            Err(e) => {
                check.status = CheckStatus::Error;
                check.error = Some(CheckError {
                    code: e.code().to_string(),
                    message: e.to_string(),
                });
            }
        }
        match check.status {
            CheckStatus::Pass => report.passed += 1,
            CheckStatus::Fail => report.failed += 1,
            CheckStatus::Error => report.errors += 1,
        }
        report.checks.push(check);
    }
    report
}

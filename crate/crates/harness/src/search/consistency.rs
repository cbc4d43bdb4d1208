//! Agreement between the upgrade checkers and the direct norm comparison on
//! instances built so that each upgrade's hypotheses hold.

use std::collections::BTreeMap;

use normkeep::membership::{
    check_lh, lh_from_shared_target, lh_from_target_and_convergence, lhw_from_attainment,
    upgrade_by_norm_convergence, upgrade_by_norm_sandwich, MembershipCertificate, NormOrder, SandwichBranch, Verdict,
};
use normkeep::rng::{derive_seed, seeded};
use normkeep::{Result, Tolerance};
use serde::Serialize;

use super::instance::{generate, geometric_witness, settling_pairs, Family, GeneratorConfig, Instance};

#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    pub instances: usize,
    /// Instances where the upgrade and `check_lh` gave the same LH answer.
    pub agreements: usize,
    pub upgraded_in_lh: usize,
    /// Instances per checker.
    pub by_checker: BTreeMap<&'static str, usize>,
    pub disagreements: Vec<String>,
}

const CHECKERS: [&str; 5] = [
    "upgrade_by_norm_convergence",
    "upgrade_by_norm_sandwich",
    "lhw_from_attainment",
    "lh_from_shared_target",
    "lh_from_target_and_convergence",
];

/// Upgraded and direct verdicts for instance `index`, using checker
/// `index % 5`.
fn one(index: usize, seed: u64, cfg: &GeneratorConfig, tol: Tolerance) -> Result<(MembershipCertificate, Verdict)> {
    let mut rng = seeded(derive_seed(seed, index as u64));
    let which = index % CHECKERS.len();
    if which < 2 {
        let Instance::Normed(mut n) = generate(Family::Normed, cfg, &mut rng) else {
            unreachable!()
        };
        // Support on the coordinates where the two norms agree, so a
        // norm-convergent witness below ‖f‖_X exists.
        for i in 0..n.f.len() {
            if n.scales[i] != 1.0 {
                n.scales[i] = if n.above() { 1.5 } else { 0.5 };
                n.f[i] = 0.0;
            }
        }
        if n.f.iter().all(|v| *v == 0.0) {
            n.scales[0] = 1.0;
            n.f[0] = 1.0;
        }
        let b = n.build()?;
        let witness = geometric_witness(&b.f, &b.g, 2 * cfg.terms);
        let direct = check_lh(&b.pair, &b.f, tol)?.verdict;
        let upgraded = if which == 0 {
            upgrade_by_norm_convergence(&b.pair, &b.f, &witness, tol)?
        } else {
            let (order, branch) = if b.above {
                (NormOrder::Ge, SandwichBranch::Above)
            } else {
                (NormOrder::Le, SandwichBranch::Below)
            };
            let pair = b.pair.clone().with_order(order, 16, 0, tol)?;
            upgrade_by_norm_sandwich(&pair, &b.f, &witness, branch, tol)?
        };
        return Ok((upgraded, direct));
    }
    let Instance::Delta(mut d) = generate(Family::Delta, cfg, &mut rng) else {
        unreachable!()
    };
    let py = d.build(tol, cfg.axiom_samples)?.argmax_y();
    let key = (py.0.min(py.1), py.0.max(py.1));
    d.excluded.retain(|p| *p != key);
    let b = d.build(tol, cfg.axiom_samples)?;
    let direct = check_lh(b.pair.as_space_pair(), &b.f, tol)?.verdict;
    let witness = geometric_witness(&b.f, &b.g, 2 * cfg.terms);
    let z = b.y().delta_tilde_at(&b.f, py)?;
    let seq = settling_pairs(&b.x_pairs[..(index / 5) % 3], py);
    let upgraded = match which {
        2 => lhw_from_attainment(&b.pair, &b.f, py, &witness, tol)?,
        3 => lh_from_shared_target(&b.pair, &b.f, &z, &seq, &settling_pairs(&[], py), tol)?,
        _ => lh_from_target_and_convergence(&b.pair, &b.f, &z, &seq, &witness, tol)?,
    };
    Ok((upgraded, direct))
}

pub fn upgrade_consistency(instances: usize, seed: u64, tol: Tolerance) -> ConsistencyReport {
    let cfg = GeneratorConfig::default();
    let mut report = ConsistencyReport {
        instances,
        agreements: 0,
        upgraded_in_lh: 0,
        by_checker: BTreeMap::new(),
        disagreements: Vec::new(),
    };
    for i in 0..instances {
        let checker = CHECKERS[i % CHECKERS.len()];
        *report.by_checker.entry(checker).or_default() += 1;
        match one(i, seed, &cfg, tol) {
            Ok((cert, direct)) => {
                let upgraded = cert.verdict;
                if upgraded == Verdict::InLh {
                    report.upgraded_in_lh += 1;
                }
                if (upgraded == Verdict::InLh) == (direct == Verdict::InLh) {
                    report.agreements += 1;
                } else {
                    report.disagreements.push(format!(
                        "instance {i} ({checker}): upgraded {} (unverified: {}), direct {}",
                        upgraded.as_str(),
                        cert.failed.unwrap_or("-"),
                        direct.as_str()
                    ));
                }
            }
            Err(e) => report.disagreements.push(format!("instance {i} ({checker}): {e}")),
        }
    }
    report
}

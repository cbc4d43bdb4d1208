use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::sequence::{limsup_estimate, Confidence, LimsupEstimate, WitnessSequence};
use crate::tolerance::Tolerance;
use crate::weak::{schur_implication_check, SchurOutcome};

use super::certificate::{MembershipCertificate, Verdict, WitnessSummary};
use super::pair::{NormOrder, SpacePair};

pub(crate) struct Norms {
    pub x: f64,
    pub y: f64,
    pub f_y: Vector,
}

pub(crate) fn norms(pair: &SpacePair, f: &Vector) -> Result<Norms> {
    let x = pair.x().norm_of(f)?;
    let f_y = pair.embed(f);
    let y = pair.y().norm_unchecked(&f_y);
    Ok(Norms { x, y, f_y })
}

pub(crate) fn certificate(checker: &'static str, verdict: Verdict, n: &Norms, tol: Tolerance) -> MembershipCertificate {
    MembershipCertificate {
        verdict,
        checker,
        norm_x: n.x,
        norm_y: n.y,
        gap: n.x - n.y,
        allowed: tol.slack(n.x, n.y),
        witness: None,
        confidence: Confidence::Exact,
        failed: None,
        cross_check: None,
        notes: Vec::new(),
    }
}

fn direct(n: &Norms, tol: Tolerance) -> Verdict {
    if tol.eq(n.x, n.y) {
        Verdict::InLh
    } else if tol.le(n.x, n.y) {
        Verdict::NotInLh
    } else {
        Verdict::NotInLhw
    }
}

/// Compares `‖f‖_X` with `‖embed f‖_Y`. The comparison is complete, so a
/// negative answer is definitive.
pub fn check_lh(pair: &SpacePair, f: &Vector, tol: Tolerance) -> Result<MembershipCertificate> {
    let n = norms(pair, f)?;
    Ok(certificate("check_lh", direct(&n, tol), &n, tol))
}

pub(crate) fn check_witness_members(pair: &SpacePair, seq: &WitnessSequence<Vector>) -> Result<()> {
    seq.try_map(|v| pair.y().check_member(v)).map(|_| ())
}

/// `limsup ‖fₙ‖_Y`.
pub(crate) fn limsup_norm_y(pair: &SpacePair, seq: &WitnessSequence<Vector>, tol: Tolerance) -> LimsupEstimate {
    limsup_estimate(&seq.map(|v| pair.y().norm_unchecked(v)), tol)
}

/// `limsup |‖fₙ‖_Y − c|`.
pub(crate) fn norm_deviation(pair: &SpacePair, seq: &WitnessSequence<Vector>, c: f64, tol: Tolerance) -> LimsupEstimate {
    limsup_estimate(&seq.map(|v| (pair.y().norm_unchecked(v) - c).abs()), tol)
}

/// `limsup ‖f − fₙ‖_Y`.
pub(crate) fn distance_to(pair: &SpacePair, seq: &WitnessSequence<Vector>, f_y: &Vector, tol: Tolerance) -> LimsupEstimate {
    limsup_estimate(&seq.map(|v| pair.y().norm_unchecked(&(v - f_y))), tol)
}

fn constant_witness(n: &Norms) -> WitnessSequence<Vector> {
    WitnessSequence::constant(n.f_y.clone())
}

/// Decides LHW membership with a candidate witness (the constant sequence at
/// `f` when absent): clause (i) `‖f‖_X <= ‖f‖_Y` and clause (ii)
/// `limsup ‖fₙ‖_Y <= ‖f‖_X`.
pub fn check_lhw(
    pair: &SpacePair,
    f: &Vector,
    witness: Option<&WitnessSequence<Vector>>,
    tol: Tolerance,
) -> Result<MembershipCertificate> {
    let n = norms(pair, f)?;
    let owned;
    let seq = match witness {
        Some(w) => w,
        None => {
            owned = constant_witness(&n);
            &owned
        }
    };
    check_witness_members(pair, seq)?;
    let est = limsup_norm_y(pair, seq, tol);
    let clause_i = tol.le(n.x, n.y);
    let clause_ii = est.usable() && est.at_most(n.x, tol);
    let equal = tol.eq(n.x, n.y);
    let verdict = match (clause_i, clause_ii) {
        (false, _) => Verdict::NotInLhw,
        (true, true) if equal => Verdict::InLh,
        (true, true) => Verdict::InLhwOnly,
        (true, false) if equal => Verdict::InLh,
        (true, false) => Verdict::NotInLh,
    };
    let mut cert = certificate("check_lhw", verdict, &n, tol);
    cert.witness = Some(WitnessSummary::new(seq, est));
    cert.confidence = est.confidence;
    if clause_i && !clause_ii {
        cert.failed = Some("witness_clause");
        cert.notes.push("the witness does not keep its Y-norms below ‖f‖_X".into());
    }
    Ok(cert)
}

/// Clause (i) and clause (ii) for an upgrade checker: errors when the witness
/// fails clause (ii), and returns a definitive certificate when clause (i)
/// fails.
fn lhw_hypotheses(
    checker: &'static str,
    pair: &SpacePair,
    f: &Vector,
    witness: &WitnessSequence<Vector>,
    tol: Tolerance,
) -> Result<std::result::Result<(Norms, LimsupEstimate), MembershipCertificate>> {
    let n = norms(pair, f)?;
    check_witness_members(pair, witness)?;
    let est = limsup_norm_y(pair, witness, tol);
    if !(est.usable() && est.at_most(n.x, tol)) {
        return Err(Error::WitnessNotLhw(format!(
            "limsup ‖fₙ‖_Y = {} exceeds ‖f‖_X = {}",
            est.value, n.x
        )));
    }
    if !tol.le(n.x, n.y) {
        let mut cert = certificate(checker, Verdict::NotInLhw, &n, tol);
        cert.witness = Some(WitnessSummary::new(witness, est));
        return Ok(Err(cert));
    }
    Ok(Ok((n, est)))
}

fn finish_upgrade(
    mut cert: MembershipCertificate,
    n: &Norms,
    upgraded: bool,
    failed: &'static str,
    tol: Tolerance,
) -> MembershipCertificate {
    let direct = direct(n, tol);
    cert.cross_check = Some(direct);
    if upgraded {
        cert.verdict = Verdict::InLh;
        if direct != Verdict::InLh {
            cert.notes.push(format!(
                "hypotheses verified but the norms differ by {}",
                (n.x - n.y).abs()
            ));
        }
    } else {
        cert.verdict = Verdict::Undecided;
        cert.failed = Some(failed);
    }
    cert
}

/// Upgrades LHW to LH when the witness converges to `f` in `Y`-norm.
pub fn upgrade_by_norm_convergence(
    pair: &SpacePair,
    f: &Vector,
    witness: &WitnessSequence<Vector>,
    tol: Tolerance,
) -> Result<MembershipCertificate> {
    const NAME: &str = "upgrade_by_norm_convergence";
    let (n, est) = match lhw_hypotheses(NAME, pair, f, witness, tol)? {
        Ok(h) => h,
        Err(cert) => return Ok(cert),
    };
    let dist = distance_to(pair, witness, &n.f_y, tol);
    let mut cert = certificate(NAME, Verdict::Undecided, &n, tol);
    cert.witness = Some(WitnessSummary::new(witness, est));
    cert.confidence = est.confidence.combine(dist.confidence);
    cert.notes.push(format!("limsup ‖f − fₙ‖_Y = {}", dist.value));
    let converges = dist.usable() && dist.within(n.y, tol);
    Ok(finish_upgrade(cert, &n, converges, "norm_convergence", tol))
}

/// Upgrades LHW to LH when the witness converges weakly to `f` in `Y`;
/// finite-dimensional spaces have the Schur property, so the norm distance
/// then vanishes as well.
pub fn upgrade_by_weak_convergence(
    pair: &SpacePair,
    f: &Vector,
    witness: &WitnessSequence<Vector>,
    tol: Tolerance,
) -> Result<MembershipCertificate> {
    const NAME: &str = "upgrade_by_weak_convergence";
    let (n, est) = match lhw_hypotheses(NAME, pair, f, witness, tol)? {
        Ok(h) => h,
        Err(cert) => return Ok(cert),
    };
    let schur = schur_implication_check(pair.y().as_ref(), witness, &n.f_y, tol)?;
    let mut cert = certificate(NAME, Verdict::Undecided, &n, tol);
    cert.witness = Some(WitnessSummary::new(witness, est));
    cert.confidence = est.confidence.combine(schur.confidence);
    let upgraded = match schur.outcome {
        SchurOutcome::Pass => true,
        SchurOutcome::NotApplicable => {
            cert.notes.push("witness does not converge weakly to f".into());
            false
        }
        SchurOutcome::Fail => {
            cert.notes.push(format!(
                "weak convergence verified but limsup ‖f − fₙ‖_Y = {:?}",
                schur.norm_residual
            ));
            false
        }
    };
    Ok(finish_upgrade(cert, &n, upgraded, "weak_convergence", tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SandwichBranch {
    /// `limsup ‖fₙ‖_Y <= ‖f‖_X`, `‖·‖_X <= ‖·‖_Y`, `‖fₙ‖_Y → ‖f‖_Y`.
    Below,
    /// `liminf ‖fₙ‖_Y >= ‖f‖_X`, `‖·‖_X >= ‖·‖_Y`, `‖fₙ‖_Y → ‖f‖_Y`.
    Above,
}

/// Concludes LH from a sequence whose `Y`-norms converge to `‖f‖_Y` and stay
/// on one side of `‖f‖_X`, given the matching global norm order.
///
/// The `Above` branch is the mirror image of `Below`; the certificate notes
/// that reading.
pub fn upgrade_by_norm_sandwich(
    pair: &SpacePair,
    f: &Vector,
    witness: &WitnessSequence<Vector>,
    branch: SandwichBranch,
    tol: Tolerance,
) -> Result<MembershipCertificate> {
    const NAME: &str = "upgrade_by_norm_sandwich";
    let needed = match branch {
        SandwichBranch::Below => NormOrder::Le,
        SandwichBranch::Above => NormOrder::Ge,
    };
    let order = pair.order_at(f, tol)?;
    if order != Some(needed) {
        return Err(Error::OrderFlagMissing(format!(
            "branch {branch:?} needs a declared order {needed:?}, found {order:?}"
        )));
    }
    let n = norms(pair, f)?;
    check_witness_members(pair, witness)?;
    let side = match branch {
        SandwichBranch::Below => {
            let est = limsup_norm_y(pair, witness, tol);
            (est, est.usable() && est.at_most(n.x, tol))
        }
        SandwichBranch::Above => {
            let neg = limsup_estimate(&witness.map(|v| -pair.y().norm_unchecked(v)), tol);
            let liminf = LimsupEstimate {
                value: -neg.value,
                confidence: neg.confidence,
            };
            (liminf, liminf.usable() && tol.le(n.x, liminf.value))
        }
    };
    let limit = norm_deviation(pair, witness, n.y, tol);
    let converges = limit.usable() && limit.within(n.y, tol);
    let mut cert = certificate(NAME, Verdict::Undecided, &n, tol);
    cert.witness = Some(WitnessSummary::new(witness, side.0));
    cert.confidence = side.0.confidence.combine(limit.confidence);
    if branch == SandwichBranch::Above {
        cert.notes.push("mirror-image reading of the Below branch".into());
    }
    let failed = if !side.1 { "norm_bound" } else { "norm_convergence" };
    Ok(finish_upgrade(cert, &n, side.1 && converges, failed, tol))
}

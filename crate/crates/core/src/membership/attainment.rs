use serde::Serialize;

use crate::delta::{
    strong_attainment, towards_point_attainment, weak_attainment, weak_towards_point_attainment,
    AttainmentCheck, Pair,
};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::sequence::WitnessSequence;
use crate::tolerance::Tolerance;

use super::certificate::{MembershipCertificate, Verdict, WitnessSummary};
use super::checks::{certificate, distance_to, limsup_norm_y, norm_deviation, norms, Norms};
use super::pair::DeltaPair;

fn require(check: AttainmentCheck, name: &'static str) -> Result<AttainmentCheck> {
    if check.holds {
        Ok(check)
    } else {
        Err(Error::precondition(name, format!("residual {}", check.residual)))
    }
}

fn cross_checked(mut cert: MembershipCertificate, n: &Norms, tol: Tolerance) -> MembershipCertificate {
    let direct = if tol.eq(n.x, n.y) {
        Verdict::InLh
    } else if tol.le(n.x, n.y) {
        Verdict::NotInLh
    } else {
        Verdict::NotInLhw
    };
    cert.cross_check = Some(direct);
    if cert.verdict == Verdict::InLh && direct != Verdict::InLh {
        cert.notes.push(format!("hypotheses verified but the norms differ by {}", (n.x - n.y).abs()));
    }
    cert
}

/// For `f` in LH that weakly attains at `pair0` through a witness converging
/// to `f` in `Y`-norm, reports strong attainment at `pair0`, which must hold.
pub fn strong_from_weak_attainment(
    pair: &DeltaPair,
    f: &Vector,
    pair0: Pair,
    witness: &WitnessSequence<Vector>,
    tol: Tolerance,
) -> Result<AttainmentCheck> {
    let generic = pair.as_space_pair();
    let n = norms(generic, f)?;
    if !tol.eq(n.x, n.y) {
        return Err(Error::NotLh(format!("‖f‖_X = {}, ‖f‖_Y = {}", n.x, n.y)));
    }
    require(weak_attainment(pair.x(), pair.y(), f, pair0, witness, tol)?, "weak_attainment")?;
    let dist = distance_to(generic, witness, &n.f_y, tol);
    if !(dist.usable() && dist.within(n.y, tol)) {
        return Err(Error::precondition(
            "norm_convergence",
            format!("limsup ‖f − fₙ‖_Y = {}", dist.value),
        ));
    }
    strong_attainment(pair.x(), f, pair0, tol)
}

/// Strong and weak attainment at the same pair give LHW when
/// `‖f‖_X <= ‖f‖_Y`, and LH when the witness norms converge to `‖f‖_Y`; the
/// LH conclusion does not use the norm inequality.
pub fn lhw_from_attainment(
    pair: &DeltaPair,
    f: &Vector,
    pair0: Pair,
    witness: &WitnessSequence<Vector>,
    tol: Tolerance,
) -> Result<MembershipCertificate> {
    let generic = pair.as_space_pair();
    let n = norms(generic, f)?;
    require(strong_attainment(pair.x(), f, pair0, tol)?, "strong_attainment")?;
    let weak = require(weak_attainment(pair.x(), pair.y(), f, pair0, witness, tol)?, "weak_attainment")?;
    let limit = norm_deviation(generic, witness, n.y, tol);
    let mut cert = certificate("lhw_from_attainment", Verdict::Undecided, &n, tol);
    cert.witness = Some(WitnessSummary::new(witness, limsup_norm_y(generic, witness, tol)));
    cert.confidence = weak.confidence.combine(limit.confidence);
    if limit.usable() && limit.within(n.y, tol) {
        cert.verdict = Verdict::InLh;
    } else if tol.le(n.x, n.y) {
        cert.verdict = if tol.eq(n.x, n.y) {
            Verdict::InLh
        } else {
            Verdict::InLhwOnly
        };
        cert.notes.push("witness norms do not converge to ‖f‖_Y".into());
    } else {
        cert.failed = Some("norm_order");
    }
    Ok(cross_checked(cert, &n, tol))
}

/// Attainment towards the same `z` in both `X` and `Y` forces equal norms.
pub fn lh_from_shared_target(
    pair: &DeltaPair,
    f: &Vector,
    z: &Vector,
    pair_seq_x: &WitnessSequence<Pair>,
    pair_seq_y: &WitnessSequence<Pair>,
    tol: Tolerance,
) -> Result<MembershipCertificate> {
    let n = norms(pair.as_space_pair(), f)?;
    let in_x = require(towards_point_attainment(pair.x(), f, z, pair_seq_x, tol)?, "towards_x")?;
    let in_y = require(towards_point_attainment(pair.y(), f, z, pair_seq_y, tol)?, "towards_y")?;
    let mut cert = certificate("lh_from_shared_target", Verdict::InLh, &n, tol);
    cert.confidence = in_x.confidence.combine(in_y.confidence);
    Ok(cross_checked(cert, &n, tol))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TargetConvergenceReport {
    /// Both attainment hypotheses hold.
    pub applicable: bool,
    /// Hypothesis that failed when not applicable.
    pub failed: Option<&'static str>,
    /// `lim ‖fₙ‖_Y = ‖f‖_Y` on the supplied sequence.
    pub norms_converge: bool,
    /// `limsup |‖fₙ‖_Y − ‖f‖_Y|`.
    pub residual: f64,
    /// The same sequence also satisfies the LHW clauses.
    pub serves_as_lhw_witness: bool,
    /// LH certificate when the sequence is also an LHW witness.
    pub certificate: Option<MembershipCertificate>,
}

/// With `Y`-norm attainment towards `z` and weak `(X, Y)` attainment towards
/// `z` through `fn_seq`, the `Y`-norms of `fn_seq` must converge to `‖f‖_Y`;
/// if `fn_seq` is also an LHW witness, `f` is in LH.
pub fn target_norm_convergence(
    pair: &DeltaPair,
    f: &Vector,
    z: &Vector,
    pair_seq_y: &WitnessSequence<Pair>,
    pair_seq_x: &WitnessSequence<Pair>,
    fn_seq: &WitnessSequence<Vector>,
    tol: Tolerance,
) -> Result<TargetConvergenceReport> {
    let generic = pair.as_space_pair();
    let n = norms(generic, f)?;
    let towards_y = towards_point_attainment(pair.y(), f, z, pair_seq_y, tol)?;
    let weak = weak_towards_point_attainment(pair.x(), pair.y(), f, z, pair_seq_x, fn_seq, tol)?;
    let failed = if !towards_y.holds {
        Some("towards_y")
    } else if !weak.holds {
        Some("weak_towards")
    } else {
        None
    };
    let limit = norm_deviation(generic, fn_seq, n.y, tol);
    let norms_converge = limit.usable() && limit.within(n.y, tol);
    let bound = limsup_norm_y(generic, fn_seq, tol);
    let serves = tol.le(n.x, n.y) && bound.usable() && bound.at_most(n.x, tol);
    let certificate = (failed.is_none() && serves).then(|| {
        let mut cert = certificate("target_norm_convergence", Verdict::InLh, &n, tol);
        cert.witness = Some(WitnessSummary::new(fn_seq, bound));
        cert.confidence = towards_y.confidence.combine(weak.confidence).combine(bound.confidence);
        cross_checked(cert, &n, tol)
    });
    Ok(TargetConvergenceReport {
        applicable: failed.is_none(),
        failed,
        norms_converge,
        residual: limit.value,
        serves_as_lhw_witness: serves,
        certificate,
    })
}

/// Attainment towards `z` in `X`, weak attainment towards `z` through
/// `fn_seq`, and `fₙ → f` in `Y`-norm give LH.
pub fn lh_from_target_and_convergence(
    pair: &DeltaPair,
    f: &Vector,
    z: &Vector,
    pair_seq: &WitnessSequence<Pair>,
    fn_seq: &WitnessSequence<Vector>,
    tol: Tolerance,
) -> Result<MembershipCertificate> {
    let generic = pair.as_space_pair();
    let n = norms(generic, f)?;
    let towards = towards_point_attainment(pair.x(), f, z, pair_seq, tol)?;
    let weak = weak_towards_point_attainment(pair.x(), pair.y(), f, z, pair_seq, fn_seq, tol)?;
    let dist = distance_to(generic, fn_seq, &n.f_y, tol);
    let mut cert = certificate("lh_from_target_and_convergence", Verdict::Undecided, &n, tol);
    cert.witness = Some(WitnessSummary::new(fn_seq, limsup_norm_y(generic, fn_seq, tol)));
    cert.confidence = towards.confidence.combine(weak.confidence).combine(dist.confidence);
    cert.failed = if !towards.holds {
        Some("towards_x")
    } else if !weak.holds {
        Some("weak_towards")
    } else if !(dist.usable() && dist.within(n.y, tol)) {
        Some("norm_convergence")
    } else {
        None
    };
    if cert.failed.is_none() {
        cert.verdict = Verdict::InLh;
    }
    Ok(cross_checked(cert, &n, tol))
}

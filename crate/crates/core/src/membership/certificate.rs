use serde::Serialize;

use crate::sequence::{Confidence, LimsupEstimate, WitnessSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// `‖f‖_X = ‖f‖_Y`.
    InLh,
    /// Both LHW clauses verified with the witness, but the norms differ.
    InLhwOnly,
    /// The norms differ; LHW membership was not established.
    NotInLh,
    /// `‖f‖_X > ‖f‖_Y`, so even the first LHW clause fails.
    NotInLhw,
    /// The hypotheses of the checker could not be verified.
    Undecided,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::InLh => "in_lh",
            Verdict::InLhwOnly => "in_lhw_only",
            Verdict::NotInLh => "not_in_lh",
            Verdict::NotInLhw => "not_in_lhw",
            Verdict::Undecided => "undecided",
        }
    }

    /// Whether the verdict places `f` in LHW.
    pub fn in_lhw(&self) -> bool {
        matches!(self, Verdict::InLh | Verdict::InLhwOnly)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessSummary {
    pub terms: usize,
    pub tail: &'static str,
    /// `limsup ‖fₙ‖_Y`.
    pub limsup_norm_y: f64,
    pub confidence: Confidence,
}

impl WitnessSummary {
    pub(crate) fn new<T>(seq: &WitnessSequence<T>, est: LimsupEstimate) -> Self {
        WitnessSummary {
            terms: seq.len(),
            tail: seq.tail_tag(),
            limsup_norm_y: est.value,
            confidence: est.confidence,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipCertificate {
    pub verdict: Verdict,
    /// Name of the checker that produced the certificate.
    pub checker: &'static str,
    pub norm_x: f64,
    pub norm_y: f64,
    /// `‖f‖_X − ‖f‖_Y`.
    pub gap: f64,
    /// Tolerance allowed when comparing the two norms.
    pub allowed: f64,
    pub witness: Option<WitnessSummary>,
    pub confidence: Confidence,
    /// Hypothesis that was not verified, for undecided verdicts.
    pub failed: Option<&'static str>,
    /// Verdict of the direct norm comparison, for upgrade checkers.
    pub cross_check: Option<Verdict>,
    pub notes: Vec<String>,
}

impl MembershipCertificate {
    /// An upgrade certificate claiming LH that the direct comparison
    /// contradicts.
    pub fn contradicts_direct_check(&self) -> bool {
        self.verdict == Verdict::InLh && self.cross_check.is_some_and(|v| v != Verdict::InLh)
    }

    /// Invariants every certificate must satisfy: LH implies equal norms,
    /// LHW-only implies the first clause and a witness.
    pub fn is_well_formed(&self) -> bool {
        match self.verdict {
            Verdict::InLh => self.gap.abs() <= self.allowed,
            Verdict::InLhwOnly => self.gap <= self.allowed && self.witness.is_some(),
            _ => true,
        }
    }
}

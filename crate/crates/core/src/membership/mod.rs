//! Deciding whether an element keeps its norm under the inclusion `X ⊂ Y`
//! (LH), or keeps it in the weaker sense witnessed by a sequence (LHW), and
//! the checkers that reach LH from attainment and convergence hypotheses.
//!
//! Every checker returns a [`MembershipCertificate`]. Upgrade checkers that
//! conclude LH also record the direct norm comparison so that the two routes
//! can be compared.

mod attainment;
mod certificate;
mod checks;
mod pair;

pub use attainment::{
    lh_from_shared_target, lh_from_target_and_convergence, lhw_from_attainment,
    strong_from_weak_attainment, target_norm_convergence, TargetConvergenceReport,
};
pub use certificate::{MembershipCertificate, Verdict, WitnessSummary};
pub use checks::{
    check_lh, check_lhw, upgrade_by_norm_convergence, upgrade_by_norm_sandwich,
    upgrade_by_weak_convergence, SandwichBranch,
};
pub use pair::{DeltaPair, NormOrder, SpacePair, ORDER_SAMPLES};

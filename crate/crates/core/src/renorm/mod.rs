//! The seminorm `‖y‖_Ỹ = sup over P_X(y) of ‖·‖_X` induced on `Y` by a
//! triangular bounded proximinal subspace `X`, its null space, quotient
//! representatives, and the check that `X` keeps its own norm inside `Ỹ`.

mod seminorm;
mod verify;

pub use seminorm::{
    build_induced_seminorm, build_induced_seminorm_with, HypothesisEvidence, InducedSeminorm, NullSpace,
    RenormOptions, DEFAULT_BATTERY, GRID_VERIFY_TOL,
};
pub use verify::{
    quotient_representative, verify_lh_equality, verify_seminorm_axioms, LhEqualityReport, LhRow,
    SeminormAxiomReport,
};

//! Metric projection onto closed convex subsets, proximinality
//! classification, triangularity and the discrete Bochner spaces.

mod analysis;
mod bochner;
mod lp;
mod solve;
mod subset;

pub use analysis::{
    check_triangular, classify_proximinality, projection_homogeneity, sup_own_norm, HomogeneityReport,
    ProximinalityClass, ProximinalityReport, SupOwnNorm, TriangularReport,
};
pub use bochner::{check_prox_transfer, make_discrete_bochner, ProxTransferReport, TransferProbe, PRODUCT_VERTEX_CAP};
pub use lp::ENUMERATION_CAP;
pub use solve::{
    project, project_with, Cardinality, Minimizers, ProjectOptions, ProjectionSolution, SolverChoice, SolverTag,
};
pub use subset::{SubsetKind, SubsetSpec, OWN_NORM_SAMPLES};

#[cfg(test)]
mod tests;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure modes shared by every module of the crate.
///
/// Each variant has a stable snake-case [`code`](Error::code) that reports and
/// scenario files use to refer to it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dim_mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("not_member: {0}")]
    NotMember(String),
    #[error("empty_domain")]
    EmptyDomain,
    #[error("bad_exponent: {0}")]
    BadExponent(f64),
    #[error("pair_outside_domain: ({0}, {1})")]
    PairOutsideDomain(usize, usize),
    #[error("no_delta_tilde: kernel {0} has no vector-valued form")]
    NoDeltaTilde(String),
    #[error("witness_not_lhw: {0}")]
    WitnessNotLhw(String),
    #[error("order_flag_missing: {0}")]
    OrderFlagMissing(String),
    #[error("not_lh: {0}")]
    NotLh(String),
    #[error("precondition_failed({name}): {detail}")]
    Precondition { name: &'static str, detail: String },
    #[error("bad_subset: {0}")]
    BadSubset(String),
    #[error("bad_norm: {0}")]
    BadNorm(String),
    #[error("bad_metric: {0}")]
    BadMetric(String),
    #[error("bad_measure: {0}")]
    BadMeasure(String),
    #[error("bad_tolerance: rel={rel}, abs={abs}")]
    BadTolerance { rel: f64, abs: f64 },
    #[error("no_convergence: best distance {distance} after {evaluations} evaluations")]
    NoConvergence {
        distance: f64,
        point: Vec<f64>,
        evaluations: usize,
    },
    #[error("nonconvex_own_norm")]
    NonconvexOwnNorm,
    #[error("hypothesis_failed({which}): {detail}")]
    HypothesisFailed { which: &'static str, detail: String },
    #[error("null_basis_stale: residual seminorm {0}")]
    NullBasisStale(f64),
    #[error("quotient_unavailable: kernel of a sampled seminorm has no basis")]
    QuotientUnavailable,
    #[error("solver: {0}")]
    Solver(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimMismatch { .. } => "dim_mismatch",
            Error::NotMember(_) => "not_member",
            Error::EmptyDomain => "empty_domain",
            Error::BadExponent(_) => "bad_exponent",
            Error::PairOutsideDomain(..) => "pair_outside_domain",
            Error::NoDeltaTilde(_) => "no_delta_tilde",
            Error::WitnessNotLhw(_) => "witness_not_lhw",
            Error::OrderFlagMissing(_) => "order_flag_missing",
            Error::NotLh(_) => "not_lh",
            Error::Precondition { .. } => "precondition_failed",
            Error::BadSubset(_) => "bad_subset",
            Error::BadNorm(_) => "bad_norm",
            Error::BadMetric(_) => "bad_metric",
            Error::BadMeasure(_) => "bad_measure",
            Error::BadTolerance { .. } => "bad_tolerance",
            Error::NoConvergence { .. } => "no_convergence",
            Error::NonconvexOwnNorm => "nonconvex_own_norm",
            Error::HypothesisFailed { .. } => "hypothesis_failed",
            Error::NullBasisStale(_) => "null_basis_stale",
            Error::QuotientUnavailable => "quotient_unavailable",
            Error::Solver(_) => "solver",
        }
    }

    pub(crate) fn precondition(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition {
            name,
            detail: detail.into(),
        }
    }
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimMismatch { expected, got })
    }
}

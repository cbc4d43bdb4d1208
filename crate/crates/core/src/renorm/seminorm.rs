use std::sync::Arc;

use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{columns, orthogonal_complement, orthonormal_span, to_vec, Matrix, Vector};
use crate::normed::{ElementSpace, Subspace};
use crate::projection::{
    check_triangular, project, sup_own_norm, Cardinality, SolverTag, SubsetKind, SubsetSpec, TriangularReport,
};
use crate::rng::{derive_seed, gaussian_vector, sample_vector, seeded, SeededRng};
use crate::tolerance::Tolerance;

/// Probe pairs used for the triangularity hypothesis by default.
pub const DEFAULT_BATTERY: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenormOptions {
    pub battery: usize,
    /// Random elements of `X` checked for a nonzero seminorm.
    pub injectivity_samples: usize,
    pub seed: u64,
}

impl Default for RenormOptions {
    fn default() -> Self {
        RenormOptions {
            battery: DEFAULT_BATTERY,
            injectivity_samples: 32,
            seed: 0,
        }
    }
}

/// The kernel `𝒩 = {g : ‖g‖_Ỹ = 0}`.
#[derive(Debug, Clone, PartialEq)]
pub enum NullSpace {
    /// Orthonormal basis as columns (possibly none).
    Basis(Matrix),
    /// The seminorm is only sampled; `near_zero` lists probe directions whose
    /// seminorm fell below tolerance.
    Sampled { probes: usize, near_zero: Vec<Vector> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisEvidence {
    pub battery: usize,
    pub triangular: TriangularReport,
    pub bounded_probes: usize,
    pub bounded: bool,
    /// Probes whose nearest point was unique.
    pub chebyshev_probes: usize,
    /// No sampled nonzero element of `X` has zero seminorm.
    pub injective_on_x: bool,
}

/// `‖y‖_Ỹ` built from a subspace source. Immutable once built.
#[derive(Debug, Clone)]
pub struct InducedSeminorm {
    source: SubsetSpec,
    null: NullSpace,
    evidence: HypothesisEvidence,
    exact: bool,
    tol: Tolerance,
    label: String,
}

/// Tolerance used when the seminorm is evaluated through local search.
pub const GRID_VERIFY_TOL: f64 = 1e-6;

pub(crate) fn effective_tol(exact: bool, tol: Tolerance) -> Tolerance {
    if exact {
        tol
    } else {
        Tolerance {
            rel: tol.rel.max(GRID_VERIFY_TOL),
            abs: tol.abs.max(GRID_VERIFY_TOL),
        }
    }
}

fn source_is_exact(x: &SubsetSpec) -> bool {
    matches!(x.kind(), SubsetKind::RealAxisInC)
        || x.ambient().is_euclidean()
        || x.ambient().piecewise_rows().is_some()
}

/// Builds the induced seminorm after running the hypothesis battery.
pub fn build_induced_seminorm(x: &SubsetSpec, tol: Tolerance) -> Result<InducedSeminorm> {
    build_induced_seminorm_with(x, tol, RenormOptions::default())
}

pub fn build_induced_seminorm_with(x: &SubsetSpec, tol: Tolerance, opts: RenormOptions) -> Result<InducedSeminorm> {
    if !x.is_linear() {
        return Err(Error::BadSubset("renorming needs a linear subset".into()));
    }
    let n = x.ambient().dim();
    let mut rng = seeded(opts.seed);
    let pairs: Vec<(Vector, Vector)> = (0..opts.battery)
        .map(|i| {
            let a = gaussian_vector(&mut rng, n);
            // Every tenth pair pits y against its negative or zero.
            let b = match i % 10 {
                3 => -&a,
                7 => Vector::zeros(n),
                _ => gaussian_vector(&mut rng, n),
            };
            (a, b)
        })
        .collect();
    let exact = source_is_exact(x);
    let triangular = check_triangular(x, &pairs, effective_tol(exact, tol))?;
    if !triangular.holds {
        let (y1, y2) = triangular.violation.clone().unwrap_or_default();
        return Err(Error::HypothesisFailed {
            which: "triangular",
            detail: format!("y1 = {y1:?}, y2 = {y2:?}, excess {:.3e}", triangular.worst_slack),
        });
    }

    let mut chebyshev = 0;
    let mut probes: Vec<Vector> = pairs.iter().map(|p| p.0.clone()).collect();
    probes.extend(unit_directions(n));
    for y in &probes {
        let sol = project(x, y, tol)?;
        if sol.cardinality == Cardinality::Singleton {
            chebyshev += 1;
        }
        let s = sup_own_norm(x, &sol)?;
        if !s.bounded {
            return Err(Error::HypothesisFailed {
                which: "bounded",
                detail: format!("sup of own norms over P_X({:?}) is {}", to_vec(y), s.value),
            });
        }
    }

    let mut sn = InducedSeminorm {
        source: x.clone(),
        null: NullSpace::Basis(Matrix::zeros(n, 0)),
        evidence: HypothesisEvidence {
            battery: opts.battery,
            triangular,
            bounded_probes: probes.len(),
            bounded: true,
            chebyshev_probes: chebyshev,
            injective_on_x: true,
        },
        exact,
        tol,
        label: format!("induced({})", x.label()),
    };
    sn.null = find_null_space(&sn, &mut seeded(derive_seed(opts.seed, 1)))?;

    let span = x.span_space().expect("linear subset");
    let mut xs = span.probes();
    let mut xrng = seeded(derive_seed(opts.seed, 2));
    xs.extend((0..opts.injectivity_samples).map(|_| span.sample(&mut xrng)));
    for f in &xs {
        if sn.in_null(f)? && !tol.is_zero(f.amax()) {
            sn.evidence.injective_on_x = false;
        }
    }
    Ok(sn)
}

fn unit_directions(n: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for i in 0..n {
        let mut e = Vector::zeros(n);
        e[i] = 1.0;
        out.push(e);
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..n {
        for j in i + 1..n {
            for s in [1.0, -1.0] {
                let mut e = Vector::zeros(n);
                e[i] = r;
                e[j] = s * r;
                out.push(e);
            }
        }
    }
    out
}

fn find_null_space(sn: &InducedSeminorm, rng: &mut SeededRng) -> Result<NullSpace> {
    let x = &sn.source;
    let n = x.ambient().dim();
    let spanning = x.spanning();
    // With a Euclidean ambient the projection is orthogonal and the kernel of
    // the seminorm is the orthogonal complement of X.
    if matches!(x.kind(), SubsetKind::RealAxisInC) || x.ambient().is_euclidean() {
        return Ok(NullSpace::Basis(orthogonal_complement(&spanning)));
    }
    let mut candidates = unit_directions(n);
    candidates.extend(orthogonal_complement(&spanning).column_iter().map(|c| c.into_owned()));
    if !sn.exact {
        let mut near_zero = Vec::new();
        for c in &candidates {
            if sn.in_null(c)? {
                near_zero.push(c.clone());
            }
        }
        return Ok(NullSpace::Sampled {
            probes: candidates.len(),
            near_zero,
        });
    }
    // Grow a basis from null candidates, keeping a candidate only when random
    // combinations with the current basis stay null.
    let mut basis = Matrix::zeros(n, 0);
    for c in &candidates {
        if basis.ncols() == n - spanning.ncols() {
            break;
        }
        let residual = c - &basis * (basis.transpose() * c);
        if residual.norm() < 1e-8 || !sn.in_null(c)? {
            continue;
        }
        let mut cols: Vec<Vector> = basis.column_iter().map(|b| b.into_owned()).collect();
        cols.push(c.clone());
        let trial = orthonormal_span(&columns(&cols, n));
        let mut ok = true;
        for _ in 0..8 {
            let combo = &trial * sample_vector(rng, trial.ncols());
            if !sn.in_null(&combo)? {
                ok = false;
                break;
            }
        }
        if ok {
            basis = trial;
        }
    }
    Ok(NullSpace::Basis(basis))
}

impl InducedSeminorm {
    pub fn source(&self) -> &SubsetSpec {
        &self.source
    }

    pub fn null_space(&self) -> &NullSpace {
        &self.null
    }

    pub fn null_basis(&self) -> Option<&Matrix> {
        match &self.null {
            NullSpace::Basis(b) => Some(b),
            NullSpace::Sampled { .. } => None,
        }
    }

    /// Ambient dimension minus the null dimension, when the null space has a
    /// basis.
    pub fn quotient_dim(&self) -> Option<usize> {
        self.null_basis().map(|b| self.dim() - b.ncols())
    }

    pub fn evidence(&self) -> &HypothesisEvidence {
        &self.evidence
    }

    /// Projections are solved exactly (closed form or linear program).
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    /// `sup_{g ∈ P_X(y)} ‖g‖_X`.
    pub fn eval(&self, y: &Vector) -> Result<f64> {
        check_dim(self.dim(), y.len())?;
        let sol = project(&self.source, y, self.tol)?;
        debug_assert!(self.exact == (sol.solver != SolverTag::GridRefine));
        Ok(sup_own_norm(&self.source, &sol)?.value)
    }

    pub(crate) fn in_null(&self, y: &Vector) -> Result<bool> {
        let v = self.eval(y)?;
        Ok(v <= effective_tol(self.exact, self.tol).slack(y.amax(), 0.0))
    }

    /// `X` with its own norm, as an element space.
    pub fn source_space(&self) -> Subspace {
        self.source.span_space().expect("linear subset")
    }
}

impl ElementSpace for InducedSeminorm {
    fn dim(&self) -> usize {
        self.source.ambient().dim()
    }

    fn label(&self) -> &str {
        &self.label
    }

    fn check_member(&self, v: &Vector) -> Result<()> {
        check_dim(self.dim(), v.len())
    }

    fn norm_unchecked(&self, v: &Vector) -> f64 {
        self.eval(v).unwrap_or(f64::NAN)
    }

    fn sample(&self, rng: &mut SeededRng) -> Vector {
        sample_vector(rng, self.dim())
    }
}

pub(crate) fn as_space(sn: &InducedSeminorm) -> Arc<dyn ElementSpace> {
    Arc::new(sn.clone())
}

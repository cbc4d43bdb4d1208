use std::sync::Arc;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{columns, rank, Matrix, Vector};
use crate::normed::{verify_norm_axioms, ElementSpace, NormedSpace, Subspace};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone)]
pub enum SubsetKind {
    /// Column span of a basis with linearly independent columns.
    Subspace { basis: Matrix },
    /// Convex hull of distinct vertices.
    Polytope { vertices: Vec<Vector> },
    /// `ℝ ⊂ ℂ`, with `ℂ` as `ℝ²` (real part first) under the modulus.
    RealAxisInC,
}

/// Samples used to check the subset's own norm at construction.
pub const OWN_NORM_SAMPLES: usize = 200;

/// A closed convex subset `X` of a normed space `Y`, carrying its own norm
/// on the span (evaluated in ambient coordinates).
#[derive(Debug, Clone)]
pub struct SubsetSpec {
    ambient: Arc<NormedSpace>,
    kind: SubsetKind,
    own_norm: Arc<NormedSpace>,
    own_norm_convex: bool,
    label: String,
}

impl SubsetSpec {
    pub fn subspace(ambient: Arc<NormedSpace>, basis: Matrix, own_norm: Arc<NormedSpace>) -> Result<Self> {
        check_dim(ambient.dim(), basis.nrows())?;
        if basis.ncols() == 0 || basis.iter().any(|x| !x.is_finite()) {
            return Err(Error::BadSubset("basis must be a nonempty finite matrix".into()));
        }
        if rank(&basis) != basis.ncols() {
            return Err(Error::BadSubset("basis vectors are linearly dependent".into()));
        }
        SubsetSpec::build(ambient, SubsetKind::Subspace { basis }, own_norm)
    }

    pub fn polytope(ambient: Arc<NormedSpace>, vertices: Vec<Vector>, own_norm: Arc<NormedSpace>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::BadSubset("polytope needs at least one vertex".into()));
        }
        for (i, v) in vertices.iter().enumerate() {
            check_dim(ambient.dim(), v.len())?;
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::BadSubset(format!("vertex {i} is not finite")));
            }
            if vertices[..i].contains(v) {
                return Err(Error::BadSubset(format!("vertex {i} repeats an earlier vertex")));
            }
        }
        SubsetSpec::build(ambient, SubsetKind::Polytope { vertices }, own_norm)
    }

    /// `ℝ` inside `ℂ`; the own norm defaults to the modulus.
    pub fn real_axis_in_c(own_norm: Option<Arc<NormedSpace>>) -> Result<Self> {
        let ambient = Arc::new(NormedSpace::euclidean(2).with_label("C"));
        let own = own_norm.unwrap_or_else(|| ambient.clone());
        SubsetSpec::build(ambient, SubsetKind::RealAxisInC, own)
    }

    fn build(ambient: Arc<NormedSpace>, kind: SubsetKind, own_norm: Arc<NormedSpace>) -> Result<Self> {
        check_dim(ambient.dim(), own_norm.dim())?;
        let mut spec = SubsetSpec {
            label: format!("{} in {}", kind_tag(&kind), ambient.label()),
            ambient,
            kind,
            own_norm,
            own_norm_convex: true,
        };
        if let Some(span) = spec.span_space() {
            let report = verify_norm_axioms(&span, OWN_NORM_SAMPLES, 0, Tolerance::default());
            if !(report.zero_exact
                && report.nonnegativity.passed
                && report.definiteness.passed
                && report.homogeneity.passed)
            {
                return Err(Error::BadNorm(format!(
                    "own norm {} is not a norm on the span of the subset",
                    spec.own_norm.label()
                )));
            }
            spec.own_norm_convex = report.triangle.passed;
        }
        Ok(spec)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ambient(&self) -> &Arc<NormedSpace> {
        &self.ambient
    }

    pub fn kind(&self) -> &SubsetKind {
        &self.kind
    }

    pub fn own_norm(&self) -> &Arc<NormedSpace> {
        &self.own_norm
    }

    /// Whether the own norm passed the triangle inequality on the span.
    pub fn own_norm_convex(&self) -> bool {
        self.own_norm_convex
    }

    pub fn is_linear(&self) -> bool {
        !matches!(self.kind, SubsetKind::Polytope { .. })
    }

    /// Spanning vectors of the subset's linear span, as columns.
    pub fn spanning(&self) -> Matrix {
        match &self.kind {
            SubsetKind::Subspace { basis } => basis.clone(),
            SubsetKind::Polytope { vertices } => columns(vertices, self.ambient.dim()),
            SubsetKind::RealAxisInC => Matrix::from_column_slice(2, 1, &[1.0, 0.0]),
        }
    }

    /// The span with the own norm, as an element space (absent when the
    /// span is `{0}`).
    pub fn span_space(&self) -> Option<Subspace> {
        Subspace::new(&self.spanning(), self.own_norm.clone(), self.label.clone()).ok()
    }

    /// Coordinates `w` parametrize `X` as `M w`: basis coefficients for
    /// subspaces, barycentric weights for polytopes.
    pub(crate) fn parameter_matrix(&self) -> Matrix {
        self.spanning()
    }
}

fn kind_tag(kind: &SubsetKind) -> &'static str {
    match kind {
        SubsetKind::Subspace { .. } => "subspace",
        SubsetKind::Polytope { .. } => "polytope",
        SubsetKind::RealAxisInC => "R",
    }
}

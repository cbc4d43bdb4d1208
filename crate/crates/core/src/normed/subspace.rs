use std::sync::Arc;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{orthonormal_span, Matrix, Vector};
use crate::rng::{sample_vector, SeededRng};

use super::ElementSpace;

/// Relative distance from the span below which a vector counts as a member.
pub const SPAN_MEMBERSHIP_EPS: f64 = 1e-10;

/// A linear subspace of `R^n`, in ambient coordinates, with a norm of its
/// own. The norm is any ambient function; only its restriction to the span
/// matters.
#[derive(Debug, Clone)]
pub struct Subspace {
    basis: Matrix,
    norm: Arc<dyn ElementSpace>,
    label: String,
}

impl Subspace {
    /// `spanning` holds spanning vectors as columns; `norm` must live on the
    /// ambient dimension.
    pub fn new(spanning: &Matrix, norm: Arc<dyn ElementSpace>, label: impl Into<String>) -> Result<Self> {
        check_dim(spanning.nrows(), norm.dim())?;
        let basis = orthonormal_span(spanning);
        if basis.ncols() == 0 {
            return Err(Error::BadSubset("spanning set is zero".into()));
        }
        Ok(Subspace {
            basis,
            norm,
            label: label.into(),
        })
    }

    /// Orthonormal basis as columns.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn own_norm(&self) -> &Arc<dyn ElementSpace> {
        &self.norm
    }

    pub fn subspace_dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Orthogonal projection onto the span.
    pub fn project(&self, v: &Vector) -> Vector {
        &self.basis * (self.basis.transpose() * v)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        v.len() == self.basis.nrows()
            && (v - self.project(v)).norm() <= SPAN_MEMBERSHIP_EPS * v.norm().max(1.0)
    }
}

impl ElementSpace for Subspace {
    fn dim(&self) -> usize {
        self.basis.nrows()
    }

    fn label(&self) -> &str {
        &self.label
    }

    fn check_member(&self, v: &Vector) -> Result<()> {
        check_dim(self.dim(), v.len())?;
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::NotMember(format!("vector is not in the span defining {}", self.label)))
        }
    }

    fn norm_unchecked(&self, v: &Vector) -> f64 {
        self.norm.norm_unchecked(v)
    }

    fn sample(&self, rng: &mut SeededRng) -> Vector {
        &self.basis * sample_vector(rng, self.subspace_dim())
    }

    fn probes(&self) -> Vec<Vector> {
        let cols: Vec<Vector> = self.basis.column_iter().map(|c| c.into_owned()).collect();
        cols.iter().cloned().chain(cols.iter().map(|c| -c)).collect()
    }

    fn dual_generators(&self) -> Matrix {
        self.basis.transpose()
    }
}

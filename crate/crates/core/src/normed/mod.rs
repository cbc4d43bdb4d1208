//! Finite-dimensional normed spaces.

mod axioms;
mod norm;
mod subspace;

pub use axioms::{verify_norm_axioms, AxiomCheck, AxiomReport};
pub use norm::{NormFn, NormKind, NormedSpace};
pub use subspace::{Subspace, SPAN_MEMBERSHIP_EPS};

use std::fmt;

use crate::error::Result;
use crate::linalg::{Matrix, Vector};
use crate::rng::SeededRng;

/// A space of elements represented as coordinate vectors, with an evaluable
/// norm and a membership predicate.
///
/// Plain normed spaces, subspaces carrying their own norm, spaces of function
/// tables with a kernel norm and induced seminorms all implement this trait,
/// which is what the membership checkers and the axiom verifier consume.
pub trait ElementSpace: Send + Sync + fmt::Debug {
    fn dim(&self) -> usize;

    fn label(&self) -> &str;

    /// Errors with `dim_mismatch` or `not_member` when `v` is not an element.
    fn check_member(&self, v: &Vector) -> Result<()>;

    /// Norm of an element whose membership was already checked.
    fn norm_unchecked(&self, v: &Vector) -> f64;

    fn norm_of(&self, v: &Vector) -> Result<f64> {
        self.check_member(v)?;
        Ok(self.norm_unchecked(v))
    }

    /// A random element of the space.
    fn sample(&self, rng: &mut SeededRng) -> Vector;

    /// Deterministic elements checked before random samples (unit
    /// directions and the like).
    fn probes(&self) -> Vec<Vector> {
        let n = self.dim();
        let mut out = Vec::with_capacity(2 * n);
        for sign in [1.0, -1.0] {
            for i in 0..n {
                let mut e = Vector::zeros(n);
                e[i] = sign;
                out.push(e);
            }
        }
        out
    }

    /// Linear functionals (as rows) whose pointwise convergence characterizes
    /// weak convergence; they must span the dual.
    fn dual_generators(&self) -> Matrix {
        Matrix::identity(self.dim(), self.dim())
    }
}

/// Evaluates the norm of `v`, checking dimensions.
pub fn eval_norm(space: &NormedSpace, v: &Vector) -> Result<f64> {
    space.norm_of(v)
}

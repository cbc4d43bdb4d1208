use std::fmt;
use std::sync::Arc;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{rank, Matrix, Vector};
use crate::rng::{sample_vector, SeededRng};

use super::ElementSpace;

pub type NormFn = Arc<dyn Fn(&Vector) -> f64 + Send + Sync>;

/// How the norm of a [`NormedSpace`] is evaluated.
#[derive(Clone)]
pub enum NormKind {
    Euclidean,
    /// `ℓ^p` with `p ∈ [1, ∞]` (`f64::INFINITY` for the max norm).
    P(f64),
    /// `(Σ wᵢ|vᵢ|^p)^{1/p}`, or `max wᵢ|vᵢ|` for `p = ∞`. Zero weights are
    /// allowed; the result is then a norm only on a subspace.
    WeightedP { p: f64, weights: Vec<f64> },
    /// `max_i |⟨rowᵢ, v⟩|`: a polyhedral norm given by its dual vertices.
    PiecewiseLinear { rows: Matrix },
    Custom { name: String, eval: NormFn },
}

impl fmt::Debug for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormKind::Euclidean => write!(f, "Euclidean"),
            NormKind::P(p) => write!(f, "P({p})"),
            NormKind::WeightedP { p, weights } => write!(f, "WeightedP({p}, {weights:?})"),
            NormKind::PiecewiseLinear { rows } => {
                write!(f, "PiecewiseLinear({} rows)", rows.nrows())
            }
            NormKind::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

impl NormKind {
    pub fn tag(&self) -> &'static str {
        match self {
            NormKind::Euclidean => "euclidean",
            NormKind::P(_) => "p_norm",
            NormKind::WeightedP { .. } => "weighted_p",
            NormKind::PiecewiseLinear { .. } => "piecewise_linear",
            NormKind::Custom { .. } => "custom",
        }
    }
}

fn p_norm<I: Iterator<Item = f64> + Clone>(values: I, p: f64) -> f64 {
    if p == 1.0 {
        return values.map(f64::abs).sum();
    }
    let max = values.clone().fold(0.0f64, |a, b| a.max(b.abs()));
    if p.is_infinite() || max == 0.0 {
        return max;
    }
    if p == 2.0 {
        let s: f64 = values.map(|x| (x / max) * (x / max)).sum();
        return max * s.sqrt();
    }
    let s: f64 = values.map(|x| (x.abs() / max).powf(p)).sum();
    max * s.powf(1.0 / p)
}

fn valid_p(p: f64) -> bool {
    p >= 1.0 && !p.is_nan()
}

/// A real vector space `R^dim` with an evaluable norm.
#[derive(Debug, Clone)]
pub struct NormedSpace {
    dim: usize,
    kind: NormKind,
    dual_generators: Matrix,
    label: String,
}

impl NormedSpace {
    pub fn new(dim: usize, kind: NormKind) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadNorm("dimension must be positive".into()));
        }
        match &kind {
            NormKind::Euclidean | NormKind::Custom { .. } => {}
            NormKind::P(p) => {
                if !valid_p(*p) {
                    return Err(Error::BadNorm(format!("p = {p} outside [1, inf]")));
                }
            }
            NormKind::WeightedP { p, weights } => {
                if !valid_p(*p) {
                    return Err(Error::BadNorm(format!("p = {p} outside [1, inf]")));
                }
                check_dim(dim, weights.len())?;
                if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
                    return Err(Error::BadNorm("weights must be finite and >= 0".into()));
                }
            }
            NormKind::PiecewiseLinear { rows } => {
                check_dim(dim, rows.ncols())?;
                if rows.nrows() == 0 || rows.iter().any(|x| !x.is_finite()) {
                    return Err(Error::BadNorm("rows must be nonempty and finite".into()));
                }
            }
        }
        let label = match &kind {
            NormKind::Euclidean => format!("euclidean({dim})"),
            NormKind::P(p) => format!("l{}({dim})", fmt_p(*p)),
            NormKind::WeightedP { p, .. } => format!("weighted_l{}({dim})", fmt_p(*p)),
            NormKind::PiecewiseLinear { rows } => {
                format!("piecewise_linear({dim}, {} rows)", rows.nrows())
            }
            NormKind::Custom { name, .. } => format!("{name}({dim})"),
        };
        Ok(NormedSpace {
            dim,
            kind,
            dual_generators: Matrix::identity(dim, dim),
            label,
        })
    }

    pub fn euclidean(dim: usize) -> Self {
        Self::new(dim, NormKind::Euclidean).expect("positive dimension")
    }

    pub fn p_norm(dim: usize, p: f64) -> Result<Self> {
        Self::new(dim, NormKind::P(p))
    }

    pub fn weighted(p: f64, weights: Vec<f64>) -> Result<Self> {
        Self::new(weights.len(), NormKind::WeightedP { p, weights })
    }

    pub fn piecewise_linear(rows: Matrix) -> Result<Self> {
        Self::new(rows.ncols(), NormKind::PiecewiseLinear { rows })
    }

    pub fn custom(
        dim: usize,
        name: impl Into<String>,
        eval: impl Fn(&Vector) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::new(
            dim,
            NormKind::Custom {
                name: name.into(),
                eval: Arc::new(eval),
            },
        )
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Replaces the default coordinate functionals. The rows must span the
    /// dual space.
    pub fn with_dual_generators(mut self, generators: Matrix) -> Result<Self> {
        check_dim(self.dim, generators.ncols())?;
        let r = rank(&generators);
        if r != self.dim {
            return Err(Error::BadNorm(format!(
                "dual generators have rank {r}, need {}",
                self.dim
            )));
        }
        self.dual_generators = generators;
        Ok(self)
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    pub fn is_euclidean(&self) -> bool {
        match &self.kind {
            NormKind::Euclidean => true,
            NormKind::P(p) => *p == 2.0,
            _ => false,
        }
    }

    /// Rows `r_i` with `‖v‖ = max_i |⟨r_i, v⟩|` when the norm is polyhedral.
    /// The `ℓ¹` family expands to `2^(dim-1)` sign rows and is only offered up
    /// to dimension 12.
    pub fn piecewise_rows(&self) -> Option<Matrix> {
        let n = self.dim;
        let sign_rows = |weights: &dyn Fn(usize) -> f64| {
            if n > 12 {
                return None;
            }
            let count = 1usize << (n - 1);
            Some(Matrix::from_fn(count, n, |r, j| {
                let sign = if j == 0 || (r >> (j - 1)) & 1 == 0 {
                    1.0
                } else {
                    -1.0
                };
                sign * weights(j)
            }))
        };
        match &self.kind {
            NormKind::P(p) if *p == 1.0 => sign_rows(&|_| 1.0),
            NormKind::P(p) if p.is_infinite() => Some(Matrix::identity(n, n)),
            NormKind::WeightedP { p, weights } if *p == 1.0 => sign_rows(&|j| weights[j]),
            NormKind::WeightedP { p, weights } if p.is_infinite() => {
                Some(Matrix::from_diagonal(&Vector::from_vec(weights.clone())))
            }
            NormKind::PiecewiseLinear { rows } => Some(rows.clone()),
            _ => None,
        }
    }

    pub(crate) fn norm_raw(&self, v: &Vector) -> f64 {
        match &self.kind {
            NormKind::Euclidean => p_norm(v.iter().copied(), 2.0),
            NormKind::P(p) => p_norm(v.iter().copied(), *p),
            NormKind::WeightedP { p, weights } => {
                if p.is_infinite() {
                    v.iter()
                        .zip(weights)
                        .fold(0.0, |a, (x, w)| a.max(w * x.abs()))
                } else {
                    let root = 1.0 / p;
                    p_norm(
                        v.iter().zip(weights).map(|(x, w)| x * w.powf(root)),
                        *p,
                    )
                }
            }
            NormKind::PiecewiseLinear { rows } => rows
                .row_iter()
                .fold(0.0, |a, r| a.max((r * v)[0].abs())),
            NormKind::Custom { eval, .. } => eval(v),
        }
    }
}

fn fmt_p(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

impl ElementSpace for NormedSpace {
    fn dim(&self) -> usize {
        self.dim
    }

    fn label(&self) -> &str {
        &self.label
    }

    fn check_member(&self, v: &Vector) -> Result<()> {
        check_dim(self.dim, v.len())
    }

    fn norm_unchecked(&self, v: &Vector) -> f64 {
        self.norm_raw(v)
    }

    fn sample(&self, rng: &mut SeededRng) -> Vector {
        sample_vector(rng, self.dim)
    }

    fn dual_generators(&self) -> Matrix {
        self.dual_generators.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;
    use crate::normed::eval_norm;

    #[test]
    fn textbook_values() {
        let l2 = NormedSpace::euclidean(2);
        assert_eq!(eval_norm(&l2, &vector(&[3.0, 4.0])).unwrap(), 5.0);
        let linf = NormedSpace::p_norm(2, f64::INFINITY).unwrap();
        assert_eq!(eval_norm(&linf, &vector(&[3.0, -4.0])).unwrap(), 4.0);
        let w = NormedSpace::weighted(1.0, vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(eval_norm(&w, &vector(&[1.0, 1.0, 1.0])).unwrap(), 6.0);
    }

    #[test]
    fn dim_mismatch_is_reported() {
        let l2 = NormedSpace::euclidean(2);
        let err = eval_norm(&l2, &vector(&[1.0, 2.0, 3.0])).unwrap_err();
        assert_eq!(err.code(), "dim_mismatch");
    }

    #[test]
    fn zero_is_exactly_zero() {
        let zero = Vector::zeros(4);
        for space in [
            NormedSpace::euclidean(4),
            NormedSpace::p_norm(4, 1.0).unwrap(),
            NormedSpace::p_norm(4, 3.5).unwrap(),
            NormedSpace::p_norm(4, f64::INFINITY).unwrap(),
            NormedSpace::weighted(2.0, vec![1.0, 0.5, 2.0, 3.0]).unwrap(),
        ] {
            assert_eq!(eval_norm(&space, &zero).unwrap(), 0.0);
        }
    }

    #[test]
    fn piecewise_rows_reproduce_l1_and_linf() {
        let v = vector(&[1.5, -2.0, 0.25]);
        for p in [1.0, f64::INFINITY] {
            let space = NormedSpace::p_norm(3, p).unwrap();
            let rows = space.piecewise_rows().unwrap();
            let pl = NormedSpace::piecewise_linear(rows).unwrap();
            assert!((pl.norm_raw(&v) - space.norm_raw(&v)).abs() < 1e-15);
        }
        let w = NormedSpace::weighted(1.0, vec![1.0, 2.0, 3.0]).unwrap();
        let pl = NormedSpace::piecewise_linear(w.piecewise_rows().unwrap()).unwrap();
        assert!((pl.norm_raw(&v) - w.norm_raw(&v)).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(NormedSpace::p_norm(2, 0.5).unwrap_err().code(), "bad_norm");
        assert!(NormedSpace::weighted(1.0, vec![1.0, -1.0]).is_err());
        let gens = Matrix::from_row_slice(1, 2, &[1.0, 0.0]);
        assert!(NormedSpace::euclidean(2).with_dual_generators(gens).is_err());
    }

    #[test]
    fn large_p_does_not_overflow() {
        let space = NormedSpace::p_norm(2, 400.0).unwrap();
        let v = vector(&[1e200, 1e200]);
        let n = space.norm_raw(&v);
        assert!(n.is_finite() && n >= 1e200);
    }
}

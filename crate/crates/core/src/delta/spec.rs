use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::normed::{ElementSpace, NormedSpace};
use crate::rng::{sample_vector, seeded};
use crate::tolerance::Tolerance;

use super::metric::FiniteMetricSpace;

/// Arguments of a kernel evaluation at the pair `(x, y)`.
#[derive(Debug, Clone, Copy)]
pub struct KernelInput<'a> {
    pub x: usize,
    pub y: usize,
    pub dist: f64,
    pub vx: &'a Vector,
    pub vy: &'a Vector,
    pub target: &'a NormedSpace,
}

pub type ScalarKernelFn = Arc<dyn Fn(&KernelInput) -> f64 + Send + Sync>;
pub type VectorKernelFn = Arc<dyn Fn(&KernelInput) -> Vector + Send + Sync>;

/// The pair kernel whose sup (or inf) over the pair domain is the norm.
#[derive(Clone)]
pub enum Kernel {
    /// `δ̃ = (vx − vy) / d(x, y)^exponent`, `δ = ‖δ̃‖`.
    DifferenceQuotient { exponent: f64 },
    /// User kernel. With a vector part, the scalar part (if also given) must
    /// agree with its norm; evaluation always uses the norm of the vector
    /// part.
    Custom {
        name: String,
        delta: Option<ScalarKernelFn>,
        delta_tilde: Option<VectorKernelFn>,
    },
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kernel::DifferenceQuotient { exponent } => {
                f.debug_struct("DifferenceQuotient").field("exponent", exponent).finish()
            }
            Kernel::Custom { name, delta, delta_tilde } => f
                .debug_struct("Custom")
                .field("name", name)
                .field("delta", &delta.is_some())
                .field("delta_tilde", &delta_tilde.is_some())
                .finish(),
        }
    }
}

impl Kernel {
    pub fn name(&self) -> String {
        match self {
            Kernel::DifferenceQuotient { exponent } if *exponent == 1.0 => "lip0".into(),
            Kernel::DifferenceQuotient { exponent } => format!("holder({exponent})"),
            Kernel::Custom { name, .. } => name.clone(),
        }
    }

    pub fn has_delta_tilde(&self) -> bool {
        match self {
            Kernel::DifferenceQuotient { .. } => true,
            Kernel::Custom { delta_tilde, .. } => delta_tilde.is_some(),
        }
    }
}

/// Builtin custom kernels, looked up by name from scenario files.
///
/// * `difference`: `δ̃ = vx − vy` (no distance scaling);
/// * `max_value`: `δ = max(‖vx‖, ‖vy‖)`, scalar only.
pub fn builtin_kernel(name: &str) -> Option<Kernel> {
    match name {
        "difference" => Some(Kernel::Custom {
            name: name.into(),
            delta: None,
            delta_tilde: Some(Arc::new(|k: &KernelInput| k.vx - k.vy)),
        }),
        "max_value" => Some(Kernel::Custom {
            name: name.into(),
            delta: Some(Arc::new(|k: &KernelInput| {
                k.target.norm_unchecked(k.vx).max(k.target.norm_unchecked(k.vy))
            })),
            delta_tilde: None,
        }),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Sup,
    Inf,
}

/// A kernel norm on tables over `metric` with values in `target`.
#[derive(Debug, Clone)]
pub struct DeltaNormSpec {
    metric: Arc<FiniteMetricSpace>,
    target: Arc<NormedSpace>,
    pairs: Vec<(usize, usize)>,
    mode: Mode,
    kernel: Kernel,
    label: String,
}

/// Sampled evaluations used to check that a scalar kernel matches the norm
/// of its vector part.
pub const CONSISTENCY_SAMPLES: usize = 1000;

impl DeltaNormSpec {
    pub fn new(
        metric: Arc<FiniteMetricSpace>,
        target: Arc<NormedSpace>,
        pairs: Vec<(usize, usize)>,
        mode: Mode,
        kernel: Kernel,
        label: impl Into<String>,
    ) -> Result<Self> {
        let mut pairs = pairs;
        pairs.sort_unstable();
        pairs.dedup();
        if pairs.is_empty() {
            return Err(Error::EmptyDomain);
        }
        let n = metric.len();
        if let Some(&(x, y)) = pairs.iter().find(|(x, y)| *x >= n || *y >= n) {
            return Err(Error::PairOutsideDomain(x, y));
        }
        if let Kernel::Custom { name, delta: None, delta_tilde: None } = &kernel {
            return Err(Error::BadNorm(format!("kernel {name} has neither a scalar nor a vector part")));
        }
        if let Kernel::DifferenceQuotient { exponent } = kernel {
            if !(exponent > 0.0 && exponent.is_finite()) {
                return Err(Error::BadExponent(exponent));
            }
            if let Some(&(x, y)) = pairs.iter().find(|(x, y)| x == y) {
                return Err(Error::PairOutsideDomain(x, y));
            }
        }
        let spec = DeltaNormSpec {
            metric,
            target,
            pairs,
            mode,
            kernel,
            label: label.into(),
        };
        // Quotient kernels evaluate δ as the norm of δ̃, so only user kernels
        // carrying both parts are sampled here.
        let worst = match &spec.kernel {
            Kernel::Custom { delta: Some(_), delta_tilde: Some(_), .. } => {
                spec.kernel_consistency(CONSISTENCY_SAMPLES, 0, Tolerance::default())
            }
            _ => None,
        };
        if let Some(worst) = worst {
            return Err(Error::BadNorm(format!(
                "kernel {} disagrees with the norm of its vector part by {worst}",
                spec.kernel.name()
            )));
        }
        Ok(spec)
    }

    /// Same kernel, mode and spaces on a different pair domain.
    pub fn with_pairs(&self, pairs: Vec<(usize, usize)>, label: impl Into<String>) -> Result<Self> {
        DeltaNormSpec::new(
            self.metric.clone(),
            self.target.clone(),
            pairs,
            self.mode,
            self.kernel.clone(),
            label,
        )
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn metric(&self) -> &FiniteMetricSpace {
        &self.metric
    }

    pub fn metric_arc(&self) -> &Arc<FiniteMetricSpace> {
        &self.metric
    }

    pub fn target(&self) -> &NormedSpace {
        &self.target
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn contains_pair(&self, pair: (usize, usize)) -> bool {
        self.pairs.binary_search(&pair).is_ok()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn has_delta_tilde(&self) -> bool {
        self.kernel.has_delta_tilde()
    }

    fn input<'a>(&'a self, x: usize, y: usize, vx: &'a Vector, vy: &'a Vector) -> KernelInput<'a> {
        KernelInput {
            x,
            y,
            dist: self.metric.dist(x, y),
            vx,
            vy,
            target: &self.target,
        }
    }

    /// `δ(x, y, vx, vy)`.
    pub fn delta(&self, x: usize, y: usize, vx: &Vector, vy: &Vector) -> f64 {
        match &self.kernel {
            Kernel::DifferenceQuotient { exponent } => {
                let d = self.metric.dist(x, y);
                let scale = if *exponent == 1.0 { d } else { d.powf(*exponent) };
                self.target.norm_unchecked(&((vx - vy) / scale))
            }
            Kernel::Custom { delta_tilde: Some(t), .. } => {
                self.target.norm_unchecked(&t(&self.input(x, y, vx, vy)))
            }
            Kernel::Custom { delta: Some(d), .. } => d(&self.input(x, y, vx, vy)),
            Kernel::Custom { .. } => unreachable!("custom kernels carry at least one part"),
        }
    }

    /// `δ̃(x, y, vx, vy)`, when the kernel has a vector part.
    pub fn delta_tilde(&self, x: usize, y: usize, vx: &Vector, vy: &Vector) -> Option<Vector> {
        match &self.kernel {
            Kernel::DifferenceQuotient { exponent } => {
                let d = self.metric.dist(x, y);
                let scale = if *exponent == 1.0 { d } else { d.powf(*exponent) };
                Some((vx - vy) / scale)
            }
            Kernel::Custom { delta_tilde, .. } => {
                delta_tilde.as_ref().map(|t| t(&self.input(x, y, vx, vy)))
            }
        }
    }

    /// Compares the scalar kernel with the norm of the vector kernel on
    /// random pairs and values; returns the worst disagreement beyond
    /// tolerance, or `None` when they agree (or only one part exists).
    pub fn kernel_consistency(&self, samples: usize, seed: u64, tol: Tolerance) -> Option<f64> {
        let scalar: Box<dyn Fn(&KernelInput) -> f64> = match &self.kernel {
            Kernel::DifferenceQuotient { exponent } => {
                let e = *exponent;
                Box::new(move |k: &KernelInput| {
                    k.target.norm_unchecked(&(k.vx - k.vy)) / k.dist.powf(e)
                })
            }
            Kernel::Custom { delta: Some(d), delta_tilde: Some(_), .. } => {
                let d = d.clone();
                Box::new(move |k: &KernelInput| d(k))
            }
            Kernel::Custom { .. } => return None,
        };
        let mut rng = seeded(seed);
        let m = self.target.dim();
        let mut worst: Option<f64> = None;
        for i in 0..samples {
            let (x, y) = self.pairs[i % self.pairs.len()];
            let vx = sample_vector(&mut rng, m);
            let vy = sample_vector(&mut rng, m);
            let input = self.input(x, y, &vx, &vy);
            let a = scalar(&input);
            let b = self.delta(x, y, &vx, &vy);
            if !tol.eq(a, b) {
                let gap = (a - b).abs();
                worst = Some(worst.map_or(gap, |w: f64| w.max(gap)));
            }
        }
        worst
    }
}

fn quotient_spec(
    metric: Arc<FiniteMetricSpace>,
    target: Arc<NormedSpace>,
    exponent: f64,
    label: String,
) -> Result<DeltaNormSpec> {
    if !(exponent > 0.0 && exponent.is_finite()) {
        return Err(Error::BadExponent(exponent));
    }
    let pairs = metric.off_diagonal_pairs();
    DeltaNormSpec::new(
        metric,
        target,
        pairs,
        Mode::Sup,
        Kernel::DifferenceQuotient { exponent },
        label,
    )
}

/// The Lipschitz norm: sup over distinct ordered pairs of
/// `‖f(x) − f(y)‖ / d(x, y)`.
pub fn make_lip0_spec(metric: Arc<FiniteMetricSpace>, target: Arc<NormedSpace>) -> Result<DeltaNormSpec> {
    quotient_spec(metric, target, 1.0, "lip0".into())
}

/// The Hölder norm of exponent `beta`: denominator `d(x, y)^beta`.
pub fn make_holder_spec(
    metric: Arc<FiniteMetricSpace>,
    target: Arc<NormedSpace>,
    beta: f64,
) -> Result<DeltaNormSpec> {
    quotient_spec(metric, target, beta, format!("holder({beta})"))
}

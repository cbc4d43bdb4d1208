use serde::Serialize;

use crate::linalg::{max_abs, to_vec, Vector};
use crate::rng::{sample_scalar, seeded};
use crate::tolerance::Tolerance;

use super::ElementSpace;

/// Outcome for one axiom over the sampled elements.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub passed: bool,
    /// Largest observed violation (difference beyond the exact identity), or
    /// 0 when every sample satisfied the axiom exactly.
    pub worst: f64,
    /// Elements realizing the first failure.
    pub witness: Option<Vec<Vec<f64>>>,
}

impl AxiomCheck {
    fn new() -> Self {
        AxiomCheck {
            passed: true,
            worst: 0.0,
            witness: None,
        }
    }

    fn record(&mut self, violation: f64, ok: bool, witness: &[&Vector]) {
        if violation > self.worst || violation.is_nan() {
            self.worst = violation;
        }
        if !ok && self.passed {
            self.passed = false;
            self.witness = Some(witness.iter().map(|v| to_vec(v)).collect());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub label: String,
    pub samples: usize,
    pub seed: u64,
    pub zero_exact: bool,
    pub nonnegativity: AxiomCheck,
    pub definiteness: AxiomCheck,
    pub homogeneity: AxiomCheck,
    pub triangle: AxiomCheck,
}

impl AxiomReport {
    /// A report for zero samples, used before a space can check itself.
    pub(crate) fn placeholder() -> Self {
        AxiomReport {
            label: String::new(),
            samples: 0,
            seed: 0,
            zero_exact: true,
            nonnegativity: AxiomCheck::new(),
            definiteness: AxiomCheck::new(),
            homogeneity: AxiomCheck::new(),
            triangle: AxiomCheck::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.is_seminorm() && self.definiteness.passed
    }

    /// Every axiom except definiteness holds.
    pub fn is_seminorm(&self) -> bool {
        self.zero_exact && self.nonnegativity.passed && self.homogeneity.passed && self.triangle.passed
    }
}

/// Checks nonnegativity, definiteness, absolute homogeneity and the triangle
/// inequality on the space's probes followed by `samples` seeded random
/// elements. Failures are report content, never errors.
pub fn verify_norm_axioms(
    space: &dyn ElementSpace,
    samples: usize,
    seed: u64,
    tol: Tolerance,
) -> AxiomReport {
    let mut rng = seeded(seed);
    let mut elements = space.probes();
    elements.extend((0..samples.max(1)).map(|_| space.sample(&mut rng)));

    let zero = Vector::zeros(space.dim());
    let zero_exact = space.norm_unchecked(&zero) == 0.0;
    let mut nonnegativity = AxiomCheck::new();
    let mut definiteness = AxiomCheck::new();
    let mut homogeneity = AxiomCheck::new();
    let mut triangle = AxiomCheck::new();

    let norms: Vec<f64> = elements.iter().map(|v| space.norm_unchecked(v)).collect();
    for (i, v) in elements.iter().enumerate() {
        let n = norms[i];
        nonnegativity.record((-n).max(0.0), n >= 0.0 && n.is_finite(), &[v]);

        if max_abs(v) > 0.0 {
            definiteness.record(0.0, n > 0.0, &[v]);
        }

        let a = sample_scalar(&mut rng);
        let scaled = space.norm_unchecked(&(v * a));
        let expected = a.abs() * n;
        homogeneity.record((scaled - expected).abs(), tol.eq(scaled, expected), &[v]);

        let u = &elements[(i + 1) % elements.len()];
        let sum = space.norm_unchecked(&(u + v));
        let bound = norms[(i + 1) % elements.len()] + n;
        triangle.record((sum - bound).max(0.0), tol.le(sum, bound), &[u, v]);
    }

    AxiomReport {
        label: space.label().to_string(),
        samples: elements.len(),
        seed,
        zero_exact,
        nonnegativity,
        definiteness,
        homogeneity,
        triangle,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normed::NormedSpace;

    #[test]
    fn builtin_norms_pass() {
        let tol = Tolerance::default();
        let spaces = [
            NormedSpace::euclidean(3),
            NormedSpace::p_norm(2, 1.0).unwrap(),
            NormedSpace::p_norm(4, f64::INFINITY).unwrap(),
            NormedSpace::p_norm(3, 3.0).unwrap(),
            NormedSpace::weighted(1.5, vec![0.5, 2.0, 1.0]).unwrap(),
        ];
        for space in &spaces {
            let report = verify_norm_axioms(space, 1000, 11, tol);
            assert!(report.all_passed(), "{report:?}");
        }
    }

    #[test]
    fn min_of_coordinates_is_not_definite() {
        let space = NormedSpace::custom(2, "min_abs", |v| v[0].abs().min(v[1].abs())).unwrap();
        let report = verify_norm_axioms(&space, 100, 3, Tolerance::default());
        assert!(!report.definiteness.passed);
        assert_eq!(report.definiteness.witness, Some(vec![vec![1.0, 0.0]]));
    }

    #[test]
    fn shifted_map_fails_zero_and_homogeneity() {
        let space = NormedSpace::custom(2, "shifted", |v| v.norm() + 1.0).unwrap();
        let report = verify_norm_axioms(&space, 50, 3, Tolerance::default());
        assert!(!report.zero_exact);
        assert!(!report.homogeneity.passed);
    }
}

//! Weak convergence through a finite spanning set of dual functionals, the
//! Schur implication, and the reverse triangle inequality.

use serde::Serialize;

use crate::error::{check_dim, Result};
use crate::linalg::Vector;
use crate::normed::ElementSpace;
use crate::sequence::{limsup_estimate, Confidence, WitnessSequence};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionalResidual {
    /// Row index of the functional among the space's dual generators.
    pub functional: usize,
    /// `limsup |φ(fₙ) − φ(limit)|`.
    pub residual: f64,
    pub confidence: Confidence,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeakConvergence {
    pub converges: bool,
    pub residuals: Vec<FunctionalResidual>,
    pub confidence: Confidence,
}

fn check_sequence(space: &dyn ElementSpace, seq: &WitnessSequence<Vector>) -> Result<()> {
    seq.try_map(|v| check_dim(space.dim(), v.len())).map(|_| ())
}

/// `fₙ ⇀ limit`: every dual generator's values converge. In finite dimension
/// the generators span the dual, so this is exactly weak convergence.
pub fn weak_converges(
    space: &dyn ElementSpace,
    seq: &WitnessSequence<Vector>,
    limit: &Vector,
    tol: Tolerance,
) -> Result<WeakConvergence> {
    check_dim(space.dim(), limit.len())?;
    check_sequence(space, seq)?;
    let generators = space.dual_generators();
    let mut residuals = Vec::with_capacity(generators.nrows());
    let mut confidence = Confidence::Exact;
    let mut converges = true;
    for (i, phi) in generators.row_iter().enumerate() {
        let target = (phi * limit)[0];
        let est = limsup_estimate(&seq.map(|v| ((phi * v)[0] - target).abs()), tol);
        converges &= est.is_zero(tol);
        confidence = confidence.combine(est.confidence);
        residuals.push(FunctionalResidual {
            functional: i,
            residual: est.value,
            confidence: est.confidence,
        });
    }
    Ok(WeakConvergence {
        converges,
        residuals,
        confidence,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SchurOutcome {
    Pass,
    /// Weak convergence verified but the norm distance does not vanish. In
    /// finite dimension this can only be a tolerance or tail artifact.
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchurVerdict {
    pub outcome: SchurOutcome,
    pub weak: WeakConvergence,
    /// `limsup ‖fₙ − limit‖`, when weak convergence held.
    pub norm_residual: Option<f64>,
    pub confidence: Confidence,
}

/// If `fₙ ⇀ limit`, checks that `‖fₙ − limit‖ → 0`.
pub fn schur_implication_check(
    space: &dyn ElementSpace,
    seq: &WitnessSequence<Vector>,
    limit: &Vector,
    tol: Tolerance,
) -> Result<SchurVerdict> {
    let weak = weak_converges(space, seq, limit, tol)?;
    if !weak.converges {
        let confidence = weak.confidence;
        return Ok(SchurVerdict {
            outcome: SchurOutcome::NotApplicable,
            weak,
            norm_residual: None,
            confidence,
        });
    }
    let est = limsup_estimate(&seq.map(|v| space.norm_unchecked(&(v - limit))), tol);
    let confidence = weak.confidence.combine(est.confidence);
    Ok(SchurVerdict {
        outcome: if est.is_zero(tol) {
            SchurOutcome::Pass
        } else {
            SchurOutcome::Fail
        },
        weak,
        norm_residual: Some(est.value),
        confidence,
    })
}

/// `‖u − v‖ − |‖u‖ − ‖v‖|`, which the reverse triangle inequality keeps
/// nonnegative.
pub fn reverse_triangle_gap(space: &dyn ElementSpace, u: &Vector, v: &Vector) -> Result<f64> {
    let nu = space.norm_of(u)?;
    let nv = space.norm_of(v)?;
    check_dim(u.len(), v.len())?;
    Ok(space.norm_unchecked(&(u - v)) - (nu - nv).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;
    use crate::normed::NormedSpace;
    use crate::sequence::Tail;

    fn harmonic(terms: usize, tail: Tail<Vector>) -> WitnessSequence<Vector> {
        let prefix = (1..=terms).map(|n| vector(&[1.0 / n as f64, 0.0])).collect();
        WitnessSequence::new(prefix, tail).unwrap()
    }

    #[test]
    fn constant_sequence_converges() {
        let space = NormedSpace::euclidean(2);
        let v = vector(&[0.3, -2.0]);
        let w = weak_converges(&space, &WitnessSequence::constant(v.clone()), &v, Tolerance::default()).unwrap();
        assert!(w.converges);
        assert_eq!(w.confidence, Confidence::Exact);
    }

    #[test]
    fn harmonic_with_declared_limit() {
        let space = NormedSpace::euclidean(2);
        let zero = Vector::zeros(2);
        let seq = harmonic(20, Tail::DeclaredLimit(zero.clone()));
        let w = weak_converges(&space, &seq, &zero, Tolerance::default()).unwrap();
        assert!(w.converges);
        assert_eq!(w.confidence, Confidence::Declared);
    }

    #[test]
    fn alternating_sign_does_not_converge() {
        let space = NormedSpace::euclidean(2);
        let prefix = (1..=20)
            .map(|n| vector(&[if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0]))
            .collect();
        let seq = WitnessSequence::new(prefix, Tail::Unresolved).unwrap();
        let w = weak_converges(&space, &seq, &Vector::zeros(2), Tolerance::default()).unwrap();
        assert!(!w.converges);
        assert_eq!(w.residuals[0].residual, 1.0);
        assert_eq!(w.residuals[1].residual, 0.0);
    }

    #[test]
    fn schur_passes_on_finite_dimension() {
        let space = NormedSpace::euclidean(2);
        let zero = Vector::zeros(2);
        let prefix = (1..=30)
            .map(|n| vector(&[1.0 / n as f64, 1.0 / (n * n) as f64]))
            .collect();
        let seq = WitnessSequence::new(prefix, Tail::DeclaredLimit(zero.clone())).unwrap();
        let v = schur_implication_check(&space, &seq, &zero, Tolerance::default()).unwrap();
        assert_eq!(v.outcome, SchurOutcome::Pass);

        let c = vector(&[1.0, 2.0]);
        let v = schur_implication_check(&space, &WitnessSequence::constant(c.clone()), &c, Tolerance::default()).unwrap();
        assert_eq!(v.outcome, SchurOutcome::Pass);
    }

    #[test]
    fn schur_short_unresolved_prefix_is_heuristic() {
        // Trailing window of (1, 1/2, 1/3) is (1/2, 1/3); accept at 0.5.
        let space = NormedSpace::euclidean(2);
        let seq = harmonic(3, Tail::Unresolved);
        let tol = Tolerance::new(0.0, 0.5).unwrap();
        let v = schur_implication_check(&space, &seq, &Vector::zeros(2), tol).unwrap();
        assert_eq!(v.outcome, SchurOutcome::Pass);
        assert_eq!(v.confidence, Confidence::Heuristic);
    }

    #[test]
    fn schur_not_applicable_without_weak_convergence() {
        let space = NormedSpace::euclidean(2);
        let seq = WitnessSequence::constant(vector(&[1.0, 0.0]));
        let v = schur_implication_check(&space, &seq, &Vector::zeros(2), Tolerance::default()).unwrap();
        assert_eq!(v.outcome, SchurOutcome::NotApplicable);
    }

    #[test]
    fn reverse_triangle_examples() {
        let l2 = NormedSpace::euclidean(2);
        let u = vector(&[1.0, 0.0]);
        assert_eq!(reverse_triangle_gap(&l2, &u, &u).unwrap(), 0.0);
        let gap = reverse_triangle_gap(&l2, &u, &vector(&[0.0, 1.0])).unwrap();
        assert!((gap - 2f64.sqrt()).abs() < 1e-15);
        let l1 = NormedSpace::p_norm(2, 1.0).unwrap();
        let gap = reverse_triangle_gap(&l1, &vector(&[2.0, 0.0]), &u).unwrap();
        assert_eq!(gap, 0.0);
        assert!(reverse_triangle_gap(&l1, &u, &vector(&[1.0])).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn coords() -> impl Strategy<Value = Vec<f64>> {
            proptest::collection::vec(-1e3f64..1e3, 3)
        }

        proptest! {
            #[test]
            fn reverse_triangle_gap_nonnegative(u in coords(), v in coords(), p in prop_oneof![Just(1.0), Just(2.0), Just(3.0), Just(f64::INFINITY)]) {
                let space = NormedSpace::p_norm(3, p).unwrap();
                let gap = reverse_triangle_gap(&space, &vector(&u), &vector(&v)).unwrap();
                prop_assert!(gap >= -1e-9 * (1.0 + vector(&u).norm() + vector(&v).norm()));
            }
        }
    }
}

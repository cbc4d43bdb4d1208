//! Finite witness sequences and tail reasoning.
//!
//! A statement such as "for every ε > 0 and n large enough, aₙ < ε + c" is
//! decided here as `limsup aₙ <= c` up to tolerance. Since only a finite
//! prefix is ever stored, each sequence declares how its tail behaves and
//! every estimate carries a [`Confidence`] tag saying how much of the answer
//! rests on that declaration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::Tolerance;

/// How a sequence continues after its stored prefix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail<T> {
    /// Every later term equals the last prefix term.
    ConstantAfterPrefix,
    /// The sequence converges to the given element.
    DeclaredLimit(T),
    /// Nothing is known; estimates fall back to the trailing window.
    Unresolved,
}

/// Trust level of a tail-based estimate, ordered from strongest to weakest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Confidence {
    Exact,
    Declared,
    Heuristic,
    /// A declared limit that the prefix does not approach.
    Inconsistent,
}

impl Confidence {
    pub fn combine(self, other: Confidence) -> Confidence {
        self.max(other)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Confidence::Exact => "exact",
            Confidence::Declared => "declared",
            Confidence::Heuristic => "heuristic",
            Confidence::Inconsistent => "inconsistent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessSequence<T> {
    prefix: Vec<T>,
    tail: Tail<T>,
}

impl<T> WitnessSequence<T> {
    pub fn new(prefix: Vec<T>, tail: Tail<T>) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::EmptyDomain);
        }
        Ok(WitnessSequence { prefix, tail })
    }

    pub fn constant(value: T) -> Self {
        WitnessSequence {
            prefix: vec![value],
            tail: Tail::ConstantAfterPrefix,
        }
    }

    pub fn prefix(&self) -> &[T] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail<T> {
        &self.tail
    }

    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn last(&self) -> &T {
        self.prefix.last().expect("prefix is nonempty")
    }

    pub fn tail_tag(&self) -> &'static str {
        match self.tail {
            Tail::ConstantAfterPrefix => "constant_after_prefix",
            Tail::DeclaredLimit(_) => "declared_limit",
            Tail::Unresolved => "unresolved",
        }
    }

    /// Applies `f` termwise, including to a declared limit. Sound for
    /// continuous `f`, which is all the crate ever maps with (norms,
    /// functionals, kernels).
    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> WitnessSequence<U> {
        let prefix = self.prefix.iter().map(&mut f).collect();
        let tail = match &self.tail {
            Tail::ConstantAfterPrefix => Tail::ConstantAfterPrefix,
            Tail::DeclaredLimit(l) => Tail::DeclaredLimit(f(l)),
            Tail::Unresolved => Tail::Unresolved,
        };
        WitnessSequence { prefix, tail }
    }

    pub fn try_map<U, E>(
        &self,
        mut f: impl FnMut(&T) -> std::result::Result<U, E>,
    ) -> std::result::Result<WitnessSequence<U>, E> {
        let prefix = self
            .prefix
            .iter()
            .map(&mut f)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let tail = match &self.tail {
            Tail::ConstantAfterPrefix => Tail::ConstantAfterPrefix,
            Tail::DeclaredLimit(l) => Tail::DeclaredLimit(f(l)?),
            Tail::Unresolved => Tail::Unresolved,
        };
        Ok(WitnessSequence { prefix, tail })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimsupEstimate {
    pub value: f64,
    pub confidence: Confidence,
}

impl LimsupEstimate {
    /// `limsup <= bound` up to tolerance.
    pub fn at_most(&self, bound: f64, tol: Tolerance) -> bool {
        tol.le(self.value, bound)
    }

    pub fn is_zero(&self, tol: Tolerance) -> bool {
        tol.is_zero(self.value)
    }

    /// `limsup <= tol` with the relative part measured against `scale`;
    /// used when the terms are deviations from a quantity of size `scale`.
    pub fn within(&self, scale: f64, tol: Tolerance) -> bool {
        self.value <= tol.slack(scale, 0.0)
    }

    /// Whether the estimate can back a positive answer at all.
    pub fn usable(&self) -> bool {
        self.confidence != Confidence::Inconsistent && !self.value.is_nan()
    }
}

/// Trailing window: the last `⌈N/2⌉` terms.
fn split_point(len: usize) -> usize {
    len / 2
}

/// Estimates `limsup` of a real sequence from its prefix and tail mode.
///
/// * constant tail: the last prefix term, `exact`;
/// * declared limit: the limit, `declared`, provided the prefix is heading
///   there (the trailing window is within tolerance of the limit, or its
///   largest deviation is strictly below that of the leading part);
///   otherwise `inconsistent`;
/// * unresolved: the maximum over the trailing window, `heuristic`.
pub fn limsup_estimate(values: &WitnessSequence<f64>, tol: Tolerance) -> LimsupEstimate {
    let prefix = values.prefix();
    let split = split_point(prefix.len());
    let (lead, trail) = prefix.split_at(split);
    match values.tail() {
        Tail::ConstantAfterPrefix => LimsupEstimate {
            value: *values.last(),
            confidence: Confidence::Exact,
        },
        Tail::DeclaredLimit(limit) => {
            let deviation = |xs: &[f64]| xs.iter().fold(0.0f64, |a, x| a.max((x - limit).abs()));
            let trail_dev = deviation(trail);
            let consistent = trail
                .iter()
                .all(|x| tol.eq(*x, *limit))
                || (!lead.is_empty() && trail_dev < deviation(lead));
            LimsupEstimate {
                value: *limit,
                confidence: if consistent {
                    Confidence::Declared
                } else {
                    Confidence::Inconsistent
                },
            }
        }
        Tail::Unresolved => LimsupEstimate {
            value: trail.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            confidence: Confidence::Heuristic,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(values: Vec<f64>, tail: Tail<f64>) -> WitnessSequence<f64> {
        WitnessSequence::new(values, tail).unwrap()
    }

    #[test]
    fn constant_tail_is_exact() {
        let est = limsup_estimate(
            &seq(vec![1.0, 0.5, 0.25], Tail::ConstantAfterPrefix),
            Tolerance::default(),
        );
        assert_eq!(est.value, 0.25);
        assert_eq!(est.confidence, Confidence::Exact);
    }

    #[test]
    fn declared_monotone_tail() {
        let values = (1..=100).map(|n| 1.0 + 1.0 / n as f64).collect();
        let est = limsup_estimate(&seq(values, Tail::DeclaredLimit(1.0)), Tolerance::default());
        assert_eq!(est.value, 1.0);
        assert_eq!(est.confidence, Confidence::Declared);
    }

    #[test]
    fn alternating_unresolved_uses_trailing_max() {
        let values = (0..50).map(|i| (i % 2) as f64).collect();
        let est = limsup_estimate(&seq(values, Tail::Unresolved), Tolerance::default());
        assert_eq!(est.value, 1.0);
        assert_eq!(est.confidence, Confidence::Heuristic);
    }

    #[test]
    fn declared_limit_not_approached_is_inconsistent() {
        let values = (0..50).map(|i| (i % 2) as f64).collect();
        let est = limsup_estimate(&seq(values, Tail::DeclaredLimit(0.0)), Tolerance::default());
        assert_eq!(est.confidence, Confidence::Inconsistent);
        let single = limsup_estimate(&seq(vec![3.0], Tail::DeclaredLimit(0.0)), Tolerance::default());
        assert_eq!(single.confidence, Confidence::Inconsistent);
    }

    #[test]
    fn empty_prefix_rejected() {
        assert!(WitnessSequence::<f64>::new(vec![], Tail::Unresolved).is_err());
    }

    #[test]
    fn map_carries_the_limit() {
        let s = seq(vec![1.0, 2.0], Tail::DeclaredLimit(4.0)).map(|x| x * 2.0);
        assert_eq!(s.tail(), &Tail::DeclaredLimit(8.0));
        assert_eq!(s.prefix(), &[2.0, 4.0]);
    }

    #[test]
    fn confidence_combines_to_weakest() {
        assert_eq!(
            Confidence::Exact.combine(Confidence::Heuristic),
            Confidence::Heuristic
        );
        assert_eq!(
            Confidence::Inconsistent.combine(Confidence::Declared),
            Confidence::Inconsistent
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn constant_sequence_limsup_is_the_constant(c in -1e6f64..1e6, n in 1usize..20) {
                let s = seq(vec![c; n], Tail::ConstantAfterPrefix);
                prop_assert_eq!(limsup_estimate(&s, Tolerance::default()).value, c);
                let u = seq(vec![c; n], Tail::Unresolved);
                prop_assert_eq!(limsup_estimate(&u, Tolerance::default()).value, c);
            }
        }
    }
}

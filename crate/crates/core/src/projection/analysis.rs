use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hausdorff, to_vec, Vector};
use crate::normed::ElementSpace;
use crate::tolerance::Tolerance;

use super::solve::{project, Cardinality, Minimizers, ProjectionSolution};
use super::subset::SubsetSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupOwnNorm {
    /// `sup ‖x‖_X` over the nearest points.
    pub value: f64,
    /// Always true in finite dimension; kept so reports state it.
    pub bounded: bool,
    /// The nearest points were sampled, so `value` is only a lower bound.
    pub lower_bound_only: bool,
}

/// `sup_{x ∈ P_X(y)} ‖x‖_X` from a projection solution. For a polytope of
/// nearest points the maximum sits at a vertex only for a convex own norm.
pub fn sup_own_norm(x: &SubsetSpec, sol: &ProjectionSolution) -> Result<SupOwnNorm> {
    let own = x.own_norm();
    let max = |pts: &[Vector]| pts.iter().map(|p| own.norm_unchecked(p)).fold(0.0, f64::max);
    let (value, lower_bound_only) = match &sol.minimizers {
        Minimizers::Singleton(p) => (own.norm_unchecked(p), false),
        Minimizers::Polytope(v) => {
            if !x.own_norm_convex() {
                return Err(Error::NonconvexOwnNorm);
            }
            (max(v), false)
        }
        Minimizers::Samples { points, .. } => (max(points), true),
    };
    Ok(SupOwnNorm {
        value,
        bounded: value.is_finite(),
        lower_bound_only,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProximinalityClass {
    ChebyshevOnProbes,
    FiniteProximinalOnProbes,
    ProximinalOnProbes,
    Inconclusive,
}

impl ProximinalityClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProximinalityClass::ChebyshevOnProbes => "chebyshev_on_probes",
            ProximinalityClass::FiniteProximinalOnProbes => "finite_proximinal_on_probes",
            ProximinalityClass::ProximinalOnProbes => "proximinal_on_probes",
            ProximinalityClass::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProximinalityReport {
    pub class: ProximinalityClass,
    pub per_probe: Vec<Cardinality>,
    /// Every probe with a single nearest point also has a finite supremum of
    /// own norms over it.
    pub chebyshev_probes_bounded: bool,
}

/// Aggregates the cardinality of `P_X(y)` over probe points. The report only
/// speaks for the probes.
pub fn classify_proximinality(x: &SubsetSpec, probes: &[Vector], tol: Tolerance) -> Result<ProximinalityReport> {
    if probes.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let mut per_probe = Vec::with_capacity(probes.len());
    let mut bounded = true;
    for y in probes {
        let sol = project(x, y, tol)?;
        if sol.cardinality == Cardinality::Singleton {
            bounded &= sup_own_norm(x, &sol)?.bounded;
        }
        per_probe.push(sol.cardinality);
    }
    let any = |f: fn(&Cardinality) -> bool| per_probe.iter().any(f);
    let class = if any(|c| *c == Cardinality::Infinite) {
        ProximinalityClass::ProximinalOnProbes
    } else if any(|c| *c == Cardinality::Unknown) {
        ProximinalityClass::Inconclusive
    } else if any(|c| matches!(c, Cardinality::Finite(_))) {
        ProximinalityClass::FiniteProximinalOnProbes
    } else {
        ProximinalityClass::ChebyshevOnProbes
    };
    Ok(ProximinalityReport {
        class,
        per_probe,
        chebyshev_probes_bounded: bounded,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangularReport {
    pub holds: bool,
    /// Largest `LHS − RHS` seen (negative when every probe had room).
    pub worst_slack: f64,
    pub checked: usize,
    /// First violating pair `(y₁, y₂)`.
    pub violation: Option<(Vec<f64>, Vec<f64>)>,
    /// Some supremum came from sampled nearest points.
    pub lower_bounds_involved: bool,
}

/// `sup over P_X(y₁+y₂) of ‖x‖_X <= sup over P_X(y₁) + sup over P_X(y₂)` on
/// probe pairs, stopping at the first violation.
pub fn check_triangular(x: &SubsetSpec, pairs: &[(Vector, Vector)], tol: Tolerance) -> Result<TriangularReport> {
    let mut report = TriangularReport {
        holds: true,
        worst_slack: f64::NEG_INFINITY,
        checked: 0,
        violation: None,
        lower_bounds_involved: false,
    };
    for (y1, y2) in pairs {
        let s = |y: &Vector| -> Result<SupOwnNorm> { sup_own_norm(x, &project(x, y, tol)?) };
        let sum = s(&(y1 + y2))?;
        let a = s(y1)?;
        let b = s(y2)?;
        report.lower_bounds_involved |= sum.lower_bound_only || a.lower_bound_only || b.lower_bound_only;
        let rhs = a.value + b.value;
        report.worst_slack = report.worst_slack.max(sum.value - rhs);
        report.checked += 1;
        if !tol.le(sum.value, rhs) {
            report.holds = false;
            report.violation = Some((to_vec(y1), to_vec(y2)));
            break;
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomogeneityReport {
    pub holds: bool,
    /// Largest `|d(a·y) − |a|·d(y)|`.
    pub distance_gap: f64,
    /// Largest Hausdorff distance between `P_X(a·y)` and `a·P_X(y)`
    /// (compared through their reported points).
    pub set_gap: f64,
}

/// `P_X(a·y) = a·P_X(y)` for a linear subset, over the given scalars.
pub fn projection_homogeneity(x: &SubsetSpec, y: &Vector, scalars: &[f64], tol: Tolerance) -> Result<HomogeneityReport> {
    if !x.is_linear() {
        return Err(Error::BadSubset("homogeneity of the projection needs a linear subset".into()));
    }
    let base = project(x, y, tol)?;
    let base_pts: Vec<Vector> = base.minimizers.points().into_iter().cloned().collect();
    let mut report = HomogeneityReport {
        holds: true,
        distance_gap: 0.0,
        set_gap: 0.0,
    };
    let scale = 1f64.max(y.amax());
    for &a in scalars {
        let sol = project(x, &(y * a), tol)?;
        let dgap = (sol.distance - a.abs() * base.distance).abs();
        let scaled: Vec<Vector> = base_pts.iter().map(|p| p * a).collect();
        let pts: Vec<Vector> = sol.minimizers.points().into_iter().cloned().collect();
        let sgap = hausdorff(&pts, &scaled);
        report.distance_gap = report.distance_gap.max(dgap);
        report.set_gap = report.set_gap.max(sgap);
        // Sampled minimizers are only located to roughly the search resolution.
        let factor = if matches!(sol.minimizers, Minimizers::Samples { .. }) { 1e3 } else { 1.0 };
        let set_tol = tol.scaled(factor).slack(scale * a.abs(), 0.0);
        report.holds &= tol.eq(sol.distance, a.abs() * base.distance) && sgap <= set_tol;
    }
    Ok(report)
}

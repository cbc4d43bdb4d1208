use std::sync::Arc;

use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{to_vec, Vector};
use crate::membership::{check_lh, SpacePair, Verdict};
use crate::normed::ElementSpace;
use crate::projection::projection_homogeneity;
use crate::rng::{sample_scalar, seeded};
use crate::tolerance::Tolerance;

use super::seminorm::{as_space, effective_tol, InducedSeminorm, NullSpace};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeminormAxiomReport {
    pub samples: usize,
    pub tolerance: Tolerance,
    pub zero_exact: bool,
    pub min_value: f64,
    /// Largest `|eval(a·f) − |a|·eval(f)|`.
    pub homogeneity_gap: f64,
    /// Largest `eval(f₁+f₂) − eval(f₁) − eval(f₂)`.
    pub triangle_excess: f64,
    /// Largest Hausdorff gap between `P_X(a·y)` and `a·P_X(y)` on the probes.
    pub projection_set_gap: f64,
    pub projection_homogeneity_holds: bool,
    pub passed: bool,
}

/// Nonnegativity, absolute homogeneity and the triangle inequality on seeded
/// samples, plus homogeneity of the projection itself on a few of them.
pub fn verify_seminorm_axioms(
    sn: &InducedSeminorm,
    samples: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<SeminormAxiomReport> {
    let tol = effective_tol(sn.is_exact(), tol);
    let n = sn.dim();
    let mut rng = seeded(seed);
    let zero = sn.eval(&Vector::zeros(n))?;
    let mut report = SeminormAxiomReport {
        samples,
        tolerance: tol,
        zero_exact: zero == 0.0,
        min_value: zero,
        homogeneity_gap: 0.0,
        triangle_excess: f64::NEG_INFINITY,
        projection_set_gap: 0.0,
        projection_homogeneity_holds: true,
        passed: zero == 0.0,
    };
    for i in 0..samples {
        let f = sn.sample(&mut rng);
        let g = sn.sample(&mut rng);
        let a = if i % 50 == 0 { 0.0 } else { sample_scalar(&mut rng) };
        let (ef, eg) = (sn.eval(&f)?, sn.eval(&g)?);
        let eaf = sn.eval(&(&f * a))?;
        let efg = sn.eval(&(&f + &g))?;
        report.min_value = report.min_value.min(ef).min(eg);
        report.homogeneity_gap = report.homogeneity_gap.max((eaf - a.abs() * ef).abs());
        report.triangle_excess = report.triangle_excess.max(efg - ef - eg);
        report.passed &= tol.le(0.0, ef) && tol.eq(eaf, a.abs() * ef) && tol.le(efg, ef + eg);
        if i < 20 {
            let h = projection_homogeneity(sn.source(), &f, &[-2.0, -1.0, 0.5, 3.0], tol)?;
            report.projection_set_gap = report.projection_set_gap.max(h.set_gap);
            report.projection_homogeneity_holds &= h.holds;
        }
    }
    report.passed &= report.projection_homogeneity_holds;
    Ok(report)
}

/// The component of `y` in the orthogonal complement of the null space,
/// a fixed section of the quotient map.
pub fn quotient_representative(sn: &InducedSeminorm, y: &Vector) -> Result<Vector> {
    check_dim(sn.dim(), y.len())?;
    let basis = match sn.null_space() {
        NullSpace::Basis(b) => b,
        NullSpace::Sampled { .. } => return Err(Error::QuotientUnavailable),
    };
    let rep = y - basis * (basis.transpose() * y);
    let residual = sn.eval(&(y - &rep))?;
    if residual > sn.tolerance().slack(y.amax(), 0.0) {
        return Err(Error::NullBasisStale(residual));
    }
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LhRow {
    pub f: Vec<f64>,
    pub own_norm: f64,
    pub seminorm: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LhEqualityReport {
    pub rows: Vec<LhRow>,
    pub worst_deviation: f64,
    pub all_in_lh: bool,
}

/// Runs `check_lh` on each sample for the pair (`X` with its own norm, `Y`
/// with the induced seminorm).
pub fn verify_lh_equality(sn: &InducedSeminorm, x_samples: &[Vector], tol: Tolerance) -> Result<LhEqualityReport> {
    let tol = effective_tol(sn.is_exact(), tol);
    let pair = SpacePair::new(Arc::new(sn.source_space()), as_space(sn), None)?;
    let mut rows = Vec::with_capacity(x_samples.len());
    let mut worst: f64 = 0.0;
    for f in x_samples {
        let cert = check_lh(&pair, f, tol)?;
        worst = worst.max((cert.norm_x - cert.norm_y).abs());
        rows.push(LhRow {
            f: to_vec(f),
            own_norm: cert.norm_x,
            seminorm: cert.norm_y,
            verdict: cert.verdict,
        });
    }
    Ok(LhEqualityReport {
        all_in_lh: rows.iter().all(|r| r.verdict == Verdict::InLh),
        rows,
        worst_deviation: worst,
    })
}

use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::normed::{ElementSpace, NormedSpace};
use crate::tolerance::Tolerance;

use super::solve::{project, project_with, ProjectOptions, SolverChoice};
use super::subset::{SubsetKind, SubsetSpec};

fn aggregate(values: impl Iterator<Item = (f64, f64)>, p: f64) -> f64 {
    if p.is_infinite() {
        values.fold(0.0, |a, (_, n)| a.max(n))
    } else {
        values.map(|(w, n)| w * n.powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// Tables over `m` weighted atoms with values in `target`, normed by
/// `(Σ wᵢ ‖f(tᵢ)‖^p)^(1/p)`, or `maxᵢ ‖f(tᵢ)‖` for `p = ∞`. Tables are
/// flattened atom-major.
pub fn make_discrete_bochner(weights: &[f64], target: Arc<NormedSpace>, p: f64) -> Result<NormedSpace> {
    if weights.is_empty() {
        return Err(Error::BadMeasure("no atoms".into()));
    }
    if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
        return Err(Error::BadMeasure(format!("atom weight {w} is not positive")));
    }
    if !(p >= 1.0) {
        return Err(Error::BadExponent(p));
    }
    let n = target.dim();
    let w = weights.to_vec();
    let dim = w.len() * n;
    NormedSpace::custom(dim, format!("bochner(p={p})"), move |f: &Vector| {
        aggregate(
            w.iter()
                .enumerate()
                .map(|(i, &wi)| (wi, target.norm_unchecked(&f.rows(i * n, n).into_owned()))),
            p,
        )
    })
}

fn block_diagonal(block: &Matrix, copies: usize) -> Matrix {
    let (r, c) = block.shape();
    let mut out = Matrix::zeros(r * copies, c * copies);
    for i in 0..copies {
        out.view_mut((i * r, i * c), (r, c)).copy_from(block);
    }
    out
}

/// Largest vertex count accepted for a product of polytopes.
pub const PRODUCT_VERTEX_CAP: usize = 64;

/// `X^m` inside the Bochner space over `Y`.
fn product_subset(x: &SubsetSpec, bochner: Arc<NormedSpace>, atoms: usize) -> Result<SubsetSpec> {
    match x.kind() {
        SubsetKind::Polytope { vertices } => {
            let count = vertices.len().checked_pow(atoms as u32).unwrap_or(usize::MAX);
            if count > PRODUCT_VERTEX_CAP {
                return Err(Error::BadSubset(format!("product polytope would have {count} vertices")));
            }
            let product = (0..atoms)
                .map(|_| vertices.iter())
                .multi_cartesian_product()
                .map(|vs| Vector::from_iterator(bochner.dim(), vs.into_iter().flat_map(|v| v.iter().copied())))
                .collect();
            SubsetSpec::polytope(bochner.clone(), product, bochner)
        }
        _ => SubsetSpec::subspace(bochner.clone(), block_diagonal(&x.spanning(), atoms), bochner),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransferProbe {
    /// Bochner aggregate of the atomwise distances.
    pub atomwise_distance: f64,
    /// Best distance found by local search over `X^m`.
    pub oracle_distance: f64,
    /// `atomwise <= oracle` within the oracle's tolerance.
    pub atomwise_optimal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProxTransferReport {
    pub holds: bool,
    pub worst_gap: f64,
    pub probes: Vec<TransferProbe>,
    pub assumptions: Vec<&'static str>,
}

/// Compares atomwise projection onto `X` with a direct local search over
/// `X^m` in the Bochner norm, on probe tables. Only the forward direction is
/// exercised.
pub fn check_prox_transfer(
    x: &SubsetSpec,
    weights: &[f64],
    p: f64,
    probe_tables: &[Vector],
    oracle_tol: f64,
    tol: Tolerance,
) -> Result<ProxTransferReport> {
    let n = x.ambient().dim();
    let m = weights.len();
    let bochner = Arc::new(make_discrete_bochner(weights, x.ambient().clone(), p)?);
    let joint = product_subset(x, bochner.clone(), m)?;
    let opts = ProjectOptions {
        solver: SolverChoice::Grid,
        start_at_zero: true,
        budget: 40_000,
        ..ProjectOptions::default()
    };
    let mut probes = Vec::with_capacity(probe_tables.len());
    let mut worst: f64 = 0.0;
    for table in probe_tables {
        check_dim(m * n, table.len())?;
        let mut atom_d = Vec::with_capacity(m);
        for i in 0..m {
            atom_d.push(project(x, &table.rows(i * n, n).into_owned(), tol)?.distance);
        }
        let atomwise = aggregate(weights.iter().copied().zip(atom_d), p);
        let oracle = project_with(&joint, table, tol, &opts)?.distance;
        let gap = atomwise - oracle;
        worst = worst.max(gap.abs());
        probes.push(TransferProbe {
            atomwise_distance: atomwise,
            oracle_distance: oracle,
            atomwise_optimal: gap <= oracle_tol * oracle.max(1.0),
        });
    }
    Ok(ProxTransferReport {
        holds: probes.iter().all(|p| p.atomwise_optimal),
        worst_gap: worst,
        probes,
        assumptions: vec![
            "finitely many atoms with positive weights",
            "X closed and convex by construction",
            "separability and completeness are not checked",
            "only the direction from X to the Bochner space is exercised",
        ],
    })
}

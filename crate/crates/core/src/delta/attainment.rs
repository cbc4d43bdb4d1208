use serde::Serialize;

use crate::error::{check_dim, Result};
use crate::linalg::Vector;
use crate::normed::ElementSpace;
use crate::sequence::{limsup_estimate, Confidence, WitnessSequence};
use crate::tolerance::Tolerance;

use super::space::DeltaNormedSpace;
use super::Pair;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AttainmentCheck {
    pub holds: bool,
    /// Largest deviation among the defining conditions.
    pub residual: f64,
    pub confidence: Confidence,
}

fn check_members(space: &DeltaNormedSpace, seq: &WitnessSequence<Vector>) -> Result<()> {
    seq.try_map(|v| space.check_member(v)).map(|_| ())
}

fn check_pairs(space: &DeltaNormedSpace, seq: &WitnessSequence<Pair>) -> Result<()> {
    seq.try_map(|p| space.check_pair(*p)).map(|_| ())
}

/// `‖f‖ = δ(x₀, y₀, f(x₀), f(y₀))`.
pub fn strong_attainment(
    space: &DeltaNormedSpace,
    f: &Vector,
    pair: Pair,
    tol: Tolerance,
) -> Result<AttainmentCheck> {
    space.check_pair(pair)?;
    space.check_member(f)?;
    let norm = space.norm_unchecked(f);
    let at_pair = space.delta_unchecked(f, pair);
    Ok(AttainmentCheck {
        holds: tol.eq(norm, at_pair),
        residual: (norm - at_pair).abs(),
        confidence: Confidence::Exact,
    })
}

/// `‖fₙ‖_Y → δ_X(x₀, y₀, f(x₀), f(y₀))` for a sequence `fₙ` in `Y`.
pub fn weak_attainment(
    x_space: &DeltaNormedSpace,
    y_space: &DeltaNormedSpace,
    f: &Vector,
    pair: Pair,
    seq: &WitnessSequence<Vector>,
    tol: Tolerance,
) -> Result<AttainmentCheck> {
    x_space.check_pair(pair)?;
    x_space.check_member(f)?;
    check_members(y_space, seq)?;
    let target = x_space.delta_unchecked(f, pair);
    let est = limsup_estimate(&seq.map(|g| (y_space.norm_unchecked(g) - target).abs()), tol);
    Ok(AttainmentCheck {
        holds: est.usable() && est.within(target, tol),
        residual: est.value,
        confidence: est.confidence,
    })
}

struct Towards {
    holds: bool,
    residual: f64,
    confidence: Confidence,
    z_norm: f64,
}

fn tilde_converges(
    space: &DeltaNormedSpace,
    f: &Vector,
    z: &Vector,
    pair_seq: &WitnessSequence<Pair>,
    tol: Tolerance,
) -> Result<Towards> {
    if !space.spec().has_delta_tilde() {
        return Err(crate::Error::NoDeltaTilde(space.spec().kernel().name()));
    }
    check_dim(space.target_dim(), z.len())?;
    check_pairs(space, pair_seq)?;
    space.check_member(f)?;
    let target = space.spec().target();
    let z_norm = target.norm_unchecked(z);
    let est = limsup_estimate(
        &pair_seq.map(|&p| target.norm_unchecked(&(space.delta_tilde_unchecked(f, p) - z))),
        tol,
    );
    Ok(Towards {
        holds: est.usable() && est.within(z_norm, tol),
        residual: est.value,
        confidence: est.confidence,
        z_norm,
    })
}

/// `δ̃(xₙ, yₙ, f(xₙ), f(yₙ)) → z` in the target space and `‖f‖ = ‖z‖`.
pub fn towards_point_attainment(
    space: &DeltaNormedSpace,
    f: &Vector,
    z: &Vector,
    pair_seq: &WitnessSequence<Pair>,
    tol: Tolerance,
) -> Result<AttainmentCheck> {
    let t = tilde_converges(space, f, z, pair_seq, tol)?;
    let norm = space.norm_unchecked(f);
    Ok(AttainmentCheck {
        holds: t.holds && tol.eq(norm, t.z_norm),
        residual: t.residual.max((norm - t.z_norm).abs()),
        confidence: t.confidence,
    })
}

/// `δ̃` along the pairs converges to `z` and `‖fₙ‖_Y → ‖z‖`. There is no
/// condition relating `‖f‖_X` to `‖z‖`.
pub fn weak_towards_point_attainment(
    x_space: &DeltaNormedSpace,
    y_space: &DeltaNormedSpace,
    f: &Vector,
    z: &Vector,
    pair_seq: &WitnessSequence<Pair>,
    fn_seq: &WitnessSequence<Vector>,
    tol: Tolerance,
) -> Result<AttainmentCheck> {
    let t = tilde_converges(x_space, f, z, pair_seq, tol)?;
    check_members(y_space, fn_seq)?;
    let est = limsup_estimate(&fn_seq.map(|g| (y_space.norm_unchecked(g) - t.z_norm).abs()), tol);
    Ok(AttainmentCheck {
        holds: t.holds && est.usable() && est.within(t.z_norm, tol),
        residual: t.residual.max(est.value),
        confidence: t.confidence.combine(est.confidence),
    })
}

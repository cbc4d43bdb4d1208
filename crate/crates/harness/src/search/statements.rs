//! The implications exercised by the search. Each statement checks its
//! hypotheses with the detectors directly, then checks the conclusion both
//! directly and through the checker that encodes it.

use normkeep::delta::{
    strong_attainment, towards_point_attainment, weak_attainment, weak_towards_point_attainment, Pair,
};
use normkeep::membership::{
    check_lhw, lh_from_shared_target, lh_from_target_and_convergence, lhw_from_attainment,
    strong_from_weak_attainment, target_norm_convergence, upgrade_by_norm_convergence, upgrade_by_norm_sandwich,
    upgrade_by_weak_convergence, MembershipCertificate, NormOrder, SandwichBranch, SpacePair, Verdict,
};
use normkeep::normed::ElementSpace;
use normkeep::projection::projection_homogeneity;
use normkeep::renorm::{build_induced_seminorm_with, verify_lh_equality, RenormOptions};
use normkeep::rng::seeded;
use normkeep::sequence::{limsup_estimate, Confidence, LimsupEstimate, WitnessSequence};
use normkeep::weak::weak_converges;
use normkeep::{Error, Tolerance, Vector};

use super::instance::{
    scaled_witness, settling_pairs, BuiltDelta, BuiltNormed, DeltaInstance, Family, GeneratorConfig, Instance,
    NormedInstance, SubsetInstance,
};

/// Result of one trial.
#[derive(Debug, Clone, PartialEq)]
pub enum Evaluation {
    /// The named hypothesis failed, or the instance was degenerate.
    Skipped(&'static str),
    Held,
    Violated {
        magnitude: f64,
        detail: String,
        confidence: Confidence,
    },
}

pub struct Context {
    pub tol: Tolerance,
    pub cfg: GeneratorConfig,
}

type Eval = fn(&Instance, &Context) -> Evaluation;

/// A searchable implication.
pub struct Statement {
    pub id: &'static str,
    /// The checker whose answer is cross-examined.
    pub checker: &'static str,
    pub summary: &'static str,
    pub family: Family,
    pub hypotheses: &'static [&'static str],
    /// Deliberately missing a hypothesis; the search is expected to refute it.
    pub mutant: bool,
    eval: Eval,
}

impl Statement {
    pub fn evaluate(&self, inst: &Instance, ctx: &Context) -> Evaluation {
        (self.eval)(inst, ctx)
    }
}

pub const WELL_FORMED: &str = "well_formed";

macro_rules! hyp {
    ($cond:expr, $name:expr) => {
        if !$cond {
            return Evaluation::Skipped($name);
        }
    };
}

macro_rules! built {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(_) => return Evaluation::Skipped(WELL_FORMED),
        }
    };
}

fn violated(magnitude: f64, detail: impl Into<String>, confidence: Confidence) -> Evaluation {
    Evaluation::Violated {
        magnitude: magnitude.max(f64::MIN_POSITIVE),
        detail: detail.into(),
        confidence,
    }
}

/// A checker error once every hypothesis is verified is itself a violation.
fn checker_error(e: Error) -> Evaluation {
    violated(1.0, format!("checker rejected a verified instance: {e}"), Confidence::Exact)
}

fn delta(inst: &Instance) -> &DeltaInstance {
    match inst {
        Instance::Delta(d) => d,
        _ => unreachable!("statement bound to the delta family"),
    }
}

fn normed(inst: &Instance) -> &NormedInstance {
    match inst {
        Instance::Normed(n) => n,
        _ => unreachable!("statement bound to the normed family"),
    }
}

fn subset(inst: &Instance) -> &SubsetInstance {
    match inst {
        Instance::Subset(s) => s,
        _ => unreachable!("statement bound to the subset family"),
    }
}

fn norms_y(pair: &SpacePair, seq: &WitnessSequence<Vector>) -> WitnessSequence<f64> {
    seq.map(|v| pair.y().norm_unchecked(v))
}

/// `limsup |‖fₙ‖_Y − c|` is zero.
fn norms_tend_to(pair: &SpacePair, seq: &WitnessSequence<Vector>, c: f64, tol: Tolerance) -> (bool, LimsupEstimate) {
    let est = limsup_estimate(&norms_y(pair, seq).map(|v| (v - c).abs()), tol);
    (est.usable() && est.within(c, tol), est)
}

/// `limsup ‖f − fₙ‖_Y` is zero.
fn tends_to(pair: &SpacePair, seq: &WitnessSequence<Vector>, f: &Vector, tol: Tolerance) -> (bool, LimsupEstimate) {
    let scale = pair.y().norm_unchecked(f);
    let est = limsup_estimate(&seq.map(|v| pair.y().norm_unchecked(&(v - f))), tol);
    (est.usable() && est.within(scale, tol), est)
}

/// `limsup ‖fₙ‖_Y <= bound`.
fn norms_at_most(pair: &SpacePair, seq: &WitnessSequence<Vector>, bound: f64, tol: Tolerance) -> (bool, LimsupEstimate) {
    let est = limsup_estimate(&norms_y(pair, seq), tol);
    (est.usable() && est.at_most(bound, tol), est)
}

/// `liminf ‖fₙ‖_Y >= bound`.
fn norms_at_least(pair: &SpacePair, seq: &WitnessSequence<Vector>, bound: f64, tol: Tolerance) -> (bool, LimsupEstimate) {
    let neg = limsup_estimate(&norms_y(pair, seq).map(|v| -v), tol);
    (neg.usable() && tol.le(bound, -neg.value), neg)
}

/// The conclusion `f ∈ LH`, checked directly and through a certificate.
fn expect_lh(nx: f64, ny: f64, cert: Option<&MembershipCertificate>, confidence: Confidence, tol: Tolerance) -> Evaluation {
    if !tol.eq(nx, ny) {
        return violated((nx - ny).abs(), format!("‖f‖_X = {nx}, ‖f‖_Y = {ny}"), confidence);
    }
    if let Some(c) = cert {
        if c.verdict != Verdict::InLh {
            return violated(
                (nx - ny).abs(),
                format!("{} answered {} on an instance in LH", c.checker, c.verdict.as_str()),
                c.confidence,
            );
        }
    }
    Evaluation::Held
}

/// Multiplier for generated witnesses: mostly 1, sometimes the ratio that
/// makes the witness norms tend to `target`, sometimes arbitrary.
fn witness_scale(choice: u32, random: f64, ny: f64, target: f64) -> f64 {
    match choice % 4 {
        0 | 1 => 1.0,
        2 if ny > 0.0 => target / ny,
        _ => 0.5 + random,
    }
}

fn delta_pair_choice(b: &BuiltDelta, choice: u32, index: u32) -> Pair {
    if choice % 4 != 0 {
        b.argmax_x()
    } else {
        b.x_pairs[index as usize % b.x_pairs.len()]
    }
}

fn wander(b: &BuiltDelta, d: &DeltaInstance) -> Vec<Pair> {
    let len = b.x_pairs.len();
    (0..d.choice[3] % 3).map(|i| b.x_pairs[(d.choice[1] as usize + i as usize) % len]).collect()
}

fn build_delta(d: &DeltaInstance, ctx: &Context) -> normkeep::Result<BuiltDelta> {
    d.build(ctx.tol, ctx.cfg.axiom_samples)
}

fn lh_subset_lhw(inst: &Instance, ctx: &Context) -> Evaluation {
    let tol = ctx.tol;
    let b = built!(build_delta(delta(inst), ctx));
    let generic = b.pair.as_space_pair();
    let (nx, ny) = (b.norm_x(), b.norm_y());
    hyp!(tol.eq(nx, ny), "lh");
    // The constant sequence at f witnesses LHW.
    let constant = WitnessSequence::constant(b.f.clone());
    let (bounded, est) = norms_at_most(generic, &constant, nx, tol);
    if !(tol.le(nx, ny) && bounded) {
        return violated((est.value - nx).abs(), "constant witness fails the LHW clauses", est.confidence);
    }
    match check_lhw(generic, &b.f, None, tol) {
        Ok(c) if c.verdict.in_lhw() => Evaluation::Held,
        Ok(c) => violated((nx - ny).abs(), format!("check_lhw answered {}", c.verdict.as_str()), c.confidence),
        Err(e) => checker_error(e),
    }
}

struct NormedSetup {
    b: BuiltNormed,
    nx: f64,
    ny: f64,
    witness: WitnessSequence<Vector>,
}

fn normed_setup(n: &NormedInstance, ctx: &Context) -> normkeep::Result<NormedSetup> {
    let b = n.build()?;
    let nx = b.pair.x().norm_unchecked(&b.f);
    let ny = b.pair.y().norm_unchecked(&b.f);
    let s = witness_scale(n.choice[1], n.scalars[0], ny, nx);
    let witness = scaled_witness(&b.f, s, &b.g, ctx.cfg.terms);
    Ok(NormedSetup { b, nx, ny, witness })
}

fn lhw_norm_convergent_upgrade(inst: &Instance, ctx: &Context) -> Evaluation {
    let tol = ctx.tol;
    let s = built!(normed_setup(normed(inst), ctx));
    let pair = &s.b.pair;
    let (bounded, est) = norms_at_most(pair, &s.witness, s.nx, tol);
    hyp!(tol.le(s.nx, s.ny) && bounded, "lhw");
    let (converges, dist) = tends_to(pair, &s.witness, &s.b.f, tol);
    hyp!(converges, "norm_convergence");
    let confidence = est.confidence.combine(dist.confidence);
    match upgrade_by_norm_convergence(pair, &s.b.f, &s.witness, tol) {
        Ok(c) => expect_lh(s.nx, s.ny, Some(&c), confidence, tol),
        Err(e) => checker_error(e),
    }
}

fn schur_upgrade(inst: &Instance, ctx: &Context) -> Evaluation {
    let tol = ctx.tol;
    let s = built!(normed_setup(normed(inst), ctx));
    let pair = &s.b.pair;
    let (bounded, est) = norms_at_most(pair, &s.witness, s.nx, tol);
    hyp!(tol.le(s.nx, s.ny) && bounded, "lhw");
    let weak = built!(weak_converges(pair.y().as_ref(), &s.witness, &s.b.f, tol));
    hyp!(weak.converges, "weak_convergence");
    let confidence = est.confidence.combine(weak.confidence);
    match upgrade_by_weak_convergence(pair, &s.b.f, &s.witness, tol) {
        Ok(c) => expect_lh(s.nx, s.ny, Some(&c), confidence, tol),
        Err(e) => checker_error(e),
    }
}

fn sandwich(inst: &Instance, ctx: &Context, require_convergence: bool) -> Evaluation {
    let tol = ctx.tol;
    let n = normed(inst);
    let s = built!(normed_setup(n, ctx));
    let (order, branch) = if s.b.above {
        (NormOrder::Ge, SandwichBranch::Above)
    } else {
        (NormOrder::Le, SandwichBranch::Below)
    };
    let ordered = s.b.pair.clone().with_order(order, 16, 0, tol);
    hyp!(ordered.is_ok(), "norm_order");
    let pair = ordered.expect("checked");
    let (bound, est) = match branch {
        SandwichBranch::Below => norms_at_most(&pair, &s.witness, s.nx, tol),
        SandwichBranch::Above => norms_at_least(&pair, &s.witness, s.nx, tol),
    };
    hyp!(bound, "norm_bound");
    let mut confidence = est.confidence;
    if require_convergence {
        let (converges, limit) = norms_tend_to(&pair, &s.witness, s.ny, tol);
        hyp!(converges, "norm_convergence");
        confidence = confidence.combine(limit.confidence);
        match upgrade_by_norm_sandwich(&pair, &s.b.f, &s.witness, branch, tol) {
            Ok(c) => expect_lh(s.nx, s.ny, Some(&c), confidence, tol),
            Err(e) => checker_error(e),
        }
    } else {
        expect_lh(s.nx, s.ny, None, confidence, tol)
    }
}

fn norm_sandwich(inst: &Instance, ctx: &Context) -> Evaluation {
    sandwich(inst, ctx, true)
}

fn norm_sandwich_without_convergence(inst: &Instance, ctx: &Context) -> Evaluation {
    sandwich(inst, ctx, false)
}

fn strong_from_weak(inst: &Instance, ctx: &Context) -> Evaluation {
    let tol = ctx.tol;
    let d = delta(inst);
    let b = built!(build_delta(d, ctx));
    let generic = b.pair.as_space_pair();
    let (nx, ny) = (b.norm_x(), b.norm_y());
    hyp!(tol.eq(nx, ny), "lh");
    let pair0 = delta_pair_choice(&b, d.choice[0], d.choice[1]);
    let witness = scaled_witness(&b.f, 1.0, &b.g, ctx.cfg.terms);
    let weak = built!(weak_attainment(b.x(), b.y(), &b.f, pair0, &witness, tol));
    hyp!(weak.holds, "weak_attainment");
    let (converges, _) = tends_to(generic, &witness, &b.f, tol);
    hyp!(converges, "norm_convergence");
    let strong = built!(strong_attainment(b.x(), &b.f, pair0, tol));
    if !strong.holds {
        return violated(strong.residual, format!("no strong attainment at {pair0:?}"), weak.confidence);
    }
    match strong_from_weak_attainment(&b.pair, &b.f, pair0, &witness, tol) {
        Ok(c) if c.holds => Evaluation::Held,
        Ok(c) => violated(c.residual, "checker reports no strong attainment", c.confidence),
        Err(e) => checker_error(e),
    }
}

fn strong_weak_lhw(inst: &Instance, ctx: &Context) -> Evaluation {
    let tol = ctx.tol;
    let d = delta(inst);
    let b = built!(build_delta(d, ctx));
    let generic = b.pair.as_space_pair();
    let (nx, ny) = (b.norm_x(), b.norm_y());
    let pair0 = delta_pair_choice(&b, d.choice[0], d.choice[1]);
    let at_pair = built!(b.x().delta_at(&b.f, pair0));
    let s = if d.choice[2] % 2 == 0 || ny == 0.0 { 1.0 } else { at_pair / ny };
    let witness = scaled_witness(&b.f, s, &b.g, ctx.cfg.terms);
    let strong = built!(strong_attainment(b.x(), &b.f, pair0, tol));
    hyp!(strong.holds, "strong_attainment");
    let weak = built!(weak_attainment(b.x(), b.y(), &b.f, pair0, &witness, tol));
    hyp!(weak.holds, "weak_attainment");
    hyp!(tol.le(nx, ny), "norm_order");
    // The witness itself satisfies both LHW clauses.
    let (bounded, est) = norms_at_most(generic, &witness, nx, tol);
    if !bounded {
        return violated((est.value - nx).abs(), "witness exceeds ‖f‖_X in the limit", est.confidence);
    }
    let (converges, _) = norms_tend_to(generic, &witness, ny, tol);
    let cert = match lhw_from_attainment(&b.pair, &b.f, pair0, &witness, tol) {
        Ok(c) => c,
        Err(e) => return checker_error(e),
    };
    if !cert.verdict.in_lhw() {
        return violated((nx - ny).abs(), format!("checker answered {}", cert.verdict.as_str()), cert.confidence);
    }
    if converges {
        expect_lh(nx, ny, Some(&cert), weak.confidence, tol)
    } else {
        Evaluation::Held
    }
}

fn strong_implies_target(inst: &Instance, ctx: &Context) -> Evaluation {
    let tol = ctx.tol;
    let d = delta(inst);
    let b = built!(build_delta(d, ctx));
    let pair0 = delta_pair_choice(&b, d.choice[0], d.choice[1]);
    let strong = built!(strong_attainment(b.x(), &b.f, pair0, tol));
    hyp!(strong.holds, "strong_attainment");
    let z = built!(b.x().delta_tilde_at(&b.f, pair0));
    let seq = settling_pairs(&wander(&b, d), pair0);
    match towards_point_attainment(b.x(), &b.f, &z, &seq, tol) {
        Ok(c) if c.holds => Evaluation::Held,
        Ok(c) => violated(c.residual, format!("no attainment towards δ̃{pair0:?}"), c.confidence),
        Err(e) => checker_error(e),
    }
}

fn lh_towards_weak_towards(inst: &Instance, ctx: &Context) -> Evaluation {
    let tol = ctx.tol;
    let d = delta(inst);
    let b = built!(build_delta(d, ctx));
    hyp!(tol.eq(b.norm_x(), b.norm_y()), "lh");
    let p = delta_pair_choice(&b, d.choice[0], d.choice[1]);
    let z = built!(b.x().delta_tilde_at(&b.f, p));
    let seq = settling_pairs(&wander(&b, d), p);
    let towards = built!(towards_point_attainment(b.x(), &b.f, &z, &seq, tol));
    hyp!(towards.holds, "towards_x");
    let constant = WitnessSequence::constant(b.f.clone());
    match weak_towards_point_attainment(b.x(), b.y(), &b.f, &z, &seq, &constant, tol) {
        Ok(c) if c.holds => Evaluation::Held,
        Ok(c) => violated(c.residual, "constant sequence fails weak attainment towards z", c.confidence),
        Err(e) => checker_error(e),
    }
}

/// `z = δ̃_Y` at the `Y`-extremal pair, and an `X` pair sequence settling on
/// that pair when `X` contains it.
struct TargetSetup {
    b: BuiltDelta,
    z: Vector,
    seq_y: WitnessSequence<Pair>,
    seq_x: WitnessSequence<Pair>,
}

fn target_setup(d: &DeltaInstance, ctx: &Context) -> normkeep::Result<TargetSetup> {
    let b = build_delta(d, ctx)?;
    let py = b.argmax_y();
    let z = b.y().delta_tilde_at(&b.f, py)?;
    let qx = if b.x_pairs.contains(&py) { py } else { b.argmax_x() };
    let seq_y = settling_pairs(&[], py);
    let seq_x = settling_pairs(&wander(&b, d), qx);
    Ok(TargetSetup { b, z, seq_y, seq_x })
}

fn shared_target(inst: &Instance, ctx: &Context) -> Evaluation {
    let tol = ctx.tol;
    let t = built!(target_setup(delta(inst), ctx));
    let b = &t.b;
    let in_x = built!(towards_point_attainment(b.x(), &b.f, &t.z, &t.seq_x, tol));
    hyp!(in_x.holds, "towards_x");
    let in_y = built!(towards_point_attainment(b.y(), &b.f, &t.z, &t.seq_y, tol));
    hyp!(in_y.holds, "towards_y");
    match lh_from_shared_target(&b.pair, &b.f, &t.z, &t.seq_x, &t.seq_y, tol) {
        Ok(c) => expect_lh(b.norm_x(), b.norm_y(), Some(&c), in_x.confidence.combine(in_y.confidence), tol),
        Err(e) => checker_error(e),
    }
}

fn target_witness(d: &DeltaInstance, t: &TargetSetup, ctx: &Context) -> WitnessSequence<Vector> {
    let s = witness_scale(d.choice[2], d.scalars[1], t.b.norm_y(), t.b.norm_x());
    scaled_witness(&t.b.f, s, &t.b.g, ctx.cfg.terms)
}

fn target_norm_convergent(inst: &Instance, ctx: &Context) -> Evaluation {
    let tol = ctx.tol;
    let d = delta(inst);
    let t = built!(target_setup(d, ctx));
    let b = &t.b;
    let fn_seq = target_witness(d, &t, ctx);
    let towards = built!(towards_point_attainment(b.y(), &b.f, &t.z, &t.seq_y, tol));
    hyp!(towards.holds, "towards_y");
    let weak = built!(weak_towards_point_attainment(b.x(), b.y(), &b.f, &t.z, &t.seq_x, &fn_seq, tol));
    hyp!(weak.holds, "weak_towards");
    let ny = b.norm_y();
    let (converges, est) = norms_tend_to(b.pair.as_space_pair(), &fn_seq, ny, tol);
    if !converges {
        return violated(est.value, "‖fₙ‖_Y does not tend to ‖f‖_Y", est.confidence);
    }
    match target_norm_convergence(&b.pair, &b.f, &t.z, &t.seq_y, &t.seq_x, &fn_seq, tol) {
        Ok(r) if r.applicable && r.norms_converge => Evaluation::Held,
        Ok(r) => violated(r.residual.max(f64::EPSILON), "checker reports no norm convergence", Confidence::Exact),
        Err(e) => checker_error(e),
    }
}

fn target_lhw_upgrade(inst: &Instance, ctx: &Context) -> Evaluation {
    let tol = ctx.tol;
    let d = delta(inst);
    let t = built!(target_setup(d, ctx));
    let b = &t.b;
    let fn_seq = target_witness(d, &t, ctx);
    let (nx, ny) = (b.norm_x(), b.norm_y());
    let towards = built!(towards_point_attainment(b.y(), &b.f, &t.z, &t.seq_y, tol));
    hyp!(towards.holds, "towards_y");
    let weak = built!(weak_towards_point_attainment(b.x(), b.y(), &b.f, &t.z, &t.seq_x, &fn_seq, tol));
    hyp!(weak.holds, "weak_towards");
    let (bounded, est) = norms_at_most(b.pair.as_space_pair(), &fn_seq, nx, tol);
    hyp!(tol.le(nx, ny) && bounded, "lhw_witness");
    match target_norm_convergence(&b.pair, &b.f, &t.z, &t.seq_y, &t.seq_x, &fn_seq, tol) {
        Ok(r) => match &r.certificate {
            Some(c) => expect_lh(nx, ny, Some(c), est.confidence, tol),
            None => violated((nx - ny).abs().max(f64::EPSILON), "checker issued no certificate", est.confidence),
        },
        Err(e) => checker_error(e),
    }
}

fn target_lh(inst: &Instance, ctx: &Context) -> Evaluation {
    let tol = ctx.tol;
    let d = delta(inst);
    let b = built!(build_delta(d, ctx));
    let p = delta_pair_choice(&b, d.choice[0], d.choice[1]);
    let z = built!(b.x().delta_tilde_at(&b.f, p));
    let seq = settling_pairs(&wander(&b, d), p);
    let s = witness_scale(d.choice[2], d.scalars[1], b.norm_y(), b.norm_x());
    let fn_seq = scaled_witness(&b.f, s, &b.g, ctx.cfg.terms);
    let towards = built!(towards_point_attainment(b.x(), &b.f, &z, &seq, tol));
    hyp!(towards.holds, "towards_x");
    let weak = built!(weak_towards_point_attainment(b.x(), b.y(), &b.f, &z, &seq, &fn_seq, tol));
    hyp!(weak.holds, "weak_towards");
    let (converges, dist) = tends_to(b.pair.as_space_pair(), &fn_seq, &b.f, tol);
    hyp!(converges, "norm_convergence");
    match lh_from_target_and_convergence(&b.pair, &b.f, &z, &seq, &fn_seq, tol) {
        Ok(c) => expect_lh(b.norm_x(), b.norm_y(), Some(&c), weak.confidence.combine(dist.confidence), tol),
        Err(e) => checker_error(e),
    }
}

fn induced_renorm(inst: &Instance, ctx: &Context) -> Evaluation {
    let tol = ctx.tol;
    let s = subset(inst);
    let (spec, probe) = built!(s.build());
    hyp!(spec.own_norm_convex(), WELL_FORMED);
    let opts = RenormOptions {
        battery: 8,
        injectivity_samples: 4,
        seed: s.choice[0] as u64,
    };
    let sn = match build_induced_seminorm_with(&spec, tol, opts) {
        Ok(sn) => sn,
        Err(Error::HypothesisFailed { which: "triangular", .. }) => return Evaluation::Skipped("triangular"),
        Err(Error::HypothesisFailed { which: "bounded", .. }) => return Evaluation::Skipped("bounded"),
        Err(_) => return Evaluation::Skipped(WELL_FORMED),
    };
    if !sn.evidence().injective_on_x {
        return violated(1.0, "a nonzero element of X has zero seminorm", Confidence::Exact);
    }
    let span = sn.source_space();
    let mut rng = seeded(s.choice[1] as u64);
    let xs: Vec<Vector> = (0..3).map(|_| span.sample(&mut rng)).collect();
    let lh = match verify_lh_equality(&sn, &xs, tol) {
        Ok(r) => r,
        Err(e) => return checker_error(e),
    };
    if !lh.all_in_lh {
        return violated(lh.worst_deviation, "an element of X changes norm under the seminorm", Confidence::Exact);
    }
    let base = match sn.eval(&probe) {
        Ok(v) => v,
        Err(e) => return checker_error(e),
    };
    let a = -1.5;
    let scaled = match sn.eval(&(&probe * a)) {
        Ok(v) => v,
        Err(e) => return checker_error(e),
    };
    let zero = sn.eval(&Vector::zeros(probe.len())).unwrap_or(f64::NAN);
    let tol_sn = sn.tolerance();
    if !tol_sn.eq(scaled, a.abs() * base) {
        return violated((scaled - a.abs() * base).abs(), "seminorm is not absolutely homogeneous", Confidence::Exact);
    }
    if !tol_sn.is_zero(zero) {
        return violated(zero.abs(), "seminorm of zero is nonzero", Confidence::Exact);
    }
    Evaluation::Held
}

fn homogeneity(inst: &Instance, ctx: &Context) -> Evaluation {
    let s = subset(inst);
    let (spec, probe) = built!(s.build());
    hyp!(spec.is_linear(), "linear");
    match projection_homogeneity(&spec, &probe, &[-2.0, -0.5, 0.5, 3.0], ctx.tol) {
        Ok(r) if r.holds => Evaluation::Held,
        Ok(r) => violated(r.set_gap.max(r.distance_gap), "P_X(a·y) differs from a·P_X(y)", Confidence::Exact),
        Err(e) => checker_error(e),
    }
}

pub static STATEMENTS: &[Statement] = &[
    Statement {
        id: "lh-subset-lhw",
        checker: "check_lhw",
        summary: "an element that keeps its norm lies in LHW through the constant witness",
        family: Family::Delta,
        hypotheses: &["lh"],
        mutant: false,
        eval: lh_subset_lhw,
    },
    Statement {
        id: "lhw-norm-convergent-upgrade",
        checker: "upgrade_by_norm_convergence",
        summary: "an LHW witness converging to f in Y-norm gives LH",
        family: Family::Normed,
        hypotheses: &["lhw", "norm_convergence"],
        mutant: false,
        eval: lhw_norm_convergent_upgrade,
    },
    Statement {
        id: "schur-upgrade",
        checker: "upgrade_by_weak_convergence",
        summary: "an LHW witness converging weakly to f gives LH",
        family: Family::Normed,
        hypotheses: &["lhw", "weak_convergence"],
        mutant: false,
        eval: schur_upgrade,
    },
    Statement {
        id: "norm-sandwich",
        checker: "upgrade_by_norm_sandwich",
        summary: "witness norms bounded by ‖f‖_X and tending to ‖f‖_Y under a global norm order give LH",
        family: Family::Normed,
        hypotheses: &["norm_order", "norm_bound", "norm_convergence"],
        mutant: false,
        eval: norm_sandwich,
    },
    Statement {
        id: "norm-sandwich-without-convergence",
        checker: "upgrade_by_norm_sandwich",
        summary: "the norm sandwich with the convergence of the witness norms dropped",
        family: Family::Normed,
        hypotheses: &["norm_order", "norm_bound"],
        mutant: true,
        eval: norm_sandwich_without_convergence,
    },
    Statement {
        id: "strong-from-weak-attainment",
        checker: "strong_from_weak_attainment",
        summary: "in LH, weak attainment through a norm-convergent witness is strong attainment",
        family: Family::Delta,
        hypotheses: &["lh", "weak_attainment", "norm_convergence"],
        mutant: false,
        eval: strong_from_weak,
    },
    Statement {
        id: "strong-weak-attainment-lhw",
        checker: "lhw_from_attainment",
        summary: "strong and weak attainment at one pair give LHW, and LH when the witness norms converge",
        family: Family::Delta,
        hypotheses: &["strong_attainment", "weak_attainment", "norm_order"],
        mutant: false,
        eval: strong_weak_lhw,
    },
    Statement {
        id: "strong-implies-target-attainment",
        checker: "towards_point_attainment",
        summary: "strong attainment at a pair is attainment towards its δ̃ value",
        family: Family::Delta,
        hypotheses: &["strong_attainment"],
        mutant: false,
        eval: strong_implies_target,
    },
    Statement {
        id: "lh-target-weak-target",
        checker: "weak_towards_point_attainment",
        summary: "in LH, attainment towards z is weak attainment towards z",
        family: Family::Delta,
        hypotheses: &["lh", "towards_x"],
        mutant: false,
        eval: lh_towards_weak_towards,
    },
    Statement {
        id: "shared-target-attainment",
        checker: "lh_from_shared_target",
        summary: "attainment towards the same z in X and in Y gives LH",
        family: Family::Delta,
        hypotheses: &["towards_x", "towards_y"],
        mutant: false,
        eval: shared_target,
    },
    Statement {
        id: "target-attainment-norm-convergent",
        checker: "target_norm_convergence",
        summary: "Y-attainment and weak attainment towards z force the witness norms to ‖f‖_Y",
        family: Family::Delta,
        hypotheses: &["towards_y", "weak_towards"],
        mutant: false,
        eval: target_norm_convergent,
    },
    Statement {
        id: "target-attainment-lhw-upgrade",
        checker: "target_norm_convergence",
        summary: "the same with an LHW witness gives LH",
        family: Family::Delta,
        hypotheses: &["towards_y", "weak_towards", "lhw_witness"],
        mutant: false,
        eval: target_lhw_upgrade,
    },
    Statement {
        id: "target-attainment-lh",
        checker: "lh_from_target_and_convergence",
        summary: "X-attainment towards z with a norm-convergent weak witness gives LH",
        family: Family::Delta,
        hypotheses: &["towards_x", "weak_towards", "norm_convergence"],
        mutant: false,
        eval: target_lh,
    },
    Statement {
        id: "induced-renorm",
        checker: "renorm",
        summary: "a triangular bounded subspace keeps its norm under the induced seminorm",
        family: Family::Subset,
        hypotheses: &["triangular", "bounded"],
        mutant: false,
        eval: induced_renorm,
    },
    Statement {
        id: "projection-homogeneity",
        checker: "projection_homogeneity",
        summary: "the metric projection onto a subspace commutes with scalars",
        family: Family::Subset,
        hypotheses: &["linear"],
        mutant: false,
        eval: homogeneity,
    },
];

pub fn find(id: &str) -> Option<&'static Statement> {
    STATEMENTS.iter().find(|s| s.id == id)
}

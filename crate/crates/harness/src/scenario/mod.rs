//! Loading and resolving scenario files.

mod schema;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use normkeep::delta::{
    builtin_kernel, make_holder_spec, make_lip0_spec, DeltaNormSpec, DeltaNormedSpace, FiniteMetricSpace, Mode,
    Pair,
};
use normkeep::linalg::{rows, vector};
use normkeep::membership::{DeltaPair, NormOrder, SpacePair, ORDER_SAMPLES};
use normkeep::normed::{ElementSpace, NormedSpace};
use normkeep::projection::{make_discrete_bochner, SubsetSpec};
use normkeep::renorm::{build_induced_seminorm, InducedSeminorm};
use normkeep::sequence::{Tail, WitnessSequence};
use normkeep::{Matrix, Tolerance, Vector};

use crate::error::{HarnessError, Result};

pub use schema::{Exponent, RawCheck, RawProbes, RawScenario, SCHEMA_VERSION};
use schema::{RawMetric, RawPair, RawSpace, RawSubset, RawTail, RawWitness};

/// Checkers a scenario can call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Checker {
    CheckLh,
    CheckLhw,
    UpgradeByNormConvergence,
    UpgradeByWeakConvergence,
    UpgradeByNormSandwich,
    StrongFromWeakAttainment,
    LhwFromAttainment,
    LhFromSharedTarget,
    TargetNormConvergence,
    LhFromTargetAndConvergence,
    DeltaNorm,
    StrongAttainment,
    WeakAttainment,
    TowardsPointAttainment,
    VerifyNormAxioms,
    Project,
    ClassifyProximinality,
    CheckTriangular,
    ProjectionHomogeneity,
    Renorm,
}

impl Checker {
    pub const ALL: [Checker; 20] = [
        Checker::CheckLh,
        Checker::CheckLhw,
        Checker::UpgradeByNormConvergence,
        Checker::UpgradeByWeakConvergence,
        Checker::UpgradeByNormSandwich,
        Checker::StrongFromWeakAttainment,
        Checker::LhwFromAttainment,
        Checker::LhFromSharedTarget,
        Checker::TargetNormConvergence,
        Checker::LhFromTargetAndConvergence,
        Checker::DeltaNorm,
        Checker::StrongAttainment,
        Checker::WeakAttainment,
        Checker::TowardsPointAttainment,
        Checker::VerifyNormAxioms,
        Checker::Project,
        Checker::ClassifyProximinality,
        Checker::CheckTriangular,
        Checker::ProjectionHomogeneity,
        Checker::Renorm,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Checker::CheckLh => "check_lh",
            Checker::CheckLhw => "check_lhw",
            Checker::UpgradeByNormConvergence => "upgrade_by_norm_convergence",
            Checker::UpgradeByWeakConvergence => "upgrade_by_weak_convergence",
            Checker::UpgradeByNormSandwich => "upgrade_by_norm_sandwich",
            Checker::StrongFromWeakAttainment => "strong_from_weak_attainment",
            Checker::LhwFromAttainment => "lhw_from_attainment",
            Checker::LhFromSharedTarget => "lh_from_shared_target",
            Checker::TargetNormConvergence => "target_norm_convergence",
            Checker::LhFromTargetAndConvergence => "lh_from_target_and_convergence",
            Checker::DeltaNorm => "delta_norm",
            Checker::StrongAttainment => "strong_attainment",
            Checker::WeakAttainment => "weak_attainment",
            Checker::TowardsPointAttainment => "towards_point_attainment",
            Checker::VerifyNormAxioms => "verify_norm_axioms",
            Checker::Project => "project",
            Checker::ClassifyProximinality => "classify_proximinality",
            Checker::CheckTriangular => "check_triangular",
            Checker::ProjectionHomogeneity => "projection_homogeneity",
            Checker::Renorm => "renorm",
        }
    }

    pub fn from_name(name: &str) -> Option<Checker> {
        Checker::ALL.iter().copied().find(|c| c.name() == name)
    }

    /// Argument fields the checker reads, each of which must be present.
    fn required(&self) -> &'static [&'static str] {
        use Checker::*;
        match self {
            CheckLh | CheckLhw => &["pair", "element"],
            UpgradeByNormConvergence | UpgradeByWeakConvergence => &["pair", "element", "witness"],
            UpgradeByNormSandwich => &["pair", "element", "witness", "branch"],
            StrongFromWeakAttainment | LhwFromAttainment | WeakAttainment => {
                &["pair", "element", "at_pair", "witness"]
            }
            LhFromSharedTarget => &["pair", "element", "z", "pair_seq", "pair_seq_y"],
            TargetNormConvergence => &["pair", "element", "z", "pair_seq", "pair_seq_y", "witness"],
            LhFromTargetAndConvergence => &["pair", "element", "z", "pair_seq", "witness"],
            DeltaNorm => &["space", "element"],
            StrongAttainment => &["space", "element", "at_pair"],
            TowardsPointAttainment => &["space", "element", "z", "pair_seq"],
            VerifyNormAxioms => &["space"],
            Project | ProjectionHomogeneity => &["set", "point"],
            ClassifyProximinality | CheckTriangular => &["set", "probes"],
            Renorm => &["set"],
        }
    }
}

/// A resolved pair binding.
#[derive(Debug, Clone)]
pub enum PairBinding {
    Generic(SpacePair),
    Delta(DeltaPair),
    Renorm { pair: SpacePair, seminorm: Box<InducedSeminorm> },
}

impl PairBinding {
    pub fn space_pair(&self) -> &SpacePair {
        match self {
            PairBinding::Generic(p) | PairBinding::Renorm { pair: p, .. } => p,
            PairBinding::Delta(d) => d.as_space_pair(),
        }
    }

    pub fn delta(&self) -> Option<&DeltaPair> {
        match self {
            PairBinding::Delta(d) => Some(d),
            _ => None,
        }
    }
}

/// A space bound to a name: plain normed, or a kernel-normed table space.
#[derive(Debug, Clone)]
pub enum SpaceBinding {
    Normed(Arc<NormedSpace>),
    Delta(Arc<DeltaNormedSpace>),
}

impl SpaceBinding {
    pub fn as_element_space(&self) -> Arc<dyn ElementSpace> {
        match self {
            SpaceBinding::Normed(s) => s.clone(),
            SpaceBinding::Delta(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckSpec {
    pub checker: Checker,
    /// Display name; defaults to `checker#index`.
    pub name: String,
    pub args: RawCheck,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub seed: u64,
    pub tolerance: Tolerance,
    pub spaces: BTreeMap<String, SpaceBinding>,
    pub metrics: BTreeMap<String, Arc<FiniteMetricSpace>>,
    pub subsets: BTreeMap<String, SubsetSpec>,
    pub pairs: BTreeMap<String, PairBinding>,
    pub elements: BTreeMap<String, Vector>,
    pub witnesses: BTreeMap<String, WitnessSequence<Vector>>,
    pub pair_sequences: BTreeMap<String, WitnessSequence<Pair>>,
    pub checks: Vec<CheckSpec>,
}

/// Tolerance components that replace the scenario's own values.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ToleranceOverride {
    pub rel: Option<f64>,
    pub abs: Option<f64>,
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    load_scenario_with(path, ToleranceOverride::default())
}

pub fn load_scenario_with(path: &Path, tol: ToleranceOverride) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)?;
    parse_scenario_with(&text, tol)
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    parse_scenario_with(text, ToleranceOverride::default())
}

pub fn parse_scenario_with(text: &str, tol: ToleranceOverride) -> Result<Scenario> {
    let raw: RawScenario = serde_json::from_str(text)?;
    resolve(raw, tol)
}

fn unresolved(name: &str) -> HarnessError {
    HarnessError::UnresolvedName(name.to_string())
}

fn invalid(msg: impl Into<String>) -> HarnessError {
    HarnessError::Invalid(msg.into())
}

fn matrix(name: &str, data: &[Vec<f64>]) -> Result<Matrix> {
    let cols = data.first().map_or(0, Vec::len);
    if data.is_empty() || cols == 0 || data.iter().any(|r| r.len() != cols) {
        return Err(invalid(format!("{name}: matrix rows must be nonempty and of equal length")));
    }
    Ok(rows(data, cols))
}

fn parse_order(order: &Option<String>) -> Result<Option<NormOrder>> {
    match order.as_deref() {
        None => Ok(None),
        Some("le") => Ok(Some(NormOrder::Le)),
        Some("ge") => Ok(Some(NormOrder::Ge)),
        Some(o) => Err(invalid(format!("order must be \"le\" or \"ge\", got {o:?}"))),
    }
}

struct Resolver<'a> {
    raw: &'a RawScenario,
    normed: BTreeMap<String, Arc<NormedSpace>>,
    visiting: BTreeSet<String>,
}

impl Resolver<'_> {
    fn normed(&mut self, name: &str) -> Result<Arc<NormedSpace>> {
        if let Some(s) = self.normed.get(name) {
            return Ok(s.clone());
        }
        let raw = self.raw.spaces.get(name).ok_or_else(|| unresolved(name))?;
        if !self.visiting.insert(name.to_string()) {
            return Err(invalid(format!("space {name} is defined in terms of itself")));
        }
        let space = match raw {
            RawSpace::Euclidean { dim } => NormedSpace::new(*dim, normkeep::normed::NormKind::Euclidean)?,
            RawSpace::P { dim, p } => NormedSpace::p_norm(*dim, p.0)?,
            RawSpace::Weighted { p, weights } => NormedSpace::weighted(p.0, weights.clone())?,
            RawSpace::PiecewiseLinear { rows } => NormedSpace::piecewise_linear(matrix(name, rows)?)?,
            RawSpace::Scaled { of, factor } => {
                let base = self.normed(of)?;
                if !(*factor > 0.0 && factor.is_finite()) {
                    return Err(invalid(format!("{name}: scale factor must be positive")));
                }
                let c = *factor;
                NormedSpace::custom(base.dim(), format!("{c}*{}", base.label()), move |v: &Vector| {
                    c * base.norm_unchecked(v)
                })?
            }
            RawSpace::Bochner { target, weights, p } => {
                let t = self.normed(target)?;
                make_discrete_bochner(weights, t, p.0)?
            }
        };
        self.visiting.remove(name);
        let space = Arc::new(space.with_label(name));
        self.normed.insert(name.to_string(), space.clone());
        Ok(space)
    }
}

fn resolve(raw: RawScenario, over: ToleranceOverride) -> Result<Scenario> {
    if raw.schema_version != SCHEMA_VERSION {
        return Err(invalid(format!(
            "schema_version {} is not supported (expected {SCHEMA_VERSION})",
            raw.schema_version
        )));
    }
    let def = Tolerance::default();
    let (rel, abs) = match &raw.tolerance {
        Some(t) => (t.rel.unwrap_or(def.rel), t.abs.unwrap_or(def.abs)),
        None => (def.rel, def.abs),
    };
    let tol = Tolerance::new(over.rel.unwrap_or(rel), over.abs.unwrap_or(abs))?;
    let mut r = Resolver {
        raw: &raw,
        normed: BTreeMap::new(),
        visiting: BTreeSet::new(),
    };
    let mut spaces = BTreeMap::new();
    for name in raw.spaces.keys() {
        spaces.insert(name.clone(), SpaceBinding::Normed(r.normed(name)?));
    }

    let mut metrics = BTreeMap::new();
    for (name, m) in &raw.metrics {
        let metric = match m {
            RawMetric::Line { points, base } => FiniteMetricSpace::from_points_on_line(points, *base)?,
            RawMetric::Matrix { labels, dist, base } => {
                FiniteMetricSpace::new(labels.clone(), dist.clone(), *base, tol)?
            }
        };
        metrics.insert(name.clone(), Arc::new(metric));
    }

    let mut delta_spaces = BTreeMap::new();
    for (name, d) in &raw.delta_spaces {
        if spaces.contains_key(name) {
            return Err(invalid(format!("{name} is declared both as a space and a delta space")));
        }
        let metric = metrics.get(&d.metric).ok_or_else(|| unresolved(&d.metric))?.clone();
        let target = r.normed(&d.target)?;
        let mode = match d.mode.as_str() {
            "sup" => Mode::Sup,
            "inf" => Mode::Inf,
            m => return Err(invalid(format!("{name}: mode must be sup or inf, got {m:?}"))),
        };
        let base = match (d.kernel.as_str(), d.exponent) {
            ("lip0", None) => make_lip0_spec(metric.clone(), target.clone())?,
            ("holder", Some(beta)) => make_holder_spec(metric.clone(), target.clone(), beta)?,
            ("holder", None) => return Err(invalid(format!("{name}: holder kernel needs an exponent"))),
            (k, _) => {
                let kernel = builtin_kernel(k).ok_or_else(|| unresolved(k))?;
                DeltaNormSpec::new(
                    metric.clone(),
                    target.clone(),
                    metric.off_diagonal_pairs(),
                    Mode::Sup,
                    kernel,
                    k,
                )?
            }
        };
        let mut pairs: Vec<Pair> = match &d.pairs {
            Some(p) => p.iter().map(|&[a, b]| (a, b)).collect(),
            None => base.pairs().to_vec(),
        };
        pairs.retain(|&(a, b)| !d.exclude.iter().any(|&[u, v]| (u, v) == (a, b) || (v, u) == (a, b)));
        let spec = base.with_pairs(pairs, name.as_str())?.with_mode(mode);
        let space = Arc::new(DeltaNormedSpace::new(spec, d.vanish_at_base)?);
        delta_spaces.insert(name.clone(), space.clone());
        spaces.insert(name.clone(), SpaceBinding::Delta(space));
    }

    let mut subsets = BTreeMap::new();
    for (name, s) in &raw.subsets {
        let own = |r: &mut Resolver, own: &Option<String>| own.as_ref().map(|o| r.normed(o)).transpose();
        let subset = match s {
            RawSubset::RealAxisInC { own_norm } => SubsetSpec::real_axis_in_c(own(&mut r, own_norm)?)?,
            RawSubset::Subspace { ambient, basis, own_norm } => {
                let amb = r.normed(ambient)?;
                let o = own(&mut r, own_norm)?.unwrap_or_else(|| amb.clone());
                SubsetSpec::subspace(amb, matrix(name, basis)?, o)?
            }
            RawSubset::Polytope { ambient, vertices, own_norm } => {
                let amb = r.normed(ambient)?;
                let o = own(&mut r, own_norm)?.unwrap_or_else(|| amb.clone());
                SubsetSpec::polytope(amb, vertices.iter().map(|v| vector(v)).collect(), o)?
            }
        };
        subsets.insert(name.clone(), subset.with_label(name));
    }

    let with_order = |pair: SpacePair, order: Option<NormOrder>, seed: u64| -> Result<SpacePair> {
        Ok(match order {
            Some(o) => pair.with_order(o, ORDER_SAMPLES, seed, tol)?,
            None => pair,
        })
    };
    let mut pairs = BTreeMap::new();
    for (name, p) in &raw.pairs {
        let binding = match p {
            RawPair::Spaces { x, y, embed, order } => {
                let xs = spaces.get(x).ok_or_else(|| unresolved(x))?.as_element_space();
                let ys = spaces.get(y).ok_or_else(|| unresolved(y))?.as_element_space();
                let embed = embed.as_ref().map(|m| matrix(name, m)).transpose()?;
                PairBinding::Generic(with_order(SpacePair::new(xs, ys, embed)?, parse_order(order)?, raw.seed)?)
            }
            RawPair::Delta { x, y, order } => {
                let xs = delta_spaces.get(x).ok_or_else(|| unresolved(x))?.clone();
                let ys = delta_spaces.get(y).ok_or_else(|| unresolved(y))?.clone();
                let mut pair = DeltaPair::new(xs, ys)?;
                if let Some(o) = parse_order(order)? {
                    pair = pair.with_order(o, ORDER_SAMPLES, raw.seed, tol)?;
                }
                PairBinding::Delta(pair)
            }
            RawPair::Subset { subset, order } => {
                let s = subsets.get(subset).ok_or_else(|| unresolved(subset))?;
                let span = s
                    .span_space()
                    .ok_or_else(|| invalid(format!("{name}: subset {subset} is not linear")))?;
                let pair = SpacePair::new(Arc::new(span), s.ambient().clone(), None)?;
                PairBinding::Generic(with_order(pair, parse_order(order)?, raw.seed)?)
            }
            RawPair::Renorm { subset } => {
                let s = subsets.get(subset).ok_or_else(|| unresolved(subset))?;
                let sn = build_induced_seminorm(s, tol)?;
                let pair = SpacePair::new(Arc::new(sn.source_space()), Arc::new(sn.clone()), None)?;
                PairBinding::Renorm {
                    pair,
                    seminorm: Box::new(sn),
                }
            }
        };
        pairs.insert(name.clone(), binding);
    }

    let elements: BTreeMap<String, Vector> = raw.elements.iter().map(|(k, v)| (k.clone(), vector(v))).collect();

    let mut witnesses = BTreeMap::new();
    for (name, w) in &raw.witnesses {
        let seq = match w {
            RawWitness::Explicit { terms, tail } => {
                let tail = match tail {
                    RawTail::Name(t) if t == "constant" => Tail::ConstantAfterPrefix,
                    RawTail::Name(t) if t == "unresolved" => Tail::Unresolved,
                    RawTail::Name(t) => {
                        return Err(invalid(format!("{name}: tail must be constant, unresolved or {{\"limit\": [...]}}, got {t:?}")))
                    }
                    RawTail::Limit { limit } => Tail::DeclaredLimit(vector(limit)),
                };
                WitnessSequence::new(terms.iter().map(|t| vector(t)).collect(), tail)?
            }
            RawWitness::Scaled {
                element,
                scale,
                perturb,
                terms,
            } => {
                let f = elements.get(element).ok_or_else(|| unresolved(element))?;
                let g = perturb.as_ref().map(|p| vector(p)).unwrap_or_else(|| Vector::zeros(f.len()));
                if g.len() != f.len() {
                    return Err(invalid(format!("{name}: perturbation has the wrong length")));
                }
                let limit = f * *scale;
                let prefix = (1..=(*terms).max(1)).map(|n| &limit + &g / n as f64).collect();
                WitnessSequence::new(prefix, Tail::DeclaredLimit(limit))?
            }
        };
        witnesses.insert(name.clone(), seq);
    }

    let mut pair_sequences = BTreeMap::new();
    for (name, s) in &raw.pair_sequences {
        let tail = match s.tail.as_str() {
            "constant" => Tail::ConstantAfterPrefix,
            "unresolved" => Tail::Unresolved,
            t => return Err(invalid(format!("{name}: pair sequence tail must be constant or unresolved, got {t:?}"))),
        };
        let terms = s.terms.iter().map(|&[a, b]| (a, b)).collect();
        pair_sequences.insert(name.clone(), WitnessSequence::new(terms, tail)?);
    }

    let mut checks = Vec::with_capacity(raw.checks.len());
    for (i, c) in raw.checks.iter().enumerate() {
        let checker = Checker::from_name(&c.checker).ok_or_else(|| unresolved(&c.checker))?;
        for field in checker.required() {
            let present = match *field {
                "pair" => c.pair.is_some(),
                "space" => c.space.is_some(),
                "set" => c.set.is_some(),
                "element" => c.element.is_some(),
                "witness" => c.witness.is_some(),
                "at_pair" => c.at_pair.is_some(),
                "z" => c.z.is_some(),
                "pair_seq" => c.pair_seq.is_some(),
                "pair_seq_y" => c.pair_seq_y.is_some(),
                "branch" => c.branch.is_some(),
                "point" => c.point.is_some(),
                "probes" => c.probes.is_some(),
                _ => true,
            };
            if !present {
                return Err(invalid(format!("check {i} ({}) is missing {field}", c.checker)));
            }
        }
        let lookup = |name: &Option<String>, known: bool| -> Result<()> {
            match name {
                Some(n) if !known => Err(unresolved(n)),
                _ => Ok(()),
            }
        };
        lookup(&c.pair, c.pair.as_ref().is_none_or(|n| pairs.contains_key(n)))?;
        lookup(&c.space, c.space.as_ref().is_none_or(|n| spaces.contains_key(n)))?;
        lookup(&c.set, c.set.as_ref().is_none_or(|n| subsets.contains_key(n)))?;
        lookup(&c.element, c.element.as_ref().is_none_or(|n| elements.contains_key(n)))?;
        lookup(&c.witness, c.witness.as_ref().is_none_or(|n| witnesses.contains_key(n)))?;
        lookup(&c.pair_seq, c.pair_seq.as_ref().is_none_or(|n| pair_sequences.contains_key(n)))?;
        lookup(&c.pair_seq_y, c.pair_seq_y.as_ref().is_none_or(|n| pair_sequences.contains_key(n)))?;
        if let Some(b) = &c.branch {
            if b != "below" && b != "above" {
                return Err(invalid(format!("check {i}: branch must be below or above, got {b:?}")));
            }
        }
        checks.push(CheckSpec {
            checker,
            name: c.name.clone().unwrap_or_else(|| format!("{}#{i}", c.checker)),
            args: c.clone(),
        });
    }

    Ok(Scenario {
        seed: raw.seed,
        tolerance: tol,
        spaces,
        metrics,
        subsets,
        pairs,
        elements,
        witnesses,
        pair_sequences,
        checks,
    })
}

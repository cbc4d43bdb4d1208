//! Random instance families for the search, how they are built into spaces,
//! and the candidate moves used when shrinking a violating instance.

use std::sync::Arc;

use normkeep::delta::{
    make_holder_spec, make_lip0_spec, metric_closure, DeltaNormSpec, DeltaNormedSpace, FiniteMetricSpace, Pair,
};
use normkeep::membership::{DeltaPair, SpacePair};
use normkeep::normed::{ElementSpace, NormedSpace};
use normkeep::projection::SubsetSpec;
use normkeep::rng::SeededRng;
use normkeep::sequence::{Tail, WitnessSequence};
use normkeep::{Matrix, Tolerance, Vector};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Bounds of the random families, recorded in every fingerprint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub min_points: usize,
    pub max_points: usize,
    pub max_target_dim: usize,
    pub max_dim: usize,
    /// Terms in generated witness sequences.
    pub terms: usize,
    /// Axiom samples run when a generated kernel space is built.
    pub axiom_samples: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            min_points: 3,
            max_points: 6,
            max_target_dim: 2,
            max_dim: 4,
            terms: 6,
            axiom_samples: 4,
        }
    }
}

/// Norm on a coordinate space, by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormCode {
    L1,
    L2,
    Linf,
}

impl NormCode {
    fn p(self) -> f64 {
        match self {
            NormCode::L1 => 1.0,
            NormCode::L2 => 2.0,
            NormCode::Linf => f64::INFINITY,
        }
    }

    fn draw(rng: &mut SeededRng) -> NormCode {
        [NormCode::L1, NormCode::L2, NormCode::Linf][rng.random_range(0..3)]
    }

    fn space(self, dim: usize) -> NormedSpace {
        match self {
            NormCode::L2 => NormedSpace::euclidean(dim),
            _ => NormedSpace::p_norm(dim, self.p()).expect("valid exponent"),
        }
    }

    /// `‖D v‖` for the diagonal `D = diag(scales)`.
    fn scaled(self, scales: &[f64]) -> normkeep::Result<NormedSpace> {
        let weights = match self {
            NormCode::Linf => scales.to_vec(),
            _ => scales.iter().map(|d| d.powf(self.p())).collect(),
        };
        NormedSpace::weighted(self.p(), weights)
    }
}

/// Lipschitz or Hölder tables on a random finite metric space; `X` drops
/// some symmetric pairs from the domain of `Y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaInstance {
    /// Raw distances before the shortest-path repair, upper triangle used.
    pub dist: Vec<Vec<f64>>,
    pub target_dim: usize,
    pub target: NormCode,
    pub exponent: f64,
    /// Unordered pairs `i < j` removed from the `X` domain.
    pub excluded: Vec<(usize, usize)>,
    /// The table `f`, point-major, zero at the base point 0.
    pub f: Vec<f64>,
    /// Perturbation table for witnesses.
    pub g: Vec<f64>,
    /// Statement-specific discrete choices.
    pub choice: Vec<u32>,
    /// Statement-specific reals in `[0, 1)`.
    pub scalars: Vec<f64>,
}

/// `X` and `Y` share the coordinate space `ℝⁿ`; `‖v‖_X = ‖D v‖_Y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormedInstance {
    pub norm: NormCode,
    pub scales: Vec<f64>,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub choice: Vec<u32>,
    pub scalars: Vec<f64>,
}

/// A linear subspace of a coordinate space with its own norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetInstance {
    pub ambient: NormCode,
    /// Spanning vectors, one per entry.
    pub basis: Vec<Vec<f64>>,
    /// `None` uses the ambient norm on the subspace.
    pub own: Option<NormCode>,
    pub probe: Vec<f64>,
    pub choice: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Instance {
    Delta(DeltaInstance),
    Normed(NormedInstance),
    Subset(SubsetInstance),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Delta,
    Normed,
    Subset,
}

const CHOICES: usize = 4;

fn gaussian(rng: &mut SeededRng) -> f64 {
    rng.sample(StandardNormal)
}

fn choices(rng: &mut SeededRng) -> Vec<u32> {
    (0..CHOICES).map(|_| rng.random_range(0..12)).collect()
}

pub fn generate(family: Family, cfg: &GeneratorConfig, rng: &mut SeededRng) -> Instance {
    match family {
        Family::Delta => Instance::Delta(generate_delta(cfg, rng)),
        Family::Normed => Instance::Normed(generate_normed(cfg, rng)),
        Family::Subset => Instance::Subset(generate_subset(cfg, rng)),
    }
}

fn generate_delta(cfg: &GeneratorConfig, rng: &mut SeededRng) -> DeltaInstance {
    let m = rng.random_range(cfg.min_points..=cfg.max_points);
    let k = if rng.random_bool(2.0 / 3.0) { 1 } else { rng.random_range(1..=cfg.max_target_dim) };
    let mut dist = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let d = rng.random_range(0.5f64.ln()..4f64.ln()).exp();
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }
    let exponent = if rng.random_bool(0.75) { 1.0 } else { 0.5 };
    let mut excluded = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if rng.random_bool(0.3) {
                excluded.push((i, j));
            }
        }
    }
    let table = |rng: &mut SeededRng| -> Vec<f64> {
        (0..m * k).map(|i| if i < k { 0.0 } else { 2.0 * gaussian(rng) }).collect()
    };
    let f = table(rng);
    let g = table(rng);
    let mut inst = DeltaInstance {
        dist,
        target_dim: k,
        target: NormCode::draw(rng),
        exponent,
        excluded,
        f,
        g,
        choice: choices(rng),
        scalars: (0..CHOICES).map(|_| rng.random::<f64>()).collect(),
    };
    // Half of the instances keep the extremal pair of Y inside X, so the
    // table keeps its norm.
    if rng.random_bool(0.5) {
        if let Ok(built) = inst.build(Tolerance::default(), 0) {
            let (a, b) = built.argmax_y();
            let key = (a.min(b), a.max(b));
            inst.excluded.retain(|p| *p != key);
        }
    }
    if inst.excluded.len() == m * (m - 1) / 2 {
        inst.excluded.pop();
    }
    inst
}

fn generate_normed(cfg: &GeneratorConfig, rng: &mut SeededRng) -> NormedInstance {
    let n = rng.random_range(1..=cfg.max_dim);
    let norm = NormCode::draw(rng);
    let choice = choices(rng);
    // choice[0]: below (scales <= 1) or above (scales >= 1); choice[3] < 3
    // gives the uniformly scaled family D = c·I.
    let above = choice[0] % 2 == 1;
    let uniform = choice[3] < 3;
    let c = [0.25, 0.5, 0.75][choice[3] as usize % 3];
    let scales: Vec<f64> = (0..n)
        .map(|_| {
            if uniform {
                if above { 1.0 / c } else { c }
            } else if rng.random_bool(0.5) {
                1.0
            } else if above {
                rng.random_range(1.2..2.0)
            } else {
                rng.random_range(0.3..0.8)
            }
        })
        .collect();
    let support_on_fixed = !uniform && rng.random_bool(0.5);
    let f = scales
        .iter()
        .map(|&d| if support_on_fixed && d != 1.0 { 0.0 } else { 2.0 * gaussian(rng) })
        .collect();
    let g = (0..n).map(|_| gaussian(rng)).collect();
    NormedInstance {
        norm,
        scales,
        f,
        g,
        choice,
        scalars: (0..CHOICES).map(|_| rng.random::<f64>()).collect(),
    }
}

fn generate_subset(cfg: &GeneratorConfig, rng: &mut SeededRng) -> SubsetInstance {
    let n = rng.random_range(2..=cfg.max_dim);
    let q = rng.random_range(1..n);
    let basis = (0..q)
        .map(|_| (0..n).map(|_| rng.random_range(-2i32..=2) as f64).collect())
        .collect();
    let ambient = NormCode::draw(rng);
    let own = if rng.random_bool(0.5) { None } else { Some(NormCode::draw(rng)) };
    SubsetInstance {
        ambient,
        basis,
        own,
        probe: (0..n).map(|_| 2.0 * gaussian(rng)).collect(),
        choice: choices(rng),
    }
}

/// `f_n = s·f + g/n` for `n = 1..terms`, declared limit `s·f`.
pub fn scaled_witness(f: &Vector, s: f64, g: &Vector, terms: usize) -> WitnessSequence<Vector> {
    let prefix = (1..=terms).map(|n| f * s + g / n as f64).collect();
    WitnessSequence::new(prefix, Tail::DeclaredLimit(f * s)).expect("nonempty prefix")
}

/// `f_n = f + g·2⁻ⁿ` for `n = 1..terms`, declared limit `f`. For the
/// piecewise-linear norms used here `‖f_n‖` is eventually affine in `2⁻ⁿ`,
/// so the trailing terms approach the limit monotonically.
pub fn geometric_witness(f: &Vector, g: &Vector, terms: usize) -> WitnessSequence<Vector> {
    let prefix = (1..=terms).map(|n| f + g * 0.5f64.powi(n as i32)).collect();
    WitnessSequence::new(prefix, Tail::DeclaredLimit(f.clone())).expect("nonempty prefix")
}

/// A prefix of `wander` pairs followed by `pair` forever.
pub fn settling_pairs(wander: &[Pair], pair: Pair) -> WitnessSequence<Pair> {
    let mut prefix = wander.to_vec();
    prefix.push(pair);
    WitnessSequence::new(prefix, Tail::ConstantAfterPrefix).expect("nonempty prefix")
}

pub struct BuiltDelta {
    pub pair: DeltaPair,
    pub f: Vector,
    pub g: Vector,
    pub x_pairs: Vec<Pair>,
}

impl BuiltDelta {
    pub fn x(&self) -> &DeltaNormedSpace {
        self.pair.x()
    }

    pub fn y(&self) -> &DeltaNormedSpace {
        self.pair.y()
    }

    pub fn argmax_x(&self) -> Pair {
        normkeep::delta::delta_norm(self.x(), &self.f).expect("member").pair
    }

    pub fn argmax_y(&self) -> Pair {
        normkeep::delta::delta_norm(self.y(), &self.f).expect("member").pair
    }

    pub fn norm_x(&self) -> f64 {
        self.x().norm_unchecked(&self.f)
    }

    pub fn norm_y(&self) -> f64 {
        self.y().norm_unchecked(&self.f)
    }
}

impl DeltaInstance {
    pub fn points(&self) -> usize {
        self.dist.len()
    }

    pub fn build(&self, tol: Tolerance, axiom_samples: usize) -> normkeep::Result<BuiltDelta> {
        let m = self.points();
        let k = self.target_dim;
        if m < 2 || self.f.len() != m * k || self.g.len() != m * k {
            return Err(normkeep::Error::BadMetric("inconsistent instance shape".into()));
        }
        let labels = (0..m).map(|i| format!("p{i}")).collect();
        let mut upper = self.dist.clone();
        for i in 0..m {
            for j in 0..i {
                upper[i][j] = upper[j][i];
            }
        }
        let metric = Arc::new(FiniteMetricSpace::new(labels, metric_closure(upper), Some(0), tol)?);
        let target = Arc::new(self.target.space(k));
        let spec_y = if self.exponent == 1.0 {
            make_lip0_spec(metric, target)?
        } else {
            make_holder_spec(metric, target, self.exponent)?
        };
        let x_pairs: Vec<Pair> = spec_y
            .pairs()
            .iter()
            .copied()
            .filter(|&(a, b)| !self.excluded.contains(&(a.min(b), a.max(b))))
            .collect();
        let spec_x: DeltaNormSpec = spec_y.with_pairs(x_pairs.clone(), "x")?;
        let x = DeltaNormedSpace::with_axiom_samples(spec_x, true, axiom_samples, 0, tol)?;
        let y = DeltaNormedSpace::with_axiom_samples(spec_y, true, axiom_samples, 0, tol)?;
        let pair = DeltaPair::new(Arc::new(x), Arc::new(y))?;
        Ok(BuiltDelta {
            pair,
            f: Vector::from_vec(self.f.clone()),
            g: Vector::from_vec(self.g.clone()),
            x_pairs,
        })
    }

    fn truncated(&self, m: usize, k: usize) -> DeltaInstance {
        let cut = |t: &[f64]| -> Vec<f64> {
            (0..m).flat_map(|p| (0..k).map(move |j| (p, j))).map(|(p, j)| t[p * self.target_dim + j]).collect()
        };
        DeltaInstance {
            dist: self.dist[..m].iter().map(|r| r[..m].to_vec()).collect(),
            target_dim: k,
            excluded: self.excluded.iter().copied().filter(|&(_, b)| b < m).collect(),
            f: cut(&self.f),
            g: cut(&self.g),
            ..self.clone()
        }
    }

    fn shrink_candidates(&self) -> Vec<DeltaInstance> {
        let mut out = Vec::new();
        let m = self.points();
        if m > 2 {
            out.push(self.truncated(m.div_ceil(2).max(2), self.target_dim));
        }
        if self.target_dim > 1 {
            out.push(self.truncated(m, self.target_dim.div_ceil(2)));
        }
        for i in 0..self.f.len() {
            if self.f[i] != 0.0 {
                let mut c = self.clone();
                c.f[i] = 0.0;
                out.push(c);
            }
        }
        for i in 0..self.g.len() {
            if self.g[i] != 0.0 {
                let mut c = self.clone();
                c.g[i] = 0.0;
                out.push(c);
            }
        }
        let mut r = self.clone();
        for row in &mut r.dist {
            row.iter_mut().for_each(|d| *d = round1(*d));
        }
        r.f.iter_mut().for_each(|v| *v = round1(*v));
        r.g.iter_mut().for_each(|v| *v = round1(*v));
        r.scalars.iter_mut().for_each(|v| *v = round1(*v));
        if r != *self {
            out.push(r);
        }
        out
    }
}

pub struct BuiltNormed {
    pub pair: SpacePair,
    pub f: Vector,
    pub g: Vector,
    pub above: bool,
}

impl NormedInstance {
    pub fn above(&self) -> bool {
        self.choice[0] % 2 == 1
    }

    pub fn build(&self) -> normkeep::Result<BuiltNormed> {
        let n = self.scales.len();
        if n == 0 || self.f.len() != n || self.g.len() != n {
            return Err(normkeep::Error::BadMetric("inconsistent instance shape".into()));
        }
        let x = self.norm.scaled(&self.scales)?.with_label("x");
        let y = self.norm.space(n).with_label("y");
        let pair = SpacePair::new(Arc::new(x), Arc::new(y), None)?;
        Ok(BuiltNormed {
            pair,
            f: Vector::from_vec(self.f.clone()),
            g: Vector::from_vec(self.g.clone()),
            above: self.above(),
        })
    }

    fn keep(&self, idx: &[usize]) -> NormedInstance {
        let pick = |v: &[f64]| idx.iter().map(|&i| v[i]).collect();
        NormedInstance {
            scales: pick(&self.scales),
            f: pick(&self.f),
            g: pick(&self.g),
            ..self.clone()
        }
    }

    fn shrink_candidates(&self) -> Vec<NormedInstance> {
        let mut out = Vec::new();
        let n = self.scales.len();
        if n > 1 {
            let half: Vec<usize> = (0..n.div_ceil(2)).collect();
            out.push(self.keep(&half));
        }
        for i in 0..n {
            if self.f[i] != 0.0 {
                let mut c = self.clone();
                c.f[i] = 0.0;
                out.push(c);
            }
            if self.g[i] != 0.0 {
                let mut c = self.clone();
                c.g[i] = 0.0;
                out.push(c);
            }
        }
        let mut r = self.clone();
        r.scales.iter_mut().for_each(|v| *v = round1(*v).max(0.1));
        r.f.iter_mut().for_each(|v| *v = round1(*v));
        r.g.iter_mut().for_each(|v| *v = round1(*v));
        r.scalars.iter_mut().for_each(|v| *v = round1(*v));
        if r != *self {
            out.push(r);
        }
        out
    }
}

impl SubsetInstance {
    pub fn dim(&self) -> usize {
        self.probe.len()
    }

    pub fn build(&self) -> normkeep::Result<(SubsetSpec, Vector)> {
        let n = self.dim();
        if self.basis.is_empty() || self.basis.iter().any(|b| b.len() != n) {
            return Err(normkeep::Error::BadSubset("inconsistent instance shape".into()));
        }
        let cols: Vec<Vector> = self.basis.iter().map(|b| Vector::from_vec(b.clone())).collect();
        let basis = Matrix::from_columns(&cols);
        let ambient = Arc::new(self.ambient.space(n));
        let own = match self.own {
            None => ambient.clone(),
            Some(code) => Arc::new(code.space(n)),
        };
        let spec = SubsetSpec::subspace(ambient, basis, own)?;
        Ok((spec, Vector::from_vec(self.probe.clone())))
    }

    fn shrink_candidates(&self) -> Vec<SubsetInstance> {
        let mut out = Vec::new();
        if self.basis.len() > 1 {
            let mut c = self.clone();
            c.basis.truncate(self.basis.len().div_ceil(2));
            out.push(c);
        }
        for i in 0..self.probe.len() {
            if self.probe[i] != 0.0 {
                let mut c = self.clone();
                c.probe[i] = 0.0;
                out.push(c);
            }
        }
        for b in 0..self.basis.len() {
            for i in 0..self.dim() {
                if self.basis[b][i] != 0.0 {
                    let mut c = self.clone();
                    c.basis[b][i] = 0.0;
                    out.push(c);
                }
            }
        }
        let mut r = self.clone();
        r.probe.iter_mut().for_each(|v| *v = round1(*v));
        if r != *self {
            out.push(r);
        }
        out
    }
}

impl Instance {
    /// One-step simplifications, in the order they are tried: fewer points or
    /// coordinates, then zeroed entries, then values rounded to one decimal.
    pub fn shrink_candidates(&self) -> Vec<Instance> {
        match self {
            Instance::Delta(d) => d.shrink_candidates().into_iter().map(Instance::Delta).collect(),
            Instance::Normed(n) => n.shrink_candidates().into_iter().map(Instance::Normed).collect(),
            Instance::Subset(s) => s.shrink_candidates().into_iter().map(Instance::Subset).collect(),
        }
    }

    /// Size measure that strictly drops along accepted shrink steps.
    pub fn size(&self) -> (usize, usize, usize) {
        fn profile(xs: &[f64]) -> (usize, usize) {
            let nonzero = xs.iter().filter(|v| **v != 0.0).count();
            let unrounded = xs.iter().filter(|v| round1(**v) != **v).count();
            (nonzero, unrounded)
        }
        match self {
            Instance::Delta(d) => {
                let mut all = d.f.clone();
                all.extend(&d.g);
                let (nz, ur) = profile(&all);
                let dist_ur = d.dist.iter().flatten().filter(|v| round1(**v) != **v).count();
                (d.points() * d.target_dim, nz, ur + dist_ur)
            }
            Instance::Normed(n) => {
                let mut all = n.f.clone();
                all.extend(&n.g);
                let (nz, ur) = profile(&all);
                (n.scales.len(), nz, ur)
            }
            Instance::Subset(s) => {
                let mut all = s.probe.clone();
                all.extend(s.basis.iter().flatten());
                let (nz, ur) = profile(&all);
                (s.basis.len() * s.dim(), nz, ur)
            }
        }
    }
}

pub fn round1(v: f64) -> f64 {
    (v * 10.0).round() / 10.0
}

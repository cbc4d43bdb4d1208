use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{max_abs, orthonormal_span, solve_square, to_vec, dedup_points, Matrix, Vector};
use crate::normed::ElementSpace;
use crate::rng::{gaussian_vector, seeded};
use crate::tolerance::Tolerance;

use super::lp;
use super::subset::{SubsetKind, SubsetSpec};

#[derive(Debug, Clone, PartialEq)]
pub enum Minimizers {
    Singleton(Vector),
    /// Vertices of the (convex) minimizer set.
    Polytope(Vec<Vector>),
    /// Approximate minimizers found by local search; `resolution` is the final
    /// step size.
    Samples { points: Vec<Vector>, resolution: f64 },
}

impl Minimizers {
    pub fn points(&self) -> Vec<&Vector> {
        match self {
            Minimizers::Singleton(p) => vec![p],
            Minimizers::Polytope(v) | Minimizers::Samples { points: v, .. } => v.iter().collect(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Minimizers::Singleton(_) => "singleton",
            Minimizers::Polytope(_) => "polytope",
            Minimizers::Samples { .. } => "samples",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverTag {
    ExactEuclidean,
    LpPolytope,
    GridRefine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "class", content = "count")]
pub enum Cardinality {
    Singleton,
    Finite(usize),
    Infinite,
    Unknown,
}

impl Cardinality {
    pub fn as_str(&self) -> &'static str {
        match self {
            Cardinality::Singleton => "singleton",
            Cardinality::Finite(_) => "finite",
            Cardinality::Infinite => "infinite",
            Cardinality::Unknown => "unknown",
        }
    }
}

/// `d(y, X)` and the set `P_X(y)` of nearest points.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionSolution {
    pub distance: f64,
    pub minimizers: Minimizers,
    pub solver: SolverTag,
    pub cardinality: Cardinality,
    /// Norm evaluations spent by local search (0 for the exact solvers).
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverChoice {
    /// Closed form, orthogonal projection or linear program when applicable,
    /// local search otherwise.
    Auto,
    /// Always local search.
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectOptions {
    pub solver: SolverChoice,
    pub starts: usize,
    /// Norm evaluations allowed per projection.
    pub budget: usize,
    pub seed: u64,
    /// Start the first local search at the origin instead of the least
    /// squares point.
    pub start_at_zero: bool,
}

impl Default for ProjectOptions {
    fn default() -> Self {
        ProjectOptions {
            solver: SolverChoice::Auto,
            starts: 8,
            budget: 10_000,
            seed: 0,
            start_at_zero: false,
        }
    }
}

pub fn project(x: &SubsetSpec, y: &Vector, tol: Tolerance) -> Result<ProjectionSolution> {
    project_with(x, y, tol, &ProjectOptions::default())
}

pub fn project_with(x: &SubsetSpec, y: &Vector, tol: Tolerance, opts: &ProjectOptions) -> Result<ProjectionSolution> {
    check_dim(x.ambient().dim(), y.len())?;
    if y.iter().any(|c| !c.is_finite()) {
        return Err(Error::NotMember("point has non-finite coordinates".into()));
    }
    if opts.solver == SolverChoice::Grid {
        return pattern_search(x, y, tol, opts);
    }
    match x.kind() {
        SubsetKind::RealAxisInC => {
            let re = Vector::from_vec(vec![y[0], 0.0]);
            Ok(exact(y[1].abs(), re))
        }
        SubsetKind::Subspace { basis } if x.ambient().is_euclidean() => {
            let q = orthonormal_span(basis);
            let p = &q * (q.transpose() * y);
            Ok(exact(x.ambient().norm_unchecked(&(y - &p)), p))
        }
        kind => match x.ambient().piecewise_rows() {
            Some(rows) => {
                let simplex = matches!(kind, SubsetKind::Polytope { .. });
                let face = lp::solve(&rows, &x.parameter_matrix(), y, simplex)?;
                Ok(from_face(face, x, y))
            }
            None => pattern_search(x, y, tol, opts),
        },
    }
}

fn exact(distance: f64, point: Vector) -> ProjectionSolution {
    ProjectionSolution {
        distance,
        minimizers: Minimizers::Singleton(point),
        solver: SolverTag::ExactEuclidean,
        cardinality: Cardinality::Singleton,
        evaluations: 0,
    }
}

fn from_face(face: lp::LpFace, x: &SubsetSpec, y: &Vector) -> ProjectionSolution {
    let (minimizers, cardinality) = match face.vertices {
        Some(mut v) if v.len() == 1 => (Minimizers::Singleton(v.remove(0)), Cardinality::Singleton),
        Some(v) => (Minimizers::Polytope(v), Cardinality::Infinite),
        None => (
            Minimizers::Samples {
                points: vec![face.point],
                resolution: 0.0,
            },
            Cardinality::Unknown,
        ),
    };
    // Report the distance realized by the reported points.
    let realized = minimizers
        .points()
        .iter()
        .map(|p| x.ambient().norm_unchecked(&(y - *p)))
        .fold(face.distance, f64::min);
    ProjectionSolution {
        distance: realized,
        minimizers,
        solver: SolverTag::LpPolytope,
        cardinality,
        evaluations: 0,
    }
}

struct Search<'a> {
    x: &'a SubsetSpec,
    m: Matrix,
    y: &'a Vector,
    simplex: bool,
    evaluations: usize,
    budget: usize,
}

impl Search<'_> {
    fn eval(&mut self, w: &Vector) -> Option<f64> {
        if self.evaluations >= self.budget {
            return None;
        }
        self.evaluations += 1;
        Some(self.x.ambient().norm_unchecked(&(self.y - &self.m * w)))
    }

    fn directions(&self) -> Vec<Vector> {
        let q = self.m.ncols();
        let mut dirs = Vec::new();
        if self.simplex {
            for i in 0..q {
                for j in 0..q {
                    if i != j {
                        let mut d = Vector::zeros(q);
                        d[i] = -1.0;
                        d[j] = 1.0;
                        dirs.push(d);
                    }
                }
            }
            return dirs;
        }
        for i in 0..q {
            for sign in [1.0, -1.0] {
                let mut d = Vector::zeros(q);
                d[i] = sign;
                dirs.push(d);
            }
        }
        if (2..=4).contains(&q) {
            for mask in 0..(1usize << q) {
                let d = Vector::from_fn(q, |i, _| if mask >> i & 1 == 1 { 1.0 } else { -1.0 });
                dirs.push(d / (q as f64).sqrt());
            }
        }
        dirs
    }

    /// A move along `d` of length `step`, clipped to the simplex.
    fn moved(&self, w: &Vector, d: &Vector, step: f64) -> Option<Vector> {
        if !self.simplex {
            return Some(w + d * step);
        }
        let from = d.iter().position(|&c| c < 0.0)?;
        let amount = step.min(w[from]);
        if amount <= 0.0 {
            return None;
        }
        Some(w + d * amount)
    }

    /// Returns the final point, its value, the final step, and whether the
    /// step shrank below `min_step` within budget.
    fn run(&mut self, start: Vector, step0: f64, min_step: f64) -> (Vector, f64, f64, bool) {
        let dirs = self.directions();
        let mut w = start;
        let Some(mut value) = self.eval(&w) else {
            return (w, f64::INFINITY, step0, false);
        };
        let mut step = step0;
        while step >= min_step {
            let mut improved = false;
            for d in &dirs {
                let Some(cand) = self.moved(&w, d, step) else { continue };
                let Some(v) = self.eval(&cand) else {
                    return (w, value, step, false);
                };
                if v < value {
                    w = cand;
                    value = v;
                    improved = true;
                    break;
                }
            }
            if !improved {
                step /= 2.0;
            }
        }
        (w, value, step, true)
    }
}

fn pattern_search(x: &SubsetSpec, y: &Vector, tol: Tolerance, opts: &ProjectOptions) -> Result<ProjectionSolution> {
    let m = x.parameter_matrix();
    let simplex = matches!(x.kind(), SubsetKind::Polytope { .. });
    let q = m.ncols();
    let scale = 1f64.max(max_abs(y));
    let min_step = tol.abs.max(tol.rel) * scale;
    let mut search = Search {
        x,
        m: m.clone(),
        y,
        simplex,
        evaluations: 0,
        budget: opts.budget,
    };

    let mut rng = seeded(opts.seed);
    let col_scale = 1f64.max(max_abs(&m));
    let starts: Vec<Vector> = if simplex {
        let mut s = vec![Vector::from_element(q, 1.0 / q as f64)];
        s.extend((0..q).map(|i| {
            let mut w = Vector::from_element(q, 0.1 / q as f64);
            w[i] += 0.9;
            w
        }));
        while s.len() < opts.starts {
            let e = gaussian_vector(&mut rng, q).map(|g| g.abs() + 1e-3);
            let total = e.sum();
            s.push(e / total);
        }
        s.truncate(opts.starts.max(1));
        s
    } else {
        let ls = if opts.start_at_zero {
            Vector::zeros(q)
        } else {
            solve_square(&(m.transpose() * &m), &(m.transpose() * y)).unwrap_or_else(|| Vector::zeros(q))
        };
        let mut s = vec![ls.clone()];
        while s.len() < opts.starts.max(1) {
            s.push(&ls + gaussian_vector(&mut rng, q) * (scale / col_scale));
        }
        s
    };
    let step0 = if simplex { 0.5 } else { scale / col_scale };

    let mut finals: Vec<(Vector, f64)> = Vec::new();
    let mut resolution = 0.0f64;
    let mut exhausted = false;
    for start in starts {
        let (w, value, step, converged) = search.run(start, step0, min_step);
        finals.push((w, value));
        resolution = resolution.max(step);
        if !converged {
            exhausted = true;
            break;
        }
    }
    let (best_w, best) = finals
        .iter()
        .cloned()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one start");
    if exhausted {
        return Err(Error::NoConvergence {
            distance: best,
            point: to_vec(&(&m * &best_w)),
            evaluations: search.evaluations,
        });
    }
    let near: Vec<Vector> = finals
        .iter()
        .filter(|(_, v)| tol.le(*v, best))
        .map(|(w, _)| &m * w)
        .collect();
    let points = dedup_points(near, 1e-6 * scale);
    Ok(ProjectionSolution {
        distance: best,
        minimizers: Minimizers::Samples { points, resolution },
        solver: SolverTag::GridRefine,
        cardinality: Cardinality::Unknown,
        evaluations: search.evaluations,
    })
}

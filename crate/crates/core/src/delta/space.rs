use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::normed::{verify_norm_axioms, AxiomReport, ElementSpace};
use crate::rng::{sample_vector, SeededRng};
use crate::tolerance::Tolerance;

use super::spec::{DeltaNormSpec, Mode};
use super::table::FunctionTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceStatus {
    Norm,
    /// The kernel map failed at least one norm axiom on the sampled tables.
    SeminormLike,
}

/// Tables carrying a kernel norm. With `vanish_at_base`, only tables that
/// are exactly zero at the metric's base point are members.
#[derive(Debug, Clone)]
pub struct DeltaNormedSpace {
    spec: DeltaNormSpec,
    vanish_at_base: bool,
    status: SpaceStatus,
    axioms: AxiomReport,
    label: String,
}

/// Tables sampled by the construction-time axiom check.
pub const AXIOM_SAMPLES: usize = 200;

impl DeltaNormedSpace {
    pub fn new(spec: DeltaNormSpec, vanish_at_base: bool) -> Result<Self> {
        DeltaNormedSpace::with_axiom_samples(spec, vanish_at_base, AXIOM_SAMPLES, 0, Tolerance::default())
    }

    pub fn with_axiom_samples(
        spec: DeltaNormSpec,
        vanish_at_base: bool,
        samples: usize,
        seed: u64,
        tol: Tolerance,
    ) -> Result<Self> {
        if vanish_at_base && spec.metric().base_point().is_none() {
            return Err(Error::BadMetric("vanishing at the base point needs a base point".into()));
        }
        let label = spec.label().to_string();
        let mut space = DeltaNormedSpace {
            spec,
            vanish_at_base,
            status: SpaceStatus::Norm,
            axioms: AxiomReport::placeholder(),
            label,
        };
        let report = verify_norm_axioms(&space, samples, seed, tol);
        if !report.all_passed() {
            space.status = SpaceStatus::SeminormLike;
        }
        space.axioms = report;
        Ok(space)
    }

    pub fn spec(&self) -> &DeltaNormSpec {
        &self.spec
    }

    pub fn status(&self) -> SpaceStatus {
        self.status
    }

    pub fn axioms(&self) -> &AxiomReport {
        &self.axioms
    }

    pub fn vanish_at_base(&self) -> bool {
        self.vanish_at_base
    }

    pub fn target_dim(&self) -> usize {
        self.spec.target().dim()
    }

    pub fn points(&self) -> usize {
        self.spec.metric().len()
    }

    pub fn table(&self, f: &Vector) -> Result<FunctionTable> {
        self.check_member(f)?;
        FunctionTable::from_flat(f, self.target_dim())
    }

    fn value(&self, f: &Vector, point: usize) -> Vector {
        let m = self.target_dim();
        f.rows(point * m, m).into_owned()
    }

    /// `δ` at `pair` for the table `f`, after checking the pair.
    pub fn delta_at(&self, f: &Vector, pair: (usize, usize)) -> Result<f64> {
        self.check_pair(pair)?;
        self.check_member(f)?;
        Ok(self.delta_unchecked(f, pair))
    }

    pub(crate) fn delta_unchecked(&self, f: &Vector, (x, y): (usize, usize)) -> f64 {
        self.spec.delta(x, y, &self.value(f, x), &self.value(f, y))
    }

    /// `δ̃` at `pair` for the table `f`.
    pub fn delta_tilde_at(&self, f: &Vector, pair: (usize, usize)) -> Result<Vector> {
        if !self.spec.has_delta_tilde() {
            return Err(Error::NoDeltaTilde(self.spec.kernel().name()));
        }
        self.check_pair(pair)?;
        self.check_member(f)?;
        Ok(self.delta_tilde_unchecked(f, pair))
    }

    pub(crate) fn delta_tilde_unchecked(&self, f: &Vector, (x, y): (usize, usize)) -> Vector {
        self.spec
            .delta_tilde(x, y, &self.value(f, x), &self.value(f, y))
            .expect("checked for a vector kernel")
    }

    pub fn check_pair(&self, pair: (usize, usize)) -> Result<()> {
        if self.spec.contains_pair(pair) {
            Ok(())
        } else {
            Err(Error::PairOutsideDomain(pair.0, pair.1))
        }
    }

    fn zero_base(&self, v: &mut Vector) {
        if let (true, Some(b)) = (self.vanish_at_base, self.spec.metric().base_point()) {
            let m = self.target_dim();
            v.rows_mut(b * m, m).fill(0.0);
        }
    }

    pub(crate) fn extremum(&self, f: &Vector) -> DeltaNormValue {
        let mut best: Option<(f64, (usize, usize))> = None;
        for &pair in self.spec.pairs() {
            let d = self.delta_unchecked(f, pair);
            let better = match (best, self.spec.mode()) {
                (None, _) => true,
                (Some((b, _)), Mode::Sup) => d > b,
                (Some((b, _)), Mode::Inf) => d < b,
            };
            if better || d.is_nan() {
                best = Some((d, pair));
                if d.is_nan() {
                    break;
                }
            }
        }
        let (value, pair) = best.expect("pair domains are nonempty");
        DeltaNormValue { value, pair }
    }
}

impl ElementSpace for DeltaNormedSpace {
    fn dim(&self) -> usize {
        self.points() * self.target_dim()
    }

    fn label(&self) -> &str {
        &self.label
    }

    fn check_member(&self, v: &Vector) -> Result<()> {
        check_dim(self.dim(), v.len())?;
        if let (true, Some(b)) = (self.vanish_at_base, self.spec.metric().base_point()) {
            let m = self.target_dim();
            if v.rows(b * m, m).iter().any(|&c| c != 0.0) {
                return Err(Error::NotMember(format!(
                    "table is not zero at base point {}",
                    self.spec.metric().labels()[b]
                )));
            }
        }
        Ok(())
    }

    fn norm_unchecked(&self, v: &Vector) -> f64 {
        self.extremum(v).value
    }

    fn sample(&self, rng: &mut SeededRng) -> Vector {
        let mut v = sample_vector(rng, self.dim());
        self.zero_base(&mut v);
        v
    }

    fn probes(&self) -> Vec<Vector> {
        let n = self.dim();
        let mut out = Vec::with_capacity(2 * n);
        for sign in [1.0, -1.0] {
            for i in 0..n {
                let mut e = Vector::zeros(n);
                e[i] = sign;
                self.zero_base(&mut e);
                if e.iter().any(|&c| c != 0.0) {
                    out.push(e);
                }
            }
        }
        // Constant tables: kernels built from differences vanish on them.
        let m = self.target_dim();
        for j in 0..m {
            let mut c = Vector::zeros(n);
            for p in 0..self.points() {
                c[p * m + j] = 1.0;
            }
            self.zero_base(&mut c);
            if c.iter().any(|&x| x != 0.0) {
                out.push(c);
            }
        }
        out
    }

    fn dual_generators(&self) -> Matrix {
        Matrix::identity(self.dim(), self.dim())
    }
}

/// Value of a kernel norm with one extremal pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaNormValue {
    pub value: f64,
    /// First extremal pair in lexicographic order of point indices.
    pub pair: (usize, usize),
}

/// Sup (or inf) of the kernel over the pair domain, exact as the domain is
/// finite.
pub fn delta_norm(space: &DeltaNormedSpace, f: &Vector) -> Result<DeltaNormValue> {
    space.check_member(f)?;
    Ok(space.extremum(f))
}

/// Space handle shared between pairs and certificates.
pub type DeltaSpaceRef = Arc<DeltaNormedSpace>;

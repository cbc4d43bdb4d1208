use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::delta::DeltaNormedSpace;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::normed::ElementSpace;
use crate::rng::seeded;
use crate::tolerance::Tolerance;

/// A declared inequality between the two norms on all of `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormOrder {
    /// `‖T‖_X <= ‖T‖_Y` for every `T` in `X`.
    #[serde(rename = "le")]
    Le,
    /// `‖T‖_X >= ‖T‖_Y` for every `T` in `X`.
    #[serde(rename = "ge")]
    Ge,
}

/// Samples drawn from `X` to back a declared norm order.
pub const ORDER_SAMPLES: usize = 200;

/// `X ⊂ Y`: two element spaces and the linear map sending elements of `X`
/// to elements of `Y` (the identity when absent).
#[derive(Debug, Clone)]
pub struct SpacePair {
    x: Arc<dyn ElementSpace>,
    y: Arc<dyn ElementSpace>,
    embed: Option<Matrix>,
    order: Option<NormOrder>,
}

impl SpacePair {
    /// Checks the embedding's shape and that it maps probes and samples of
    /// `X` into `Y`.
    pub fn new(x: Arc<dyn ElementSpace>, y: Arc<dyn ElementSpace>, embed: Option<Matrix>) -> Result<Self> {
        match &embed {
            Some(m) => {
                check_dim(y.dim(), m.nrows())?;
                check_dim(x.dim(), m.ncols())?;
            }
            None => check_dim(x.dim(), y.dim())?,
        }
        let pair = SpacePair {
            x,
            y,
            embed,
            order: None,
        };
        let mut rng = seeded(0);
        let mut elements = pair.x.probes();
        elements.extend((0..16).map(|_| pair.x.sample(&mut rng)));
        for v in &elements {
            pair.y.check_member(&pair.embed(v)).map_err(|e| {
                Error::NotMember(format!("{} does not embed into {}: {e}", pair.x.label(), pair.y.label()))
            })?;
        }
        Ok(pair)
    }

    /// Declares a norm order, verified on probes and `samples` random
    /// elements of `X`.
    pub fn with_order(mut self, order: NormOrder, samples: usize, seed: u64, tol: Tolerance) -> Result<Self> {
        let mut rng = seeded(seed);
        let mut elements = self.x.probes();
        elements.extend((0..samples).map(|_| self.x.sample(&mut rng)));
        for v in &elements {
            self.check_order_on(order, v, tol)?;
        }
        self.order = Some(order);
        Ok(self)
    }

    fn check_order_on(&self, order: NormOrder, v: &Vector, tol: Tolerance) -> Result<()> {
        let nx = self.x.norm_unchecked(v);
        let ny = self.y.norm_unchecked(&self.embed(v));
        let ok = match order {
            NormOrder::Le => tol.le(nx, ny),
            NormOrder::Ge => tol.le(ny, nx),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::precondition(
                "order_flag",
                format!("declared order {order:?} fails: ‖T‖_X = {nx}, ‖T‖_Y = {ny}"),
            ))
        }
    }

    /// The declared order, re-verified on `f`.
    pub(crate) fn order_at(&self, f: &Vector, tol: Tolerance) -> Result<Option<NormOrder>> {
        if let Some(order) = self.order {
            self.check_order_on(order, f, tol)?;
        }
        Ok(self.order)
    }

    pub fn x(&self) -> &Arc<dyn ElementSpace> {
        &self.x
    }

    pub fn y(&self) -> &Arc<dyn ElementSpace> {
        &self.y
    }

    pub fn order(&self) -> Option<NormOrder> {
        self.order
    }

    pub fn embedding(&self) -> Option<&Matrix> {
        self.embed.as_ref()
    }

    pub fn embed(&self, v: &Vector) -> Vector {
        match &self.embed {
            Some(m) => m * v,
            None => v.clone(),
        }
    }
}

/// `X ⊂ Y` for two kernel-normed table spaces over the same metric space
/// and target, with `X`'s pair domain inside `Y`'s.
#[derive(Debug, Clone)]
pub struct DeltaPair {
    x: Arc<DeltaNormedSpace>,
    y: Arc<DeltaNormedSpace>,
    generic: SpacePair,
}

impl DeltaPair {
    pub fn new(x: Arc<DeltaNormedSpace>, y: Arc<DeltaNormedSpace>) -> Result<Self> {
        if x.spec().metric() != y.spec().metric() {
            return Err(Error::BadMetric("X and Y tables live on different metric spaces".into()));
        }
        check_dim(y.target_dim(), x.target_dim())?;
        if let Some(&(a, b)) = x.spec().pairs().iter().find(|p| !y.spec().contains_pair(**p)) {
            return Err(Error::PairOutsideDomain(a, b));
        }
        if y.vanish_at_base() && !x.vanish_at_base() {
            return Err(Error::NotMember("Y requires vanishing at the base point and X does not".into()));
        }
        let generic = SpacePair::new(x.clone(), y.clone(), None)?;
        Ok(DeltaPair { x, y, generic })
    }

    pub fn with_order(mut self, order: NormOrder, samples: usize, seed: u64, tol: Tolerance) -> Result<Self> {
        self.generic = self.generic.with_order(order, samples, seed, tol)?;
        Ok(self)
    }

    pub fn x(&self) -> &DeltaNormedSpace {
        &self.x
    }

    pub fn y(&self) -> &DeltaNormedSpace {
        &self.y
    }

    pub fn as_space_pair(&self) -> &SpacePair {
        &self.generic
    }
}

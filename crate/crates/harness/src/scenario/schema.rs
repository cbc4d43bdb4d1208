//! On-disk scenario format (`schema_version` 1). Vectors are arrays of
//! numbers; matrices are row-major arrays of arrays.

use std::collections::BTreeMap;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// A `p` exponent: a number, or `"inf"` for the max norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Exponent(pub f64);

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(p) => Ok(Exponent(p)),
            Raw::Text(s) if matches!(s.as_str(), "inf" | "infinity" | "Infinity") => Ok(Exponent(f64::INFINITY)),
            Raw::Text(s) => Err(de::Error::custom(format!("exponent must be a number or \"inf\", got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTolerance {
    pub rel: Option<f64>,
    pub abs: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RawSpace {
    Euclidean { dim: usize },
    P { dim: usize, p: Exponent },
    Weighted { p: Exponent, weights: Vec<f64> },
    PiecewiseLinear { rows: Vec<Vec<f64>> },
    /// `factor · ‖·‖_of`.
    Scaled { of: String, factor: f64 },
    /// Discrete Bochner space over weighted atoms with values in `target`.
    Bochner { target: String, weights: Vec<f64>, p: Exponent },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RawMetric {
    /// Points on the real line with `|s − t|`.
    Line { points: Vec<f64>, base: Option<usize> },
    Matrix {
        labels: Vec<String>,
        dist: Vec<Vec<f64>>,
        base: Option<usize>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDeltaSpace {
    pub metric: String,
    pub target: String,
    /// `lip0`, `holder` (with `exponent`) or a builtin kernel name.
    pub kernel: String,
    pub exponent: Option<f64>,
    #[serde(default = "default_mode")]
    pub mode: String,
    /// Pair domain; all ordered pairs of distinct points when absent.
    pub pairs: Option<Vec<[usize; 2]>>,
    /// Pairs removed from the domain, in both orders.
    #[serde(default)]
    pub exclude: Vec<[usize; 2]>,
    #[serde(default)]
    pub vanish_at_base: bool,
}

fn default_mode() -> String {
    "sup".into()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RawSubset {
    RealAxisInC { own_norm: Option<String> },
    Subspace {
        ambient: String,
        basis: Vec<Vec<f64>>,
        own_norm: Option<String>,
    },
    Polytope {
        ambient: String,
        vertices: Vec<Vec<f64>>,
        own_norm: Option<String>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RawPair {
    Spaces {
        x: String,
        y: String,
        embed: Option<Vec<Vec<f64>>>,
        order: Option<String>,
    },
    Delta { x: String, y: String, order: Option<String> },
    /// The subset with its own norm inside its ambient space.
    Subset { subset: String, order: Option<String> },
    /// The subset with its own norm inside the ambient space renormed by the
    /// induced seminorm.
    Renorm { subset: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RawTail {
    Name(String),
    Limit { limit: Vec<f64> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RawWitness {
    Explicit { terms: Vec<Vec<f64>>, tail: RawTail },
    /// `fₙ = scale·f + perturb / n` for `n = 1..=terms`, converging to
    /// `scale·f`.
    Scaled {
        element: String,
        scale: f64,
        perturb: Option<Vec<f64>>,
        #[serde(default = "default_terms")]
        terms: usize,
    },
}

fn default_terms() -> usize {
    8
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPairSequence {
    pub terms: Vec<[usize; 2]>,
    #[serde(default = "default_pair_tail")]
    pub tail: String,
}

fn default_pair_tail() -> String {
    "constant".into()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RawProbes {
    List(Vec<Vec<f64>>),
    Random { random: usize },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCheck {
    pub checker: String,
    pub name: Option<String>,
    pub pair: Option<String>,
    pub space: Option<String>,
    pub set: Option<String>,
    pub element: Option<String>,
    pub witness: Option<String>,
    pub at_pair: Option<[usize; 2]>,
    pub z: Option<Vec<f64>>,
    pub pair_seq: Option<String>,
    pub pair_seq_y: Option<String>,
    pub branch: Option<String>,
    pub point: Option<Vec<f64>>,
    pub probes: Option<RawProbes>,
    pub samples: Option<usize>,
    pub expect: Option<String>,
    pub expect_value: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    pub schema_version: u32,
    #[serde(default)]
    pub seed: u64,
    pub tolerance: Option<RawTolerance>,
    #[serde(default)]
    pub spaces: BTreeMap<String, RawSpace>,
    #[serde(default)]
    pub metrics: BTreeMap<String, RawMetric>,
    #[serde(default)]
    pub delta_spaces: BTreeMap<String, RawDeltaSpace>,
    #[serde(default)]
    pub subsets: BTreeMap<String, RawSubset>,
    #[serde(default)]
    pub pairs: BTreeMap<String, RawPair>,
    #[serde(default)]
    pub elements: BTreeMap<String, Vec<f64>>,
    #[serde(default)]
    pub witnesses: BTreeMap<String, RawWitness>,
    #[serde(default)]
    pub pair_sequences: BTreeMap<String, RawPairSequence>,
    #[serde(default)]
    pub checks: Vec<RawCheck>,
}

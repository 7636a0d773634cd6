//! Suite parameters and size guards.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use yangian::scalar::parse_scalar;

/// Optional bounds shared by all suites; each suite reads the ones it uses
/// and fills its own defaults for the rest.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub legs: Option<usize>,
    /// Comma-separated rationals; `;` separates point sets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Bounds {
    /// Fills every unset field from `defaults`.
    pub fn or(&self, defaults: &Bounds) -> Bounds {
        Bounds {
            order: self.order.or(defaults.order),
            r_max: self.r_max.or(defaults.r_max),
            s_max: self.s_max.or(defaults.s_max),
            legs: self.legs.or(defaults.legs),
            points: self.points.clone().or_else(|| defaults.points.clone()),
            seed: self.seed.or(defaults.seed),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub m: usize,
    pub n: usize,
    #[serde(flatten)]
    pub bounds: Bounds,
}

impl Params {
    pub fn new(m: usize, n: usize) -> Self {
        Self { m, n, bounds: Bounds::default() }
    }

    pub fn with(m: usize, n: usize, bounds: Bounds) -> Self {
        Self { m, n, bounds }
    }

    pub fn dims_label(&self) -> String {
        format!("({},{})", self.m, self.n)
    }
}

/// Explicit size limits. Abstract-algebra suites need `M + N <= abstract_max`;
/// suites working in `M + N + 2` tensor legs need `M + N <= tensor_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Guards {
    #[serde(default = "default_abstract_max")]
    pub abstract_max: usize,
    #[serde(default = "default_tensor_max")]
    pub tensor_max: usize,
}

fn default_abstract_max() -> usize {
    4
}

fn default_tensor_max() -> usize {
    3
}

impl Default for Guards {
    fn default() -> Self {
        Self { abstract_max: default_abstract_max(), tensor_max: default_tensor_max() }
    }
}

/// Parses `"0,1,5;2"` into point sets.
pub fn parse_point_sets(text: &str) -> Result<Vec<Vec<BigRational>>, String> {
    text.split(';')
        .map(|set| {
            set.split(',')
                .map(|p| parse_scalar(p.trim()).ok_or_else(|| format!("bad rational `{}` in points", p.trim())))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect()
}

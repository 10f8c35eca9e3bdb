//! Serialized form of a surface fixture.

use serde::{Deserialize, Serialize};

/// A coordinate in a fixture document: either a JSON integer or a string
/// such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    pub fn as_text(&self) -> String {
        match self {
            ScalarText::Int(v) => v.to_string(),
            ScalarText::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleCurveDocument {
    #[serde(default)]
    pub generators: Vec<String>,
    #[serde(default)]
    pub samples: Vec<Vec<ScalarText>>,
    /// Each component as four polynomials in `t`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parametrizations: Vec<Vec<String>>,
}

impl DoubleCurveDocument {
    pub fn is_empty(&self) -> bool {
        self.generators.is_empty() && self.samples.is_empty() && self.parametrizations.is_empty()
    }
}

/// Externally known values a fixture is checked against.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_an: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_a: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_g: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<i64>,
    /// Topological Euler characteristic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<i64>,
    /// Sectional genus.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDocument {
    #[serde(default)]
    pub name: String,
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(rename = "F")]
    pub equation: String,
    #[serde(default, skip_serializing_if = "DoubleCurveDocument::is_empty")]
    pub double_curve: DoubleCurveDocument,
    pub ordinary: bool,
    #[serde(default)]
    pub generic_coordinates: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple_points: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
    /// Reason why computed values may legitimately differ from `expected`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub waiver: Option<String>,
}

fn default_field() -> String {
    "rationals".to_string()
}

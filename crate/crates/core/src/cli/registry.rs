use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::delpezzo::SurfaceKind;
use crate::error::{Error, Result};
use crate::idealops::IdealJson;

/// The registry shipped with the crate.
pub const BUILTIN_REGISTRY: &str = include_str!("../../data/cases.json");

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// A published number, reproduced as stated.
    Published,
    /// Computed by an independent formula or oracle.
    Derived,
    /// Immediate from the construction.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub value: Value,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Center {
    #[default]
    Generic,
    /// A general point on a plane spanned by three surface points.
    TrisecantPlane,
}

/// A surface together with the projections applied to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSource {
    pub surface: SurfaceKind,
    #[serde(default)]
    pub projections: usize,
    #[serde(default)]
    pub center: Center,
}

impl SurfaceSource {
    pub fn label(&self) -> String {
        match (self.center, self.projections) {
            (Center::TrisecantPlane, _) => format!("{} from a trisecant-plane point", self.surface.name()),
            (_, 0) => self.surface.name().to_string(),
            (_, k) => format!("{} projected {k}x", self.surface.name()),
        }
    }
}

/// Input of an operation: a named construction or an explicit ideal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source {
    Surface(SurfaceSource),
    Ideal(IdealJson),
}

impl Source {
    pub fn label(&self) -> String {
        match self {
            Source::Surface(s) => s.label(),
            Source::Ideal(j) => format!("ideal in {} variables", j.ring.vars.len()),
        }
    }
}

impl From<SurfaceSource> for Source {
    fn from(s: SurfaceSource) -> Self {
        Source::Surface(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Operation {
    Census {
        source: Source,
    },
    Betti {
        source: Source,
        #[serde(default)]
        max_index: Option<usize>,
        #[serde(default)]
        degree_bound: Option<u32>,
    },
    Residual {
        source: Source,
        degree: u32,
    },
    Nodes {
        source: Source,
        multidegree: Vec<u32>,
    },
    SmoothCi {
        source: Source,
        multidegree: Vec<u32>,
    },
    /// `dim I(degree)`.
    GradedDimension {
        source: Source,
        degree: u32,
    },
    /// The saturation of the generators of degree at most `cut_degree`.
    CutSaturation {
        source: Source,
        cut_degree: u32,
        degree: u32,
    },
    Link {
        source: Source,
        ci_degrees: Vec<u32>,
        degree: u32,
    },
    Table1Row {
        row: u32,
    },
    CiChern {
        ambient: usize,
        degrees: Vec<u32>,
    },
    Porteous {
        ambient: usize,
        degrees: Vec<u32>,
        del_pezzo_degree: i64,
    },
}

impl Operation {
    /// Whether the outcome depends on the seed.
    pub fn is_seeded(&self) -> bool {
        !matches!(self, Operation::Table1Row { .. } | Operation::CiChern { .. } | Operation::Porteous { .. })
    }

    /// The input ideal, for operations that take one.
    pub fn source(&self) -> Option<&Source> {
        match self {
            Operation::Census { source }
            | Operation::Betti { source, .. }
            | Operation::Residual { source, .. }
            | Operation::Nodes { source, .. }
            | Operation::SmoothCi { source, .. }
            | Operation::GradedDimension { source, .. }
            | Operation::CutSaturation { source, .. }
            | Operation::Link { source, .. } => Some(source),
            Operation::Table1Row { .. } | Operation::CiChern { .. } | Operation::Porteous { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSpec {
    pub id: String,
    pub suites: Vec<String>,
    /// What the case checks, in words.
    pub anchor: String,
    pub run: Operation,
    pub expected: BTreeMap<String, Expected>,
}

impl CaseSpec {
    pub fn matches(&self, filter: &str) -> bool {
        filter.is_empty() || self.suites.iter().any(|s| s == filter) || self.id == filter
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Registry {
    cases: Vec<CaseSpec>,
}

#[derive(Deserialize)]
struct RawRegistry {
    cases: Vec<Value>,
}

fn registry_error(msg: impl Into<String>) -> Error {
    Error::Registry(msg.into())
}

fn check_tags(case: &Value) -> Result<()> {
    let id = case.get("id").and_then(Value::as_str).unwrap_or("<no id>");
    let expected = case
        .get("expected")
        .and_then(Value::as_object)
        .ok_or_else(|| registry_error(format!("case `{id}` has no expected values")))?;
    for (key, v) in expected {
        if v.get("provenance").is_none() {
            return Err(registry_error(format!("expected value `{key}` of case `{id}` has no provenance tag")));
        }
    }
    Ok(())
}

impl Registry {
    pub fn parse(text: &str) -> Result<Registry> {
        let raw: RawRegistry = serde_json::from_str(text).map_err(|e| registry_error(e.to_string()))?;
        let mut cases = Vec::with_capacity(raw.cases.len());
        let mut seen = BTreeSet::new();
        for v in raw.cases {
            check_tags(&v)?;
            let case: CaseSpec = serde_json::from_value(v).map_err(|e| registry_error(e.to_string()))?;
            if case.expected.is_empty() {
                return Err(registry_error(format!("case `{}` has no expected values", case.id)));
            }
            if !seen.insert(case.id.clone()) {
                return Err(registry_error(format!("duplicate case id `{}`", case.id)));
            }
            cases.push(case);
        }
        Ok(Registry { cases })
    }

    pub fn builtin() -> Result<Registry> {
        Self::parse(BUILTIN_REGISTRY)
    }

    pub fn load(path: &std::path::Path) -> Result<Registry> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn cases(&self) -> &[CaseSpec] {
        &self.cases
    }

    pub fn get(&self, id: &str) -> Result<&CaseSpec> {
        self.cases.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCase(id.to_string()))
    }

    pub fn filter<'a>(&'a self, filter: &'a str) -> impl Iterator<Item = &'a CaseSpec> + 'a {
        self.cases.iter().filter(move |c| c.matches(filter))
    }

    /// All suite names, sorted.
    pub fn suites(&self) -> BTreeSet<&str> {
        self.cases.iter().flat_map(|c| c.suites.iter().map(String::as_str)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_registry_parses() {
        let r = Registry::builtin().unwrap();
        assert!(r.cases().len() > 30);
        assert!(r.get("census-F1-projected").is_ok());
        assert!(matches!(r.get("nosuchcase"), Err(Error::UnknownCase(_))));
        for s in ["census", "betti", "residual", "nodes", "graded", "table1"] {
            assert!(r.suites().contains(s), "missing suite {s}");
        }
    }

    #[test]
    fn untagged_value_is_refused() {
        let text = r#"{"cases":[{"id":"a","suites":["x"],"anchor":"","run":{"op":"table1_row","row":1},
            "expected":{"h3":{"value":14}}}]}"#;
        let err = Registry::parse(text).unwrap_err().to_string();
        assert!(err.contains("no provenance tag"), "{err}");
    }

    #[test]
    fn unknown_tag_is_refused() {
        let text = r#"{"cases":[{"id":"a","suites":["x"],"anchor":"","run":{"op":"table1_row","row":1},
            "expected":{"h3":{"value":14,"provenance":"folklore"}}}]}"#;
        assert!(Registry::parse(text).is_err());
    }

    #[test]
    fn duplicate_ids_are_refused() {
        let case = r#"{"id":"a","suites":["x"],"anchor":"","run":{"op":"table1_row","row":1},
            "expected":{"h3":{"value":14,"provenance":"published"}}}"#;
        let text = format!(r#"{{"cases":[{case},{case}]}}"#);
        assert!(Registry::parse(&text).unwrap_err().to_string().contains("duplicate"));
    }
}

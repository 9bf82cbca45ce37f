//! JSON documents for relations, topologies, realizers, utilities and
//! probe runs.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::embedding::{HasseDiagram, MultiUtility, Semantics};
use crate::error::{Error, Result};
use crate::pareto::{SampledColumn, Violation};
use crate::realizer::{LinearOrder, Realizer};
use crate::relation::{GroundSet, Relation};
use crate::semiorder::Grid;
use crate::topology::FiniteTopology;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    /// Pairs of `P`, "at least as good as".
    Weak,
    /// Pairs of `Q`, "strictly better than".
    Strict,
}

/// `{"elements": [...], "pairs": [[x, y], ...], "kind": "weak" | "strict"}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub elements: Vec<String>,
    pub pairs: Vec<(String, String)>,
    pub kind: RelationKind,
}

/// Both forms of a loaded relation over one ground set.
#[derive(Clone, Debug)]
pub struct Preference {
    pub weak: Relation,
    pub strict: Relation,
}

impl Preference {
    pub fn ground(&self) -> &Arc<GroundSet> {
        self.weak.ground()
    }
}

impl RelationDoc {
    pub fn parse(text: &str) -> Result<RelationDoc> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(&self) -> Result<Preference> {
        let ground = GroundSet::new(self.elements.iter().cloned()).map_err(|e| match e {
            Error::EmptyGroundSet | Error::TooManyElements(_) | Error::DuplicateLabel(_) => {
                Error::Invalid {
                    field: "elements".into(),
                    message: e.to_string(),
                }
            }
            other => other,
        })?;
        let mut r = Relation::empty(&ground);
        for (k, (x, y)) in self.pairs.iter().enumerate() {
            let index = |label: &String| {
                ground.index_of(label).ok_or_else(|| Error::UnknownElement {
                    field: format!("pairs[{k}]"),
                    label: label.clone(),
                })
            };
            r.insert(index(x)?, index(y)?);
        }
        Ok(match self.kind {
            RelationKind::Weak => Preference {
                strict: r.polar(),
                weak: r,
            },
            RelationKind::Strict => Preference {
                weak: r.polar(),
                strict: r,
            },
        })
    }

    pub fn from_relation(r: &Relation, kind: RelationKind) -> RelationDoc {
        RelationDoc {
            elements: r.ground().labels().to_vec(),
            pairs: r.labelled_pairs(),
            kind,
        }
    }
}

/// `{"opens_generators": [["a"], ["a", "b"]]}`; no generators field means discrete.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TopologyDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens_generators: Option<Vec<Vec<String>>>,
}

impl TopologyDoc {
    pub fn parse(text: &str) -> Result<TopologyDoc> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self, ground: &Arc<GroundSet>) -> Result<FiniteTopology> {
        match &self.opens_generators {
            None => Ok(FiniteTopology::discrete(ground)),
            Some(generators) => FiniteTopology::from_labelled_generators(ground, generators),
        }
    }
}

/// `{"orders": [["a", "b", "c"], ...]}`, highest-ranked first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizerDoc {
    pub orders: Vec<Vec<String>>,
}

impl RealizerDoc {
    pub fn from_realizer(r: &Realizer) -> RealizerDoc {
        RealizerDoc {
            orders: r.orders.iter().map(LinearOrder::labels).collect(),
        }
    }

    pub fn to_realizer(&self, target: &Relation) -> Result<Realizer> {
        let orders = self
            .orders
            .iter()
            .map(|o| LinearOrder::from_labels(target.ground(), o))
            .collect::<Result<_>>()?;
        Ok(Realizer {
            target: target.clone(),
            orders,
        })
    }
}

/// `{"semantics": "existential", "columns": {"v0": {"a": 1.0, ...}, ...}}`
pub fn multi_utility_to_json(v: &MultiUtility) -> Value {
    let ground = v.ground();
    let mut columns = Map::new();
    for (j, column) in v.columns().iter().enumerate() {
        let values: Map<String, Value> = column
            .iter()
            .enumerate()
            .map(|(x, &value)| (ground.label(x).to_owned(), json!(value)))
            .collect();
        columns.insert(format!("v{j}"), Value::Object(values));
    }
    json!({
        "semantics": v.semantics(),
        "columns": columns,
    })
}

pub fn multi_utility_from_json(value: &Value, ground: &Arc<GroundSet>) -> Result<MultiUtility> {
    let invalid = |field: &str, message: &str| Error::Invalid {
        field: field.into(),
        message: message.into(),
    };
    let semantics = match value.get("semantics").and_then(Value::as_str) {
        Some("existential") => Semantics::Existential,
        Some("pareto") => Semantics::Pareto,
        _ => {
            return Err(invalid(
                "semantics",
                "expected \"existential\" or \"pareto\"",
            ))
        }
    };
    let columns = value
        .get("columns")
        .and_then(Value::as_object)
        .ok_or_else(|| invalid("columns", "expected an object of columns"))?;
    let mut table = Vec::with_capacity(columns.len());
    for (name, column) in columns {
        let field = format!("columns.{name}");
        let column = column
            .as_object()
            .ok_or_else(|| invalid(&field, "expected an object of values"))?;
        let mut values = vec![None; ground.len()];
        for (label, value) in column {
            let x = ground
                .index_of(label)
                .ok_or_else(|| Error::UnknownElement {
                    field: field.clone(),
                    label: label.clone(),
                })?;
            values[x] = Some(
                value
                    .as_f64()
                    .ok_or_else(|| invalid(&field, "values must be numbers"))?,
            );
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(x, v)| {
                v.ok_or_else(|| invalid(&field, &format!("missing `{}`", ground.label(x))))
            })
            .collect::<Result<Vec<f64>>>()?;
        table.push(values);
    }
    MultiUtility::new(ground, table, semantics)
}

/// `{"points": {"a": [s, d], ...}, "edges": [["a", "c"], ...]}`
pub fn hasse_to_json(h: &HasseDiagram) -> Value {
    let points: Map<String, Value> = h
        .points
        .iter()
        .enumerate()
        .map(|(x, &(s, d))| (h.ground.label(x).to_owned(), json!([s, d])))
        .collect();
    let edges: Vec<Value> = h
        .edges
        .iter()
        .map(|&(x, y)| json!([h.ground.label(x), h.ground.label(y)]))
        .collect();
    json!({ "points": points, "edges": edges })
}

/// Input of a continuous Pareto probe run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeDoc {
    pub epsilon: f64,
    pub grid: Grid,
    pub family: Vec<SampledColumn>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeOutcome {
    pub violation: Option<Violation>,
}

//! Instance and witness files.
//!
//! Rationals are always string literals (`"p/q"` or `"p"`), vectors are
//! arrays of such strings.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use qcm_core::{Direction, Embedding, OrderedSpace, PointId, PolyhedralCone, QcmInstance, Rational, Vector, WitnessTable};
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::failure::Failure;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    /// Required for table metrics; the generated metrics live on the
    /// orthant of Q² and accept only that space here.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceSpec>,
    pub points: Vec<PointSpec>,
    pub metric: MetricSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub queries: Option<QuerySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<(PointId, Vector)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub dimension: usize,
    pub rows: Vec<Vector>,
    /// Strict interior point, for cones where the built-in search fails.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interior: Option<Vector>,
}

impl SpaceSpec {
    pub fn orthant(dimension: usize) -> Self {
        SpaceSpec { dimension, rows: (0..dimension).map(|i| Vector::unit(dimension, i)).collect(), interior: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Label(PointId),
    Located { label: PointId, coordinate: Rational },
}

impl PointSpec {
    pub fn label(&self) -> &PointId {
        match self {
            PointSpec::Label(l) | PointSpec::Located { label: l, .. } => l,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MetricSpec {
    Table { entries: Vec<(PointId, PointId, Vector)> },
    Example3,
    Example4 { alpha: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuerySpec {
    /// Query points; empty means every ground-set point.
    #[serde(default)]
    pub points: Vec<PointId>,
    pub candidates: Vec<PointId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Direction>,
}

/// A parsed and validated instance file.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub instance: QcmInstance,
    pub queries: Option<QuerySpec>,
    pub embedding: Option<Embedding>,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

pub fn load_instance(path: &Path) -> Result<Loaded, Failure> {
    let file: InstanceFile = read_json(path)?;
    file.build().map_err(|f| f.context(&path.display().to_string()))
}

impl InstanceFile {
    pub fn build(self) -> Result<Loaded, Failure> {
        let labels: Vec<PointId> = self.points.iter().map(|p| p.label().clone()).collect();
        let space = match &self.space {
            Some(spec) => Some(build_space(spec)?),
            None => None,
        };
        let instance = match self.metric {
            MetricSpec::Table { entries } => {
                let space = space.ok_or_else(|| Failure::Semantic("field `space`: required for table metrics".into()))?;
                QcmInstance::from_table(space, labels, entries).map_err(|e| Failure::from(e).context("field `metric`"))?
            }
            MetricSpec::Example3 => {
                check_generated_space(space.as_ref())?;
                QcmInstance::build_example3(&located(&self.points)?).map_err(|e| Failure::from(e).context("field `metric`"))?
            }
            MetricSpec::Example4 { alpha } => {
                check_generated_space(space.as_ref())?;
                QcmInstance::build_example4(&located(&self.points)?, &alpha)
                    .map_err(|e| Failure::from(e).context("field `metric`"))?
            }
        };
        if let Some(q) = &self.queries {
            for p in q.points.iter().chain(&q.candidates) {
                if !instance.contains(p) {
                    return Err(Failure::Semantic(format!("field `queries`: unknown point `{p}`")));
                }
            }
        }
        let embedding = match self.embedding {
            Some(rows) => {
                let mut map = Embedding::new();
                for (label, v) in rows {
                    if !instance.contains(&label) {
                        return Err(Failure::Semantic(format!("field `embedding`: unknown point `{label}`")));
                    }
                    if map.insert(label.clone(), v).is_some() {
                        return Err(Failure::Semantic(format!("field `embedding`: `{label}` listed twice")));
                    }
                }
                Some(map)
            }
            None => None,
        };
        Ok(Loaded { instance, queries: self.queries, embedding })
    }
}

fn build_space(spec: &SpaceSpec) -> Result<OrderedSpace, Failure> {
    let ctx = |e: qcm_core::Error| Failure::from(e).context("field `space`");
    let mut cone = PolyhedralCone::new(spec.dimension, spec.rows.clone()).map_err(ctx)?;
    if let Some(w) = &spec.interior {
        cone = cone.with_interior_witness(w.clone()).map_err(ctx)?;
    }
    OrderedSpace::new(cone).map_err(ctx)
}

fn check_generated_space(space: Option<&OrderedSpace>) -> Result<(), Failure> {
    match space {
        Some(s) if s.dimension() != 2 || !s.cone().is_orthant() => {
            Err(Failure::Semantic("field `space`: generated metrics take values in the orthant of Q^2".into()))
        }
        _ => Ok(()),
    }
}

fn located(points: &[PointSpec]) -> Result<Vec<(PointId, Rational)>, Failure> {
    points
        .iter()
        .map(|p| match p {
            PointSpec::Located { label, coordinate } => Ok((label.clone(), coordinate.clone())),
            PointSpec::Label(l) => {
                Err(Failure::Semantic(format!("field `points`: `{l}` needs a coordinate for a generated metric")))
            }
        })
        .collect()
}

/// Witness tables as exchanged between `witness --mode emit` and
/// `witness --mode check`. Other top-level fields (the report header written
/// by `emit`) are ignored on reading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub witnesses: Vec<WitnessEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessEntry {
    pub q: PointId,
    pub direction: Direction,
    pub f: Vec<(PointId, Vector)>,
    /// The set the table is claimed to certify.
    pub members: BTreeSet<PointId>,
}

impl WitnessEntry {
    pub fn from_table(table: &WitnessTable, members: BTreeSet<PointId>) -> Self {
        WitnessEntry {
            q: table.q.clone(),
            direction: table.direction,
            f: table.f.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            members,
        }
    }

    pub fn table(&self) -> Result<WitnessTable, Failure> {
        let mut f = std::collections::BTreeMap::new();
        for (label, v) in &self.f {
            if f.insert(label.clone(), v.clone()).is_some() {
                return Err(Failure::Semantic(format!("witness for `{}`: `{label}` listed twice", self.q)));
            }
        }
        Ok(WitnessTable { q: self.q.clone(), direction: self.direction, f })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Loaded, Failure> {
        serde_json::from_str::<InstanceFile>(text).map_err(|e| Failure::Parse(e.to_string()))?.build()
    }

    const TABLE: &str = r#"{
        "space": {"dimension": 1, "rows": [["1"]]},
        "points": ["a", "b"],
        "metric": {"kind": "table", "entries": [
            ["a", "a", ["0"]], ["a", "b", ["1/2"]], ["b", "a", ["2"]], ["b", "b", ["0"]]
        ]},
        "queries": {"points": ["a"], "candidates": ["b"], "direction": "backward"}
    }"#;

    #[test]
    fn table_instance() {
        let l = parse(TABLE).unwrap();
        assert_eq!(l.instance.len(), 2);
        assert_eq!(l.instance.distance(&"b".into(), &"a".into()).unwrap(), &Vector::from_ints(&[2]));
        assert_eq!(l.queries.unwrap().direction, Some(Direction::Backward));
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse(&TABLE.replace("\"1/2\"", "\"1/0\"")).unwrap_err();
        assert_eq!(err.code(), 2);
        assert!(err.to_string().contains("line"), "{err}");
        let err = parse(&TABLE.replace("\"1/2\"", "0.5")).unwrap_err();
        assert_eq!(err.code(), 2);
    }

    #[test]
    fn semantic_errors() {
        let err = parse(&TABLE.replace(r#""candidates": ["b"]"#, r#""candidates": ["z"]"#)).unwrap_err();
        assert_eq!(err.code(), 3);
        assert!(err.to_string().contains("`z`"));
        let missing = TABLE.replace(r#", ["b", "b", ["0"]]"#, "");
        assert_eq!(parse(&missing).unwrap_err().code(), 3);
    }

    #[test]
    fn generated_metric_needs_coordinates() {
        let text = r#"{"points": [{"label": "0", "coordinate": "0"}, "x"], "metric": {"kind": "example3"}}"#;
        assert_eq!(parse(text).unwrap_err().code(), 3);
        let text = r#"{"points": [{"label": "0", "coordinate": "0"}, {"label": "1", "coordinate": "1"}],
                       "metric": {"kind": "example4", "alpha": "1/2"}}"#;
        assert!(parse(text).unwrap().instance.verify_axioms().all_pass());
    }

    #[test]
    fn round_trips() {
        let file: InstanceFile = serde_json::from_str(TABLE).unwrap();
        let back: InstanceFile = serde_json::from_str(&serde_json::to_string(&file).unwrap()).unwrap();
        assert_eq!(file, back);
    }
}

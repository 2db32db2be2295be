//! The JSON file formats.
//!
//! Graph files look like
//!
//! ```json
//! {"vertices":["v1","v2"],"edges":[{"id":"e1","ends":["v1","v2"]}],"b":{"v1":"3/2","v2":"1"}}
//! ```
//!
//! Rationals travel as `"p/q"` or integer strings, never as JSON numbers.  The
//! `b` map may be partial or absent (missing entries are 0).  Parsing preserves
//! declaration order everywhere, and canonical re-serialization of a parsed
//! document is byte-identical, so compact canonical files round-trip exactly.
//! Edge-vector documents are plain objects mapping every edge id to a rational.

use serde::de::{MapAccess, Visitor};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::graph::{BVector, DemandVector, EdgeVector, MultiGraph};
use crate::rat::Rat;
use crate::{EdgeId, VertexId};

/// An id→rational-literal map that keeps its file order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderedRatMap(pub Vec<(String, String)>);

impl Serialize for OrderedRatMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (key, value) in &self.0 {
            map.serialize_entry(key, value)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for OrderedRatMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = OrderedRatMap;

            fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str("a map of rational strings")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut entries = Vec::new();
                while let Some((key, value)) = access.next_entry::<String, String>()? {
                    if entries.iter().any(|(k, _)| k == &key) {
                        return Err(serde::de::Error::custom(format!("duplicate key `{key}`")));
                    }
                    entries.push((key, value));
                }
                Ok(OrderedRatMap(entries))
            }
        }
        deserializer.deserialize_map(V)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeDoc {
    pub id: String,
    pub ends: [String; 2],
}

/// The graph file as written: validation happens in [`GraphDoc::instantiate`].
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<OrderedRatMap>,
}

impl Serialize for GraphDoc {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let fields = 2 + usize::from(self.b.is_some());
        let mut doc = serializer.serialize_struct("GraphDoc", fields)?;
        doc.serialize_field("vertices", &self.vertices)?;
        doc.serialize_field("edges", &self.edges)?;
        if let Some(b) = &self.b {
            doc.serialize_field("b", b)?;
        }
        doc.end()
    }
}

impl GraphDoc {
    pub fn parse(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serialization cannot fail")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }

    /// Validates into a graph plus b (absent entries default to 0).
    pub fn instantiate(&self) -> Result<(MultiGraph, BVector), Error> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| VertexId::from(v.as_str()))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| {
                (
                    EdgeId::from(e.id.as_str()),
                    VertexId::from(e.ends[0].as_str()),
                    VertexId::from(e.ends[1].as_str()),
                )
            })
            .collect();
        let graph = MultiGraph::new(vertices, edges)?;
        let mut pairs = Vec::new();
        if let Some(map) = &self.b {
            for (key, literal) in &map.0 {
                let id = VertexId::from(key.as_str());
                graph.vertex_index(&id)?;
                pairs.push((id, Rat::parse(literal)?));
            }
        }
        let b = BVector::from_pairs(&graph, pairs.iter().map(|(id, r)| (id, r.clone())))?;
        Ok((graph, b))
    }

    /// The canonical document for an instance: every b entry listed, vertex order.
    pub fn canonical(g: &MultiGraph, b: &BVector) -> Self {
        GraphDoc {
            vertices: g.vertex_ids().iter().map(|v| v.0.clone()).collect(),
            edges: (0..g.edge_count())
                .map(|e| {
                    let (u, w) = g.edge_ends(e);
                    EdgeDoc {
                        id: g.edge_id(e).0.clone(),
                        ends: [g.vertex_id(u).0.clone(), g.vertex_id(w).0.clone()],
                    }
                })
                .collect(),
            b: Some(OrderedRatMap(
                g.vertex_ids()
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v.0.clone(), b.get(i).to_string()))
                    .collect(),
            )),
        }
    }
}

pub fn parse_graph_file(text: &str) -> Result<(MultiGraph, BVector), Error> {
    GraphDoc::parse(text)?.instantiate()
}

/// Parses an edge-vector document: an object with exactly one entry per edge.
pub fn parse_edge_vector(g: &MultiGraph, text: &str) -> Result<EdgeVector, Error> {
    let map: OrderedRatMap =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let mut entries = vec![None; g.edge_count()];
    for (key, literal) in &map.0 {
        let e = g.edge_index(&EdgeId::from(key.as_str()))?;
        entries[e] = Some(Rat::parse(literal)?);
    }
    let entries = entries
        .into_iter()
        .enumerate()
        .map(|(e, value)| {
            value.ok_or_else(|| Error::Format(format!("missing entry for edge `{}`", g.edge_id(e))))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EdgeVector::from_entries(g, entries))
}

/// Canonical edge-vector document: every edge, canonical order.
pub fn edge_vector_to_json(g: &MultiGraph, x: &EdgeVector) -> String {
    let map = OrderedRatMap(
        (0..g.edge_count())
            .map(|e| (g.edge_id(e).0.clone(), x.get(e).to_string()))
            .collect(),
    );
    serde_json::to_string(&map).expect("map serialization cannot fail")
}

/// Parses a demand document: an object mapping vertex ids to rationals, partial
/// maps defaulting to 0 (demands may be negative).
pub fn parse_demands(g: &MultiGraph, text: &str) -> Result<DemandVector, Error> {
    let map: OrderedRatMap =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let pairs = map
        .0
        .iter()
        .map(|(key, literal)| Ok((VertexId::from(key.as_str()), Rat::parse(literal)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    DemandVector::from_pairs(g, pairs.iter().map(|(id, r)| (id, r.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const K3_CANONICAL: &str = r#"{"vertices":["v1","v2","v3"],"edges":[{"id":"e1","ends":["v1","v2"]},{"id":"e2","ends":["v1","v3"]},{"id":"e3","ends":["v2","v3"]}],"b":{"v1":"1","v2":"1","v3":"1"}}"#;

    #[test]
    fn canonical_files_round_trip_byte_exactly() {
        let doc = GraphDoc::parse(K3_CANONICAL).unwrap();
        assert_eq!(doc.to_json(), K3_CANONICAL);
        let (g, b) = doc.instantiate().unwrap();
        assert_eq!(GraphDoc::canonical(&g, &b).to_json(), K3_CANONICAL);
    }

    #[test]
    fn partial_b_defaults_to_zero_and_reserializes_as_written() {
        let text =
            r#"{"vertices":["v1","v2"],"edges":[{"id":"e1","ends":["v1","v2"]}],"b":{"v2":"3/2"}}"#;
        let doc = GraphDoc::parse(text).unwrap();
        assert_eq!(doc.to_json(), text);
        let (g, b) = doc.instantiate().unwrap();
        assert!(b
            .get(g.vertex_index(&VertexId::from("v1")).unwrap())
            .is_zero());
        assert_eq!(
            b.get(g.vertex_index(&VertexId::from("v2")).unwrap()),
            &Rat::new(3, 2)
        );
    }

    #[test]
    fn missing_b_means_zero() {
        let text = r#"{"vertices":["v1"],"edges":[]}"#;
        let doc = GraphDoc::parse(text).unwrap();
        assert_eq!(doc.to_json(), text);
        let (_, b) = doc.instantiate().unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn rejects_numbers_negatives_and_unknown_ids() {
        let numeric = r#"{"vertices":["v1"],"edges":[],"b":{"v1":1.5}}"#;
        assert!(matches!(GraphDoc::parse(numeric), Err(Error::Format(_))));
        let negative = r#"{"vertices":["v1"],"edges":[],"b":{"v1":"-1"}}"#;
        assert!(matches!(
            GraphDoc::parse(negative).unwrap().instantiate(),
            Err(Error::NegativeB(_))
        ));
        let unknown = r#"{"vertices":["v1"],"edges":[],"b":{"v9":"1"}}"#;
        assert!(matches!(
            GraphDoc::parse(unknown).unwrap().instantiate(),
            Err(Error::UnknownVertex(_))
        ));
        let dup = r#"{"vertices":["v1"],"edges":[],"b":{"v1":"1","v1":"2"}}"#;
        assert!(matches!(GraphDoc::parse(dup), Err(Error::Format(_))));
    }

    #[test]
    fn edge_vector_documents() {
        let g = fixtures::p3();
        let x = parse_edge_vector(&g, r#"{"e1":"1","e2":"1/2"}"#).unwrap();
        assert_eq!(x.get(1), &Rat::new(1, 2));
        assert_eq!(edge_vector_to_json(&g, &x), r#"{"e1":"1","e2":"1/2"}"#);
        assert!(matches!(
            parse_edge_vector(&g, r#"{"e1":"1"}"#),
            Err(Error::Format(_))
        ));
        assert!(matches!(
            parse_edge_vector(&g, r#"{"e1":"1","e2":"1","e9":"1"}"#),
            Err(Error::UnknownEdge(_))
        ));
    }

    #[test]
    fn demand_documents_allow_negatives_and_partial_maps() {
        let g = fixtures::p3();
        let a = parse_demands(&g, r#"{"v1":"-5"}"#).unwrap();
        assert_eq!(a.get(0), &Rat::from_int(-5));
        assert!(a.get(1).is_zero());
    }
}

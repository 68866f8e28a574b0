//! JSON form of a network.
//!
//! ```json
//! {
//!   "mode": "distinct",
//!   "edges": [{"id": 0, "from": "S1", "to": "A"}, ...],
//!   "groups": [{"source": "S1", "sink": "R1", "paths": [[0, 2]]}, ...],
//!   "starting_subpaths": [[0]]
//! }
//! ```
//!
//! Vertices may be given by name or by position in an optional `vertices`
//! list. Output always names them, lists every vertex, and sorts keys.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Dag, Edge, EdgeId, VertexId};
use crate::network::{MergeNetwork, Mode, PathGroup};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum VertexRef {
    Index(usize),
    Name(String),
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeJson {
    id: EdgeId,
    from: VertexRef,
    to: VertexRef,
}

#[derive(Debug, Serialize, Deserialize)]
struct GroupJson {
    source: VertexRef,
    sink: VertexRef,
    paths: Vec<Vec<EdgeId>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkJson {
    #[serde(default = "distinct")]
    mode: Mode,
    #[serde(default)]
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
    groups: Vec<GroupJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    starting_subpaths: Option<Vec<Vec<EdgeId>>>,
}

fn distinct() -> Mode {
    Mode::Distinct
}

struct Names {
    names: Vec<String>,
    fixed: usize,
}

impl Names {
    fn resolve(&mut self, r: &VertexRef) -> Result<VertexId> {
        match r {
            VertexRef::Index(i) if *i < self.fixed => Ok(*i),
            VertexRef::Index(i) => Err(Error::UnknownVertex(i.to_string())),
            VertexRef::Name(s) => Ok(match self.names.iter().position(|n| n == s) {
                Some(v) => v,
                None => {
                    self.names.push(s.clone());
                    self.names.len() - 1
                }
            }),
        }
    }
}

pub fn from_json(text: &str) -> Result<MergeNetwork> {
    let raw: NetworkJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let fixed = raw.vertices.len();
    let mut names = Names { names: raw.vertices, fixed };
    let mut edges = Vec::with_capacity(raw.edges.len());
    for e in &raw.edges {
        edges.push(Edge { id: e.id, from: names.resolve(&e.from)?, to: names.resolve(&e.to)? });
    }
    let mut groups = Vec::with_capacity(raw.groups.len());
    for g in &raw.groups {
        groups.push(PathGroup { source: names.resolve(&g.source)?, sink: names.resolve(&g.sink)?, paths: g.paths.clone() });
    }
    let dag = Dag::new(names.names, edges)?;
    MergeNetwork::new(dag, groups, raw.mode, raw.starting_subpaths)
}

pub fn to_json_value(net: &MergeNetwork) -> serde_json::Value {
    let dag = net.dag();
    let name = |v: VertexId| VertexRef::Name(dag.name(v).to_string());
    let raw = NetworkJson {
        mode: net.mode(),
        vertices: dag.names().to_vec(),
        edges: dag.edges().iter().map(|e| EdgeJson { id: e.id, from: name(e.from), to: name(e.to) }).collect(),
        groups: net
            .groups()
            .iter()
            .map(|g| GroupJson { source: name(g.source), sink: name(g.sink), paths: g.paths.clone() })
            .collect(),
        starting_subpaths: net.starting_subpaths().map(|s| s.to_vec()),
    };
    // Value maps are ordered, which sorts the keys
    serde_json::to_value(raw).expect("plain data serializes")
}

pub fn to_json(net: &MergeNetwork) -> String {
    serde_json::to_string_pretty(&to_json_value(net)).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::decode;
    use crate::merge::count_mergings;

    #[test]
    fn round_trip() {
        let net = decode(&"2 2 : (1,1) (2,1) (2,2) (1,2) (1,1)".parse().unwrap()).unwrap();
        let text = to_json(&net);
        let back = from_json(&text).unwrap();
        assert_eq!(to_json(&back), text);
        assert_eq!(count_mergings(&back), 5);
    }

    #[test]
    fn numeric_vertices() {
        let text = r#"{"vertices": ["S1", "S2", "A", "B", "R1", "R2"],
            "edges": [{"id": 0, "from": 0, "to": 2}, {"id": 1, "from": 1, "to": 2},
                      {"id": 2, "from": "A", "to": "B"}, {"id": 3, "from": 3, "to": 4}, {"id": 4, "from": 3, "to": 5}],
            "groups": [{"source": 0, "sink": 4, "paths": [[0, 2, 3]]}, {"source": "S2", "sink": "R2", "paths": [[1, 2, 4]]}]}"#;
        let net = from_json(text).unwrap();
        assert_eq!(count_mergings(&net), 1);
        assert!(matches!(from_json(&text.replace("\"to\": 4}", "\"to\": 9}")), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn keys_are_sorted() {
        let net = decode(&"1 1 : (1,1)".parse().unwrap()).unwrap();
        let text = to_json(&net);
        let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
        assert!(pos("edges") < pos("groups") && pos("groups") < pos("mode") && pos("mode") < pos("vertices"));
    }
}

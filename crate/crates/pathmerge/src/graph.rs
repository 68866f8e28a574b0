//! Acyclic directed multigraphs with named vertices and numbered edges.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

pub type EdgeId = u32;
pub type VertexId = usize;

/// A directed edge `from -> to`. Parallel edges are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub from: VertexId,
    pub to: VertexId,
}

/// Edge limit for every graph built by this crate.
///
/// Reads `MERGE_MAX_EDGES` once per process, falling back to 10 000.
pub fn edge_limit() -> usize {
    static LIMIT: std::sync::OnceLock<usize> = std::sync::OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("MERGE_MAX_EDGES")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(10_000)
    })
}

#[derive(Debug, Clone)]
pub struct Dag {
    names: Vec<String>,
    lookup: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    index: HashMap<EdgeId, usize>,
    // adjacency holds indices into `edges`, sorted by edge id
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    topo: Vec<VertexId>,
    rank: Vec<usize>,
}

impl Dag {
    /// Builds a graph, rejecting cycles, duplicate ids and oversized inputs.
    pub fn new(names: Vec<String>, edges: Vec<Edge>) -> Result<Dag> {
        let limit = edge_limit();
        if edges.len() > limit {
            return Err(Error::TooLarge { edges: edges.len(), limit });
        }
        let mut lookup = HashMap::with_capacity(names.len());
        for (v, name) in names.iter().enumerate() {
            if lookup.insert(name.clone(), v).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut index = HashMap::with_capacity(edges.len());
        let mut out_adj = vec![Vec::new(); names.len()];
        let mut in_adj = vec![Vec::new(); names.len()];
        for (k, e) in edges.iter().enumerate() {
            for v in [e.from, e.to] {
                if v >= names.len() {
                    return Err(Error::UnknownVertex(v.to_string()));
                }
            }
            if index.insert(e.id, k).is_some() {
                return Err(Error::DuplicateEdge(e.id));
            }
            out_adj[e.from].push(k);
            in_adj[e.to].push(k);
        }
        for adj in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            adj.sort_by_key(|&k| edges[k].id);
        }
        let topo = kahn(names.len(), &edges, &out_adj, &in_adj)?;
        let mut rank = vec![0; names.len()];
        for (r, &v) in topo.iter().enumerate() {
            rank[v] = r;
        }
        Ok(Dag { names, lookup, edges, index, out_adj, in_adj, topo, rank })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.lookup.get(name).copied()
    }

    pub fn vertex_or_err(&self, name: &str) -> Result<VertexId> {
        self.vertex(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Edges in insertion order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<Edge> {
        self.index.get(&id).map(|&k| self.edges[k])
    }

    pub fn edge_or_err(&self, id: EdgeId) -> Result<Edge> {
        self.edge(id).ok_or(Error::UnknownEdge(id))
    }

    /// Position of an edge in [`Dag::edges`].
    pub fn edge_index(&self, id: EdgeId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    /// Outgoing edges of `v`, by ascending id.
    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = Edge> + '_ {
        self.out_adj[v].iter().map(move |&k| self.edges[k])
    }

    /// Incoming edges of `v`, by ascending id.
    pub fn in_edges(&self, v: VertexId) -> impl Iterator<Item = Edge> + '_ {
        self.in_adj[v].iter().map(move |&k| self.edges[k])
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_adj[v].len()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_adj[v].len()
    }

    /// Topological order, ties broken by the smaller vertex id.
    pub fn topological_order(&self) -> &[VertexId] {
        &self.topo
    }

    /// Position of `v` in [`Dag::topological_order`].
    pub fn rank(&self, v: VertexId) -> usize {
        self.rank[v]
    }

    /// Vertices reachable from `v` by a path of length zero or more.
    pub fn reachable_from(&self, v: VertexId) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(x) = stack.pop() {
            for e in self.out_edges(x) {
                if !seen[e.to] {
                    seen[e.to] = true;
                    stack.push(e.to);
                }
            }
        }
        seen
    }
}

/// Standalone topological sort over a raw edge list, for callers that do not
/// have a [`Dag`] yet.
pub fn topological_order(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Vec<VertexId>> {
    let edges: Vec<Edge> = edges
        .iter()
        .enumerate()
        .map(|(k, &(from, to))| Edge { id: k as EdgeId, from, to })
        .collect();
    let mut out_adj = vec![Vec::new(); vertex_count];
    let mut in_adj = vec![Vec::new(); vertex_count];
    for (k, e) in edges.iter().enumerate() {
        if e.from >= vertex_count || e.to >= vertex_count {
            return Err(Error::UnknownVertex(e.from.max(e.to).to_string()));
        }
        out_adj[e.from].push(k);
        in_adj[e.to].push(k);
    }
    kahn(vertex_count, &edges, &out_adj, &in_adj)
}

fn kahn(n: usize, edges: &[Edge], out_adj: &[Vec<usize>], in_adj: &[Vec<usize>]) -> Result<Vec<VertexId>> {
    let mut indeg: Vec<usize> = in_adj.iter().map(Vec::len).collect();
    let mut ready: BTreeSet<VertexId> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &k in &out_adj[v] {
            let w = edges[k].to;
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert(w);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err(Error::CycleDetected)
    }
}

/// Incremental construction with automatic vertex interning and edge ids.
#[derive(Debug, Clone, Default)]
pub struct DagBuilder {
    names: Vec<String>,
    lookup: HashMap<String, VertexId>,
    edges: Vec<Edge>,
}

impl DagBuilder {
    pub fn new() -> DagBuilder {
        DagBuilder::default()
    }

    /// Returns the id of `name`, creating the vertex on first use.
    pub fn vertex(&mut self, name: &str) -> VertexId {
        if let Some(&v) = self.lookup.get(name) {
            return v;
        }
        let v = self.names.len();
        self.names.push(name.to_string());
        self.lookup.insert(name.to_string(), v);
        v
    }

    /// Adds an edge with the next free id and returns that id.
    pub fn edge(&mut self, from: &str, to: &str) -> EdgeId {
        let (from, to) = (self.vertex(from), self.vertex(to));
        self.edge_between(from, to)
    }

    pub fn edge_between(&mut self, from: VertexId, to: VertexId) -> EdgeId {
        let id = self.edges.len() as EdgeId;
        self.edges.push(Edge { id, from, to });
        id
    }

    pub fn build(self) -> Result<Dag> {
        Dag::new(self.names, self.edges)
    }
}

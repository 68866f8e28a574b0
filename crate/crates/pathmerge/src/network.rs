//! Networks carrying one group of edge-disjoint paths per source/sink pair.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::min_cut;
use crate::graph::{Dag, Edge, EdgeId, VertexId};
use crate::merge::find_mergings;

/// Whether the groups leave from separate sources or from one shared source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Distinct,
    Identical,
}

/// A maximum family of edge-disjoint paths from `source` to `sink`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathGroup {
    pub source: VertexId,
    pub sink: VertexId,
    pub paths: Vec<Vec<EdgeId>>,
}

impl PathGroup {
    pub fn cut(&self) -> usize {
        self.paths.len()
    }
}

/// A path addressed by group and position inside the group.
pub type PathRef = (usize, usize);

#[derive(Debug, Clone)]
pub struct MergeNetwork {
    dag: Dag,
    groups: Vec<PathGroup>,
    mode: Mode,
    starting_subpaths: Option<Vec<Vec<EdgeId>>>,
}

impl MergeNetwork {
    /// Validates paths, disjointness, cuts and the source mode.
    pub fn new(
        dag: Dag,
        groups: Vec<PathGroup>,
        mode: Mode,
        starting_subpaths: Option<Vec<Vec<EdgeId>>>,
    ) -> Result<MergeNetwork> {
        let net = MergeNetwork { dag, groups, mode, starting_subpaths };
        net.validate()?;
        Ok(net)
    }

    /// Skips validation; for constructions that are valid by design.
    pub(crate) fn new_unchecked(
        dag: Dag,
        groups: Vec<PathGroup>,
        mode: Mode,
        starting_subpaths: Option<Vec<Vec<EdgeId>>>,
    ) -> MergeNetwork {
        MergeNetwork { dag, groups, mode, starting_subpaths }
    }

    fn validate(&self) -> Result<()> {
        let bad = |group: usize, reason: String| Error::InvalidGroup { group, reason };
        if self.groups.is_empty() {
            return Err(bad(0, "a network needs at least one group".into()));
        }
        let mut sinks = HashSet::new();
        for (g, grp) in self.groups.iter().enumerate() {
            if grp.source >= self.dag.vertex_count() || grp.sink >= self.dag.vertex_count() {
                return Err(bad(g, "terminal is not a vertex".into()));
            }
            if grp.source == grp.sink {
                return Err(bad(g, "source equals sink".into()));
            }
            if !sinks.insert(grp.sink) {
                return Err(bad(g, "sink shared with another group".into()));
            }
            let mut used = HashSet::new();
            for (i, path) in grp.paths.iter().enumerate() {
                self.check_walk(path, grp.source, grp.sink).map_err(|r| bad(g, format!("path {i}: {r}")))?;
                for &e in path {
                    if !used.insert(e) {
                        return Err(bad(g, format!("edge {e} used twice")));
                    }
                }
            }
            let cut = min_cut(&self.dag, grp.source, grp.sink)?;
            if cut != grp.paths.len() {
                return Err(bad(g, format!("{} paths but the min-cut is {cut}", grp.paths.len())));
            }
        }
        let sources: HashSet<_> = self.groups.iter().map(|g| g.source).collect();
        match self.mode {
            Mode::Distinct if sources.len() != self.groups.len() => {
                return Err(bad(0, "sources must be distinct".into()));
            }
            Mode::Identical if sources.len() != 1 => {
                return Err(bad(0, "sources must coincide".into()));
            }
            _ => {}
        }
        if let Some(starts) = &self.starting_subpaths {
            if self.mode != Mode::Identical || self.groups.len() < 2 {
                return Err(bad(0, "starting subpaths need a shared source and two groups".into()));
            }
            for (i, w) in starts.iter().enumerate() {
                let holds = |g: usize| self.groups[g].paths.get(i).is_some_and(|p| !w.is_empty() && p.starts_with(w));
                if !(holds(0) && holds(1)) {
                    return Err(bad(1, format!("starting subpath {i} is not a shared prefix")));
                }
            }
        }
        Ok(())
    }

    fn check_walk(&self, path: &[EdgeId], source: VertexId, sink: VertexId) -> std::result::Result<(), String> {
        let mut at = source;
        if path.is_empty() {
            return Err("empty".into());
        }
        for &id in path {
            let e = self.dag.edge(id).ok_or_else(|| format!("unknown edge {id}"))?;
            if e.from != at {
                return Err(format!("edge {id} does not continue the walk"));
            }
            at = e.to;
        }
        if at != sink {
            return Err("does not end at the sink".into());
        }
        Ok(())
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn groups(&self) -> &[PathGroup] {
        &self.groups
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn starting_subpaths(&self) -> Option<&[Vec<EdgeId>]> {
        self.starting_subpaths.as_deref()
    }

    pub fn cuts(&self) -> Vec<usize> {
        self.groups.iter().map(PathGroup::cut).collect()
    }

    pub fn path(&self, (g, i): PathRef) -> &[EdgeId] {
        &self.groups[g].paths[i]
    }

    /// All paths with their addresses, group by group.
    pub fn paths(&self) -> impl Iterator<Item = (PathRef, &[EdgeId])> {
        self.groups
            .iter()
            .enumerate()
            .flat_map(|(g, grp)| grp.paths.iter().enumerate().map(move |(i, p)| ((g, i), p.as_slice())))
    }

    /// The same graph carrying different path groups.
    pub fn with_groups(&self, groups: Vec<PathGroup>) -> MergeNetwork {
        MergeNetwork { dag: self.dag.clone(), groups, mode: self.mode, starting_subpaths: None }
    }

    /// Swaps the first two groups, along with their roles.
    pub fn swap_groups(&self) -> MergeNetwork {
        let mut groups = self.groups.clone();
        groups.swap(0, 1);
        MergeNetwork { dag: self.dag.clone(), groups, mode: self.mode, starting_subpaths: self.starting_subpaths.clone() }
    }

    /// Every edge lies on some group path.
    pub fn is_covered(&self) -> bool {
        self.first_uncovered().is_none()
    }

    fn first_uncovered(&self) -> Option<EdgeId> {
        let on: HashSet<EdgeId> = self.paths().flat_map(|(_, p)| p.iter().copied()).collect();
        let mut ids: Vec<EdgeId> = self.dag.edges().iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids.into_iter().find(|id| !on.contains(id))
    }

    /// Splices out every vertex with one in-edge and one out-edge that is
    /// neither a terminal nor an endpoint of a merging or starting subpath.
    ///
    /// The spliced edge keeps the id of the incoming edge.
    pub fn reduce(&self) -> Result<MergeNetwork> {
        if let Some(e) = self.first_uncovered() {
            return Err(Error::NotCovered(e));
        }
        let mut keep = vec![false; self.dag.vertex_count()];
        for g in &self.groups {
            keep[g.source] = true;
            keep[g.sink] = true;
        }
        for m in find_mergings(self) {
            keep[m.head] = true;
            keep[m.tail] = true;
        }
        for w in self.starting_subpaths.iter().flatten() {
            if let Some(&last) = w.last() {
                keep[self.dag.edge(last).unwrap().to] = true;
            }
        }

        // follow each kept chain start through contractible vertices
        let contractible = |v: VertexId| !keep[v] && self.dag.in_degree(v) == 1 && self.dag.out_degree(v) == 1;
        let mut absorbed: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
        let mut edges: Vec<Edge> = Vec::new();
        for e in self.dag.edges() {
            if contractible(e.from) {
                continue;
            }
            let mut to = e.to;
            while contractible(to) {
                let next = self.dag.out_edges(to).next().unwrap();
                absorbed.insert(next.id, e.id);
                to = next.to;
            }
            edges.push(Edge { id: e.id, from: e.from, to });
        }
        let alive: Vec<VertexId> =
            (0..self.dag.vertex_count()).filter(|&v| !contractible(v)).collect();
        let mut new_id = vec![usize::MAX; self.dag.vertex_count()];
        for (k, &v) in alive.iter().enumerate() {
            new_id[v] = k;
        }
        let names = alive.iter().map(|&v| self.dag.name(v).to_string()).collect();
        let edges = edges
            .into_iter()
            .map(|e| Edge { id: e.id, from: new_id[e.from], to: new_id[e.to] })
            .collect();
        let dag = Dag::new(names, edges)?;
        let strip = |p: &Vec<EdgeId>| -> Vec<EdgeId> { p.iter().copied().filter(|e| !absorbed.contains_key(e)).collect() };
        let groups = self
            .groups
            .iter()
            .map(|g| PathGroup { source: new_id[g.source], sink: new_id[g.sink], paths: g.paths.iter().map(strip).collect() })
            .collect();
        let starts = self.starting_subpaths.as_ref().map(|s| s.iter().map(strip).collect());
        Ok(MergeNetwork::new_unchecked(dag, groups, self.mode, starts))
    }

    /// Re-runs every structural check; constructions use this in tests.
    pub fn check(&self) -> Result<()> {
        self.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DagBuilder;

    fn line() -> MergeNetwork {
        let mut b = DagBuilder::new();
        let e0 = b.edge("s", "x");
        let e1 = b.edge("x", "t");
        let s = b.vertex("s");
        let t = b.vertex("t");
        let dag = b.build().unwrap();
        MergeNetwork::new(dag, vec![PathGroup { source: s, sink: t, paths: vec![vec![e0, e1]] }], Mode::Distinct, None)
            .unwrap()
    }

    #[test]
    fn subdivided_line_reduces_to_one_edge() {
        let net = line().reduce().unwrap();
        assert_eq!(net.dag().edge_count(), 1);
        assert_eq!(net.groups()[0].paths, vec![vec![0]]);
        net.check().unwrap();
    }

    #[test]
    fn wrong_cut_rejected() {
        let mut b = DagBuilder::new();
        let e0 = b.edge("s", "t");
        b.edge("s", "t");
        let dag = b.build().unwrap();
        let err = MergeNetwork::new(dag, vec![PathGroup { source: 0, sink: 1, paths: vec![vec![e0]] }], Mode::Distinct, None)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidGroup { .. }));
    }

    #[test]
    fn dangling_edge_is_uncovered() {
        let net = line();
        let mut b = DagBuilder::new();
        for e in net.dag().edges() {
            b.edge(net.dag().name(e.from), net.dag().name(e.to));
        }
        b.edge("x", "y");
        let dag = b.build().unwrap();
        let net = MergeNetwork::new(dag, net.groups().to_vec(), Mode::Distinct, None).unwrap();
        assert!(!net.is_covered());
        assert_eq!(net.reduce().unwrap_err(), Error::NotCovered(2));
    }
}

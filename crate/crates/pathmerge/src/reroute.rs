//! Reroutability: can some group be replaced by a different maximum path set?
//!
//! Three independent routes are provided. [`is_reroutable`] uses semi-reach
//! between merging endpoints, [`residual_reroutable`] looks for a cycle in
//! the residual graph of one group, and [`brute_force_reroutable`] enumerates
//! path sets outright.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::all_menger_path_sets;
use crate::graph::{EdgeId, VertexId};
use crate::merge::{count_mergings, find_mergings};
use crate::network::{MergeNetwork, PathGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Head,
    Tail,
}

/// An endpoint of a merging: its index in [`find_mergings`] order and which end.
pub type Endpoint = (usize, End);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiReach {
    /// The group whose edges keep their direction.
    pub kept_group: usize,
    /// `(a, b)` when `b` is reachable from `a` by a nonempty path.
    pub relation: BTreeSet<(Endpoint, Endpoint)>,
}

impl SemiReach {
    pub fn reaches(&self, a: Endpoint, b: Endpoint) -> bool {
        self.relation.contains(&(a, b))
    }
}

/// Adjacency of the graph in which every edge off group `kept` points backwards.
fn reversed_except(net: &MergeNetwork, kept: usize) -> Vec<Vec<VertexId>> {
    let dag = net.dag();
    let mut on_kept = vec![false; dag.edge_count()];
    for path in &net.groups()[kept].paths {
        for &e in path {
            on_kept[dag.edge_index(e).unwrap()] = true;
        }
    }
    let mut adj = vec![Vec::new(); dag.vertex_count()];
    for (k, e) in dag.edges().iter().enumerate() {
        if on_kept[k] {
            adj[e.from].push(e.to);
        } else {
            adj[e.to].push(e.from);
        }
    }
    adj
}

/// Vertices reachable from `x` through at least one edge.
fn reach_nonempty(adj: &[Vec<VertexId>], x: VertexId) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack: Vec<VertexId> = adj[x].clone();
    while let Some(y) = stack.pop() {
        if !seen[y] {
            seen[y] = true;
            stack.extend(adj[y].iter().copied());
        }
    }
    seen
}

/// Reachability between merging endpoints after reversing every edge that
/// group `kept` does not use.
///
/// With two groups these are exactly the edges used only by the other
/// group, so `semi_reach(net, 0)` is semi-reach against the second group.
pub fn semi_reach(net: &MergeNetwork, kept: usize) -> SemiReach {
    let adj = reversed_except(net, kept);
    let mergings = find_mergings(net);
    let endpoints: Vec<(Endpoint, VertexId)> = mergings
        .iter()
        .enumerate()
        .flat_map(|(k, m)| [((k, End::Head), m.head), ((k, End::Tail), m.tail)])
        .collect();
    let mut relation = BTreeSet::new();
    for &(a, va) in &endpoints {
        let seen = reach_nonempty(&adj, va);
        for &(b, vb) in &endpoints {
            if seen[vb] {
                relation.insert((a, b));
            }
        }
    }
    SemiReach { kept_group: kept, relation }
}

/// True when some merging head semi-reaches itself for some kept group.
pub fn is_reroutable(net: &MergeNetwork) -> bool {
    let heads: BTreeSet<VertexId> = find_mergings(net).iter().map(|m| m.head).collect();
    (0..net.groups().len()).any(|g| {
        let adj = reversed_except(net, g);
        heads.iter().any(|&h| reach_nonempty(&adj, h)[h])
    })
}

/// Exact test by residual graphs.
///
/// A group has a second path set iff its residual graph (own edges reversed,
/// all other edges forward) has a directed cycle, or two of its paths pass
/// through a common inner vertex and can exchange their tails.
pub fn residual_reroutable(net: &MergeNetwork) -> bool {
    (0..net.groups().len()).any(|g| group_residual_reroutable(net, g))
}

pub(crate) fn group_residual_reroutable(net: &MergeNetwork, g: usize) -> bool {
    let dag = net.dag();
    let grp = &net.groups()[g];
    let mut seen_inner = HashSet::new();
    for path in &grp.paths {
        let mut mine = HashSet::new();
        for &e in &path[..path.len() - 1] {
            let v = dag.edge(e).unwrap().to;
            if mine.insert(v) && !seen_inner.insert(v) {
                return true;
            }
        }
    }
    let mut used = vec![false; dag.edge_count()];
    for path in &grp.paths {
        for &e in path {
            used[dag.edge_index(e).unwrap()] = true;
        }
    }
    let n = dag.vertex_count();
    let mut adj = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for (k, e) in dag.edges().iter().enumerate() {
        let (a, b) = if used[k] { (e.to, e.from) } else { (e.from, e.to) };
        adj[a].push(b);
        indeg[b] += 1;
    }
    let mut stack: Vec<VertexId> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = stack.pop() {
        removed += 1;
        for &w in &adj[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    removed < n
}

/// True when some group admits two distinct maximum path sets, found by enumeration.
pub fn brute_force_reroutable(net: &MergeNetwork) -> Result<bool> {
    for grp in net.groups() {
        let sets = all_menger_path_sets(net.dag(), grp.source, grp.sink, 2)?;
        if sets.sets.len() >= 2 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimum {
    pub value: usize,
    /// One path family per group attaining the minimum.
    pub paths: Vec<Vec<Vec<EdgeId>>>,
}

/// Fewest mergings over all choices of maximum path sets, one per group.
///
/// `budget` caps both the sets per group and the number of combinations.
pub fn minimize_mergings(net: &MergeNetwork, budget: usize) -> Result<Minimum> {
    let mut choices = Vec::new();
    let mut combos: usize = 1;
    for grp in net.groups() {
        let e = all_menger_path_sets(net.dag(), grp.source, grp.sink, budget)?;
        if !e.complete {
            return Err(Error::BudgetExceeded(budget));
        }
        combos = combos.saturating_mul(e.sets.len());
        if combos > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        choices.push(e.sets);
    }
    let mut best: Option<Minimum> = None;
    let mut pick = vec![0usize; choices.len()];
    loop {
        let groups: Vec<PathGroup> = net
            .groups()
            .iter()
            .zip(&pick)
            .zip(&choices)
            .map(|((g, &k), sets)| PathGroup { source: g.source, sink: g.sink, paths: sets[k].clone() })
            .collect();
        let paths: Vec<_> = groups.iter().map(|g| g.paths.clone()).collect();
        let value = count_mergings(&net.with_groups(groups));
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(Minimum { value, paths });
        }
        // odometer with the last group varying fastest
        let mut k = pick.len();
        loop {
            if k == 0 {
                return Ok(best.unwrap());
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
        }
    }
}

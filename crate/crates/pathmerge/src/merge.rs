//! Detection of merged subpaths.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::graph::{EdgeId, VertexId};
use crate::network::{MergeNetwork, PathRef};

/// A maximal run of edges shared by paths that arrive over different edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MergedSubpath {
    pub start_edge: EdgeId,
    pub run: Vec<EdgeId>,
    /// Paths containing the whole run, sorted.
    pub participants: Vec<PathRef>,
    /// Vertex where the run starts.
    pub head: VertexId,
    /// Vertex where the run ends.
    pub tail: VertexId,
}

/// Occurrences of each edge on the group paths: edge index to `(path, position)`.
pub(crate) fn occurrences(net: &MergeNetwork) -> Vec<Vec<(PathRef, usize)>> {
    let dag = net.dag();
    let mut occ = vec![Vec::new(); dag.edge_count()];
    for (r, path) in net.paths() {
        for (pos, &e) in path.iter().enumerate() {
            occ[dag.edge_index(e).unwrap()].push((r, pos));
        }
    }
    occ
}

fn has_two_entries(net: &MergeNetwork, members: &[(PathRef, usize)]) -> bool {
    let mut preds = BTreeSet::new();
    for &(r, pos) in members {
        if pos > 0 {
            preds.insert(net.path(r)[pos - 1]);
            if preds.len() >= 2 {
                return true;
            }
        }
    }
    false
}

/// Start edges of all mergings, ordered by the topological rank of their
/// first vertex, then by edge id.
pub fn merging_edges(net: &MergeNetwork) -> Vec<EdgeId> {
    let dag = net.dag();
    let occ = occurrences(net);
    let mut out: Vec<EdgeId> = dag
        .edges()
        .iter()
        .enumerate()
        .filter(|(k, _)| occ[*k].len() >= 2 && has_two_entries(net, &occ[*k]))
        .map(|(_, e)| e.id)
        .collect();
    out.sort_by_key(|&id| {
        let e = dag.edge(id).unwrap();
        (dag.rank(e.from), id)
    });
    out
}

pub fn count_mergings(net: &MergeNetwork) -> usize {
    merging_edges(net).len()
}

/// All mergings, in the order of [`merging_edges`].
///
/// The run is the longest continuation along which at least two of the
/// paths still sharing it arrived over different edges; among runs of equal
/// length the one taking lower edge ids wins.
pub fn find_mergings(net: &MergeNetwork) -> Vec<MergedSubpath> {
    let dag = net.dag();
    let occ = occurrences(net);
    merging_edges(net)
        .into_iter()
        .map(|start| {
            let members = occ[dag.edge_index(start).unwrap()].clone();
            let mut best = (vec![start], members.clone());
            let mut run = vec![start];
            longest(net, &members, &mut run, &mut best);
            let (run, members) = best;
            let mut participants: Vec<PathRef> = members.iter().map(|&(r, _)| r).collect();
            participants.sort_unstable();
            let head = dag.edge(start).unwrap().from;
            let tail = dag.edge(*run.last().unwrap()).unwrap().to;
            MergedSubpath { start_edge: start, run, participants, head, tail }
        })
        .collect()
}

fn longest(
    net: &MergeNetwork,
    members: &[(PathRef, usize)],
    run: &mut Vec<EdgeId>,
    best: &mut (Vec<EdgeId>, Vec<(PathRef, usize)>),
) {
    if run.len() > best.0.len() {
        *best = (run.clone(), members.to_vec());
    }
    let mut by_next: BTreeMap<EdgeId, Vec<(PathRef, usize)>> = BTreeMap::new();
    for &(r, pos) in members {
        if let Some(&next) = net.path(r).get(pos + run.len()) {
            by_next.entry(next).or_default().push((r, pos));
        }
    }
    for (next, sub) in by_next {
        if sub.len() >= 2 && has_two_entries(net, &sub) {
            run.push(next);
            longest(net, &sub, run, best);
            run.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DagBuilder;
    use crate::network::{Mode, PathGroup};

    /// Three single-path groups: two share A->B->C->D, the third joins at B->C.
    pub(crate) fn three_paths() -> MergeNetwork {
        let mut b = DagBuilder::new();
        let s1a = b.edge("S1", "A");
        let s2a = b.edge("S2", "A");
        let ab = b.edge("A", "B");
        let s3b = b.edge("S3", "B");
        let bc = b.edge("B", "C");
        let cd = b.edge("C", "D");
        let cr3 = b.edge("C", "R3");
        let dr1 = b.edge("D", "R1");
        let dr2 = b.edge("D", "R2");
        let v: Vec<_> = ["S1", "S2", "S3", "R1", "R2", "R3"].iter().map(|n| b.vertex(n)).collect();
        let dag = b.build().unwrap();
        let groups = vec![
            PathGroup { source: v[0], sink: v[3], paths: vec![vec![s1a, ab, bc, cd, dr1]] },
            PathGroup { source: v[1], sink: v[4], paths: vec![vec![s2a, ab, bc, cd, dr2]] },
            PathGroup { source: v[2], sink: v[5], paths: vec![vec![s3b, bc, cr3]] },
        ];
        MergeNetwork::new(dag, groups, Mode::Distinct, None).unwrap()
    }

    #[test]
    fn three_paths_two_mergings() {
        let net = three_paths();
        let ms = find_mergings(&net);
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[0].run, vec![2, 4, 5]);
        assert_eq!(ms[0].participants, vec![(0, 0), (1, 0)]);
        assert_eq!(ms[1].run, vec![4]);
        assert_eq!(ms[1].participants, vec![(0, 0), (1, 0), (2, 0)]);
    }

    #[test]
    fn disjoint_paths_do_not_merge() {
        let mut b = DagBuilder::new();
        let a = b.edge("S1", "R1");
        let c = b.edge("S2", "R2");
        let dag = b.build().unwrap();
        let groups = vec![
            PathGroup { source: 0, sink: 1, paths: vec![vec![a]] },
            PathGroup { source: 2, sink: 3, paths: vec![vec![c]] },
        ];
        let net = MergeNetwork::new(dag, groups, Mode::Distinct, None).unwrap();
        assert!(find_mergings(&net).is_empty());
    }
}

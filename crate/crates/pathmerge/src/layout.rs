//! Networks described by the order in which each path meets its mergings.
//!
//! Every merging is a label. A path is the list of labels it passes, in
//! order. Each label becomes a fresh shared edge `h:label -> t:label`, and
//! consecutive labels on a path are joined by a private edge.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{DagBuilder, EdgeId};
use crate::network::{MergeNetwork, Mode, PathGroup, PathRef};

#[derive(Debug, Clone)]
struct LayoutGroup {
    source: String,
    sink: String,
    paths: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct Layout {
    mode: Mode,
    groups: Vec<LayoutGroup>,
    shared_starts: Vec<(PathRef, PathRef)>,
}

impl Layout {
    pub fn new(mode: Mode) -> Layout {
        Layout { mode, groups: Vec::new(), shared_starts: Vec::new() }
    }

    pub fn group(&mut self, source: &str, sink: &str) -> usize {
        self.groups.push(LayoutGroup { source: source.into(), sink: sink.into(), paths: Vec::new() });
        self.groups.len() - 1
    }

    pub fn path<S: ToString>(&mut self, group: usize, labels: impl IntoIterator<Item = S>) -> usize {
        let labels = labels.into_iter().map(|s| s.to_string()).collect();
        self.groups[group].paths.push(labels);
        self.groups[group].paths.len() - 1
    }

    /// Lets two paths of different groups leave the common source over one
    /// shared edge. The shared edges become the starting subpaths, in the
    /// order they were declared.
    pub fn share_start(&mut self, a: PathRef, b: PathRef) {
        self.shared_starts.push((a, b));
    }

    /// Builds the network. Fails on cycles and on labels that do not join
    /// paths of at least two different groups.
    pub fn build(&self) -> Result<MergeNetwork> {
        let mut owners: HashMap<&str, Vec<PathRef>> = HashMap::new();
        for (g, grp) in self.groups.iter().enumerate() {
            for (i, p) in grp.paths.iter().enumerate() {
                for l in p {
                    owners.entry(l.as_str()).or_default().push((g, i));
                }
            }
        }
        for (label, refs) in &owners {
            let mut groups: Vec<usize> = refs.iter().map(|r| r.0).collect();
            groups.sort_unstable();
            let distinct = groups.windows(2).all(|w| w[0] != w[1]);
            if refs.len() < 2 || !distinct {
                return Err(Error::InvalidGroup {
                    group: refs[0].0,
                    reason: format!("label `{label}` must join paths of different groups"),
                });
            }
        }

        let mut b = DagBuilder::new();
        for grp in &self.groups {
            b.vertex(&grp.source);
        }
        let mut start_of: HashMap<PathRef, (EdgeId, String)> = HashMap::new();
        let mut starts = Vec::new();
        for (k, &(x, y)) in self.shared_starts.iter().enumerate() {
            let w = format!("w{}", k + 1);
            let e = b.edge(&self.groups[x.0].source, &w);
            start_of.insert(x, (e, w.clone()));
            start_of.insert(y, (e, w));
            starts.push(vec![e]);
        }
        let mut merging_edge: HashMap<&str, EdgeId> = HashMap::new();
        let mut groups = Vec::new();
        for (g, grp) in self.groups.iter().enumerate() {
            let mut paths = Vec::new();
            for (i, labels) in grp.paths.iter().enumerate() {
                let mut edges = Vec::new();
                let mut at = grp.source.clone();
                if let Some((e, w)) = start_of.get(&(g, i)) {
                    edges.push(*e);
                    at = w.clone();
                }
                for l in labels {
                    let head = format!("h:{l}");
                    edges.push(b.edge(&at, &head));
                    let e = *merging_edge.entry(l.as_str()).or_insert_with(|| b.edge(&head, &format!("t:{l}")));
                    edges.push(e);
                    at = format!("t:{l}");
                }
                edges.push(b.edge(&at, &grp.sink));
                paths.push(edges);
            }
            groups.push((grp.source.clone(), grp.sink.clone(), paths));
        }
        let mut groups_out = Vec::new();
        for (source, sink, paths) in groups {
            groups_out.push(PathGroup { source: b.vertex(&source), sink: b.vertex(&sink), paths });
        }
        let dag = b.build()?;
        let starts = (!starts.is_empty()).then_some(starts);
        Ok(MergeNetwork::new_unchecked(dag, groups_out, self.mode, starts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::merge::count_mergings;

    #[test]
    fn crossing_pair() {
        let mut l = Layout::new(Mode::Distinct);
        let a = l.group("S1", "R1");
        let b = l.group("S2", "R2");
        l.path(a, ["x"]);
        l.path(b, ["x"]);
        let net = l.build().unwrap();
        net.check().unwrap();
        assert_eq!(count_mergings(&net), 1);
    }

    #[test]
    fn opposite_orders_make_a_cycle() {
        let mut l = Layout::new(Mode::Distinct);
        let a = l.group("S1", "R1");
        let b = l.group("S2", "R2");
        l.path(a, ["x", "y"]);
        l.path(b, ["y", "x"]);
        assert_eq!(l.build().unwrap_err(), Error::CycleDetected);
    }

    #[test]
    fn lonely_label_rejected() {
        let mut l = Layout::new(Mode::Distinct);
        let a = l.group("S1", "R1");
        l.path(a, ["x"]);
        assert!(matches!(l.build(), Err(Error::InvalidGroup { .. })));
    }
}

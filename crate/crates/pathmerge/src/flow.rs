//! Unit-capacity max-flow, Menger path extraction and path-set enumeration.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Dag, EdgeId, VertexId};

/// Residual network with paired arcs: arc `a` and `a ^ 1` are mutual reverses.
struct Residual {
    to: Vec<usize>,
    cap: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn new(n: usize) -> Residual {
        Residual { to: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); n] }
    }

    fn add_arc(&mut self, u: usize, v: usize, c: u32) -> usize {
        let a = self.to.len();
        self.to.push(v);
        self.cap.push(c);
        self.adj[u].push(a);
        self.to.push(u);
        self.cap.push(0);
        self.adj[v].push(a + 1);
        a
    }

    /// One augmenting path of value 1, found by depth-first search in arc order.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut via: Vec<usize> = vec![usize::MAX; n];
        let mut stack = vec![(s, 0usize)];
        seen[s] = true;
        while let Some(&mut (x, ref mut next)) = stack.last_mut() {
            if x == t {
                break;
            }
            if *next == self.adj[x].len() {
                stack.pop();
                continue;
            }
            let a = self.adj[x][*next];
            *next += 1;
            let y = self.to[a];
            if self.cap[a] > 0 && !seen[y] {
                seen[y] = true;
                via[y] = a;
                stack.push((y, 0));
            }
        }
        if !seen[t] {
            return false;
        }
        let mut y = t;
        while y != s {
            let a = via[y];
            self.cap[a] -= 1;
            self.cap[a ^ 1] += 1;
            y = self.to[a ^ 1];
        }
        true
    }

    fn run(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut value = 0;
        while value < limit && self.augment(s, t) {
            value += 1;
        }
        value
    }
}

/// Arcs for every unblocked graph edge, in ascending edge id.
fn residual_of(dag: &Dag, extra_vertices: usize, blocked: Option<&[bool]>) -> (Residual, Vec<Option<usize>>) {
    let mut r = Residual::new(dag.vertex_count() + extra_vertices);
    let mut arc_of = vec![None; dag.edge_count()];
    let mut order: Vec<usize> = (0..dag.edge_count()).collect();
    order.sort_by_key(|&k| dag.edges()[k].id);
    for k in order {
        if blocked.is_some_and(|b| b[k]) {
            continue;
        }
        let e = dag.edges()[k];
        arc_of[k] = Some(r.add_arc(e.from, e.to, 1));
    }
    (r, arc_of)
}

fn check_vertex(dag: &Dag, v: VertexId) -> Result<()> {
    if v < dag.vertex_count() {
        Ok(())
    } else {
        Err(Error::UnknownVertex(v.to_string()))
    }
}

/// Maximum number of pairwise edge-disjoint `u -> v` paths.
pub fn min_cut(dag: &Dag, u: VertexId, v: VertexId) -> Result<usize> {
    check_vertex(dag, u)?;
    check_vertex(dag, v)?;
    if u == v {
        return Ok(0);
    }
    let (mut r, _) = residual_of(dag, 0, None);
    Ok(r.run(u, v, usize::MAX))
}

/// A maximum set of edge-disjoint `u -> v` paths.
///
/// Augmentation and decomposition both take the lowest edge id first, so the
/// answer depends only on the graph.
pub fn menger_paths(dag: &Dag, u: VertexId, v: VertexId) -> Result<Vec<Vec<EdgeId>>> {
    check_vertex(dag, u)?;
    check_vertex(dag, v)?;
    let (mut r, arc_of) = residual_of(dag, 0, None);
    let value = if u == v { 0 } else { r.run(u, v, usize::MAX) };
    if value == 0 {
        return Err(Error::NoPath { from: dag.name(u).into(), to: dag.name(v).into() });
    }
    let mut carries: Vec<bool> = arc_of.iter().map(|a| a.is_some_and(|a| r.cap[a] == 0)).collect();
    let mut paths = Vec::with_capacity(value);
    for _ in 0..value {
        let mut path = Vec::new();
        let mut x = u;
        while x != v {
            let k = dag
                .out_edges(x)
                .map(|e| dag.edge_index(e.id).unwrap())
                .find(|&k| carries[k])
                .expect("flow conservation");
            carries[k] = false;
            path.push(dag.edges()[k].id);
            x = dag.edges()[k].to;
        }
        paths.push(path);
    }
    Ok(paths)
}

/// Result of [`all_menger_path_sets`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Each set lists its paths ordered by first edge id.
    pub sets: Vec<Vec<Vec<EdgeId>>>,
    /// False when the budget stopped the enumeration early.
    pub complete: bool,
}

/// Every maximum set of edge-disjoint `u -> v` paths, up to `budget` sets.
///
/// Two sets are the same when they consist of the same edge sets; paths
/// inside a set are listed by ascending first edge, which makes each set
/// appear once.
pub fn all_menger_path_sets(dag: &Dag, u: VertexId, v: VertexId, budget: usize) -> Result<Enumeration> {
    let c = min_cut(dag, u, v)?;
    if c == 0 {
        return Err(Error::NoPath { from: dag.name(u).into(), to: dag.name(v).into() });
    }
    let mut walk = SetWalk {
        dag,
        u,
        v,
        c,
        budget,
        used: vec![false; dag.edge_count()],
        done: Vec::new(),
        current: Vec::new(),
        out: Vec::new(),
        complete: true,
    };
    walk.start_path(None);
    Ok(Enumeration { sets: walk.out, complete: walk.complete })
}

struct SetWalk<'a> {
    dag: &'a Dag,
    u: VertexId,
    v: VertexId,
    c: usize,
    budget: usize,
    used: Vec<bool>,
    done: Vec<Vec<EdgeId>>,
    current: Vec<EdgeId>,
    out: Vec<Vec<Vec<EdgeId>>>,
    complete: bool,
}

impl SetWalk<'_> {
    fn start_path(&mut self, after: Option<EdgeId>) {
        let starts: Vec<_> = self.dag.out_edges(self.u).filter(|e| after.is_none_or(|a| e.id > a)).collect();
        for e in starts {
            if !self.complete {
                return;
            }
            self.extend_with(e.id);
        }
    }

    fn extend_with(&mut self, id: EdgeId) {
        let k = self.dag.edge_index(id).unwrap();
        if self.used[k] {
            return;
        }
        let to = self.dag.edges()[k].to;
        self.used[k] = true;
        self.current.push(id);
        if self.feasible(to) {
            if to == self.v {
                let path = std::mem::take(&mut self.current);
                self.done.push(path);
                if self.done.len() == self.c {
                    if self.out.len() == self.budget {
                        self.complete = false;
                    } else {
                        self.out.push(self.done.clone());
                    }
                } else {
                    let first = self.done.last().unwrap()[0];
                    self.start_path(Some(first));
                }
                self.current = self.done.pop().unwrap();
            } else {
                let nexts: Vec<_> = self.dag.out_edges(to).map(|e| e.id).collect();
                for n in nexts {
                    if !self.complete {
                        break;
                    }
                    self.extend_with(n);
                }
            }
        }
        self.current.pop();
        self.used[k] = false;
    }

    /// Can the partial path at `at` still be finished together with the
    /// remaining paths, using only unused edges?
    fn feasible(&self, at: VertexId) -> bool {
        let remaining = self.c - self.done.len() - 1;
        let n = self.dag.vertex_count();
        // later paths start on a larger first edge
        let mut blocked = self.used.clone();
        let first = self.current[0];
        for e in self.dag.out_edges(self.u).filter(|e| e.id < first) {
            blocked[self.dag.edge_index(e.id).unwrap()] = true;
        }
        let (mut r, _) = residual_of(self.dag, 1, Some(&blocked));
        let s = n;
        if remaining > 0 {
            r.add_arc(s, self.u, remaining as u32);
        }
        if at == self.v {
            return r.run(s, self.v, remaining) == remaining;
        }
        r.add_arc(s, at, 1);
        r.run(s, self.v, remaining + 1) == remaining + 1
    }
}

/// Every simple `u -> v` path, by depth-first search in edge id order.
pub fn all_paths(dag: &Dag, u: VertexId, v: VertexId) -> Vec<Vec<EdgeId>> {
    fn go(dag: &Dag, x: VertexId, v: VertexId, cur: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        if x == v {
            out.push(cur.clone());
            return;
        }
        for e in dag.out_edges(x) {
            cur.push(e.id);
            go(dag, e.to, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(dag, u, v, &mut Vec::new(), &mut out);
    out
}

/// Edge sets of a path family, as a canonical multiset.
pub fn path_set_key(paths: &[Vec<EdgeId>]) -> Vec<BTreeSet<EdgeId>> {
    let mut key: Vec<BTreeSet<EdgeId>> = paths.iter().map(|p| p.iter().copied().collect()).collect();
    key.sort();
    key
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DagBuilder;

    fn butterfly() -> Dag {
        let mut b = DagBuilder::new();
        for (x, y) in [("S", "A"), ("S", "B"), ("A", "R1"), ("A", "C"), ("B", "C"), ("B", "R2"), ("C", "D"), ("D", "R1"), ("D", "R2")] {
            b.edge(x, y);
        }
        b.build().unwrap()
    }

    #[test]
    fn single_edge() {
        let mut b = DagBuilder::new();
        b.edge("u", "v");
        let g = b.build().unwrap();
        assert_eq!(min_cut(&g, 0, 1).unwrap(), 1);
        assert_eq!(menger_paths(&g, 0, 1).unwrap(), vec![vec![0]]);
        let all = all_menger_path_sets(&g, 0, 1, 10).unwrap();
        assert_eq!(all.sets.len(), 1);
        assert!(all.complete);
    }

    #[test]
    fn butterfly_paths() {
        let g = butterfly();
        let (s, r1) = (g.vertex("S").unwrap(), g.vertex("R1").unwrap());
        assert_eq!(min_cut(&g, s, r1).unwrap(), 2);
        assert_eq!(menger_paths(&g, s, r1).unwrap(), vec![vec![0, 2], vec![1, 4, 6, 7]]);
    }

    #[test]
    fn no_path_is_an_error() {
        let g = butterfly();
        let (r1, s) = (g.vertex("R1").unwrap(), g.vertex("S").unwrap());
        assert!(matches!(menger_paths(&g, r1, s), Err(Error::NoPath { .. })));
    }

    #[test]
    fn budget_cuts_enumeration() {
        let mut b = DagBuilder::new();
        for _ in 0..3 {
            b.edge("u", "x");
        }
        for _ in 0..3 {
            b.edge("x", "v");
        }
        let g = b.build().unwrap();
        let full = all_menger_path_sets(&g, 0, 2, 100).unwrap();
        // three disjoint paths pair the three in-edges with the three out-edges
        assert_eq!(full.sets.len(), 6);
        let cut = all_menger_path_sets(&g, 0, 2, 4).unwrap();
        assert_eq!(cut.sets.len(), 4);
        assert!(!cut.complete);
    }
}

//! Gluing networks together along their terminals.

use std::collections::HashMap;

use crate::codec::{encode, MergeOrder};
use crate::error::{Error, Result};
use crate::graph::{Dag, Edge, EdgeId, VertexId};
use crate::merge::find_mergings;
use crate::network::{MergeNetwork, Mode, PathGroup};

use super::{gen_f, gen_h};

/// Scratch multigraph for surgery. Paths are lists of sketch edge indices.
#[derive(Default)]
struct Sketch {
    names: Vec<String>,
    parent: Vec<usize>,
    edges: Vec<(usize, usize)>,
    dead: Vec<bool>,
}

type SketchPath = Vec<usize>;

/// One imported network, in sketch coordinates.
struct Part {
    vertex: Vec<usize>,
    /// `(source, sink, paths)` per group.
    groups: Vec<(usize, usize, Vec<SketchPath>)>,
    starts: Vec<SketchPath>,
}

impl Part {
    fn path(&self, g: usize, i: usize) -> &SketchPath {
        &self.groups[g].2[i]
    }
}

impl Sketch {
    fn vertex(&mut self, name: String) -> usize {
        self.names.push(name);
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    /// Copies `net` with every vertex name prefixed. A reversed import flips
    /// every edge and path and exchanges sources with sinks.
    fn import(&mut self, net: &MergeNetwork, prefix: &str, reversed: bool) -> Part {
        let dag = net.dag();
        let vertex: Vec<usize> = (0..dag.vertex_count()).map(|v| self.vertex(format!("{prefix}{}", dag.name(v)))).collect();
        let mut edge = HashMap::new();
        for e in dag.edges() {
            let (a, b) = if reversed { (e.to, e.from) } else { (e.from, e.to) };
            edge.insert(e.id, self.edges.len());
            self.edges.push((vertex[a], vertex[b]));
            self.dead.push(false);
        }
        let map = |p: &[EdgeId]| -> SketchPath {
            let mut q: SketchPath = p.iter().map(|e| edge[e]).collect();
            if reversed {
                q.reverse();
            }
            q
        };
        let groups = net
            .groups()
            .iter()
            .map(|g| {
                let (s, t) = if reversed { (g.sink, g.source) } else { (g.source, g.sink) };
                (vertex[s], vertex[t], g.paths.iter().map(|p| map(p)).collect())
            })
            .collect();
        let starts = net.starting_subpaths().unwrap_or(&[]).iter().map(|p| map(p)).collect();
        Part { vertex, groups, starts }
    }

    fn set_from(&mut self, e: usize, v: usize) {
        self.edges[e].0 = v;
    }

    fn set_to(&mut self, e: usize, v: usize) {
        self.edges[e].1 = v;
    }

    fn kill(&mut self, e: usize) {
        self.dead[e] = true;
    }

    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        self.parent[v] = r;
        r
    }

    /// Merges `b` into `a`; the merged vertex keeps the name of `a`.
    fn identify(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
        }
    }

    /// Validates the glued network and returns it reduced.
    fn finish(
        mut self,
        groups: Vec<(usize, usize, Vec<SketchPath>)>,
        mode: Mode,
        starts: Option<Vec<SketchPath>>,
    ) -> Result<MergeNetwork> {
        let mut index: HashMap<usize, VertexId> = HashMap::new();
        let mut names = Vec::new();
        let mut intern = |s: &mut Sketch, v: usize| -> VertexId {
            let r = s.find(v);
            *index.entry(r).or_insert_with(|| {
                names.push(s.names[r].clone());
                names.len() - 1
            })
        };
        let terminals: Vec<(VertexId, VertexId)> =
            groups.iter().map(|&(s, t, _)| (intern(&mut self, s), intern(&mut self, t))).collect();
        let mut id_of = vec![None; self.edges.len()];
        let mut edges = Vec::new();
        for k in 0..self.edges.len() {
            if self.dead[k] {
                continue;
            }
            let (a, b) = self.edges[k];
            let (from, to) = (intern(&mut self, a), intern(&mut self, b));
            id_of[k] = Some(edges.len() as EdgeId);
            edges.push(Edge { id: edges.len() as EdgeId, from, to });
        }
        let dag = Dag::new(names, edges)?;
        let convert = |p: &SketchPath| -> Vec<EdgeId> { p.iter().map(|&k| id_of[k].expect("path edge was deleted")).collect() };
        let groups = groups
            .iter()
            .zip(terminals)
            .map(|((_, _, paths), (source, sink))| PathGroup { source, sink, paths: paths.iter().map(convert).collect() })
            .collect();
        let starts = starts.map(|s| s.iter().map(convert).collect());
        MergeNetwork::new(dag, groups, mode, starts)?.reduce()
    }
}

fn two_groups(net: &MergeNetwork, mode: Mode, what: &str) -> Result<(usize, usize)> {
    if net.groups().len() != 2 {
        return Err(Error::NotTwoGroup(net.groups().len()));
    }
    if net.mode() != mode {
        return Err(Error::IncompatibleInterface(format!("{what} must use {mode:?} sources")));
    }
    Ok((net.groups()[0].cut(), net.groups()[1].cut()))
}

/// Position just after the run of `merging` on path `p`.
fn run_end(p: &[EdgeId], last: EdgeId) -> usize {
    p.iter().position(|&e| e == last).unwrap() + 1
}

fn renumber(net: &MergeNetwork, phi: &[usize], psi: &[usize]) -> MergeNetwork {
    let pick = |g: usize, order: &[usize]| PathGroup {
        source: net.groups()[g].source,
        sink: net.groups()[g].sink,
        paths: order.iter().map(|&i| net.groups()[g].paths[i].clone()).collect(),
    };
    net.with_groups(vec![pick(0, phi), pick(1, psi)])
}

fn swap_to(len: usize, a: usize, b: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..len).collect();
    v.swap(a, b);
    v
}

/// Index of the merging between `(0, i)` and `(1, j)` if it is the last
/// (`last = true`) or first merging on both paths.
fn end_merging(order: &MergeOrder, i: usize, j: usize, last: bool) -> Option<usize> {
    let pick = |c: &Vec<usize>| if last { c.last().copied() } else { c.first().copied() };
    let x = pick(&order.on_phi[i])?;
    (pick(&order.on_psi[j]) == Some(x) && order.pairs[x] == (i, j)).then_some(x)
}

/// Splices an F-type (n,n)-graph `f` onto a (k,n)-graph `g`, fusing the last
/// merging of `f` on its first and last paths with the first merging of `g`.
///
/// `g` is renumbered so that its encoding starts with stroke (1,n). The
/// result is a (k+n-1, n)-graph with one merging fewer than the inputs.
pub fn concat_f_g(f: &MergeNetwork, g: &MergeNetwork) -> Result<MergeNetwork> {
    let (fm, n) = two_groups(f, Mode::Distinct, "the first graph")?;
    let (k, gn) = two_groups(g, Mode::Distinct, "the second graph")?;
    if fm != n {
        return Err(Error::MismatchedN { expected: n, found: fm });
    }
    if gn != n {
        return Err(Error::MismatchedN { expected: n, found: gn });
    }
    let f_order = MergeOrder::of(f)?;
    let f_last = end_merging(&f_order, 0, n - 1, true)
        .ok_or_else(|| Error::IncompatibleInterface("first graph must end with a merging of its first and last paths".into()))?;
    let (a, b) = *encode(g)?
        .strokes
        .first()
        .ok_or_else(|| Error::IncompatibleInterface("second graph has no mergings".into()))?;
    let g = renumber(g, &swap_to(k, 0, a - 1), &swap_to(n, n - 1, b - 1));
    let g_order = MergeOrder::of(&g)?;
    let g_first = end_merging(&g_order, 0, n - 1, false)
        .ok_or_else(|| Error::IncompatibleInterface("second graph cannot start with stroke (1,n)".into()))?;
    let fm_run = find_mergings(f).swap_remove(f_last);
    let gm_run = find_mergings(&g).swap_remove(g_first);

    let mut s = Sketch::default();
    let pf = s.import(f, "f.", false);
    let pg = s.import(&g, "g.", false);
    let r1: Vec<usize> = (0..n).map(|i| s.vertex(format!("f.R1#{}", i + 1))).collect();
    let r2: Vec<usize> = (0..n).map(|i| s.vertex(format!("f.R2#{}", i + 1))).collect();
    for i in 0..n {
        s.set_to(*pf.path(0, i).last().unwrap(), r1[i]);
        s.set_to(*pf.path(1, i).last().unwrap(), r2[i]);
    }
    let s1: Vec<usize> = (0..k).map(|i| s.vertex(format!("g.S1#{}", i + 1))).collect();
    let s2: Vec<usize> = (0..n).map(|i| s.vertex(format!("g.S2#{}", i + 1))).collect();
    for i in 0..k {
        s.set_from(pg.path(0, i)[0], s1[i]);
    }
    for i in 0..n {
        s.set_from(pg.path(1, i)[0], s2[i]);
    }

    // cut f after the shared merging and g before it, then join the stubs
    let f_end_phi = run_end(f.path((0, 0)), *fm_run.run.last().unwrap());
    let f_end_psi = run_end(f.path((1, n - 1)), *fm_run.run.last().unwrap());
    let g_start_phi = g.path((0, 0)).iter().position(|&e| e == gm_run.start_edge).unwrap();
    let g_start_psi = g.path((1, n - 1)).iter().position(|&e| e == gm_run.start_edge).unwrap();
    let mut phi_head: SketchPath = pf.path(0, 0)[..f_end_phi].to_vec();
    let mut psi_head: SketchPath = pf.path(1, n - 1)[..f_end_psi].to_vec();
    for &e in pf.path(0, 0)[f_end_phi..].iter().chain(&pf.path(1, n - 1)[f_end_psi..]) {
        s.kill(e);
    }
    for &e in pg.path(0, 0)[..g_start_phi].iter().chain(&pg.path(1, n - 1)[..g_start_psi]) {
        s.kill(e);
    }
    phi_head.extend_from_slice(&pg.path(0, 0)[g_start_phi..]);
    psi_head.extend_from_slice(&pg.path(1, n - 1)[g_start_psi..]);
    s.identify(pf.vertex[fm_run.tail], pg.vertex[gm_run.head]);

    let (f_s1, f_s2) = (pf.groups[0].0, pf.groups[1].0);
    let (g_r1, g_r2) = (pg.groups[0].1, pg.groups[1].1);
    for &v in &s1[1..] {
        s.identify(f_s1, v);
    }
    for &v in &r1[1..] {
        s.identify(g_r1, v);
    }
    for i in 0..n - 1 {
        s.identify(r2[i], s2[i]);
    }
    let mut phi = vec![phi_head];
    phi.extend((1..n).map(|i| pf.path(0, i).clone()));
    phi.extend((1..k).map(|i| pg.path(0, i).clone()));
    let mut psi: Vec<SketchPath> =
        (0..n - 1).map(|i| pf.path(1, i).iter().chain(pg.path(1, i)).copied().collect()).collect();
    psi.push(psi_head);
    s.finish(vec![(f_s1, g_r1, phi), (f_s2, g_r2, psi)], Mode::Distinct, None)
}

/// Non-reroutable (m,n)-graph with 2mn-m-n+1 mergings, built by repeated
/// F-splices ending in an H-graph.
pub fn gen_mn_lower(m: usize, n: usize) -> Result<MergeNetwork> {
    if m == 0 || n == 0 {
        return Err(Error::ParamTooSmall { name: "m", value: m.min(n), min: 1 });
    }
    if m > n {
        return Ok(gen_mn_lower(n, m)?.swap_groups());
    }
    if m == 1 {
        return Ok(gen_h(n));
    }
    if m == n {
        return concat_f_g(&gen_f(m), &gen_h(m));
    }
    // (n-m+1, m) tail, glued below F(m,m) to give (n, m)
    let tail = gen_mn_lower(n - m + 1, m)?;
    Ok(concat_f_g(&gen_f(m), &tail)?.swap_groups())
}

fn shared_starts(net: &MergeNetwork, n: usize, what: &str) -> Result<()> {
    match net.starting_subpaths() {
        Some(s) if s.len() == n => Ok(()),
        _ => Err(Error::IncompatibleInterface(format!("{what} needs {n} starting subpaths"))),
    }
}

/// Glues two shared-source (n,n)-graphs source to source, the second one
/// reversed. The result has separate sources and `|g1| + |g2| + n` mergings.
pub fn concat_back_to_back(g1: &MergeNetwork, g2: &MergeNetwork) -> Result<MergeNetwork> {
    let (a, b) = two_groups(g1, Mode::Identical, "the first graph")?;
    let (c, d) = two_groups(g2, Mode::Identical, "the second graph")?;
    if a != b {
        return Err(Error::MismatchedN { expected: a, found: b });
    }
    for found in [c, d] {
        if found != a {
            return Err(Error::MismatchedN { expected: a, found });
        }
    }
    let n = a;
    shared_starts(g1, n, "the first graph")?;
    shared_starts(g2, n, "the second graph")?;
    let mut s = Sketch::default();
    let p1 = s.import(g1, "a.", false);
    let p2 = s.import(g2, "b.", true);
    for i in 0..n {
        let v = s.vertex(format!("S#{}", i + 1));
        s.set_from(p1.starts[i][0], v);
        // reversed, the starting subpath ends at the old source
        let w = *p2.starts[i].last().unwrap();
        s.set_to(w, v);
    }
    let join = |g: usize| -> Vec<SketchPath> { (0..n).map(|i| p2.path(g, i).iter().chain(p1.path(g, i)).copied().collect()).collect() };
    let groups = vec![(p2.groups[0].0, p1.groups[0].1, join(0)), (p2.groups[1].0, p1.groups[1].1, join(1))];
    s.finish(groups, Mode::Distinct, None)
}

/// Glues a shared-source (n+1,n+1)-graph to a reversed (n-1,n-1)-graph with
/// the index shifted by one. The last first-group path and the first
/// second-group path of `g1` must not merge. The result is an (n,n)-graph
/// with `|g1| + |g2| + n - 1` mergings.
pub fn concat_shifted(g1: &MergeNetwork, g2: &MergeNetwork) -> Result<MergeNetwork> {
    let (a, b) = two_groups(g1, Mode::Identical, "the first graph")?;
    let (c, d) = two_groups(g2, Mode::Identical, "the second graph")?;
    if a != b || a < 3 {
        return Err(Error::IncompatibleInterface("the first graph must be (n+1,n+1) with n >= 2".into()));
    }
    let n = a - 1;
    for found in [c, d] {
        if found != n - 1 {
            return Err(Error::MismatchedN { expected: n - 1, found });
        }
    }
    shared_starts(g1, n + 1, "the first graph")?;
    shared_starts(g2, n - 1, "the second graph")?;
    let order = MergeOrder::of(g1)?;
    if !order.on_phi[n].is_empty() || !order.on_psi[0].is_empty() {
        return Err(Error::IncompatibleInterface("the first graph merges on its outer paths".into()));
    }
    let mut s = Sketch::default();
    let p1 = s.import(g1, "a.", false);
    let p2 = s.import(g2, "b.", true);
    let split: Vec<usize> = (0..=n).map(|i| s.vertex(format!("S#{i}"))).collect();
    for i in 0..=n {
        s.set_from(p1.starts[i][0], split[i]);
    }
    let omega_len = |i: usize| p1.starts[i].len();
    for &e in p1.path(0, n)[omega_len(n)..].iter().chain(&p1.path(1, 0)[omega_len(0)..]) {
        s.kill(e);
    }
    for i in 0..n - 1 {
        let w = *p2.starts[i].last().unwrap();
        let v = s.vertex(format!("b.S#{}", i + 1));
        s.set_to(w, v);
        s.identify(split[i + 1], v);
    }
    s.identify(split[0], p2.groups[0].0);
    s.identify(split[n], p2.groups[1].0);
    let mut phi = vec![p1.path(0, 0).clone()];
    phi.extend((1..n).map(|i| p2.path(0, i - 1).iter().chain(p1.path(0, i)).copied().collect()));
    let mut psi: Vec<SketchPath> = (1..n).map(|i| p2.path(1, i - 1).iter().chain(p1.path(1, i)).copied().collect()).collect();
    psi.push(p1.path(1, n).clone());
    let groups = vec![(split[0], p1.groups[0].1, phi), (split[n], p1.groups[1].1, psi)];
    s.finish(groups, Mode::Distinct, None)
}

/// Chains shared-source graphs: the second-group sinks of part j become the
/// split source of part j+1. Part j must be (n_j, N) with non-decreasing
/// n_j ≤ N. The result is a shared-source (n_1, …, n_{k-1}, N)-graph whose
/// merging count is the sum over the parts.
pub fn concat_chain(parts: &[MergeNetwork]) -> Result<MergeNetwork> {
    let Some(first) = parts.first() else {
        return Err(Error::IncompatibleInterface("no parts".into()));
    };
    let big = two_groups(first, Mode::Identical, "every part")?.1;
    let mut cuts = Vec::new();
    for p in parts {
        let (nj, nn) = two_groups(p, Mode::Identical, "every part")?;
        if nn != big {
            return Err(Error::MismatchedN { expected: big, found: nn });
        }
        shared_starts(p, nj, "every part")?;
        cuts.push(nj);
    }
    if cuts.windows(2).any(|w| w[0] > w[1]) || *cuts.last().unwrap() > big {
        return Err(Error::NonMonotoneCuts);
    }
    let mut s = Sketch::default();
    let imported: Vec<Part> = parts.iter().enumerate().map(|(j, p)| s.import(p, &format!("p{}.", j + 1), false)).collect();
    for j in 1..parts.len() {
        let prev = &imported[j - 1];
        let cur = &imported[j];
        for i in 0..big {
            let v = s.vertex(format!("p{}.S#{}", j + 1, i + 1));
            let first_edge = if i < cuts[j] { cur.starts[i][0] } else { cur.path(1, i)[0] };
            s.set_from(first_edge, v);
            s.set_to(*prev.path(1, i).last().unwrap(), v);
        }
    }
    let source = imported[0].groups[0].0;
    let prefix = |upto: usize, i: usize| -> SketchPath { (0..upto).flat_map(|j| imported[j].path(1, i).clone()).collect() };
    let mut groups = Vec::new();
    for (j, part) in imported.iter().enumerate() {
        let paths = (0..cuts[j]).map(|i| prefix(j, i).into_iter().chain(part.path(0, i).iter().copied()).collect()).collect();
        groups.push((source, part.groups[0].1, paths));
    }
    let last = imported.last().unwrap();
    groups.push((source, last.groups[1].1, (0..big).map(|i| prefix(parts.len(), i)).collect()));
    let starts = imported[0].starts.clone();
    s.finish(groups, Mode::Identical, Some(starts))
}

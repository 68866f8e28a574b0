//! Exhaustive recomputation of extremal merging counts.
//!
//! Two-group candidates are grown stroke by stroke, level by level. Each
//! level keeps one sequence per canonical key, and any prefix that is already
//! reroutable is dropped: appending a stroke only subdivides edges and
//! redirects the two sink edges, which no residual cycle can use, so every
//! extension of a reroutable prefix is reroutable too. The search is complete
//! once a level comes up empty.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::codec::{canonical_key, decode, decode_identical, CanonicalKey, MergingSequence};
use crate::constructions::{bound_table, BoundQuery};
use crate::error::{Error, Result};
use crate::layout::Layout;
use crate::merge::count_mergings;
use crate::network::{MergeNetwork, Mode};
use crate::reroute::{brute_force_reroutable, is_reroutable, residual_reroutable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_nodes: usize,
    pub max_seconds: u64,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { max_nodes: 5_000_000, max_seconds: 900 }
    }
}

struct Clock {
    limits: Limits,
    start: Instant,
    explored: usize,
}

impl Clock {
    fn new(limits: Limits) -> Clock {
        Clock { limits, start: Instant::now(), explored: 0 }
    }

    /// Counts one node; false once either limit is hit.
    fn tick(&mut self) -> bool {
        self.explored += 1;
        self.explored <= self.limits.max_nodes
            && (!self.explored.is_multiple_of(256) || self.start.elapsed() < Duration::from_secs(self.limits.max_seconds))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    /// Two-group witnesses only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub key: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<MergingSequence>,
    /// Merging labels along each path, per group.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(skip)]
    pub network: MergeNetwork,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub params: Vec<usize>,
    pub value: usize,
    pub witnesses: Vec<Witness>,
    /// Number of non-isomorphic graphs attaining `value`, when counted.
    pub count: Option<usize>,
    pub explored: usize,
    #[serde(serialize_with = "as_seconds")]
    pub elapsed: Duration,
    pub complete: bool,
    /// Extra assumptions the result depends on.
    pub assumptions: Vec<String>,
}

fn as_seconds<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64((d.as_secs_f64() * 1000.0).round() / 1000.0)
}

/// Every non-reroutable two-group graph reachable within the limits, one
/// sequence per isomorphism class, grouped by merging count.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub m: usize,
    pub n: usize,
    pub mode: Mode,
    pub levels: Vec<Vec<MergingSequence>>,
    pub explored: usize,
    pub complete: bool,
}

fn decode_in(mode: Mode, seq: &MergingSequence) -> Result<MergeNetwork> {
    match mode {
        Mode::Distinct => decode(seq),
        Mode::Identical => decode_identical(seq),
    }
}

/// Strokes allowed for a mode; with a shared source the last first-group
/// path and the first second-group path never merge.
fn allowed_strokes(m: usize, n: usize, mode: Mode) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in 1..=n {
            if mode == Mode::Identical && (i == m || j == 1) {
                continue;
            }
            out.push((i, j));
        }
    }
    out
}

pub fn enumerate_nonreroutable(m: usize, n: usize, mode: Mode, limits: Limits) -> Result<Enumeration> {
    if m == 0 || n == 0 {
        return Err(Error::ParamTooSmall { name: "cut", value: 0, min: 1 });
    }
    if mode == Mode::Identical && m != n {
        return Err(Error::MismatchedN { expected: m, found: n });
    }
    let strokes = allowed_strokes(m, n, mode);
    let mut clock = Clock::new(limits);
    let root = MergingSequence::new(m, n, Vec::new());
    let mut levels = vec![vec![root]];
    let mut complete = true;
    'grow: loop {
        let mut next: BTreeMap<CanonicalKey, MergingSequence> = BTreeMap::new();
        for seq in levels.last().unwrap() {
            for &s in &strokes {
                if !clock.tick() {
                    complete = false;
                    break 'grow;
                }
                let mut child = seq.clone();
                child.strokes.push(s);
                let net = decode_in(mode, &child)?;
                if residual_reroutable(&net) {
                    continue;
                }
                next.entry(canonical_key(&net)?).or_insert(child);
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next.into_values().collect());
    }
    Ok(Enumeration { m, n, mode, levels, explored: clock.explored, complete })
}

fn two_group_witness(mode: Mode, seq: &MergingSequence) -> Result<Witness> {
    let network = decode_in(mode, seq)?;
    if is_reroutable(&network) || count_mergings(&network) != seq.len() {
        return Err(Error::IncompatibleInterface(format!("witness `{seq}` failed re-verification")));
    }
    Ok(Witness { key: Some(canonical_key(&network)?.to_string()), sequence: Some(seq.clone()), labels: None, network })
}

fn outcome_of(e: &Enumeration, params: Vec<usize>, start: Instant, count: bool) -> Result<SearchOutcome> {
    let value = e.levels.len() - 1;
    let top = &e.levels[value];
    let witnesses = top.iter().map(|s| two_group_witness(e.mode, s)).collect::<Result<Vec<_>>>()?;
    Ok(SearchOutcome {
        params,
        value,
        count: count.then_some(top.len()),
        witnesses,
        explored: e.explored,
        elapsed: start.elapsed(),
        complete: e.complete,
        assumptions: Vec::new(),
    })
}

/// Largest merging count of a non-reroutable (m,n)-graph with separate sources.
pub fn search_m(m: usize, n: usize, limits: Limits) -> Result<SearchOutcome> {
    let start = Instant::now();
    let e = enumerate_nonreroutable(m, n, Mode::Distinct, limits)?;
    outcome_of(&e, vec![m, n], start, false)
}

/// Largest merging count of a non-reroutable (n,n)-graph with a shared source.
pub fn search_m_star(n: usize, limits: Limits) -> Result<SearchOutcome> {
    let start = Instant::now();
    let e = enumerate_nonreroutable(n, n, Mode::Identical, limits)?;
    outcome_of(&e, vec![n, n], start, false)
}

/// Number of non-isomorphic non-reroutable (2,n)-graphs with 3n-1 mergings.
pub fn count_extremal_two_n(n: usize, limits: Limits) -> Result<SearchOutcome> {
    let start = Instant::now();
    let e = enumerate_nonreroutable(2, n, Mode::Distinct, limits)?;
    let mut out = outcome_of(&e, vec![2, n], start, true)?;
    if out.value != 3 * n - 1 {
        out.count = Some(0);
    }
    Ok(out)
}

/// Every sequence up to the closed-form length bound, with no pruning and
/// brute-force reroutability. Only for tiny cases; used as an oracle.
pub fn naive_search_m(m: usize, n: usize) -> Result<SearchOutcome> {
    let start = Instant::now();
    let bound = bound_table(BoundQuery::M { m, n })?.upper.unwrap_or(0) as usize;
    let strokes = allowed_strokes(m, n, Mode::Distinct);
    let mut best = 0;
    let mut keys: BTreeMap<CanonicalKey, MergingSequence> = BTreeMap::new();
    let mut explored = 0;
    let mut frontier = vec![Vec::new()];
    for len in 0..=bound {
        let mut next = Vec::new();
        for strokes_so_far in &frontier {
            explored += 1;
            let seq = MergingSequence::new(m, n, strokes_so_far.clone());
            let net = decode(&seq)?;
            if !brute_force_reroutable(&net)? {
                if len > best {
                    best = len;
                    keys.clear();
                }
                if len == best {
                    keys.entry(canonical_key(&net)?).or_insert(seq);
                }
            }
            if len < bound {
                for &s in &strokes {
                    let mut c = strokes_so_far.clone();
                    c.push(s);
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    let witnesses = keys.values().map(|s| two_group_witness(Mode::Distinct, s)).collect::<Result<Vec<_>>>()?;
    Ok(SearchOutcome {
        params: vec![m, n],
        value: best,
        count: Some(witnesses.len()),
        witnesses,
        explored,
        elapsed: start.elapsed(),
        complete: true,
        assumptions: Vec::new(),
    })
}

/// A network given by the merging labels along each path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct LabelNet {
    groups: Vec<Vec<Vec<u32>>>,
    labels: u32,
}

impl LabelNet {
    fn from_sequence(seq: &MergingSequence) -> LabelNet {
        let along = |pick: &dyn Fn(&(usize, usize)) -> bool| -> Vec<u32> {
            seq.strokes.iter().enumerate().filter(|(_, s)| pick(s)).map(|(k, _)| k as u32).collect()
        };
        let phi = (1..=seq.m).map(|i| along(&|s| s.0 == i)).collect();
        let psi = (1..=seq.n).map(|j| along(&|s| s.1 == j)).collect();
        LabelNet { groups: vec![phi, psi], labels: seq.len() as u32 }
    }

    fn build(&self) -> Result<MergeNetwork> {
        let mut l = Layout::new(Mode::Distinct);
        for (g, paths) in self.groups.iter().enumerate() {
            let id = l.group(&format!("S{}", g + 1), &format!("R{}", g + 1));
            for p in paths {
                l.path(id, p);
            }
        }
        l.build()
    }

    /// Renames labels in order of first appearance so equal structures compare equal.
    fn normalized(&self) -> LabelNet {
        let mut names = BTreeMap::new();
        let groups = self
            .groups
            .iter()
            .map(|paths| {
                paths
                    .iter()
                    .map(|p| {
                        p.iter()
                            .map(|l| {
                                let k = names.len() as u32;
                                *names.entry(*l).or_insert(k)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        LabelNet { groups, labels: self.labels }
    }
}

/// Adds one single-path group to `base` in every admissible way.
///
/// The new path meets each existing path at most once, at a fresh merging
/// placed in one of the gaps between that path's mergings. Partial routes
/// that are cyclic or reroutable are abandoned, since extending them cannot
/// repair either defect.
fn extend_once(base: &LabelNet, clock: &mut Clock, found: &mut BTreeSet<LabelNet>) -> bool {
    let mut net = base.clone();
    net.groups.push(vec![Vec::new()]);
    let slots: Vec<(usize, usize)> =
        base.groups.iter().enumerate().flat_map(|(g, ps)| (0..ps.len()).map(move |i| (g, i))).collect();
    let mut used = vec![false; slots.len()];
    grow(&mut net, &slots, &mut used, clock, found)
}

fn grow(net: &mut LabelNet, slots: &[(usize, usize)], used: &mut [bool], clock: &mut Clock, found: &mut BTreeSet<LabelNet>) -> bool {
    if !clock.tick() {
        return false;
    }
    found.insert(net.normalized());
    let beta = net.groups.len() - 1;
    for (k, &(g, i)) in slots.iter().enumerate() {
        if used[k] {
            continue;
        }
        for gap in 0..=net.groups[g][i].len() {
            let label = net.labels;
            net.labels += 1;
            net.groups[g][i].insert(gap, label);
            net.groups[beta][0].push(label);
            let keep = match net.build() {
                Ok(built) => !residual_reroutable(&built),
                Err(Error::CycleDetected) => false,
                Err(_) => false,
            };
            let mut finished = true;
            if keep {
                used[k] = true;
                finished = grow(net, slots, used, clock, found);
                used[k] = false;
            }
            net.groups[beta][0].pop();
            net.groups[g][i].remove(gap);
            net.labels -= 1;
            if !finished {
                return false;
            }
        }
    }
    true
}

/// Largest merging count after adding `added` single-path groups to every
/// non-reroutable (m,n)-graph.
///
/// Every merging is assumed to involve exactly two paths; the result is
/// reported with that assumption attached.
pub fn search_with_added_path(m: usize, n: usize, added: usize, limits: Limits) -> Result<SearchOutcome> {
    let start = Instant::now();
    let e = enumerate_nonreroutable(m, n, Mode::Distinct, limits)?;
    let mut clock = Clock::new(limits);
    clock.explored = e.explored;
    let mut complete = e.complete;
    let mut current: BTreeSet<LabelNet> = e.levels.iter().flatten().map(|s| LabelNet::from_sequence(s).normalized()).collect();
    for _ in 0..added {
        let mut found = BTreeSet::new();
        for base in &current {
            if !extend_once(base, &mut clock, &mut found) {
                complete = false;
                break;
            }
        }
        current = found;
        if !complete {
            break;
        }
    }
    let value = current.iter().map(|x| x.labels as usize).max().unwrap_or(0);
    let mut witnesses = Vec::new();
    for x in current.iter().filter(|x| x.labels as usize == value) {
        let network = x.build()?;
        network.check()?;
        if is_reroutable(&network) || count_mergings(&network) != value {
            return Err(Error::IncompatibleInterface("added-path witness failed re-verification".into()));
        }
        witnesses.push(Witness { key: None, sequence: None, labels: Some(x.groups.clone()), network });
    }
    let mut params = vec![m, n];
    params.extend(std::iter::repeat_n(1, added));
    params.sort_unstable();
    Ok(SearchOutcome {
        params,
        value,
        count: None,
        witnesses,
        explored: clock.explored,
        elapsed: start.elapsed(),
        complete,
        assumptions: vec!["every merging involves exactly two paths".into()],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryStatus {
    /// Recomputed by a complete search.
    Reproduced,
    /// A generated non-reroutable graph attains the value, and the value is within the bounds.
    Witnessed,
    /// The best generated graph falls short, but the value is within the bounds.
    Bounded,
    /// Not attempted at this scale.
    Skipped,
    /// Recomputed or witnessed value contradicts the table.
    Mismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableEntry {
    pub name: String,
    pub expected: usize,
    pub found: Option<usize>,
    pub lower: Option<u64>,
    pub upper: Option<u64>,
    pub status: EntryStatus,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct KnownTableReport {
    pub entries: Vec<TableEntry>,
}

impl KnownTableReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.status != EntryStatus::Mismatch)
    }
}

fn entry(name: String, expected: usize, bounds: Option<(u64, Option<u64>)>) -> TableEntry {
    TableEntry {
        name,
        expected,
        found: None,
        lower: bounds.map(|b| b.0),
        upper: bounds.and_then(|b| b.1),
        status: EntryStatus::Skipped,
        note: String::new(),
    }
}

fn within(e: &TableEntry, v: usize) -> bool {
    e.lower.is_none_or(|l| l <= v as u64) && e.upper.is_none_or(|u| v as u64 <= u)
}

fn searched(mut e: TableEntry, out: Result<SearchOutcome>) -> TableEntry {
    match out {
        Ok(o) if o.complete => {
            e.found = Some(o.value);
            e.status = if o.value == e.expected && within(&e, o.value) { EntryStatus::Reproduced } else { EntryStatus::Mismatch };
            e.note = format!("{} nodes", o.explored);
        }
        Ok(o) => {
            e.found = Some(o.value);
            e.status = if o.value <= e.expected { EntryStatus::Bounded } else { EntryStatus::Mismatch };
            e.note = "search budget exhausted".into();
        }
        Err(err) => e.note = err.to_string(),
    }
    e
}

fn witnessed(mut e: TableEntry, net: Result<MergeNetwork>, how: &str) -> TableEntry {
    match net {
        Ok(net) if !is_reroutable(&net) => {
            let v = count_mergings(&net);
            e.found = Some(v);
            e.status = if v > e.expected || !within(&e, e.expected) {
                EntryStatus::Mismatch
            } else if v == e.expected {
                EntryStatus::Witnessed
            } else {
                EntryStatus::Bounded
            };
            e.note = how.into();
        }
        Ok(_) => e.note = format!("{how} is reroutable"),
        Err(err) => e.note = err.to_string(),
    }
    e
}

fn m_bounds(m: usize, n: usize) -> Option<(u64, Option<u64>)> {
    bound_table(BoundQuery::M { m, n }).ok().map(|t| (t.lower, t.upper))
}

fn star_bounds(n: usize) -> Option<(u64, Option<u64>)> {
    bound_table(BoundQuery::MStar { n }).ok().map(|t| (t.lower, t.upper))
}

fn chain_bounds(cuts: &[usize]) -> Option<(u64, Option<u64>)> {
    bound_table(BoundQuery::MStarChain { cuts: cuts.to_vec() }).ok().map(|t| (t.lower, t.upper))
}

/// Runs the budgeted suite against the table of known values.
pub fn verify_known_table(limits: Limits) -> KnownTableReport {
    use crate::constructions::{concat_chain, gen_e, gen_mn_lower, gen_one_two_n, gen_ones_n};
    let mut entries = Vec::new();
    for n in 1..=4 {
        entries.push(searched(entry(format!("M(1,{n})"), n, m_bounds(1, n)), search_m(1, n, limits)));
    }
    for n in 1..=4 {
        entries.push(searched(entry(format!("M(2,{n})"), 3 * n - 1, m_bounds(2, n)), search_m(2, n, limits)));
    }
    for n in 2..=4 {
        entries.push(searched(entry(format!("M*({n},{n})"), (n - 1) * (n - 1), star_bounds(n)), search_m_star(n, limits)));
    }
    entries.push(searched(entry("M(1,1,1)".into(), 2, None), search_with_added_path(1, 1, 1, limits)));
    entries.push(searched(entry("M(1,1,1,1)".into(), 4, None), search_with_added_path(1, 1, 2, limits)));
    entries.push(searched(entry("M(1,2,2)".into(), 8, None), search_with_added_path(2, 2, 1, limits)));
    entries.push(searched(entry("M(1,2,3)".into(), 12, None), search_with_added_path(2, 3, 1, limits)));
    entries.push(searched(entry("M(3,3)".into(), 13, m_bounds(3, 3)), search_m(3, 3, limits)));
    for (m, n, v) in [(3, 4, 18), (3, 5, 23), (3, 6, 28), (4, 4, 27)] {
        entries.push(witnessed(entry(format!("M({m},{n})"), v, m_bounds(m, n)), gen_mn_lower(m, n), "mn-lower construction"));
    }
    for (n, v) in [(5, 16), (6, 27)] {
        entries.push(witnessed(entry(format!("M*({n},{n})"), v, star_bounds(n)), Ok(gen_e(n)), "E construction"));
    }
    for n in 4..=8 {
        entries.push(witnessed(entry(format!("M(1,2,{n})"), 4 * n + 1, None), gen_one_two_n(n), "one-two-n construction"));
    }
    for (k, n) in [(2, 2), (3, 2), (3, 3), (4, 3), (5, 4)] {
        let name = format!("M({}{n})", "1,".repeat(k));
        entries.push(witnessed(entry(name, n * k + k * k / 4, None), Ok(gen_ones_n(k, n)), "ones-n construction"));
    }
    for (n, v) in [(3, 8), (4, 18)] {
        let cuts = [n, n, n];
        let parts = concat_chain(&[gen_e(n), gen_e(n)]);
        entries.push(witnessed(entry(format!("M*({n},{n},{n})"), v, chain_bounds(&cuts)), parts, "chain of two E graphs"));
    }
    for (name, v, cuts) in [
        ("M*(2,3,3)", 5, vec![2, 3, 3]),
        ("M*(2,4,4)", 10, vec![2, 4, 4]),
        ("M*(2,5,5)", 17, vec![2, 5, 5]),
        ("M*(3,4,4)", 13, vec![3, 4, 4]),
    ] {
        let mut e = entry(name.into(), v, chain_bounds(&cuts));
        e.note = "no generator for unequal parts".into();
        entries.push(e);
    }
    for (name, v) in [("M(2,2,2)", 11), ("M(1,3,3)", 17), ("M(2,2,3)", 18)] {
        let mut e = entry(name.into(), v, None);
        e.note = "three groups with separate sources are beyond the searched shapes".into();
        entries.push(e);
    }
    KnownTableReport { entries }
}

//! Alternating walks over the mergings of a two-group network.
//!
//! A walk runs along a first-group path until it reaches the head of a
//! merging, then backwards along the second-group path of that merging until
//! it reaches the tail of the previous merging, and so on. With a shared
//! source the starting subpaths act as extra stations.

use std::collections::HashSet;

use serde::Serialize;

use crate::codec::MergeOrder;
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::merge::find_mergings;
use crate::network::{MergeNetwork, Mode};
use crate::reroute::End;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkKind {
    Phi,
    Psi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Terminus {
    R1,
    S2,
    R1Identical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Visit {
    pub vertex: VertexId,
    /// 0-based `(first-group path, second-group path)` of the station.
    pub pair: (usize, usize),
    pub end: End,
    /// Index into [`find_mergings`], or `None` for a starting subpath.
    pub merging: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AaSequence {
    pub kind: WalkKind,
    pub start_index: usize,
    pub visits: Vec<Visit>,
    pub terminus: Terminus,
    pub length: usize,
}

struct Stations {
    mode: Mode,
    pairs: Vec<(usize, usize)>,
    heads: Vec<VertexId>,
    tails: Vec<VertexId>,
    real: usize,
    on_phi: Vec<Vec<usize>>,
    on_psi: Vec<Vec<usize>>,
}

impl Stations {
    fn of(net: &MergeNetwork) -> Result<Stations> {
        let order = MergeOrder::of(net)?;
        let mergings = find_mergings(net);
        let mut pairs = order.pairs.clone();
        let mut heads: Vec<VertexId> = mergings.iter().map(|m| m.head).collect();
        let mut tails: Vec<VertexId> = mergings.iter().map(|m| m.tail).collect();
        let real = pairs.len();
        let (mut on_phi, mut on_psi) = (order.on_phi, order.on_psi);
        if let Some(starts) = net.starting_subpaths() {
            for (i, w) in starts.iter().enumerate() {
                let k = pairs.len();
                pairs.push((i, i));
                heads.push(net.dag().edge(w[0]).unwrap().from);
                tails.push(net.dag().edge(*w.last().unwrap()).unwrap().to);
                on_phi[i].insert(0, k);
                on_psi[i].insert(0, k);
            }
        }
        Ok(Stations { mode: net.mode(), pairs, heads, tails, real, on_phi, on_psi })
    }

    fn visit(&self, x: usize, end: End) -> Visit {
        let vertex = match end {
            End::Head => self.heads[x],
            End::Tail => self.tails[x],
        };
        Visit { vertex, pair: self.pairs[x], end, merging: (x < self.real).then_some(x) }
    }

    fn walk(&self, kind: WalkKind, index: usize) -> Result<AaSequence> {
        enum At {
            Along(usize, Option<usize>),
            Against(usize, usize),
        }
        let mut state = match kind {
            WalkKind::Phi => At::Along(index, None),
            WalkKind::Psi => At::Against(index, self.on_psi[index].len()),
        };
        let mut visits = Vec::new();
        let mut seen = HashSet::new();
        let terminus = loop {
            let (x, end) = match state {
                At::Along(i, after) => {
                    let next = after.map_or(0, |p| p + 1);
                    match self.on_phi[i].get(next) {
                        Some(&x) => (x, End::Head),
                        None if self.mode == Mode::Identical => break Terminus::R1Identical,
                        None => break Terminus::R1,
                    }
                }
                At::Against(j, before) => {
                    if before == 0 {
                        break Terminus::S2;
                    }
                    (self.on_psi[j][before - 1], End::Tail)
                }
            };
            if !seen.insert((x, end)) {
                return Err(Error::RerouteDetected(self.pairs[x].0, self.pairs[x].1));
            }
            visits.push(self.visit(x, end));
            let (a, b) = self.pairs[x];
            state = match end {
                End::Head => At::Against(b, self.on_psi[b].iter().position(|&y| y == x).unwrap()),
                End::Tail => At::Along(a, Some(self.on_phi[a].iter().position(|&y| y == x).unwrap())),
            };
        };
        let length = visits.len();
        Ok(AaSequence { kind, start_index: index, visits, terminus, length })
    }
}

/// Walk starting at the first source along first-group path `i`.
pub fn phi_aa_sequence(net: &MergeNetwork, i: usize) -> Result<AaSequence> {
    if net.mode() == Mode::Identical {
        return Err(Error::PhiWalkUnsupported);
    }
    Stations::of(net)?.walk(WalkKind::Phi, i)
}

/// Walk starting at the second sink backwards along second-group path `j`.
pub fn psi_aa_sequence(net: &MergeNetwork, j: usize) -> Result<AaSequence> {
    Stations::of(net)?.walk(WalkKind::Psi, j)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AaIdentity {
    /// Number of mergings.
    pub lhs: usize,
    /// Sum of all walk lengths.
    pub total_length: usize,
    /// Starting subpaths subtracted from the sum.
    pub offset: usize,
    pub holds: bool,
    /// Every walk has positive length.
    pub all_positive: bool,
    pub walks: Vec<AaSequence>,
}

impl AaIdentity {
    pub fn rhs(&self) -> f64 {
        (self.total_length as f64 - self.offset as f64) / 2.0
    }
}

/// Compares the merging count with half the total walk length.
///
/// With separate sources every walk of both kinds is summed. With a shared
/// source only second-group walks exist and each starting subpath is
/// subtracted once.
pub fn aa_merging_identity(net: &MergeNetwork) -> Result<AaIdentity> {
    let st = Stations::of(net)?;
    let mut walks = Vec::new();
    if net.mode() == Mode::Distinct {
        for i in 0..st.on_phi.len() {
            walks.push(st.walk(WalkKind::Phi, i)?);
        }
    }
    for j in 0..st.on_psi.len() {
        walks.push(st.walk(WalkKind::Psi, j)?);
    }
    let total_length: usize = walks.iter().map(|w| w.length).sum();
    let offset = st.pairs.len() - st.real;
    let lhs = st.real;
    let holds = total_length >= offset && 2 * lhs == total_length - offset;
    let all_positive = walks.iter().all(|w| w.length > 0);
    Ok(AaIdentity { lhs, total_length, offset, holds, all_positive, walks })
}

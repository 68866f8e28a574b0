//! Block decomposition of a non-reroutable network whose first group has two paths.
//!
//! Each second-group path contributes its consecutive merging pairs. The
//! pairs are ordered, cut into runs of one type, and the runs are chained
//! when the last pair of one ends where the first pair of the next begins.

use serde::Serialize;

use crate::codec::MergeOrder;
use crate::error::{Error, Result};
use crate::merge::find_mergings;
use crate::network::MergeNetwork;
use crate::reroute::residual_reroutable;

/// Type I pairs start on the first path of the first group, type II on the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairType {
    I,
    II,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AdjacentPair {
    /// Earlier merging on the second-group path, index into [`find_mergings`].
    pub lambda: usize,
    /// The merging right after `lambda` on the same path.
    pub mu: usize,
    pub psi: usize,
    pub kind: PairType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// All adjacent pairs in increasing order.
    pub theta: Vec<AdjacentPair>,
    /// Consecutive ranges of `theta`, one per maximal run of a single type.
    pub mini_blocks: Vec<Vec<usize>>,
    /// Consecutive ranges of `mini_blocks`, one per maximal linked chain.
    pub medium_blocks: Vec<Vec<usize>>,
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

pub fn block_decomposition(net: &MergeNetwork) -> Result<BlockDecomposition> {
    let order = MergeOrder::of(net).map_err(|_| Error::NotTwoByN)?;
    if order.m != 2 || residual_reroutable(net) {
        return Err(Error::NotTwoByN);
    }
    let dag = net.dag();
    let mergings = find_mergings(net);
    let reach: Vec<Vec<bool>> = mergings.iter().map(|m| dag.reachable_from(m.tail)).collect();
    let smaller = |a: usize, b: usize| reach[a][mergings[b].head];

    let mut sigma = Vec::new();
    for (j, chain) in order.on_psi.iter().enumerate() {
        for w in chain.windows(2) {
            let kind = if order.pairs[w[0]].0 == 0 { PairType::I } else { PairType::II };
            sigma.push(AdjacentPair { lambda: w[0], mu: w[1], psi: j, kind });
        }
    }
    let precedes = |p: &AdjacentPair, q: &AdjacentPair| {
        if p.kind == q.kind {
            smaller(p.lambda, q.lambda)
        } else {
            smaller(p.lambda, q.mu)
        }
    };
    let x = sigma.len();
    let mut rank: Vec<(usize, usize)> =
        (0..x).map(|a| ((0..x).filter(|&b| b != a && precedes(&sigma[b], &sigma[a])).count(), a)).collect();
    rank.sort_unstable();
    let theta: Vec<AdjacentPair> = rank.iter().map(|&(_, a)| sigma[a]).collect();
    let name = |p: &AdjacentPair| format!("({},{})", dag.name(mergings[p.lambda].head), dag.name(mergings[p.mu].head));
    for a in 0..x {
        for b in a + 1..x {
            if !precedes(&theta[a], &theta[b]) || precedes(&theta[b], &theta[a]) {
                return Err(Error::Incomparable(name(&theta[a]), name(&theta[b])));
            }
        }
    }

    let mut mini_blocks: Vec<Vec<usize>> = Vec::new();
    for (k, p) in theta.iter().enumerate() {
        match mini_blocks.last_mut() {
            Some(run) if theta[run[0]].kind == p.kind => run.push(k),
            _ => mini_blocks.push(vec![k]),
        }
    }
    let mut medium_blocks: Vec<Vec<usize>> = Vec::new();
    for b in 0..mini_blocks.len() {
        let linked = b > 0 && {
            // second components of one block lie on a single path, so the
            // largest is the one every other reaches
            let prev = &mini_blocks[b - 1];
            let top = prev.iter().map(|&k| theta[k].mu).find(|&u| prev.iter().all(|&k| theta[k].mu == u || smaller(theta[k].mu, u)));
            top == Some(theta[mini_blocks[b][0]].lambda)
        };
        match medium_blocks.last_mut() {
            Some(chain) if linked => chain.push(b),
            _ => medium_blocks.push(vec![b]),
        }
    }
    let (y, z) = (mini_blocks.len(), medium_blocks.len());
    Ok(BlockDecomposition { theta, mini_blocks, medium_blocks, x, y, z })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockCheck {
    /// Second-group paths meeting at least two mergings. Paths with fewer
    /// contribute no adjacent pair and are left out of both identities.
    pub n: usize,
    /// Mergings on those paths.
    pub paired_mergings: usize,
    /// Second-group paths meeting at least one merging.
    pub active_paths: usize,
    pub mergings: usize,
    pub paths_identity: bool,
    pub count_identity: bool,
    pub x_at_least_2y_minus_z: bool,
    pub within_bound: bool,
}

impl BlockCheck {
    pub fn all(&self) -> bool {
        self.paths_identity && self.count_identity && self.x_at_least_2y_minus_z && self.within_bound
    }
}

/// Evaluates the counting identities of a decomposition on its network.
pub fn check_blocks(net: &MergeNetwork, bd: &BlockDecomposition) -> Result<BlockCheck> {
    let order = MergeOrder::of(net)?;
    let paired: Vec<&Vec<usize>> = order.on_psi.iter().filter(|c| c.len() >= 2).collect();
    let n = paired.len();
    let paired_mergings = paired.iter().map(|c| c.len()).sum::<usize>();
    let active_paths = order.on_psi.iter().filter(|c| !c.is_empty()).count();
    let mergings = order.pairs.len();
    let (x, y, z) = (bd.x as i64, bd.y as i64, bd.z as i64);
    Ok(BlockCheck {
        n,
        paired_mergings,
        active_paths,
        mergings,
        paths_identity: n as i64 == x - (y - z),
        count_identity: paired_mergings as i64 == 2 * x - (y - z),
        x_at_least_2y_minus_z: x >= 2 * y - z,
        within_bound: mergings == 0 || mergings < 3 * active_paths,
    })
}

//! Two-group networks written as merging sequences.
//!
//! A stroke `(i, j)` lets path `i` of the first group cross path `j` of the
//! second group after every earlier crossing on either path. Indices are
//! 1-based, as in the text format `m n : (i,j) (i,j) ...`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::layout::Layout;
use crate::merge::find_mergings;
use crate::network::{MergeNetwork, Mode};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MergingSequence {
    pub m: usize,
    pub n: usize,
    pub strokes: Vec<(usize, usize)>,
}

impl MergingSequence {
    pub fn new(m: usize, n: usize, strokes: Vec<(usize, usize)>) -> MergingSequence {
        MergingSequence { m, n, strokes }
    }

    /// Builds a sequence from 0-based strokes.
    pub fn from_zero_based(m: usize, n: usize, strokes: &[(usize, usize)]) -> MergingSequence {
        MergingSequence { m, n, strokes: strokes.iter().map(|&(i, j)| (i + 1, j + 1)).collect() }
    }

    pub fn len(&self) -> usize {
        self.strokes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strokes.is_empty()
    }
}

impl fmt::Display for MergingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} :", self.m, self.n)?;
        for (i, j) in &self.strokes {
            write!(f, " ({i},{j})")?;
        }
        Ok(())
    }
}

impl FromStr for MergingSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<MergingSequence> {
        let parse_err = |what: &str| Error::Parse(format!("{what} in `{}`", s.trim()));
        let (head, body) = s.split_once(':').ok_or_else(|| parse_err("missing `:`"))?;
        let dims: Vec<usize> = head
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err("bad dimension")))
            .collect::<Result<_>>()?;
        let [m, n] = dims[..] else {
            return Err(parse_err("expected `m n`"));
        };
        let cleaned: String = body.chars().map(|c| if c == '(' || c == ')' || c == ',' { ' ' } else { c }).collect();
        let nums: Vec<usize> = cleaned
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err("bad index")))
            .collect::<Result<_>>()?;
        if !nums.len().is_multiple_of(2) {
            return Err(parse_err("odd number of indices"));
        }
        let strokes = nums.chunks(2).map(|c| (c[0], c[1])).collect();
        Ok(MergingSequence { m, n, strokes })
    }
}

impl Serialize for MergingSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Accepts iff every stroke index is in range; every such sequence decodes.
pub fn validate(seq: &MergingSequence) -> Result<()> {
    for (k, &(i, j)) in seq.strokes.iter().enumerate() {
        if i == 0 || i > seq.m || j == 0 || j > seq.n {
            return Err(Error::InvalidStroke {
                position: k + 1,
                reason: format!("({i},{j}) is outside {}x{}", seq.m, seq.n),
            });
        }
    }
    Ok(())
}

fn layout_for(seq: &MergingSequence, mode: Mode) -> Layout {
    let mut l = Layout::new(mode);
    let (src1, src2) = match mode {
        Mode::Distinct => ("S1", "S2"),
        Mode::Identical => ("S", "S"),
    };
    let a = l.group(src1, "R1");
    let b = l.group(src2, "R2");
    for i in 1..=seq.m {
        l.path(a, seq.strokes.iter().enumerate().filter(|(_, s)| s.0 == i).map(|(k, _)| k + 1));
    }
    for j in 1..=seq.n {
        l.path(b, seq.strokes.iter().enumerate().filter(|(_, s)| s.1 == j).map(|(k, _)| k + 1));
    }
    if mode == Mode::Identical {
        for i in 0..seq.m.min(seq.n) {
            l.share_start((a, i), (b, i));
        }
    }
    l
}

/// The reduced two-group network with separate sources described by `seq`.
pub fn decode(seq: &MergingSequence) -> Result<MergeNetwork> {
    validate(seq)?;
    layout_for(seq, Mode::Distinct).build()
}

/// As [`decode`], but both groups leave one source `S`, and for each
/// `i < min(m, n)` paths `i` of both groups share their first edge.
pub fn decode_identical(seq: &MergingSequence) -> Result<MergeNetwork> {
    validate(seq)?;
    layout_for(seq, Mode::Identical).build()
}

/// Mergings of a two-group network as `(first-group path, second-group path)`
/// pairs, with the order each path imposes on them.
#[derive(Debug, Clone)]
pub(crate) struct MergeOrder {
    pub m: usize,
    pub n: usize,
    pub mode: Mode,
    /// 0-based pair of each merging.
    pub pairs: Vec<(usize, usize)>,
    /// Mergings along each first-group path, in path order.
    pub on_phi: Vec<Vec<usize>>,
    /// Mergings along each second-group path, in path order.
    pub on_psi: Vec<Vec<usize>>,
}

impl MergeOrder {
    pub fn of(net: &MergeNetwork) -> Result<MergeOrder> {
        if net.groups().len() != 2 {
            return Err(Error::NotTwoGroup(net.groups().len()));
        }
        let (m, n) = (net.groups()[0].cut(), net.groups()[1].cut());
        let mut pairs = Vec::new();
        let mut on_phi = vec![Vec::new(); m];
        let mut on_psi = vec![Vec::new(); n];
        let mut pos_phi = vec![Vec::new(); m];
        let mut pos_psi = vec![Vec::new(); n];
        for (k, merge) in find_mergings(net).into_iter().enumerate() {
            let &[(ga, a), (gb, b)] = merge.participants.as_slice() else {
                return Err(Error::MultiwayMerging(merge.start_edge));
            };
            if (ga, gb) != (0, 1) {
                return Err(Error::MultiwayMerging(merge.start_edge));
            }
            let at = |p: &[u32]| p.iter().position(|&e| e == merge.start_edge).unwrap();
            pos_phi[a].push((at(net.path((0, a))), k));
            pos_psi[b].push((at(net.path((1, b))), k));
            pairs.push((a, b));
        }
        for (dst, src) in on_phi.iter_mut().zip(pos_phi.iter_mut()).chain(on_psi.iter_mut().zip(pos_psi.iter_mut())) {
            src.sort_unstable();
            *dst = src.iter().map(|&(_, k)| k).collect();
        }
        Ok(MergeOrder { m, n, mode: net.mode(), pairs, on_phi, on_psi })
    }

    /// Kahn's algorithm emitting the smallest relabelled pair among the
    /// mergings whose predecessors on both paths are already out.
    pub fn emit(&self, sigma: &[usize], tau: &[usize]) -> Vec<(usize, usize)> {
        let k = self.pairs.len();
        let mut waiting = vec![0u8; k];
        let mut next = vec![Vec::new(); k];
        for chain in self.on_phi.iter().chain(&self.on_psi) {
            for w in chain.windows(2) {
                waiting[w[1]] += 1;
                next[w[0]].push(w[1]);
            }
        }
        let label = |x: usize| (sigma[self.pairs[x].0], tau[self.pairs[x].1]);
        let mut ready: Vec<usize> = (0..k).filter(|&x| waiting[x] == 0).collect();
        let mut out = Vec::with_capacity(k);
        while !ready.is_empty() {
            let (at, _) = ready.iter().enumerate().min_by_key(|(_, &x)| label(x)).unwrap();
            let x = ready.swap_remove(at);
            out.push(label(x));
            for &y in &next[x] {
                waiting[y] -= 1;
                if waiting[y] == 0 {
                    ready.push(y);
                }
            }
        }
        out
    }
}

/// A sequence that decodes to the reduced form of `net`.
///
/// Among all valid orders the smallest stroke is emitted first at each step.
pub fn encode(net: &MergeNetwork) -> Result<MergingSequence> {
    let order = MergeOrder::of(net)?;
    let sigma: Vec<usize> = (0..order.m).collect();
    let tau: Vec<usize> = (0..order.n).collect();
    let strokes = order.emit(&sigma, &tau).into_iter().map(|(i, j)| (i + 1, j + 1)).collect();
    Ok(MergingSequence { m: order.m, n: order.n, strokes })
}

/// Checks that `seq` describes `net`, consuming mergings stroke by stroke.
///
/// Stroke `(i, j)` takes the earliest unplaced merging of paths `i` and `j`.
/// The first stroke whose merging sits before an already placed merging on
/// either path is reported.
pub fn validate_against(seq: &MergingSequence, net: &MergeNetwork) -> Result<()> {
    validate(seq)?;
    let order = MergeOrder::of(net)?;
    if (order.m, order.n) != (seq.m, seq.n) {
        return Err(Error::IncompatibleInterface(format!(
            "sequence is {}x{} but the network is {}x{}",
            seq.m, seq.n, order.m, order.n
        )));
    }
    let rank_on = |chains: &[Vec<usize>], p: usize, x: usize| chains[p].iter().position(|&y| y == x).unwrap();
    let mut placed = vec![false; order.pairs.len()];
    let mut last_phi: Vec<Option<usize>> = vec![None; order.m];
    let mut last_psi: Vec<Option<usize>> = vec![None; order.n];
    for (k, &(i, j)) in seq.strokes.iter().enumerate() {
        let (i, j) = (i - 1, j - 1);
        let found = order.on_phi[i].iter().copied().find(|&x| !placed[x] && order.pairs[x] == (i, j));
        let Some(x) = found else {
            return Err(Error::InvalidStroke { position: k + 1, reason: format!("no unplaced merging of ({},{})", i + 1, j + 1) });
        };
        let (rp, rq) = (rank_on(&order.on_phi, i, x), rank_on(&order.on_psi, j, x));
        if last_phi[i].is_some_and(|r| r > rp) || last_psi[j].is_some_and(|r| r > rq) {
            return Err(Error::InvalidStroke {
                position: k + 1,
                reason: format!("({},{}) would precede a merging already placed", i + 1, j + 1),
            });
        }
        placed[x] = true;
        last_phi[i] = Some(rp);
        last_psi[j] = Some(rq);
    }
    if placed.iter().any(|p| !p) {
        return Err(Error::InvalidStroke { position: seq.strokes.len() + 1, reason: "mergings left unplaced".into() });
    }
    Ok(())
}

/// Isomorphism class of a two-group network under renumbering the paths
/// inside each group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// The smallest encoding over every renumbering of the paths.
///
/// With a shared source, paths `i` of both groups that share a starting
/// subpath are renumbered together.
pub fn canonical_key(net: &MergeNetwork) -> Result<CanonicalKey> {
    let order = MergeOrder::of(net)?;
    Ok(key_of_order(&order))
}

pub(crate) fn key_of_order(order: &MergeOrder) -> CanonicalKey {
    let tied = match order.mode {
        Mode::Distinct => 0,
        Mode::Identical => order.m.min(order.n),
    };
    let mut best: Option<Vec<(usize, usize)>> = None;
    let sigmas = permutations(order.m);
    let taus = permutations(order.n);
    for sigma in &sigmas {
        for tau in &taus {
            if (0..tied).any(|i| sigma[i] != tau[i]) {
                continue;
            }
            let s = order.emit(sigma, tau);
            if best.as_ref().is_none_or(|b| s < *b) {
                best = Some(s);
            }
        }
    }
    let mut bytes = vec![order.mode as u8, order.m as u8, order.n as u8];
    for (i, j) in best.unwrap_or_default() {
        bytes.push(i as u8);
        bytes.push(j as u8);
    }
    CanonicalKey(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::merge::count_mergings;

    fn seq(s: &str) -> MergingSequence {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip() {
        let s = seq("3 2 : (1,1) (2,1) (2,2) (3,2)");
        assert_eq!(s.strokes, vec![(1, 1), (2, 1), (2, 2), (3, 2)]);
        assert_eq!(s.to_string().parse::<MergingSequence>().unwrap(), s);
        assert_eq!(seq("2 2 :").strokes, vec![]);
    }

    #[test]
    fn parse_errors() {
        assert!("2 2 (1,1)".parse::<MergingSequence>().is_err());
        assert!("2 : (1,1)".parse::<MergingSequence>().is_err());
        assert!("2 2 : (1,1) (2".parse::<MergingSequence>().is_err());
    }

    #[test]
    fn stack_examples() {
        assert_eq!(count_mergings(&decode(&seq("2 2 : (1,2) (2,1)")).unwrap()), 2);
        assert_eq!(count_mergings(&decode(&seq("3 2 : (1,1) (2,1) (2,2) (3,2)")).unwrap()), 4);
        let empty = decode(&seq("2 2 :")).unwrap();
        assert_eq!(count_mergings(&empty), 0);
        assert_eq!(empty.dag().edge_count(), 4);
    }

    #[test]
    fn out_of_range_stroke() {
        let err = validate(&seq("2 2 : (1,1) (3,1)")).unwrap_err();
        assert!(matches!(err, Error::InvalidStroke { position: 2, .. }));
        assert!(validate(&seq("2 2 : (0,1)")).is_err());
    }

    #[test]
    fn counterexample_rejected_at_fourth_stroke() {
        let net = decode(&seq("3 2 : (1,1) (2,1) (2,2) (3,2)")).unwrap();
        let err = validate_against(&seq("3 2 : (1,1) (2,1) (3,2) (2,2)"), &net).unwrap_err();
        assert!(matches!(err, Error::InvalidStroke { position: 4, .. }), "{err}");
        validate_against(&seq("3 2 : (1,1) (2,1) (2,2) (3,2)"), &net).unwrap();
    }

    #[test]
    fn encode_picks_smallest_available_stroke() {
        let net = decode(&seq("2 2 : (2,1) (1,2)")).unwrap();
        assert_eq!(encode(&net).unwrap(), seq("2 2 : (1,2) (2,1)"));
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(3)[5], vec![2, 1, 0]);
    }

    #[test]
    fn key_ignores_path_numbering() {
        let a = decode(&seq("2 2 : (1,2) (2,1)")).unwrap();
        let b = decode(&seq("2 2 : (1,1) (2,2)")).unwrap();
        assert_eq!(canonical_key(&a).unwrap(), canonical_key(&b).unwrap());
        let c = decode(&seq("3 2 : (1,1) (2,1) (2,2) (3,2)")).unwrap();
        assert_ne!(canonical_key(&a).unwrap(), canonical_key(&c).unwrap());
    }
}

#![allow(dead_code)]

use pathmerge::codec::{decode, decode_identical, MergingSequence};
use pathmerge::network::MergeNetwork;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn seq(text: &str) -> MergingSequence {
    text.parse().unwrap()
}

pub fn random_sequence(rng: &mut ChaCha8Rng, max_cut: usize, max_len: usize) -> MergingSequence {
    let m = rng.gen_range(1..=max_cut);
    let n = rng.gen_range(1..=max_cut);
    let len = rng.gen_range(0..=max_len);
    let strokes = (0..len).map(|_| (rng.gen_range(1..=m), rng.gen_range(1..=n))).collect();
    MergingSequence::new(m, n, strokes)
}

/// A random covered two-group graph with at most `max_edges` edges. Sources
/// have no incoming edges, sinks no outgoing ones, and paths of one group
/// share no vertex.
pub fn random_covered(rng: &mut ChaCha8Rng, max_edges: usize) -> MergeNetwork {
    loop {
        let identical = rng.gen_bool(0.3);
        let s = random_sequence(rng, 3, 6);
        let net = if identical {
            if s.m < 2 || s.n < 2 || s.strokes.iter().any(|&(i, j)| i == s.m || j == 1) {
                continue;
            }
            decode_identical(&s)
        } else {
            decode(&s)
        };
        if let Ok(net) = net {
            if net.dag().edge_count() <= max_edges && net.is_covered() {
                return net;
            }
        }
    }
}

/// Pell numbers by their recurrence.
pub fn pell(n: usize) -> usize {
    let (mut a, mut b) = (0usize, 1usize);
    for _ in 1..n {
        (a, b) = (b, 2 * b + a);
    }
    b
}

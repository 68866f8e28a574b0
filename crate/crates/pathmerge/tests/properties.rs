mod common;

use pathmerge::codec::{canonical_key, decode, encode, MergingSequence};
use pathmerge::flow::{all_paths, min_cut};
use pathmerge::graph::{Dag, Edge};
use pathmerge::merge::count_mergings;
use pathmerge::network::{MergeNetwork, PathGroup};
use pathmerge::reroute::{brute_force_reroutable, is_reroutable, residual_reroutable};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Largest number of edge-disjoint paths, by trying every subset of paths.
fn disjoint_paths_by_subsets(dag: &Dag, u: usize, v: usize) -> usize {
    let paths = all_paths(dag, u, v);
    fn grow(paths: &[Vec<u32>], from: usize, used: &mut Vec<u32>, depth: usize) -> usize {
        let mut best = depth;
        for k in from..paths.len() {
            if paths[k].iter().all(|e| !used.contains(e)) {
                used.extend(&paths[k]);
                best = best.max(grow(paths, k + 1, used, depth + 1));
                used.truncate(used.len() - paths[k].len());
            }
        }
        best
    }
    grow(&paths, 0, &mut Vec::new(), 0)
}

fn small_dag() -> impl Strategy<Value = Dag> {
    (3usize..=6).prop_flat_map(|v| {
        prop::collection::vec((0..v, 0..v), 1..=12).prop_map(move |pairs| {
            let edges = pairs
                .into_iter()
                .filter(|(a, b)| a != b)
                .enumerate()
                .map(|(id, (a, b))| Edge { id: id as u32, from: a.min(b), to: a.max(b) })
                .collect();
            Dag::new((0..v).map(|k| format!("v{k}")).collect(), edges).unwrap()
        })
    })
}

fn sequence() -> impl Strategy<Value = MergingSequence> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(m, n)| {
        prop::collection::vec((1..=m, 1..=n), 0..=10).prop_map(move |s| MergingSequence::new(m, n, s))
    })
}

proptest! {
    #[test]
    fn min_cut_matches_subset_search(dag in small_dag()) {
        let last = dag.vertex_count() - 1;
        let want = disjoint_paths_by_subsets(&dag, 0, last);
        match min_cut(&dag, 0, last) {
            Ok(c) => prop_assert_eq!(c, want),
            Err(_) => prop_assert_eq!(want, 0),
        }
    }

    #[test]
    fn encode_inverts_decode(s in sequence()) {
        let net = decode(&s).unwrap();
        let back = decode(&encode(&net).unwrap()).unwrap();
        prop_assert_eq!(canonical_key(&net).unwrap(), canonical_key(&back).unwrap());
        prop_assert_eq!(count_mergings(&net), s.len());
    }

    #[test]
    fn key_ignores_path_order(s in sequence(), rot in 0usize..4) {
        let net = decode(&s).unwrap();
        let groups: Vec<PathGroup> = net
            .groups()
            .iter()
            .map(|g| {
                let mut g = g.clone();
                let k = rot % g.paths.len();
                g.paths.rotate_left(k);
                g
            })
            .collect();
        let shuffled = net.with_groups(groups);
        prop_assert_eq!(canonical_key(&net).unwrap(), canonical_key(&shuffled).unwrap());
    }

    #[test]
    fn reduce_keeps_mergings_and_reroutability(s in sequence()) {
        let net = decode(&s).unwrap();
        let reduced = net.reduce().unwrap();
        prop_assert!(reduced.dag().edge_count() <= net.dag().edge_count());
        prop_assert_eq!(count_mergings(&reduced), count_mergings(&net));
        prop_assert_eq!(is_reroutable(&reduced), is_reroutable(&net));
    }

    #[test]
    fn swapping_groups_keeps_the_count(s in sequence()) {
        let net = decode(&s).unwrap();
        prop_assert_eq!(count_mergings(&net.swap_groups()), count_mergings(&net));
    }
}

fn agree(net: &MergeNetwork) -> bool {
    let semi = is_reroutable(net);
    semi == residual_reroutable(net) && semi == brute_force_reroutable(net).unwrap()
}

#[test]
fn three_reroute_checks_agree_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..500 {
        let net = common::random_covered(&mut rng, 16);
        assert!(agree(&net), "{}", encode(&net).unwrap());
    }
}

//! Randomized invariants: implication facts between the predicates,
//! witness soundness, and agreement of the pruned searches with naive
//! oracles on instances small enough to enumerate outright.

use proptest::prelude::*;

use ufh_core::extremal::{max_bounded_matching, max_union_free};
use ufh_core::hypergraph::{
    check_config_free, check_cover_free, check_sidon, check_union_free, combinations,
    is_cover_free, is_union_free, matching_number, shadow, ReplayParams,
};
use ufh_core::{io, UniformHypergraph, Verdict};

/// A random r-graph: each candidate edge kept independently.
fn arb_hypergraph(
    n_max: usize,
    r_choices: &'static [usize],
) -> impl Strategy<Value = UniformHypergraph> {
    (3..=n_max, prop::sample::select(r_choices.to_vec())).prop_flat_map(|(n, r)| {
        let all: Vec<Vec<u16>> = combinations(n, r)
            .into_iter()
            .map(|c| c.into_iter().map(|v| v as u16).collect())
            .collect();
        let count = all.len();
        prop::collection::vec(prop::bool::weighted(0.35), count).prop_map(move |keep| {
            let edges: Vec<Vec<u16>> = all
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(e, _)| e.clone())
                .collect();
            UniformHypergraph::new(n, r, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cover_free_implies_union_free(h in arb_hypergraph(8, &[2, 3, 4]), t in 2usize..=3) {
        if is_cover_free(&h, t).unwrap() {
            prop_assert!(is_union_free(&h, t).unwrap());
        }
    }

    #[test]
    fn union_free_implies_weaker_cover_free(h in arb_hypergraph(8, &[2, 3, 4]), t in 2usize..=3) {
        if is_union_free(&h, t).unwrap() {
            prop_assert!(is_cover_free(&h, t - 1).unwrap());
        }
    }

    #[test]
    fn union_free_witnesses_replay(h in arb_hypergraph(8, &[2, 3]), t in 2usize..=3) {
        if let Verdict::Fail { witness } = check_union_free(&h, t, u64::MAX).unwrap() {
            prop_assert!(witness.replay(&h, ReplayParams::order(t)).unwrap());
        }
    }

    #[test]
    fn cover_free_witnesses_replay(h in arb_hypergraph(8, &[2, 3]), t in 2usize..=3) {
        if let Verdict::Fail { witness } = check_cover_free(&h, t, u64::MAX).unwrap() {
            prop_assert!(witness.replay(&h, ReplayParams::order(t)).unwrap());
        }
    }

    #[test]
    fn sidon_witnesses_replay(h in arb_hypergraph(8, &[2, 3]), t in 2usize..=3) {
        if let Verdict::Fail { witness } = check_sidon(&h, t, u64::MAX).unwrap() {
            prop_assert!(witness.replay(&h, ReplayParams::order(t)).unwrap());
        }
    }

    #[test]
    fn config_witnesses_replay(h in arb_hypergraph(8, &[2, 3]), v in 3usize..=7, e in 2usize..=3) {
        if let Verdict::Fail { witness } = check_config_free(&h, v, e, u64::MAX).unwrap() {
            prop_assert!(witness.replay(&h, ReplayParams::config(v, e)).unwrap());
        }
    }

    #[test]
    fn union_free_is_monotone_in_t(h in arb_hypergraph(7, &[2, 3])) {
        // t-union-free for larger t is a stronger condition
        if is_union_free(&h, 3).unwrap() {
            prop_assert!(is_union_free(&h, 2).unwrap());
        }
    }

    #[test]
    fn subfamily_inherits_union_freeness(h in arb_hypergraph(7, &[2, 3]), t in 2usize..=3) {
        if is_union_free(&h, t).unwrap() && !h.is_empty() {
            let sub: Vec<Vec<u16>> = h.edges()[..h.len() - 1].to_vec();
            let g = UniformHypergraph::new(h.n(), h.r(), sub).unwrap();
            prop_assert!(is_union_free(&g, t).unwrap());
        }
    }

    #[test]
    fn matching_number_agrees_with_naive(h in arb_hypergraph(7, &[2, 3])) {
        prop_assume!(h.len() <= 12);
        let mut naive = 0;
        for size in 1..=h.len() {
            for sub in combinations(h.len(), size) {
                let pairwise_disjoint = sub.iter().enumerate().all(|(i, &a)| {
                    sub[i + 1..]
                        .iter()
                        .all(|&b| !h.mask(a).intersects(h.mask(b)))
                });
                if pairwise_disjoint {
                    naive = naive.max(size);
                }
            }
        }
        prop_assert_eq!(matching_number(&h), naive);
    }

    #[test]
    fn shadow_edges_come_from_edges(h in arb_hypergraph(7, &[3, 4]), k in 2usize..=2) {
        let s = shadow(&h, k).unwrap();
        prop_assert!(s.len() as u128 <= h.len() as u128 * ufh_core::binomial(h.r() as u64, k as u64));
        for sub in s.edges() {
            let covered = h
                .edges()
                .iter()
                .any(|e| sub.iter().all(|v| e.contains(v)));
            prop_assert!(covered);
        }
    }

    #[test]
    fn edge_list_round_trip(h in arb_hypergraph(8, &[2, 3, 4])) {
        let text = io::write_edge_list(&h);
        let back = io::parse_edge_list(&text).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(io::write_edge_list(&back), text);
        let json = io::to_json(&h).unwrap();
        prop_assert_eq!(io::from_json(&json).unwrap(), h);
    }
}

/// The symmetry-broken branch-and-bound must agree with a naive scan over
/// all edge subsets.
#[test]
fn search_agrees_with_naive_subset_scan() {
    for n in 2..=5usize {
        let all: Vec<Vec<u16>> = combinations(n, 2)
            .into_iter()
            .map(|c| c.into_iter().map(|v| v as u16).collect())
            .collect();
        let mut naive = 0usize;
        for bits in 0u32..(1 << all.len()) {
            let edges: Vec<Vec<u16>> = all
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, e)| e.clone())
                .collect();
            let h = UniformHypergraph::new(n, 2, edges).unwrap();
            if is_union_free(&h, 2).unwrap() {
                naive = naive.max(h.len());
            }
        }
        let searched = max_union_free(n, 2, 2, u64::MAX).unwrap();
        assert_eq!(searched.value, naive, "U_2({},2) mismatch", n);
        assert!(is_union_free(&searched.witness, 2).unwrap());
    }
}

#[test]
fn matching_search_agrees_with_naive_subset_scan() {
    for n in 3..=5usize {
        for lambda in 1..=2usize {
            let all: Vec<Vec<u16>> = combinations(n, 2)
                .into_iter()
                .map(|c| c.into_iter().map(|v| v as u16).collect())
                .collect();
            let mut naive = 0usize;
            for bits in 0u32..(1 << all.len()) {
                let edges: Vec<Vec<u16>> = all
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .map(|(_, e)| e.clone())
                    .collect();
                let h = UniformHypergraph::new(n, 2, edges).unwrap();
                if matching_number(&h) <= lambda {
                    naive = naive.max(h.len());
                }
            }
            let searched = max_bounded_matching(n, 2, lambda, u64::MAX).unwrap();
            assert_eq!(searched.value, naive, "m({},2,{}) mismatch", n, lambda);
        }
    }
}
